//! Minimum hitting sets (transversals) of maximum-independent-set families.
//!
//! The exact solver works on the dual incidence structure: for every vertex
//! the bit set of family members containing it. A depth-first search
//! branches on the uncovered member with the fewest admissible hitters; a
//! greedy packing of members with pairwise disjoint admissible hitters
//! bounds the remaining cost from below.

use serde::Serialize;

use crate::graph::Graph;
use crate::mis::{enumerate_mis, MisFamily};
use crate::vertex_set::{raw, words_for, VertexSet};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingResult {
    #[serde(rename = "vertices")]
    pub set: VertexSet,
    pub size: usize,
    /// No smaller transversal of a complete family exists.
    pub optimal: bool,
    /// For each family member, the least vertex of `set` inside it.
    #[serde(skip)]
    pub per_set_witness: Vec<usize>,
}

impl HittingResult {
    fn new(set: VertexSet, members: &[VertexSet], optimal: bool) -> Self {
        let per_set_witness = members
            .iter()
            .map(|m| {
                m.iter()
                    .find(|&v| set.contains(v))
                    .expect("result hits every member")
            })
            .collect();
        Self {
            size: set.len(),
            set,
            optimal,
            per_set_witness,
        }
    }

    /// `{"size":..,"vertices":[..],"optimal":..}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serialization cannot fail")
    }
}

pub fn hits_all(set: &VertexSet, members: &[VertexSet]) -> bool {
    members.iter().all(|m| m.intersects(set))
}

/// Exact transversal search over a fixed family.
struct Instance<'a> {
    universe: usize,
    members: &'a [VertexSet],
    /// vertex -> members containing it
    incidence: Vec<Vec<u64>>,
    member_words: usize,
}

impl<'a> Instance<'a> {
    fn new(members: &'a [VertexSet], universe: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidParameter("family is empty".into()));
        }
        if let Some(i) = members.iter().position(|m| m.is_empty()) {
            return Err(Error::Infeasible(format!(
                "family member {i} is empty and cannot be hit"
            )));
        }
        if let Some(m) = members.iter().find(|m| m.universe() != universe) {
            return Err(Error::InvalidParameter(format!(
                "member over universe {} does not match universe {universe}",
                m.universe()
            )));
        }
        let member_words = words_for(members.len());
        let mut incidence = vec![vec![0u64; member_words]; universe];
        for (i, m) in members.iter().enumerate() {
            for v in m {
                raw::set(&mut incidence[v], i);
            }
        }
        Ok(Self {
            universe,
            members,
            incidence,
            member_words,
        })
    }

    fn all_members(&self) -> Vec<u64> {
        let mut u = vec![0u64; self.member_words];
        for i in 0..self.members.len() {
            raw::set(&mut u, i);
        }
        u
    }

    fn cover(&self, uncovered: &[u64], v: usize) -> Vec<u64> {
        uncovered
            .iter()
            .zip(&self.incidence[v])
            .map(|(a, b)| a & !b)
            .collect()
    }

    /// Greedy packing of uncovered members with pairwise disjoint admissible
    /// hitters. `None` if some member has no admissible hitter left.
    fn packing_bound(&self, uncovered: &[u64], allowed: &VertexSet) -> Option<usize> {
        let mut avail: Vec<(usize, VertexSet)> = Vec::new();
        for i in raw::ones(uncovered) {
            let mut a = self.members[i].clone();
            a.intersect_with(allowed);
            if a.is_empty() {
                return None;
            }
            avail.push((a.len(), a));
        }
        avail.sort_by_key(|(len, _)| *len);
        let mut used = VertexSet::empty(self.universe);
        let mut count = 0;
        for (_, a) in &avail {
            if !a.intersects(&used) {
                used.union_with(a);
                count += 1;
            }
        }
        Some(count)
    }

    /// A transversal of `uncovered` using at most `budget` vertices from `allowed`.
    fn search(
        &self,
        uncovered: &[u64],
        allowed: &VertexSet,
        budget: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if !raw::any(uncovered) {
            return true;
        }
        match self.packing_bound(uncovered, allowed) {
            Some(lb) if lb <= budget => {}
            _ => return false,
        }
        // uncovered member with fewest admissible hitters, ties by index
        let (_, branch) = raw::ones(uncovered)
            .map(|i| (self.members[i].intersection_len(allowed), i))
            .min()
            .expect("uncovered is non-empty");
        let mut candidates = self.members[branch].clone();
        candidates.intersect_with(allowed);
        let mut allowed = allowed.clone();
        for v in &candidates {
            chosen.push(v);
            if self.search(&self.cover(uncovered, v), &allowed, budget - 1, chosen) {
                return true;
            }
            chosen.pop();
            // later siblings never reuse an earlier sibling's vertex
            allowed.remove(v);
        }
        false
    }

    fn greedy(&self) -> VertexSet {
        let mut uncovered = self.all_members();
        let mut set = VertexSet::empty(self.universe);
        while raw::any(&uncovered) {
            let best = (0..self.universe)
                .max_by_key(|&v| {
                    let gain: usize = uncovered
                        .iter()
                        .zip(&self.incidence[v])
                        .map(|(a, b)| (a & b).count_ones() as usize)
                        .sum();
                    (gain, std::cmp::Reverse(v))
                })
                .expect("non-empty universe");
            set.insert(best);
            uncovered = self.cover(&uncovered, best);
        }
        set
    }

    fn exists_with_budget(&self, budget: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::new();
        self.search(
            &self.all_members(),
            &VertexSet::full(self.universe),
            budget,
            &mut chosen,
        )
        .then_some(chosen)
    }

    /// Lexicographically least transversal of size `size`; one must exist.
    fn lex_least(&self, size: usize) -> VertexSet {
        let mut set = VertexSet::empty(self.universe);
        let mut uncovered = self.all_members();
        let mut allowed = VertexSet::full(self.universe);
        for remaining in (1..=size).rev() {
            if !raw::any(&uncovered) {
                break;
            }
            let v = allowed
                .iter()
                .find(|&v| {
                    let mut later = allowed.clone();
                    for u in 0..=v {
                        later.remove(u);
                    }
                    self.search(
                        &self.cover(&uncovered, v),
                        &later,
                        remaining - 1,
                        &mut Vec::new(),
                    )
                })
                .expect("a transversal of this size exists");
            set.insert(v);
            uncovered = self.cover(&uncovered, v);
            for u in 0..=v {
                allowed.remove(u);
            }
        }
        set
    }
}

/// Greedy transversal: repeatedly takes the vertex hitting most uncovered
/// members, ties by least index.
pub fn greedy_hitting_set(members: &[VertexSet], universe: usize) -> Result<VertexSet> {
    Ok(Instance::new(members, universe)?.greedy())
}

/// Minimum transversal of `members`, lexicographically least among optima.
///
/// `optimal` is set only for complete families; for a truncated family the
/// size is merely a lower bound on the hitting number of the graph.
pub fn min_hitting_set(family: &MisFamily, universe: usize) -> Result<HittingResult> {
    let inst = Instance::new(&family.sets, universe)?;
    let upper = inst.greedy().len();
    let lower = inst
        .packing_bound(&inst.all_members(), &VertexSet::full(universe))
        .expect("no member is empty");
    let size = (lower..upper)
        .find(|&b| inst.exists_with_budget(b).is_some())
        .unwrap_or(upper);
    let set = inst.lex_least(size);
    debug_assert_eq!(set.len(), size);
    Ok(HittingResult::new(set, &family.sets, family.complete))
}

/// Hitting number `h(G)` from the complete family of maximum independent sets.
pub fn h_of_graph(g: &Graph, cap: usize) -> Result<HittingResult> {
    let family = enumerate_mis(g, cap);
    if !family.complete {
        return Err(Error::FamilyTooLarge { cap });
    }
    min_hitting_set(&family, g.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::shift::{shift_mis_family, ShiftSpec};
    use crate::mis::DEFAULT_CAP;
    use proptest::prelude::*;

    fn family(universe: usize, sets: &[&[usize]]) -> MisFamily {
        MisFamily {
            alpha: 0,
            sets: sets
                .iter()
                .map(|s| VertexSet::from_indices(universe, s.iter().copied()).unwrap())
                .collect(),
            complete: true,
        }
    }

    /// Smallest transversal by enumerating subsets in order of size, then
    /// lexicographically.
    fn brute_min(members: &[VertexSet], universe: usize) -> VertexSet {
        for size in 0..=universe {
            let mut cur: Vec<usize> = (0..size).collect();
            loop {
                let s = VertexSet::from_indices(universe, cur.iter().copied()).unwrap();
                if hits_all(&s, members) {
                    return s;
                }
                let Some(i) = (0..size).rev().find(|&i| cur[i] < universe - (size - i)) else {
                    break;
                };
                cur[i] += 1;
                for j in i + 1..size {
                    cur[j] = cur[j - 1] + 1;
                }
            }
        }
        unreachable!("the whole universe hits every non-empty member")
    }

    #[test]
    fn disjoint_singletons() {
        let r = min_hitting_set(&family(3, &[&[1], &[2]]), 3).unwrap();
        assert_eq!(r.set.to_vec(), vec![1, 2]);
        assert_eq!(r.size, 2);
        assert!(r.optimal);
        assert_eq!(r.per_set_witness, vec![1, 2]);
    }

    #[test]
    fn common_element() {
        let f = family(4, &[&[1, 2], &[2, 3]]);
        assert_eq!(min_hitting_set(&f, 4).unwrap().set.to_vec(), vec![2]);
        assert_eq!(greedy_hitting_set(&f.sets, 4).unwrap().to_vec(), vec![2]);
    }

    #[test]
    fn greedy_on_disjoint_family() {
        let f = family(10, &[&[0, 1], &[2, 3], &[4, 5, 6], &[9]]);
        assert_eq!(greedy_hitting_set(&f.sets, 10).unwrap().len(), 4);
    }

    #[test]
    fn infeasible_and_empty() {
        assert!(matches!(
            min_hitting_set(&family(3, &[&[1], &[]]), 3),
            Err(Error::Infeasible(_))
        ));
        assert!(min_hitting_set(&family(3, &[]), 3).is_err());
        assert!(min_hitting_set(&family(3, &[&[1]]), 4).is_err());
    }

    #[test]
    fn shift_k2_needs_three() {
        let spec = ShiftSpec::new(2).unwrap();
        let fam = shift_mis_family(&spec);
        let r = min_hitting_set(&fam, spec.vertex_count()).unwrap();
        assert_eq!(r.size, 3);
        assert!(hits_all(&r.set, &fam.sets));
        assert_eq!(r.set, brute_min(&fam.sets, spec.vertex_count()));
    }

    #[test]
    fn shift_k3_greedy_vs_exact() {
        let spec = ShiftSpec::new(3).unwrap();
        let fam = shift_mis_family(&spec);
        let exact = min_hitting_set(&fam, spec.vertex_count()).unwrap();
        let greedy = greedy_hitting_set(&fam.sets, spec.vertex_count()).unwrap();
        assert_eq!(exact.size, 4);
        assert!(greedy.len() >= 4 && greedy.len() <= 20);
        assert!(hits_all(&greedy, &fam.sets));
    }

    #[test]
    fn graph_examples() {
        let r = h_of_graph(&Graph::empty(4).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!((r.size, r.set.to_vec()), (1, vec![0]));
        assert_eq!(
            h_of_graph(&Graph::complete(5).unwrap(), DEFAULT_CAP)
                .unwrap()
                .size,
            5
        );
        let (g2, _) = crate::families::shift::build_shift_graph(2).unwrap();
        assert_eq!(h_of_graph(&g2, DEFAULT_CAP).unwrap().size, 3);
        assert!(matches!(
            h_of_graph(&Graph::complete(5).unwrap(), 3),
            Err(Error::FamilyTooLarge { cap: 3 })
        ));
        assert!(h_of_graph(&Graph::empty(0).unwrap(), DEFAULT_CAP).is_err());
    }

    #[test]
    fn json_shape() {
        let r = min_hitting_set(&family(3, &[&[1], &[2]]), 3).unwrap();
        assert_eq!(r.to_json(), r#"{"vertices":[1,2],"size":2,"optimal":true}"#);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn exact_matches_brute_force(universe in 1usize..=12, raw_sets in prop::collection::vec(1u32..4096, 1..10)) {
            let members: Vec<VertexSet> = raw_sets
                .iter()
                .map(|&mask| VertexSet::from_indices(universe, (0..universe).filter(|&v| mask >> v & 1 == 1)).unwrap())
                .filter(|s| !s.is_empty())
                .collect();
            prop_assume!(!members.is_empty());
            let fam = MisFamily { alpha: 0, sets: members.clone(), complete: true };
            let exact = min_hitting_set(&fam, universe).unwrap();
            let greedy = greedy_hitting_set(&members, universe).unwrap();
            prop_assert!(hits_all(&exact.set, &members));
            prop_assert!(hits_all(&greedy, &members));
            prop_assert_eq!(&exact.set, &brute_min(&members, universe));
            prop_assert!(greedy.len() >= exact.size);
            for (m, &w) in members.iter().zip(&exact.per_set_witness) {
                prop_assert!(m.contains(w) && exact.set.contains(w));
            }
        }
    }
}
