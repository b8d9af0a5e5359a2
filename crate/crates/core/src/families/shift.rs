//! Shift graphs `G_k`: ordered pairs `(i, j)` over `{1, .., 2k}`, with
//! `(a, b) ~ (c, d)` whenever `b = c` or `d = a`, i.e. the two arcs form a
//! directed path of length two.
//!
//! Vertex `(i, j)` has index `(i - 1)(2k - 1) + r`, where `r` is the 0-based
//! rank of `j` within `{1, .., 2k} \ {i}`.

use serde::Serialize;

use crate::graph::{Graph, MAX_EXPLICIT_VERTICES};
use crate::mis::MisFamily;
use crate::vertex_set::VertexSet;
use crate::{Error, Result};

/// Largest `k` for which the exhaustive partition search is offered.
pub const MAX_PARTITION_SEARCH_K: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftSpec {
    k: usize,
}

impl ShiftSpec {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("shift graph needs k >= 1".into()));
        }
        let spec = Self { k };
        if spec.vertex_count() > MAX_EXPLICIT_VERTICES {
            return Err(Error::TooLarge {
                n: spec.vertex_count(),
                limit: MAX_EXPLICIT_VERTICES,
            });
        }
        Ok(spec)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of points `2k` in the ground set.
    pub fn points(&self) -> usize {
        2 * self.k
    }

    /// `2k(2k - 1)`.
    pub fn vertex_count(&self) -> usize {
        self.points() * (self.points() - 1)
    }

    /// Index of the arc `(i, j)`, with `i != j` in `1..=2k`.
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        let p = self.points();
        if i == j || !(1..=p).contains(&i) || !(1..=p).contains(&j) {
            return None;
        }
        let rank = if j < i { j - 1 } else { j - 2 };
        Some((i - 1) * (p - 1) + rank)
    }

    pub fn pair(&self, index: usize) -> (usize, usize) {
        assert!(
            index < self.vertex_count(),
            "arc index {index} out of range"
        );
        let p = self.points();
        let i = index / (p - 1) + 1;
        let rank = index % (p - 1);
        let j = if rank + 1 < i { rank + 1 } else { rank + 2 };
        (i, j)
    }

    pub fn vertex_set(&self, pairs: &[(usize, usize)]) -> Result<VertexSet> {
        let idx = pairs
            .iter()
            .map(|&(i, j)| {
                self.index(i, j)
                    .ok_or_else(|| Error::InvalidParameter(format!("({i},{j}) is not an arc")))
            })
            .collect::<Result<Vec<_>>>()?;
        VertexSet::from_indices(self.vertex_count(), idx)
    }

    pub fn pairs(&self, s: &VertexSet) -> Vec<(usize, usize)> {
        s.iter().map(|v| self.pair(v)).collect()
    }
}

pub fn build_shift_graph(k: usize) -> Result<(Graph, ShiftSpec)> {
    let spec = ShiftSpec::new(k)?;
    let g = Graph::from_fn(spec.vertex_count(), |u, v| {
        let (a, b) = spec.pair(u);
        let (c, d) = spec.pair(v);
        b == c || d == a
    })?;
    Ok((g, spec))
}

/// `S x T` with `T` the complement of `s` in `{1, .., 2k}`.
pub fn shift_mis_from_partition(spec: &ShiftSpec, s: &[usize]) -> Result<VertexSet> {
    let p = spec.points();
    let mut in_s = vec![false; p + 1];
    for &x in s {
        if !(1..=p).contains(&x) || in_s[x] {
            return Err(Error::InvalidParameter(format!(
                "{s:?} is not a subset of 1..={p}"
            )));
        }
        in_s[x] = true;
    }
    if s.len() != spec.k() {
        return Err(Error::InvalidParameter(format!(
            "partition side must have {} points, got {}",
            spec.k(),
            s.len()
        )));
    }
    let mut out = VertexSet::empty(spec.vertex_count());
    for x in (1..=p).filter(|&x| in_s[x]) {
        for y in (1..=p).filter(|&y| !in_s[y]) {
            out.insert(spec.index(x, y).expect("x != y"));
        }
    }
    Ok(out)
}

/// All `k`-subsets of `{1, .., 2k}` in lexicographic order.
pub fn half_subsets(spec: &ShiftSpec) -> Vec<Vec<usize>> {
    let (p, k) = (spec.points(), spec.k());
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < p - (k - 1 - i)) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The `C(2k, k)` sets `S x T`, marked complete.
pub fn shift_mis_family(spec: &ShiftSpec) -> MisFamily {
    let sets = half_subsets(spec)
        .iter()
        .map(|s| shift_mis_from_partition(spec, s).expect("k-subsets are valid"))
        .collect();
    let mut family = MisFamily {
        alpha: spec.k() * spec.k(),
        sets,
        complete: true,
    };
    family.canonicalize();
    family
}

/// The directed `(k+1)`-cycle `1 -> 2 -> .. -> k+1 -> 1`.
pub fn shift_cycle_hitting_set(spec: &ShiftSpec) -> VertexSet {
    let k = spec.k();
    let pairs: Vec<_> = (1..=k + 1).map(|i| (i, i % (k + 1) + 1)).collect();
    spec.vertex_set(&pairs)
        .expect("cycle arcs lie in 1..=k+1 <= 2k")
}

/// Searches all `k`-subsets `S` for one whose `S x T` avoids `h`.
///
/// Returns the lexicographically first such `S`, or `None` when every
/// maximum independent set meets `h`.
pub fn shift_avoiding_partition(spec: &ShiftSpec, h: &VertexSet) -> Result<Option<Vec<usize>>> {
    if spec.k() > MAX_PARTITION_SEARCH_K {
        return Err(Error::InvalidParameter(format!(
            "partition search limited to k <= {MAX_PARTITION_SEARCH_K}"
        )));
    }
    if h.universe() != spec.vertex_count() {
        return Err(Error::InvalidParameter(
            "vertex set belongs to a different shift graph".into(),
        ));
    }
    let arcs = spec.pairs(h);
    Ok(half_subsets(spec).into_iter().find(|s| {
        // (x, y) lies in S x T iff x in S and y not in S
        arcs.iter()
            .all(|&(x, y)| !(s.contains(&x) && !s.contains(&y)))
    }))
}
