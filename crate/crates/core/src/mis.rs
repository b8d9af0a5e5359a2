//! Exact maximum independent sets.
//!
//! Independent sets of `G` are searched as cliques of the complement with a
//! bit-parallel branch and bound: each node greedily colours its candidate
//! set (colour classes are independent in the complement) and the colour
//! number bounds how far the current clique can still grow.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::graph::Graph;
use crate::vertex_set::{raw, words_for, VertexSet};

/// Default bound on the number of maximum independent sets retained.
pub const DEFAULT_CAP: usize = 1_000_000;

/// All (or the first `cap`) maximum independent sets of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MisFamily {
    pub alpha: usize,
    pub sets: Vec<VertexSet>,
    /// Every maximum independent set is present.
    pub complete: bool,
}

impl MisFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Sorts members lexicographically and drops duplicates.
    pub fn canonicalize(&mut self) {
        self.sets.sort();
        self.sets.dedup();
    }

    /// JSON list of sorted vertex arrays.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.sets).expect("family serialization cannot fail")
    }
}

struct Level {
    p: Vec<u64>,
    uncolored: Vec<u64>,
    q: Vec<u64>,
    /// (position, colour) pairs in non-decreasing colour order.
    list: Vec<(usize, usize)>,
}

trait Visitor {
    /// Whether a branch that can reach at most `reachable` vertices is still useful.
    fn worth(&self, reachable: usize) -> bool;
    fn leaf(&mut self, clique: &[usize]) -> ControlFlow<()>;
}

struct Best {
    size: usize,
    witness: Vec<usize>,
}

impl Visitor for Best {
    fn worth(&self, reachable: usize) -> bool {
        reachable > self.size
    }

    fn leaf(&mut self, clique: &[usize]) -> ControlFlow<()> {
        if clique.len() > self.size {
            self.size = clique.len();
            self.witness = clique.to_vec();
        }
        ControlFlow::Continue(())
    }
}

struct Exact<F> {
    target: usize,
    f: F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Visitor for Exact<F> {
    fn worth(&self, reachable: usize) -> bool {
        reachable >= self.target
    }

    fn leaf(&mut self, clique: &[usize]) -> ControlFlow<()> {
        if clique.len() == self.target {
            (self.f)(clique)
        } else {
            ControlFlow::Continue(())
        }
    }
}

/// Preprocessed search structure for one graph; reusable across many
/// queries on vertex subsets and safe to share between threads.
#[derive(Clone, Debug)]
pub struct MisSolver {
    n: usize,
    words: usize,
    /// position -> vertex
    order: Vec<usize>,
    /// vertex -> position
    pos: Vec<usize>,
    /// complement adjacency, rows and columns indexed by position
    comp: Vec<u64>,
}

impl MisSolver {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let words = words_for(n);
        // descending complement degree, ties by index
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (g.degree(v), v));
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut comp = vec![0u64; n * words];
        for (p, &u) in order.iter().enumerate() {
            let row = &mut comp[p * words..(p + 1) * words];
            for (q, &v) in order.iter().enumerate() {
                if q != p && !g.has_edge(u, v) {
                    raw::set(row, q);
                }
            }
        }
        Self {
            n,
            words,
            order,
            pos,
            comp,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn crow(&self, p: usize) -> &[u64] {
        &self.comp[p * self.words..(p + 1) * self.words]
    }

    fn to_positions(&self, w: &VertexSet) -> Vec<u64> {
        let mut p = vec![0u64; self.words];
        for v in w.iter().filter(|&v| v < self.n) {
            raw::set(&mut p, self.pos[v]);
        }
        p
    }

    fn to_vertex_set(&self, clique: &[usize]) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        for &p in clique {
            s.insert(self.order[p]);
        }
        s
    }

    fn levels(&self, start: Vec<u64>) -> Vec<Level> {
        let depth = raw::count(&start) + 1;
        let mut levels: Vec<Level> = (0..depth)
            .map(|_| Level {
                p: vec![0; self.words],
                uncolored: vec![0; self.words],
                q: vec![0; self.words],
                list: Vec::new(),
            })
            .collect();
        levels[0].p = start;
        levels
    }

    fn color_sort(&self, level: &mut Level) {
        let Level {
            p,
            uncolored,
            q,
            list,
        } = level;
        list.clear();
        uncolored.copy_from_slice(p);
        let mut color = 0;
        while raw::any(uncolored) {
            color += 1;
            q.copy_from_slice(uncolored);
            while let Some(v) = raw::first(q) {
                raw::clear(uncolored, v);
                raw::clear(q, v);
                for (a, b) in q.iter_mut().zip(self.crow(v)) {
                    *a &= !b;
                }
                list.push((v, color));
            }
        }
    }

    fn expand<V: Visitor>(
        &self,
        levels: &mut [Level],
        clique: &mut Vec<usize>,
        visitor: &mut V,
    ) -> ControlFlow<()> {
        let (cur, rest) = levels
            .split_first_mut()
            .expect("search depth bounded by candidate count");
        self.color_sort(cur);
        for idx in (0..cur.list.len()).rev() {
            let (u, color) = cur.list[idx];
            if !visitor.worth(clique.len() + color) {
                return ControlFlow::Continue(());
            }
            clique.push(u);
            let next = &mut rest[0];
            let mut any = false;
            for ((np, &cp), &cr) in next.p.iter_mut().zip(&cur.p).zip(self.crow(u)) {
                *np = cp & cr;
                any |= *np != 0;
            }
            let flow = if any {
                self.expand(rest, clique, visitor)
            } else {
                visitor.leaf(clique)
            };
            clique.pop();
            flow?;
            raw::clear(&mut cur.p, u);
        }
        ControlFlow::Continue(())
    }

    /// Maximum independent set of the whole graph.
    pub fn alpha(&self) -> (usize, VertexSet) {
        self.alpha_within(&VertexSet::full(self.n))
    }

    /// Maximum independent set of the subgraph induced on `w`.
    pub fn alpha_within(&self, w: &VertexSet) -> (usize, VertexSet) {
        let start = self.to_positions(w);
        if !raw::any(&start) {
            return (0, VertexSet::empty(self.n));
        }
        let mut levels = self.levels(start);
        let mut best = Best {
            size: 0,
            witness: Vec::new(),
        };
        let _ = self.expand(&mut levels, &mut Vec::new(), &mut best);
        (best.size, self.to_vertex_set(&best.witness))
    }

    /// Visits every independent set of size exactly `target` inside `w`,
    /// assuming `target` is the independence number of `G[w]`.
    ///
    /// Sets arrive in a deterministic order; the visitor may stop early.
    pub fn for_each_max_within(
        &self,
        w: &VertexSet,
        target: usize,
        mut f: impl FnMut(&VertexSet) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let start = self.to_positions(w);
        if target == 0 {
            return f(&VertexSet::empty(self.n));
        }
        if !raw::any(&start) {
            return ControlFlow::Continue(());
        }
        let mut levels = self.levels(start);
        let mut visitor = Exact {
            target,
            f: |clique: &[usize]| f(&self.to_vertex_set(clique)),
        };
        self.expand(&mut levels, &mut Vec::new(), &mut visitor)
    }

    /// Maximum independent sets of `G[w]`, at most `cap` of them.
    pub fn enumerate_within(&self, w: &VertexSet, cap: usize) -> MisFamily {
        let (alpha, _) = self.alpha_within(w);
        let mut sets = Vec::new();
        let mut complete = true;
        let _ = self.for_each_max_within(w, alpha, |s| {
            if sets.len() == cap {
                complete = false;
                return ControlFlow::Break(());
            }
            sets.push(s.clone());
            ControlFlow::Continue(())
        });
        let mut family = MisFamily {
            alpha,
            sets,
            complete,
        };
        family.canonicalize();
        family
    }
}

/// Independence number with a witness set.
pub fn alpha(g: &Graph) -> (usize, VertexSet) {
    MisSolver::new(g).alpha()
}

/// All maximum independent sets if there are at most `cap`; otherwise the
/// first `cap` found, flagged incomplete.
pub fn enumerate_mis(g: &Graph, cap: usize) -> MisFamily {
    MisSolver::new(g).enumerate_within(&VertexSet::full(g.n()), cap.max(1))
}

#[cfg(test)]
pub(crate) mod brute {
    use super::*;

    /// Exhaustive independence number and family over all `2^n` subsets.
    pub fn mis_family(g: &Graph) -> (usize, Vec<VertexSet>) {
        let n = g.n();
        assert!(n <= 20);
        let mut best = 0;
        let mut sets = Vec::new();
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size < best {
                continue;
            }
            let independent = (0..n).all(|u| {
                mask >> u & 1 == 0 || (u + 1..n).all(|v| mask >> v & 1 == 0 || !g.has_edge(u, v))
            });
            if !independent {
                continue;
            }
            if size > best {
                best = size;
                sets.clear();
            }
            sets.push(VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1)).unwrap());
        }
        sets.sort();
        (best, sets)
    }
}
