//! Undirected simple graphs with bit-set adjacency rows.

use std::io::BufRead;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::vertex_set::{words_for, VertexSet, WORD};
use crate::{Error, Result};

/// Largest vertex count held with explicit adjacency rows.
pub const MAX_EXPLICIT_VERTICES: usize = 4096;

/// An immutable simple graph on `0..n`.
///
/// Rows are symmetric and loopless; every constructor enforces this.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_EXPLICIT_VERTICES {
            return Err(Error::TooLarge {
                n,
                limit: MAX_EXPLICIT_VERTICES,
            });
        }
        let words = words_for(n);
        Ok(Self {
            n,
            words,
            adj: vec![0; n * words],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::from_edges(n, edges)
    }

    pub fn star(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|v| (0, v)))
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on every pair `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self> {
        Self::from_fn(n, |_, _| rng.gen_bool(p.clamp(0.0, 1.0)))
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.set_edge(u, v);
        Ok(())
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.adj[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in crate::vertex_set::raw::ones(self.row(u)) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n).expect("size already validated");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// True iff no edge has both endpoints in `s`.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter()
            .all(|v| v >= self.n || !s.words().iter().zip(self.row(v)).any(|(a, b)| a & b != 0))
    }

    /// The subgraph induced on `w`, relabelled `0..|w|` in increasing order.
    ///
    /// The second component maps new labels back to vertices of `self`.
    pub fn induced_subgraph(&self, w: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if w.universe() > self.n {
            if let Some(bad) = w.iter().find(|&v| v >= self.n) {
                return Err(Error::VertexOutOfRange {
                    vertex: bad,
                    n: self.n,
                });
            }
        }
        let map: Vec<usize> = w.iter().collect();
        let mut g = Self::empty(map.len())?;
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok((g, map))
    }

    /// Vertex-disjoint union; the copy of `other` is shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        let edges = self.edges().into_iter().chain(
            other
                .edges()
                .into_iter()
                .map(|(u, v)| (u + shift, v + shift)),
        );
        Self::from_edges(self.n + other.n, edges)
    }

    /// Checks symmetry, looplessness and that no bit is set past `n`.
    pub fn check_invariants(&self) -> bool {
        (0..self.n).all(|u| {
            !self.has_edge(u, u)
                && VertexSet::from_words(self.n, self.row(u).to_vec()).words() == self.row(u)
                && crate::vertex_set::raw::ones(self.row(u)).all(|v| self.has_edge(v, u))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        Self::from_edges(file.n, file.edges.into_iter().map(|[u, v]| (u, v)))
    }

    /// Reads DIMACS edge format (`p edge n m`, `e u v` with 1-based vertices).
    ///
    /// Comment lines start with `c`; repeated edges are tolerated.
    pub fn from_dimacs<R: BufRead>(reader: R) -> Result<Self> {
        let mut graph: Option<Graph> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let mut tok = line.split_whitespace();
            let parse_err = |msg: &str| Error::Parse {
                line: lineno,
                msg: msg.to_string(),
            };
            match tok.next() {
                None | Some("c") => {}
                Some("p") => {
                    if graph.is_some() {
                        return Err(parse_err("duplicate problem line"));
                    }
                    let _format = tok.next().ok_or_else(|| parse_err("missing format"))?;
                    let n: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| parse_err("bad vertex count"))?;
                    graph = Some(Graph::empty(n)?);
                }
                Some("e") => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| parse_err("edge before problem line"))?;
                    let mut endpoint = || -> Result<usize> {
                        let v: usize = tok
                            .next()
                            .and_then(|s| s.parse().ok())
                            .ok_or_else(|| parse_err("bad edge endpoint"))?;
                        if v == 0 || v > g.n {
                            return Err(parse_err(&format!("vertex {v} outside 1..={}", g.n)));
                        }
                        Ok(v - 1)
                    };
                    let u = endpoint()?;
                    let v = endpoint()?;
                    g.add_edge(u, v).map_err(|e| parse_err(&e.to_string()))?;
                }
                Some(other) => return Err(parse_err(&format!("unknown line type {other:?}"))),
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            msg: "no problem line".into(),
        })
    }

    pub fn to_dimacs(&self) -> String {
        let edges = self.edges();
        let mut out = format!("p edge {} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Reads JSON when the text starts with `{`, DIMACS otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_dimacs(text.as_bytes())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let text = g.to_json();
        assert_eq!(text, r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#);
        assert_eq!(Graph::from_json(&text).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c petersen-ish\np edge 4 3\ne 1 2\ne 2 3\ne 4 1\n";
        let g = Graph::from_dimacs(text.as_bytes()).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(Graph::parse(&g.to_dimacs()).unwrap(), g);
    }

    #[test]
    fn dimacs_errors() {
        assert!(Graph::from_dimacs("e 1 2\n".as_bytes()).is_err());
        assert!(Graph::from_dimacs("p edge 2 1\ne 1 3\n".as_bytes()).is_err());
        assert!(Graph::from_dimacs("p edge 2 1\ne 1 1\n".as_bytes()).is_err());
        assert!(Graph::from_dimacs("".as_bytes()).is_err());
    }

    #[test]
    fn rejects_loops_and_range() {
        assert!(matches!(
            Graph::from_edges(3, [(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::empty(MAX_EXPLICIT_VERTICES + 1).is_err());
    }

    #[test]
    fn induced_cycle_segment_is_path() {
        let c5 = Graph::cycle(5).unwrap();
        let w = VertexSet::from_indices(5, [1, 2, 3]).unwrap();
        let (p3, map) = c5.induced_subgraph(&w).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn induced_extremes() {
        let c5 = Graph::cycle(5).unwrap();
        let (all, _) = c5.induced_subgraph(&VertexSet::full(5)).unwrap();
        assert_eq!(all, c5);
        let (none, map) = c5.induced_subgraph(&VertexSet::empty(5)).unwrap();
        assert_eq!(none.n(), 0);
        assert!(map.is_empty());
        assert!(c5.induced_subgraph(&VertexSet::full(6)).is_err());
    }

    #[test]
    fn independence_checks() {
        let k4 = Graph::complete(4).unwrap();
        assert!(k4.is_independent(&VertexSet::empty(4)));
        assert!(k4.is_independent(&VertexSet::from_indices(4, [2]).unwrap()));
        assert!(!k4.is_independent(&VertexSet::from_indices(4, [0, 3]).unwrap()));
    }

    #[test]
    fn complement_and_union() {
        let p = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(p.complement().edges(), vec![(0, 2), (1, 2)]);
        let u = p.disjoint_union(&p).unwrap();
        assert_eq!(u.edges(), vec![(0, 1), (3, 4)]);
        assert!(u.check_invariants());
    }
}
