//! Kernel (intersection) and corona (union) of all maximum independent sets,
//! and the inequality `|kernel| + |corona| >= 2 alpha`.

use std::io::Write;
use std::ops::ControlFlow;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;
use crate::mis::{MisFamily, MisSolver};
use crate::vertex_set::VertexSet;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub alpha: usize,
    pub kernel: VertexSet,
    pub corona: VertexSet,
    /// `|kernel| + |corona| >= 2 alpha`
    pub holds: bool,
    /// The whole family was seen. Otherwise `kernel` over-approximates and
    /// `corona` under-approximates the true sets.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub bounds_only: bool,
}

impl KernelReport {
    fn new(alpha: usize, kernel: VertexSet, corona: VertexSet, bounds_only: bool) -> Self {
        let holds = kernel.len() + corona.len() >= 2 * alpha;
        Self {
            alpha,
            kernel,
            corona,
            holds,
            bounds_only,
        }
    }

    /// `{"alpha":..,"kernel":[..],"corona":[..],"holds":..}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// Streams the maximum independent sets of `G[w]` without storing them.
pub fn kernel_corona_within(solver: &MisSolver, w: &VertexSet, cap: usize) -> KernelReport {
    let n = solver.n();
    let (alpha, _) = solver.alpha_within(w);
    let mut kernel = w.clone();
    let mut corona = VertexSet::empty(n);
    let mut seen = 0usize;
    let flow = solver.for_each_max_within(w, alpha, |s| {
        if seen == cap {
            return ControlFlow::Break(());
        }
        seen += 1;
        kernel.intersect_with(s);
        corona.union_with(s);
        ControlFlow::Continue(())
    });
    KernelReport::new(alpha, kernel, corona, flow.is_break())
}

pub fn kernel_corona(g: &Graph, cap: usize) -> KernelReport {
    kernel_corona_within(&MisSolver::new(g), &VertexSet::full(g.n()), cap.max(1))
}

/// Kernel and corona of an explicitly supplied family over `0..n`.
pub fn kernel_corona_of_family(family: &MisFamily, n: usize) -> KernelReport {
    let mut kernel = VertexSet::full(n);
    let mut corona = VertexSet::empty(n);
    for s in &family.sets {
        kernel.intersect_with(s);
        corona.union_with(s);
    }
    KernelReport::new(family.alpha, kernel, corona, !family.complete)
}

/// `2a - 1`: the fraction of vertices lying in every maximum independent
/// set of a graph with independence ratio `a > 1/2`.
pub fn guaranteed_kernel_fraction(alpha_frac: Ratio<i64>) -> Result<Ratio<i64>> {
    let half = Ratio::new(1, 2);
    if alpha_frac <= half || alpha_frac > Ratio::from_integer(1) {
        return Err(Error::Precondition(format!(
            "independence ratio {alpha_frac} is not in (1/2, 1]"
        )));
    }
    Ok(alpha_frac * 2 - 1)
}

/// Singleton hitting sets for a graph with `alpha > n/2`: every kernel vertex
/// alone meets every maximum independent set, and there are at least `2 alpha - n` of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingletonCaseReport {
    pub n: usize,
    pub alpha: usize,
    pub kernel_size: usize,
    /// `2 alpha - n`
    pub required: usize,
    pub singletons_meet_all: bool,
    pub holds: bool,
}

pub fn singleton_case_check(g: &Graph, cap: usize) -> Result<SingletonCaseReport> {
    let solver = MisSolver::new(g);
    let (alpha, _) = solver.alpha();
    let n = g.n();
    if 2 * alpha <= n {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} is not above n/2 = {n}/2"
        )));
    }
    let family = solver.enumerate_within(&VertexSet::full(n), cap);
    if !family.complete {
        return Err(Error::FamilyTooLarge { cap });
    }
    let report = kernel_corona_of_family(&family, n);
    let singletons_meet_all = report
        .kernel
        .iter()
        .all(|v| family.sets.iter().all(|s| s.contains(v)));
    let required = 2 * alpha - n;
    let kernel_size = report.kernel.len();
    Ok(SingletonCaseReport {
        n,
        alpha,
        kernel_size,
        required,
        singletons_meet_all,
        holds: singletons_meet_all && kernel_size >= required,
    })
}

/// One CSV row of a corpus run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusRow {
    pub graph_id: String,
    pub n: usize,
    pub alpha: usize,
    pub kernel_size: usize,
    pub corona_size: usize,
}

impl CorpusRow {
    fn holds(&self) -> bool {
        self.kernel_size + self.corona_size >= 2 * self.alpha
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    /// Every labelled graph on `0..=exhaustive_max_n` vertices.
    pub exhaustive_max_n: usize,
    pub random_graphs: usize,
    pub random_max_n: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub graphs: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

const MAX_EXHAUSTIVE_N: usize = 8;
const CHUNK: u64 = 1 << 12;

/// The labelled graph on `n` vertices whose edges are the set bits of
/// `mask`, in the order (0,1), (0,2), .., (n-2,n-1).
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e);
    Graph::from_edges(n, edges).expect("pairs are in range")
}

/// Random graph `i` of the seeded corpus: `n` uniform in `1..=max_n`, edge
/// probability uniform in `[0, 1)`.
pub fn corpus_random_graph(seed: u64, i: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let n = rng.gen_range(1..=max_n.max(1));
    let p: f64 = rng.gen();
    Graph::random(n, p, &mut rng).expect("small graph")
}

fn row(graph_id: String, g: &Graph) -> CorpusRow {
    let r = kernel_corona(g, usize::MAX);
    CorpusRow {
        graph_id,
        n: g.n(),
        alpha: r.alpha,
        kernel_size: r.kernel.len(),
        corona_size: r.corona.len(),
    }
}

/// Runs the corpus, optionally writing `graph_id,n,alpha,kernel_size,corona_size`
/// rows in deterministic order.
pub fn hajnal_corpus(cfg: &CorpusConfig, mut csv: Option<&mut dyn Write>) -> Result<CorpusSummary> {
    if cfg.exhaustive_max_n > MAX_EXHAUSTIVE_N {
        return Err(Error::InvalidParameter(format!(
            "exhaustive corpus limited to n <= {MAX_EXHAUSTIVE_N}"
        )));
    }
    if let Some(w) = csv.as_deref_mut() {
        writeln!(w, "graph_id,n,alpha,kernel_size,corona_size")?;
    }
    let mut summary = CorpusSummary::default();
    let mut absorb = |rows: Vec<CorpusRow>, csv: &mut Option<&mut dyn Write>| -> Result<()> {
        for r in rows {
            summary.graphs += 1;
            if !r.holds() {
                summary.violations += 1;
                summary
                    .first_violation
                    .get_or_insert_with(|| r.graph_id.clone());
            }
            if let Some(w) = csv.as_deref_mut() {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    r.graph_id, r.n, r.alpha, r.kernel_size, r.corona_size
                )?;
            }
        }
        Ok(())
    };
    for n in 0..=cfg.exhaustive_max_n {
        let total = 1u64 << (n * n.saturating_sub(1) / 2);
        let chunks: Vec<Vec<CorpusRow>> = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                (c * CHUNK..((c + 1) * CHUNK).min(total))
                    .map(|mask| row(format!("e{n}-{mask}"), &graph_from_edge_mask(n, mask)))
                    .collect()
            })
            .collect();
        for rows in chunks {
            absorb(rows, &mut csv)?;
        }
    }
    let random: Vec<CorpusRow> = (0..cfg.random_graphs as u64)
        .into_par_iter()
        .map(|i| {
            row(
                format!("r{i}"),
                &corpus_random_graph(cfg.seed, i, cfg.random_max_n),
            )
        })
        .collect();
    absorb(random, &mut csv)?;
    Ok(summary)
}
