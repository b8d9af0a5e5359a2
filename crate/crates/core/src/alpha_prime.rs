//! The averaged independence ratio `alpha'(G)` and the random vertex-deletion
//! process used to bound it for graphs with `alpha(G) = (1/4 + eps) n`.
//!
//! `alpha'(G)` is `E[alpha(G[W])] / n` for `W` drawn uniformly from all
//! `2^n` subsets (independent fair coins). A fixed-size law, `W` uniform
//! among the `m`-subsets, is available alongside.

use std::fmt::Write as _;

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::graph::Graph;
use crate::hajnal::kernel_corona_within;
use crate::mis::MisSolver;
use crate::vertex_set::VertexSet;
use crate::{Error, Result};

/// Largest graph for the exact subset table (`2^20` entries).
pub const MAX_EXACT_N: usize = 20;
const MC_CHUNK: u64 = 1024;
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "law", content = "size")]
pub enum SubsetLaw {
    /// Every subset equally likely.
    #[default]
    Binomial,
    /// Uniform over subsets of exactly this size.
    FixedSize(usize),
}

fn ser_ratio<S: Serializer, T: std::fmt::Display + Clone + num_integer::Integer>(
    r: &Option<Ratio<T>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaPrimeEstimate {
    /// Normalised by `n`.
    pub mean: f64,
    pub exact: bool,
    /// Zero for exact values.
    pub samples: u64,
    /// `None` when exact or with a single sample.
    pub stderr: Option<f64>,
    pub ci95: Option<(f64, f64)>,
    /// Exact value `E[alpha(G[W])] / n` in lowest terms.
    #[serde(serialize_with = "ser_ratio", skip_serializing_if = "Option::is_none")]
    pub rational: Option<Ratio<u64>>,
    /// Exact `E[alpha(G[W])]`; for the binomial law its denominator divides `2^n`.
    #[serde(serialize_with = "ser_ratio", skip_serializing_if = "Option::is_none")]
    pub mean_alpha: Option<Ratio<u64>>,
}

impl AlphaPrimeEstimate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("estimate serialization cannot fail")
    }

    /// Whether the interval (or the exact value) contains `x`.
    pub fn covers(&self, x: f64) -> bool {
        match self.ci95 {
            Some((lo, hi)) => lo <= x && x <= hi,
            None => self.exact && (self.mean - x).abs() < 1e-12,
        }
    }
}

/// `alpha(G[W])` for every `W`, indexed by the bit mask of `W` (`n <= 20`).
///
/// Filled in increasing mask order from
/// `alpha(W) = max(alpha(W - v), 1 + alpha(W - N[v]))` with `v` the lowest
/// vertex of `W`; both right-hand masks are smaller than `W`.
pub fn subset_alpha_table(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > MAX_EXACT_N {
        return Err(Error::TooLarge {
            n,
            limit: MAX_EXACT_N,
        });
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| g.row(v).first().copied().unwrap_or(0) as u32 | 1 << v)
        .collect();
    let mut table = vec![0u8; 1 << n];
    for w in 1u32..1 << n {
        let v = w.trailing_zeros() as usize;
        let skip = table[(w & (w - 1)) as usize];
        let take = 1 + table[(w & !closed[v]) as usize];
        table[w as usize] = skip.max(take);
    }
    Ok(table)
}

pub fn alpha_prime_exact(g: &Graph) -> Result<AlphaPrimeEstimate> {
    alpha_prime_exact_with(g, SubsetLaw::Binomial)
}

pub fn alpha_prime_exact_with(g: &Graph, law: SubsetLaw) -> Result<AlphaPrimeEstimate> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "alpha' of the empty graph is undefined".into(),
        ));
    }
    let table = subset_alpha_table(g)?;
    let (total, count) = match law {
        SubsetLaw::Binomial => (table.iter().map(|&a| a as u64).sum::<u64>(), 1u64 << n),
        SubsetLaw::FixedSize(m) => {
            if m > n {
                return Err(Error::InvalidParameter(format!(
                    "subset size {m} exceeds n = {n}"
                )));
            }
            table
                .iter()
                .enumerate()
                .filter(|(w, _)| w.count_ones() as usize == m)
                .fold((0, 0), |(s, c), (_, &a)| (s + a as u64, c + 1))
        }
    };
    let mean_alpha = Ratio::new(total, count);
    let rational = mean_alpha / n as u64;
    Ok(AlphaPrimeEstimate {
        mean: total as f64 / count as f64 / n as f64,
        exact: true,
        samples: 0,
        stderr: None,
        ci95: None,
        rational: Some(rational),
        mean_alpha: Some(mean_alpha),
    })
}

fn draw_subset(rng: &mut ChaCha8Rng, n: usize, law: SubsetLaw) -> VertexSet {
    match law {
        SubsetLaw::Binomial => {
            let mut s = VertexSet::empty(n);
            for v in 0..n {
                if rng.gen::<bool>() {
                    s.insert(v);
                }
            }
            s
        }
        SubsetLaw::FixedSize(m) => {
            VertexSet::from_indices(n, sample(rng, n, m)).expect("indices below n")
        }
    }
}

pub fn alpha_prime_mc(g: &Graph, samples: u64, seed: u64) -> Result<AlphaPrimeEstimate> {
    alpha_prime_mc_with(g, samples, seed, SubsetLaw::Binomial)
}

/// Sample mean of `alpha(G[W]) / n` over `samples` independent draws.
///
/// Samples are split into fixed chunks, chunk `c` using the ChaCha stream
/// `c` of `seed`, and summed as integers, so the result does not depend on
/// the thread count.
pub fn alpha_prime_mc_with(
    g: &Graph,
    samples: u64,
    seed: u64,
    law: SubsetLaw,
) -> Result<AlphaPrimeEstimate> {
    let n = g.n();
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "alpha' of the empty graph is undefined".into(),
        ));
    }
    if let SubsetLaw::FixedSize(m) = law {
        if m > n {
            return Err(Error::InvalidParameter(format!(
                "subset size {m} exceeds n = {n}"
            )));
        }
    }
    let solver = MisSolver::new(g);
    let (sum, sum_sq) = (0..samples.div_ceil(MC_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let len = MC_CHUNK.min(samples - c * MC_CHUNK);
            (0..len).fold((0u64, 0u64), |(s, q), _| {
                let a = solver.alpha_within(&draw_subset(&mut rng, n, law)).0 as u64;
                (s + a, q + a * a)
            })
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let k = samples as f64;
    let nf = n as f64;
    let mean = sum as f64 / k / nf;
    let (stderr, ci95) = if samples > 1 {
        let var = (sum_sq as f64 - sum as f64 * sum as f64 / k) / (k - 1.0) / (nf * nf);
        let se = (var.max(0.0) / k).sqrt();
        (Some(se), Some((mean - Z95 * se, mean + Z95 * se)))
    } else {
        (None, None)
    };
    Ok(AlphaPrimeEstimate {
        mean,
        exact: false,
        samples,
        stderr,
        ci95,
        rational: None,
        mean_alpha: None,
    })
}

/// Parameters of the deletion process at finite `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProcessParams {
    pub n: usize,
    #[serde(serialize_with = "ser_ratio_plain")]
    pub epsilon: Ratio<i64>,
    /// `floor((1/2 - eps) n)`
    pub i0: usize,
    /// Size of the final set `W`.
    pub target_size: usize,
    /// `(1/4 + eps - eps^2/2) n`
    #[serde(serialize_with = "ser_ratio_plain")]
    pub theta: Ratio<i64>,
}

fn ser_ratio_plain<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// `alpha / n - 1/4`.
pub fn epsilon_of(alpha: usize, n: usize) -> Ratio<i64> {
    Ratio::new(alpha as i64, n as i64) - Ratio::new(1, 4)
}

fn check_epsilon(epsilon: Ratio<i64>) -> Result<()> {
    if epsilon <= Ratio::from_integer(0) || epsilon >= Ratio::new(1, 4) {
        return Err(Error::Precondition(format!(
            "epsilon = {epsilon} is not in (0, 1/4)"
        )));
    }
    Ok(())
}

impl ProcessParams {
    /// `epsilon` defaults to `alpha/n - 1/4`, `target_size` to `round(n/2)`.
    pub fn new(
        n: usize,
        alpha: usize,
        epsilon: Option<Ratio<i64>>,
        target_size: Option<usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("empty graph".into()));
        }
        let epsilon = epsilon.unwrap_or_else(|| epsilon_of(alpha, n));
        check_epsilon(epsilon)?;
        let target_size = target_size.unwrap_or(n.div_ceil(2));
        let nr = Ratio::from_integer(n as i64);
        let i0 = ((Ratio::new(1, 2) - epsilon) * nr).floor().to_integer() as usize;
        let theta = (Ratio::new(1, 4) + epsilon - epsilon * epsilon / 2) * nr;
        if target_size >= n || i0 >= n - target_size {
            return Err(Error::Precondition(format!(
                "need i0 = {i0} < n - m = {} with m = {target_size} < n = {n}",
                n.saturating_sub(target_size)
            )));
        }
        Ok(Self {
            n,
            epsilon,
            i0,
            target_size,
            theta,
        })
    }

    pub fn steps(&self) -> usize {
        self.n - self.target_size
    }

    /// Steps `i0 < i <= n - m`.
    pub fn window(&self) -> usize {
        self.steps() - self.i0
    }

    pub fn below_theta(&self, alpha: usize) -> bool {
        Ratio::from_integer(alpha as i64) < self.theta
    }

    /// Step `i` is successful when `alpha(G_{i-1}) < theta` or the removal
    /// strictly lowers alpha.
    pub fn is_success(&self, alpha_before: usize, alpha_after: usize) -> bool {
        self.below_theta(alpha_before) || alpha_after < alpha_before
    }

    /// Steps whose kernel size is recorded and whose success rate is bounded below.
    pub fn qualifies(&self, i: usize, alpha_before: usize) -> bool {
        i > self.i0 && !self.below_theta(alpha_before)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProcessStep {
    pub i: usize,
    pub removed: usize,
    /// `alpha(G_i)`
    pub alpha: usize,
    pub success: bool,
    /// Kernel size of `G_{i-1}` on qualifying steps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProcessTrace {
    pub initial_alpha: usize,
    pub steps: Vec<ProcessStep>,
}

impl ProcessTrace {
    pub fn final_alpha(&self) -> usize {
        self.steps.last().map_or(self.initial_alpha, |s| s.alpha)
    }

    /// `alpha(G_{i-1})` for step index `idx` (0-based).
    pub fn alpha_before(&self, idx: usize) -> usize {
        if idx == 0 {
            self.initial_alpha
        } else {
            self.steps[idx - 1].alpha
        }
    }

    /// One JSON object per step.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            writeln!(
                out,
                "{}",
                serde_json::to_string(s).expect("step serialization cannot fail")
            )
            .expect("String write");
        }
        out
    }
}

/// Removes `n - m` uniformly random vertices one at a time, recording
/// `alpha` after each removal. `stream` selects an independent ChaCha
/// stream of `seed`.
pub fn run_deletion_process(
    g: &Graph,
    params: &ProcessParams,
    seed: u64,
    stream: u64,
) -> Result<ProcessTrace> {
    run_with_solver(&MisSolver::new(g), params, seed, stream)
}

fn run_with_solver(
    solver: &MisSolver,
    params: &ProcessParams,
    seed: u64,
    stream: u64,
) -> Result<ProcessTrace> {
    let n = solver.n();
    if n != params.n {
        return Err(Error::InvalidParameter(format!(
            "parameters for n = {} used on n = {n}",
            params.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut alive = VertexSet::full(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let initial_alpha = solver.alpha_within(&alive).0;
    let mut before = initial_alpha;
    let mut steps = Vec::with_capacity(params.steps());
    for i in 1..=params.steps() {
        let kernel_size = params.qualifies(i, before).then(|| {
            kernel_corona_within(solver, &alive, usize::MAX)
                .kernel
                .len()
        });
        let removed = remaining.swap_remove(rng.gen_range(0..remaining.len()));
        alive.remove(removed);
        let after = solver.alpha_within(&alive).0;
        steps.push(ProcessStep {
            i,
            removed,
            alpha: after,
            success: params.is_success(before, after),
            kernel_size,
        });
        before = after;
    }
    Ok(ProcessTrace {
        initial_alpha,
        steps,
    })
}

/// `count` traces on streams `0..count` of `seed`, in stream order.
pub fn run_traces(
    g: &Graph,
    params: &ProcessParams,
    seed: u64,
    count: usize,
) -> Result<Vec<ProcessTrace>> {
    let solver = MisSolver::new(g);
    (0..count as u64)
        .into_par_iter()
        .map(|s| run_with_solver(&solver, params, seed, s))
        .collect()
}

/// `P[Bin(trials, p) >= threshold]`.
pub fn binomial_tail(trials: usize, p: f64, threshold: f64) -> f64 {
    let start = threshold.max(0.0).ceil() as usize;
    if start > trials {
        return 0.0;
    }
    if start == 0 || p >= 1.0 {
        return 1.0;
    }
    let mut pmf = (1.0 - p).powi(trials as i32);
    let mut tail = 0.0;
    for k in 0..=trials {
        if k >= start {
            tail += pmf;
        }
        if k < trials {
            pmf *= (trials - k) as f64 / (k + 1) as f64 * p / (1.0 - p);
        }
    }
    tail.min(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuccessReport {
    pub traces: usize,
    /// `n - m - i0`
    pub window: usize,
    pub epsilon: f64,
    /// `eps^2 n / 2`
    pub required_successes: f64,
    /// `histogram[c]` traces had `c` successful steps in the window.
    pub histogram: Vec<u64>,
    pub mean_successes: f64,
    /// Fraction of traces reaching `required_successes`.
    pub empirical_tail: f64,
    /// `P[Bin(window, eps) >= required_successes]`
    pub binomial_tail: f64,
    pub qualifying_steps: u64,
    pub qualifying_successes: u64,
    pub qualifying_frequency: Option<f64>,
    pub qualifying_stderr: Option<f64>,
    /// Qualifying steps whose kernel is below `2 alpha(G_{i-1}) - |V_{i-1}|`.
    pub kernel_bound_violations: u64,
    /// Fraction of traces ending with `alpha(G[W]) < theta`.
    pub final_below_theta: f64,
}

impl SuccessReport {
    /// Qualifying success frequency is at least `eps - 3 stderr`.
    pub fn frequency_consistent(&self) -> bool {
        match (self.qualifying_frequency, self.qualifying_stderr) {
            (Some(f), Some(se)) => f >= self.epsilon - 3.0 * se,
            _ => true,
        }
    }
}

pub fn success_statistics(
    traces: &[ProcessTrace],
    params: &ProcessParams,
) -> Result<SuccessReport> {
    if traces.is_empty() {
        return Err(Error::InvalidParameter("no traces".into()));
    }
    let eps = *params.epsilon.numer() as f64 / *params.epsilon.denom() as f64;
    let required = eps * eps * params.n as f64 / 2.0;
    let window = params.window();
    let mut histogram = vec![0u64; window + 1];
    let (mut q_steps, mut q_succ, mut violations, mut below, mut reached) =
        (0u64, 0u64, 0u64, 0u64, 0u64);
    for trace in traces {
        let mut count = 0;
        for (idx, step) in trace.steps.iter().enumerate() {
            let before = trace.alpha_before(idx);
            if step.i > params.i0 && step.success {
                count += 1;
            }
            if params.qualifies(step.i, before) {
                q_steps += 1;
                q_succ += step.success as u64;
                let vertices = params.n - (step.i - 1);
                if let Some(k) = step.kernel_size {
                    if k + vertices < 2 * before {
                        violations += 1;
                    }
                }
            }
        }
        histogram[count] += 1;
        reached += (count as f64 >= required) as u64;
        below += params.below_theta(trace.final_alpha()) as u64;
    }
    let t = traces.len() as f64;
    let mean_successes = histogram
        .iter()
        .enumerate()
        .map(|(c, &h)| c as f64 * h as f64)
        .sum::<f64>()
        / t;
    let freq = (q_steps > 0).then(|| q_succ as f64 / q_steps as f64);
    let stderr = freq.map(|f| (f * (1.0 - f) / q_steps as f64).sqrt());
    Ok(SuccessReport {
        traces: traces.len(),
        window,
        epsilon: eps,
        required_successes: required,
        histogram,
        mean_successes,
        empirical_tail: reached as f64 / t,
        binomial_tail: binomial_tail(window, eps, required),
        qualifying_steps: q_steps,
        qualifying_successes: q_succ,
        qualifying_frequency: freq,
        qualifying_stderr: stderr,
        kernel_bound_violations: violations,
        final_below_theta: below as f64 / t,
    })
}

/// `1/4 + eps - eps^2/3` for `0 < eps < 1/4`.
pub fn alpha_prime_upper_bound(epsilon: Ratio<i64>) -> Result<Ratio<i64>> {
    check_epsilon(epsilon)?;
    Ok(Ratio::new(1, 4) + epsilon - epsilon * epsilon / 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorMode {
    Exact,
    Mc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaPrimeBoundReport {
    pub n: usize,
    pub alpha: usize,
    #[serde(serialize_with = "ser_ratio_plain")]
    pub epsilon: Ratio<i64>,
    #[serde(serialize_with = "ser_ratio_plain")]
    pub bound: Ratio<i64>,
    pub bound_value: f64,
    pub estimate: AlphaPrimeEstimate,
    /// The bound holds at this `n` (for Monte Carlo: the upper CI end is below it).
    pub holds_at_this_n: bool,
    /// The verdict rests on a confidence interval.
    pub statistical: bool,
}

/// Compares `alpha'(G)` with `1/4 + eps - eps^2/3`, `eps = alpha/n - 1/4`.
///
/// The bound is asymptotic; a finite-`n` miss does not contradict it.
pub fn verify_alpha_prime_bound(
    g: &Graph,
    mode: EstimatorMode,
    samples: u64,
    seed: u64,
) -> Result<AlphaPrimeBoundReport> {
    let n = g.n();
    let alpha = MisSolver::new(g).alpha().0;
    if n == 0 {
        return Err(Error::InvalidParameter("empty graph".into()));
    }
    let epsilon = epsilon_of(alpha, n);
    let bound = alpha_prime_upper_bound(epsilon)?;
    let bound_value = *bound.numer() as f64 / *bound.denom() as f64;
    let estimate = match mode {
        EstimatorMode::Exact => alpha_prime_exact(g)?,
        EstimatorMode::Mc => alpha_prime_mc(g, samples, seed)?,
    };
    let holds_at_this_n = match (&estimate.rational, estimate.ci95) {
        (Some(r), _) => {
            Ratio::new(*r.numer() as i128, *r.denom() as i128)
                <= Ratio::new(*bound.numer() as i128, *bound.denom() as i128)
        }
        (None, Some((_, hi))) => hi <= bound_value,
        (None, None) => estimate.mean <= bound_value,
    };
    Ok(AlphaPrimeBoundReport {
        n,
        alpha,
        epsilon,
        bound,
        bound_value,
        estimate,
        holds_at_this_n,
        statistical: !matches!(mode, EstimatorMode::Exact),
    })
}
