//! Subcommand implementations behind the `hitlab` binary.
//!
//! Each command returns an [`Outcome`]: a human-readable table, a JSON
//! artifact echoing the resolved configuration, an optional CSV body and a
//! pass flag that becomes the exit code.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use hitlab_core::alpha_prime;
use hitlab_core::covering::{self, CoveringCode};
use hitlab_core::families::{hamming, shift};
use hitlab_core::{
    hajnal, hitting, Graph, HammingSpec, MisFamily, MisSolver, ProcessParams, ShiftSpec, SubsetLaw,
    VertexSet,
};

/// Largest `k` for which `shift` computes the exact hitting number.
pub const MAX_EXACT_SHIFT_K: usize = 4;
/// Largest `m` for which `hamming` runs the generic exact alpha and enumeration.
pub const MAX_EXACT_ALPHA_M: usize = 6;
/// Largest `m` for the exact hitting-set / covering-code search.
pub const MAX_EXACT_CODE_M: usize = 8;

pub struct Outcome {
    pub table: String,
    pub json: Value,
    pub csv: Option<String>,
    pub jsonl: Option<String>,
    pub passed: bool,
}

/// Both families are complete and hold the same sets.
fn same_family(a: &MisFamily, b: &MisFamily) -> bool {
    let (mut a, mut b) = (a.clone(), b.clone());
    a.canonicalize();
    b.canonicalize();
    a.complete && b.complete && a == b
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// Where a command gets its graph from.
#[derive(Args, Clone, Debug, Default)]
pub struct GraphSource {
    /// Graph file (JSON `{"n":..,"edges":..}` or DIMACS).
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Shift graph `G_k`.
    #[arg(long)]
    pub k: Option<usize>,
    /// Hamming graph `G_{m,t}` word length (with `--t`).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
}

enum Loaded {
    File(Graph),
    Shift(Graph, ShiftSpec),
    Hamming(Graph, HammingSpec),
}

impl Loaded {
    fn graph(&self) -> &Graph {
        match self {
            Loaded::File(g) | Loaded::Shift(g, _) | Loaded::Hamming(g, _) => g,
        }
    }
}

impl GraphSource {
    fn describe(&self) -> Value {
        json!({
            "graph": self.graph.as_ref().map(|p| p.display().to_string()),
            "k": self.k, "m": self.m, "t": self.t,
        })
    }

    fn load(&self) -> Result<Loaded> {
        match (&self.graph, self.k, self.m, self.t) {
            (Some(path), None, None, None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(Loaded::File(
                    Graph::parse(&text).with_context(|| format!("parsing {}", path.display()))?,
                ))
            }
            (None, Some(k), None, None) => {
                let (g, spec) = shift::build_shift_graph(k)?;
                Ok(Loaded::Shift(g, spec))
            }
            (None, None, Some(m), Some(t)) => {
                let spec = HammingSpec::unconstrained(m, t)?;
                Ok(Loaded::Hamming(hamming::build_hamming_graph(&spec)?, spec))
            }
            _ => bail!("give exactly one graph source: --graph PATH, --k K, or --m M --t T"),
        }
    }
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.with_context(|| format!("{what} is stochastic and needs an explicit --seed"))
}

fn ratio_str(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    if let Some((p, q)) = s.split_once('/') {
        let (p, q): (i64, i64) = (p.trim().parse()?, q.trim().parse()?);
        if q == 0 {
            bail!("zero denominator in {s:?}");
        }
        return Ok(Ratio::new(p, q));
    }
    // decimal: exact over a power of ten
    let s = s.trim();
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = frac.len() as u32;
    if digits > 12 {
        bail!("too many decimal places in {s:?}");
    }
    let den = 10i64.pow(digits);
    let sign = if int.starts_with('-') { -1 } else { 1 };
    let whole: i64 = if int.is_empty() || int == "-" {
        0
    } else {
        int.parse()?
    };
    let part: i64 = if frac.is_empty() { 0 } else { frac.parse()? };
    Ok(Ratio::new(whole * den + sign * part, den))
}

// ---------------------------------------------------------------- shift

#[derive(Args, Clone, Debug)]
pub struct ShiftArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = hitlab_core::DEFAULT_CAP)]
    pub cap: usize,
}

pub fn cmd_shift(args: &ShiftArgs) -> Result<Outcome> {
    if args.k == 0 {
        bail!("k must be at least 1");
    }
    if args.k > MAX_EXACT_SHIFT_K {
        bail!("k = {} is beyond the exact hitting-number range; the largest feasible k is {MAX_EXACT_SHIFT_K}", args.k);
    }
    let k = args.k;
    let (g, spec) = shift::build_shift_graph(k)?;
    let n = g.n();
    eprintln!("shift: enumerating maximum independent sets of G_{k} (n = {n})");
    let family = hitlab_core::enumerate_mis(&g, args.cap);
    if !family.complete {
        bail!(
            "more than {} maximum independent sets; raise --cap",
            args.cap
        );
    }
    let structural = shift::shift_mis_family(&spec);
    let family_is_partitions = same_family(&family, &structural);
    eprintln!(
        "shift: solving the minimum hitting set over {} sets",
        family.len()
    );
    let h = hitting::min_hitting_set(&family, n)?;
    let cycle = shift::shift_cycle_hitting_set(&spec);
    let cycle_hits = hitting::hits_all(&cycle, &family.sets);

    let header_n = 2 * k * (k - 1);
    let root_proof = (n as f64 / 2.0).sqrt();
    let root_header = (header_n as f64 / 2.0).sqrt();
    let alpha_ok = family.alpha == k * k;
    let h_ok = h.size == k + 1;
    let passed = alpha_ok && h_ok && family_is_partitions && cycle_hits;

    let mut table = String::new();
    writeln!(table, "shift graph G_{k}").unwrap();
    writeln!(table, "  n                    {n}  (2k(2k-1))").unwrap();
    writeln!(
        table,
        "  alpha                {}  [{}: k^2 = {}]",
        family.alpha,
        mark(alpha_ok),
        k * k
    )
    .unwrap();
    writeln!(
        table,
        "  maximum ind. sets    {}  [{}: all of S x T form]",
        family.len(),
        mark(family_is_partitions)
    )
    .unwrap();
    writeln!(
        table,
        "  h (exact)            {}  [{}: k+1 = {}]",
        h.size,
        mark(h_ok),
        k + 1
    )
    .unwrap();
    writeln!(table, "  optimal hitting set  {:?}", spec.pairs(&h.set)).unwrap();
    writeln!(
        table,
        "  cycle certificate    {:?}  [{}]",
        spec.pairs(&cycle),
        mark(cycle_hits)
    )
    .unwrap();
    writeln!(
        table,
        "  sqrt(n/2), n=2k(2k-1) {root_proof:.4}  h > it: {}",
        (h.size as f64) > root_proof
    )
    .unwrap();
    writeln!(
        table,
        "  sqrt(n/2), n=2k(k-1)  {root_header:.4}  h > it: {}",
        (h.size as f64) > root_header
    )
    .unwrap();

    let json = json!({
        "command": "shift",
        "config": { "k": k, "cap": args.cap },
        "n": n,
        "alpha": family.alpha,
        "mis_count": family.len(),
        "mis_are_partition_sets": family_is_partitions,
        "h": h.size,
        "hitting_set": spec.pairs(&h.set),
        "cycle_certificate": spec.pairs(&cycle),
        "cycle_hits_all": cycle_hits,
        "sqrt_half_n": { "n_2k_2k_minus_1": root_proof, "n_2k_k_minus_1": { "n": header_n, "value": root_header } },
        "passed": passed,
    });
    Ok(Outcome {
        table,
        json,
        csv: None,
        jsonl: None,
        passed,
    })
}

// ---------------------------------------------------------------- hamming

#[derive(Args, Clone, Debug)]
pub struct HammingArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub t: usize,
    /// Allow `4t^2 > m`.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = hitlab_core::DEFAULT_CAP)]
    pub cap: usize,
}

pub fn cmd_hamming(args: &HammingArgs) -> Result<Outcome> {
    let spec = if args.force {
        HammingSpec::unconstrained(args.m, args.t)?
    } else {
        HammingSpec::new(args.m, args.t)?
    };
    let (m, t, r) = (spec.m(), spec.t(), spec.radius());
    let kleitman = hamming::kleitman_alpha(&spec);
    let mut table = String::new();
    let mut passed = true;
    writeln!(
        table,
        "Hamming graph G_{{{m},{t}}}  (n = 2^{m}, ball radius m/2-t = {r})"
    )
    .unwrap();
    writeln!(table, "  kleitman alpha       {kleitman}").unwrap();

    let mut exact_alpha = Value::Null;
    let mut family_matches = Value::Null;
    if m <= MAX_EXACT_ALPHA_M {
        let g = hamming::build_hamming_graph(&spec)?;
        let fam = hitlab_core::enumerate_mis(&g, args.cap);
        let ok = kleitman == fam.alpha.into();
        let balls = hamming::hamming_mis_family(&spec)?;
        let same = same_family(&fam, &balls);
        passed &= ok && same;
        writeln!(
            table,
            "  exact alpha          {}  [{}]",
            fam.alpha,
            mark(ok)
        )
        .unwrap();
        writeln!(
            table,
            "  MIS = radius-{r} balls  {}  [{}]",
            fam.len(),
            mark(same)
        )
        .unwrap();
        exact_alpha = json!(fam.alpha);
        family_matches = json!(same);
    }

    let mut exact_h = Value::Null;
    if m <= MAX_EXACT_CODE_M && spec.is_constrained() {
        eprintln!("hamming: exact hitting set over the 2^{m} balls");
        let balls = hamming::hamming_mis_family(&spec)?;
        let h = hitting::min_hitting_set(&balls, 1 << m)?;
        let code = covering::hitting_set_to_code(&spec, &h.set)?;
        let radius = covering::covering_radius(&code)?;
        let ok = radius <= r;
        passed &= ok;
        writeln!(
            table,
            "  exact h              {}  (code radius {radius}) [{}]",
            h.size,
            mark(ok)
        )
        .unwrap();
        exact_h = json!({
            "h": h.size,
            "code": code.words().iter().map(|&w| hamming::word_to_string(w, m)).collect::<Vec<_>>(),
            "covering_radius": radius,
        });
    }

    let h0 = covering::hadamard_order(t);
    let mut hadamard = Value::Null;
    if m >= h0 {
        let code = covering::build_hadamard_covering_code(&spec)?;
        let radius = if m <= covering::MAX_SCAN_M {
            Some(covering::covering_radius(&code)?)
        } else {
            None
        };
        let ok = radius.is_none_or(|x| x <= r);
        passed &= ok;
        match radius {
            Some(x) => writeln!(
                table,
                "  hadamard code        size {} (order {h0}), radius {x}  [{}]",
                code.len(),
                mark(ok)
            ),
            None => writeln!(
                table,
                "  hadamard code        size {} (order {h0}), radius unverified",
                code.len()
            ),
        }
        .unwrap();
        hadamard = json!({ "order": h0, "size": code.len(), "covering_radius": radius });
    } else {
        writeln!(table, "  hadamard code        needs m >= {h0}").unwrap();
    }
    let disc = covering::discrepancy_lower_bound(t);
    let kneser = covering::kneser_lower_bound(&spec);
    writeln!(table, "  discrepancy bound    h >= {disc}").unwrap();
    writeln!(table, "  kneser bound         h >= {kneser}").unwrap();

    let json = json!({
        "command": "hamming",
        "config": { "m": m, "t": t, "force": args.force, "cap": args.cap, "constrained": spec.is_constrained() },
        "radius": r,
        "kleitman_alpha": kleitman.to_string(),
        "exact_alpha": exact_alpha,
        "mis_family_is_balls": family_matches,
        "exact_h": exact_h,
        "hadamard": hadamard,
        "discrepancy_lower_bound": disc,
        "kneser_lower_bound": kneser,
        "passed": passed,
    });
    Ok(Outcome {
        table,
        json,
        csv: None,
        jsonl: None,
        passed,
    })
}

// ---------------------------------------------------------------- hajnal-corpus

#[derive(Args, Clone, Debug)]
pub struct CorpusArgs {
    /// Every labelled graph up to this many vertices.
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
    /// Number of seeded random graphs.
    #[arg(long, default_value_t = 10_000)]
    pub random: usize,
    #[arg(long, default_value_t = 14)]
    pub random_max_n: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn cmd_hajnal_corpus(args: &CorpusArgs, want_csv: bool) -> Result<Outcome> {
    let seed = if args.random > 0 {
        require_seed(args.seed, "the random corpus")?
    } else {
        args.seed.unwrap_or(0)
    };
    let cfg = hajnal::CorpusConfig {
        exhaustive_max_n: args.max_n,
        random_graphs: args.random,
        random_max_n: args.random_max_n,
        seed,
    };
    eprintln!(
        "hajnal-corpus: all graphs on <= {} vertices plus {} random graphs",
        args.max_n, args.random
    );
    let mut buf = Vec::new();
    let summary = hajnal::hajnal_corpus(
        &cfg,
        want_csv.then_some(&mut buf as &mut dyn std::io::Write),
    )?;
    let passed = summary.violations == 0;
    let mut table = String::new();
    writeln!(table, "Hajnal |kernel| + |corona| >= 2 alpha").unwrap();
    writeln!(table, "  graphs checked   {}", summary.graphs).unwrap();
    writeln!(
        table,
        "  violations       {}  [{}]",
        summary.violations,
        mark(passed)
    )
    .unwrap();
    let json =
        json!({ "command": "hajnal-corpus", "config": cfg, "summary": summary, "passed": passed });
    let csv = want_csv.then(|| String::from_utf8(buf).expect("csv is ascii"));
    Ok(Outcome {
        table,
        json,
        csv,
        jsonl: None,
        passed,
    })
}

// ---------------------------------------------------------------- alpha-prime

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Mc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// Uniform over all subsets.
    Binomial,
    /// Uniform over subsets of size round(n/2).
    Half,
}

#[derive(Args, Clone, Debug)]
pub struct AlphaPrimeArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Law::Binomial)]
    pub law: Law,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn cmd_alpha_prime(args: &AlphaPrimeArgs) -> Result<Outcome> {
    let loaded = args.source.load()?;
    let g = loaded.graph();
    let n = g.n();
    let law = match args.law {
        Law::Binomial => SubsetLaw::Binomial,
        Law::Half => SubsetLaw::FixedSize(n.div_ceil(2)),
    };
    let (estimate, seed) = match args.mode {
        Mode::Exact => (alpha_prime::alpha_prime_exact_with(g, law)?, None),
        Mode::Mc => {
            let seed = require_seed(args.seed, "Monte Carlo mode")?;
            (
                alpha_prime::alpha_prime_mc_with(g, args.samples, seed, law)?,
                Some(seed),
            )
        }
    };
    let alpha = MisSolver::new(g).alpha().0;
    let mut table = String::new();
    writeln!(table, "alpha' on n = {n}, alpha = {alpha}").unwrap();
    writeln!(table, "  mean             {:.6}", estimate.mean).unwrap();
    if let Some(r) = &estimate.rational {
        writeln!(table, "  exact            {}/{}", r.numer(), r.denom()).unwrap();
    }
    if let (Some(se), Some((lo, hi))) = (estimate.stderr, estimate.ci95) {
        writeln!(table, "  stderr           {se:.6}").unwrap();
        writeln!(table, "  95% interval     [{lo:.6}, {hi:.6}]").unwrap();
    }

    let mut bound_report = Value::Null;
    if 4 * alpha > n && 4 * alpha < 2 * n {
        let eps = alpha_prime::epsilon_of(alpha, n);
        let bound = alpha_prime::alpha_prime_upper_bound(eps)?;
        let bound_f = *bound.numer() as f64 / *bound.denom() as f64;
        let upper = estimate.ci95.map_or(estimate.mean, |(_, hi)| hi);
        let holds = upper <= bound_f;
        writeln!(
            table,
            "  eps = alpha/n - 1/4 = {};  1/4 + eps - eps^2/3 = {} = {bound_f:.6}",
            ratio_str(&eps),
            ratio_str(&bound)
        )
        .unwrap();
        writeln!(
            table,
            "  bound holds at this n: {holds}{}",
            if estimate.exact { "" } else { " (statistical)" }
        )
        .unwrap();
        bound_report = json!({ "epsilon": ratio_str(&eps), "bound": ratio_str(&bound), "holds_at_this_n": holds });
    }
    let json = json!({
        "command": "alpha-prime",
        "config": {
            "source": args.source.describe(), "mode": format!("{:?}", args.mode).to_lowercase(),
            "law": format!("{:?}", args.law).to_lowercase(), "samples": args.samples, "seed": seed,
        },
        "n": n,
        "alpha": alpha,
        "estimate": estimate,
        "upper_bound": bound_report,
        "passed": true,
    });
    Ok(Outcome {
        table,
        json,
        csv: None,
        jsonl: None,
        passed: true,
    })
}

// ---------------------------------------------------------------- process

#[derive(Args, Clone, Debug)]
pub struct ProcessArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Override `eps` (fraction `p/q` or decimal); default `alpha/n - 1/4`.
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Final subset size `m`; default `round(n/2)`.
    #[arg(long)]
    pub target_size: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub traces: usize,
}

pub fn cmd_process(args: &ProcessArgs, want_jsonl: bool) -> Result<Outcome> {
    let seed = require_seed(args.seed, "the deletion process")?;
    if args.traces == 0 {
        bail!("need at least one trace");
    }
    let loaded = args.source.load()?;
    let g = loaded.graph();
    let alpha = MisSolver::new(g).alpha().0;
    let epsilon = args.epsilon.as_deref().map(parse_ratio).transpose()?;
    let params = ProcessParams::new(g.n(), alpha, epsilon, args.target_size)?;
    eprintln!(
        "process: {} traces of {} steps",
        args.traces,
        params.steps()
    );
    let traces = alpha_prime::run_traces(g, &params, seed, args.traces)?;
    let stats = alpha_prime::success_statistics(&traces, &params)?;
    let passed = stats.kernel_bound_violations == 0 && stats.frequency_consistent();

    let mut table = String::new();
    writeln!(table, "deletion process on n = {}, alpha = {alpha}", g.n()).unwrap();
    writeln!(
        table,
        "  eps {}  i0 {}  m {}  theta {}",
        ratio_str(&params.epsilon),
        params.i0,
        params.target_size,
        ratio_str(&params.theta)
    )
    .unwrap();
    writeln!(
        table,
        "  traces {}  window steps {}",
        stats.traces, stats.window
    )
    .unwrap();
    writeln!(
        table,
        "  mean successes in window     {:.4}",
        stats.mean_successes
    )
    .unwrap();
    writeln!(
        table,
        "  P[successes >= eps^2 n/2]    empirical {:.4}, binomial {:.4}",
        stats.empirical_tail, stats.binomial_tail
    )
    .unwrap();
    if let (Some(f), Some(se)) = (stats.qualifying_frequency, stats.qualifying_stderr) {
        writeln!(table, "  success rate at qualifying steps {f:.4} +- {se:.4} over {} steps  [{}: >= eps - 3se]", stats.qualifying_steps, mark(stats.frequency_consistent())).unwrap();
    }
    writeln!(
        table,
        "  kernel bound violations      {}  [{}]",
        stats.kernel_bound_violations,
        mark(stats.kernel_bound_violations == 0)
    )
    .unwrap();
    writeln!(
        table,
        "  final alpha < theta          {:.4}",
        stats.final_below_theta
    )
    .unwrap();

    let jsonl = want_jsonl.then(|| {
        let mut out = String::new();
        for (idx, t) in traces.iter().enumerate() {
            for line in t.to_json_lines().lines() {
                // tag each step with its trace
                writeln!(out, "{{\"trace\":{idx},{}", &line[1..]).unwrap();
            }
        }
        out
    });
    let json = json!({
        "command": "process",
        "config": {
            "source": args.source.describe(), "epsilon": args.epsilon, "target_size": args.target_size,
            "seed": seed, "traces": args.traces,
        },
        "params": params,
        "statistics": stats,
        "passed": passed,
    });
    Ok(Outcome {
        table,
        json,
        csv: None,
        jsonl,
        passed,
    })
}

// ---------------------------------------------------------------- covering-code

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Hadamard,
    Random,
    /// Read the code from `--input`.
    File,
}

#[derive(Args, Clone, Debug)]
pub struct CodeArgs {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_enum, default_value_t = Construction::Hadamard)]
    pub construction: Construction,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Write the code in text form.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Random prefixes per sample; default `2 * 4t^2`.
    #[arg(long)]
    pub prefixes: Option<usize>,
    #[arg(long)]
    pub force: bool,
}

pub fn cmd_covering_code(args: &CodeArgs) -> Result<Outcome> {
    let spec_of = |m: Option<usize>, t: Option<usize>| -> Result<HammingSpec> {
        let (Some(m), Some(t)) = (m, t) else {
            bail!("--m and --t are required for this construction")
        };
        Ok(if args.force {
            HammingSpec::unconstrained(m, t)?
        } else {
            HammingSpec::new(m, t)?
        })
    };
    let mut extra = json!({});
    let code = match args.construction {
        Construction::Hadamard => {
            covering::build_hadamard_covering_code(&spec_of(args.m, args.t)?)?
        }
        Construction::Random => {
            let seed = require_seed(args.seed, "the random construction")?;
            let spec = spec_of(args.m, args.t)?;
            let prefixes = args.prefixes.unwrap_or(8 * spec.t() * spec.t());
            let out = covering::build_random_covering_code(&spec, prefixes, args.trials, seed)?;
            extra = json!({ "seed": seed, "prefixes": prefixes, "attempts": out.attempts, "verified": out.verified });
            out.code
        }
        Construction::File => {
            let path = args
                .input
                .as_ref()
                .context("--input is required with --construction file")?;
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            CoveringCode::from_text(&text).with_context(|| format!("parsing {}", path.display()))?
        }
    };
    if let Some(path) = &args.output {
        std::fs::write(path, code.to_text())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let (m, t, target) = (code.m(), code.t(), code.target_radius());
    let mut table = String::new();
    writeln!(
        table,
        "covering code: m = {m}, t = {t}, {} words, target radius {target}",
        code.len()
    )
    .unwrap();
    let (radius, far, passed) = if m <= covering::MAX_SCAN_M {
        let radius = covering::covering_radius(&code)?;
        let far = covering::find_far_point(&code, t)?;
        let consistent = far.is_none() == (radius <= target);
        writeln!(
            table,
            "  covering radius  {radius}  [{}]",
            mark(radius <= target)
        )
        .unwrap();
        match far {
            Some(x) => writeln!(
                table,
                "  far word         {}",
                hamming::word_to_string(x, m)
            )
            .unwrap(),
            None => writeln!(table, "  far word         none").unwrap(),
        }
        (
            Some(radius),
            far.map(|x| hamming::word_to_string(x, m)),
            consistent && radius <= target,
        )
    } else {
        writeln!(
            table,
            "  covering radius  not verifiable beyond m = {}",
            covering::MAX_SCAN_M
        )
        .unwrap();
        (None, None, true)
    };
    writeln!(
        table,
        "  lower bounds     discrepancy {}, kneser {}",
        covering::discrepancy_lower_bound(t),
        2 * t
    )
    .unwrap();
    let json = json!({
        "command": "covering-code",
        "config": {
            "m": m, "t": t, "construction": format!("{:?}", args.construction).to_lowercase(),
            "input": args.input.as_ref().map(|p| p.display().to_string()), "trials": args.trials, "force": args.force,
        },
        "construction": extra,
        "size": code.len(),
        "target_radius": target,
        "covering_radius": radius,
        "far_word": far,
        "discrepancy_lower_bound": covering::discrepancy_lower_bound(t),
        "kneser_lower_bound": 2 * t,
        "words": code.words().iter().map(|&w| hamming::word_to_string(w, m)).collect::<Vec<_>>(),
        "passed": passed,
    });
    Ok(Outcome {
        table,
        json,
        csv: None,
        jsonl: None,
        passed,
    })
}

// ---------------------------------------------------------------- hitting-set

#[derive(Args, Clone, Debug)]
pub struct HittingArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, default_value_t = hitlab_core::DEFAULT_CAP)]
    pub cap: usize,
    /// Use the known family (S x T sets or Hamming balls) instead of enumeration.
    #[arg(long)]
    pub structural: bool,
}

pub fn cmd_hitting_set(args: &HittingArgs) -> Result<Outcome> {
    let loaded = args.source.load()?;
    let g = loaded.graph();
    let family = match (&loaded, args.structural) {
        (Loaded::Shift(_, spec), true) => shift::shift_mis_family(spec),
        (Loaded::Hamming(_, spec), true) => hamming::hamming_mis_family(spec)?,
        (Loaded::File(_), true) => bail!("--structural needs --k or --m/--t"),
        (_, false) => {
            let fam = hitlab_core::enumerate_mis(g, args.cap);
            if !fam.complete {
                bail!(hitlab_core::Error::FamilyTooLarge { cap: args.cap });
            }
            fam
        }
    };
    let result = hitting::min_hitting_set(&family, g.n())?;
    let greedy = hitting::greedy_hitting_set(&family.sets, g.n())?;
    let passed = hitting::hits_all(&result.set, &family.sets) && greedy.len() >= result.size;
    let mut table = String::new();
    writeln!(
        table,
        "hitting number on n = {}: alpha = {}, {} maximum independent sets",
        g.n(),
        family.alpha,
        family.len()
    )
    .unwrap();
    writeln!(
        table,
        "  h                {}  (optimal: {})",
        result.size, result.optimal
    )
    .unwrap();
    writeln!(table, "  vertices         {:?}", result.set.to_vec()).unwrap();
    writeln!(table, "  greedy size      {}", greedy.len()).unwrap();
    let json = json!({
        "command": "hitting-set",
        "config": { "source": args.source.describe(), "cap": args.cap, "structural": args.structural },
        "alpha": family.alpha,
        "mis_count": family.len(),
        "result": result,
        "greedy_size": greedy.len(),
        "passed": passed,
    });
    Ok(Outcome {
        table,
        json,
        csv: None,
        jsonl: None,
        passed,
    })
}

/// Parses a vertex list like `0,3,7`.
pub fn parse_vertices(n: usize, s: &str) -> Result<VertexSet> {
    let idx = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .with_context(|| format!("bad vertex {p:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexSet::from_indices(n, idx)?)
}
