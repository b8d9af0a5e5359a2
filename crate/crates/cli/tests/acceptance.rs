//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hitlab_core::alpha_prime::{self, alpha_prime_exact, alpha_prime_mc, alpha_prime_upper_bound};
use hitlab_core::covering::{self, CoveringCode};
use hitlab_core::families::{hamming, shift};
use hitlab_core::hajnal::kernel_corona;
use hitlab_core::hajnal::{self, CorpusConfig};
use hitlab_core::hitting::{hits_all, min_hitting_set};
use hitlab_core::{
    enumerate_mis, Graph, HammingSpec, MisFamily, ProcessParams, VertexSet, DEFAULT_CAP,
};
use num_rational::Ratio;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sorted(f: &MisFamily) -> Vec<VertexSet> {
    let mut s = f.sets.clone();
    s.sort();
    s
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn shift_structure() -> Check {
    let mut notes = Vec::new();
    for k in [2usize, 3, 4] {
        let (g, spec) = shift::build_shift_graph(k).map_err(|e| e.to_string())?;
        let fam = enumerate_mis(&g, DEFAULT_CAP);
        ensure(fam.complete, format!("k={k}: enumeration incomplete"))?;
        ensure(
            fam.alpha == k * k,
            format!("k={k}: alpha {} != {}", fam.alpha, k * k),
        )?;
        let expected = binom(2 * k as u64, k as u64) as usize;
        ensure(
            fam.len() == expected,
            format!("k={k}: {} sets, expected {expected}", fam.len()),
        )?;
        ensure(
            sorted(&fam) == sorted(&shift::shift_mis_family(&spec)),
            format!("k={k}: family is not the S x T family"),
        )?;
        let h = min_hitting_set(&fam, g.n()).map_err(|e| e.to_string())?;
        ensure(
            h.optimal && h.size == k + 1,
            format!("k={k}: h = {}", h.size),
        )?;
        notes.push(format!(
            "k={k}: n={} alpha={} |MIS|={} h={}",
            g.n(),
            fam.alpha,
            fam.len(),
            h.size
        ));
    }
    Ok(notes.join("; "))
}

fn hitting_lower_bound() -> Check {
    // k = 2: every set of size <= 2.
    let (g, spec) = shift::build_shift_graph(2).map_err(|e| e.to_string())?;
    let fam = enumerate_mis(&g, DEFAULT_CAP);
    let n = g.n();
    let mut checked = 0u64;
    for a in 0..n {
        for b in a..n {
            let h = VertexSet::from_indices(n, [a, b]).unwrap();
            ensure(
                !hits_all(&h, &fam.sets),
                format!("k=2: {:?} hits every MIS", spec.pairs(&h)),
            )?;
            checked += 1;
        }
    }
    ensure(
        !hits_all(&VertexSet::empty(n), &fam.sets),
        "k=2: empty set hits",
    )?;
    let cycle = shift::shift_cycle_hitting_set(&spec);
    ensure(
        cycle.len() == 3 && hits_all(&cycle, &fam.sets),
        "k=2: cycle fails",
    )?;

    // k = 3: seeded random sets of size 1..=3, each with an explicit avoided MIS.
    let (g, spec) = shift::build_shift_graph(3).map_err(|e| e.to_string())?;
    let fam = enumerate_mis(&g, DEFAULT_CAP);
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(20_231);
    let trials = 10_000;
    for _ in 0..trials {
        let size = rng.gen_range(1..=3);
        let h = VertexSet::from_indices(n, sample(&mut rng, n, size)).unwrap();
        ensure(
            !hits_all(&h, &fam.sets),
            format!("k=3: {:?} hits every MIS", spec.pairs(&h)),
        )?;
        let part = shift::shift_avoiding_partition(&spec, &h).map_err(|e| e.to_string())?;
        let s =
            part.ok_or_else(|| format!("k=3: no avoiding partition for {:?}", spec.pairs(&h)))?;
        let witness = shift::shift_mis_from_partition(&spec, &s).map_err(|e| e.to_string())?;
        ensure(
            !witness.intersects(&h),
            "k=3: partition witness meets the set",
        )?;
    }
    let cycle = shift::shift_cycle_hitting_set(&spec);
    ensure(
        cycle.len() == 4 && hits_all(&cycle, &fam.sets),
        "k=3: cycle fails",
    )?;
    Ok(format!(
        "k=2: {checked} sets exhaustive; k=3: {trials} random sets; cycles hit all"
    ))
}

fn hamming_family() -> Check {
    let mut notes = Vec::new();
    for (m, t) in [(4usize, 1usize), (6, 1)] {
        let spec = HammingSpec::new(m, t).map_err(|e| e.to_string())?;
        let g = hamming::build_hamming_graph(&spec).map_err(|e| e.to_string())?;
        let kleitman = hamming::kleitman_alpha(&spec);
        let balls = hamming::hamming_mis_family(&spec).map_err(|e| e.to_string())?;
        ensure(balls.len() == 1 << m, "wrong number of balls")?;
        let (alpha, _) = hitlab_core::alpha(&g);
        ensure(
            BigUint::from(alpha) == kleitman,
            format!("({m},{t}): alpha {alpha} != {kleitman}"),
        )?;
        for b in &balls.sets {
            ensure(
                g.is_independent(b) && b.len() == alpha,
                format!("({m},{t}): ball not a maximum independent set"),
            )?;
        }
        if m == 4 {
            let fam = enumerate_mis(&g, DEFAULT_CAP);
            ensure(
                fam.complete && sorted(&fam) == sorted(&balls),
                "(4,1): family differs from balls",
            )?;
        }
        notes.push(format!("({m},{t}): alpha={alpha}"));
    }
    Ok(notes.join("; "))
}

fn code_correspondence() -> Check {
    let spec = HammingSpec::new(4, 1).map_err(|e| e.to_string())?;
    let g = hamming::build_hamming_graph(&spec).map_err(|e| e.to_string())?;
    let fam = enumerate_mis(&g, DEFAULT_CAP);
    let h = min_hitting_set(&fam, g.n()).map_err(|e| e.to_string())?;
    let code = covering::exact_min_code(4, 1).map_err(|e| e.to_string())?;
    ensure(
        h.size == code.len(),
        format!("h = {} but minimum code has {} words", h.size, code.len()),
    )?;
    let as_code = covering::hitting_set_to_code(&spec, &h.set).map_err(|e| e.to_string())?;
    ensure(
        covering::covering_radius(&as_code).map_err(|e| e.to_string())? <= 1,
        "hitting set is not a radius-1 code",
    )?;
    Ok(format!("h(G_{{4,1}}) = {} = K(4,1)", h.size))
}

fn hadamard_bound() -> Check {
    let mut notes = Vec::new();
    for m in [8usize, 10, 12] {
        let spec = HammingSpec::new(m, 1).map_err(|e| e.to_string())?;
        let code = covering::build_hadamard_covering_code(&spec).map_err(|e| e.to_string())?;
        let r = covering::covering_radius(&code).map_err(|e| e.to_string())?;
        ensure(
            code.len() == 16 && r < m / 2,
            format!("m={m}: size {} radius {r}", code.len()),
        )?;
        notes.push(format!("m={m}: radius {r}"));
    }
    Ok(notes.join("; "))
}

fn discrepancy_mechanism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let (mut far, mut near) = (0, 0);
    for _ in 0..2000 {
        let m = 2 * rng.gen_range(2..=6usize);
        let t = rng.gen_range(1..=m / 2);
        let size = rng.gen_range(1..=24usize);
        let mask = (1u64 << m) - 1;
        let code = CoveringCode::new(m, t, (0..size).map(|_| rng.gen::<u64>() & mask))
            .map_err(|e| e.to_string())?;
        let r = covering::covering_radius(&code).map_err(|e| e.to_string())?;
        let w = covering::find_far_point(&code, t).map_err(|e| e.to_string())?;
        if r > m / 2 - t {
            let x = w.ok_or_else(|| format!("m={m} t={t}: radius {r} but no far point"))?;
            ensure(code.min_distance_to(x) > m / 2 - t, "witness is not far")?;
            far += 1;
        } else {
            ensure(
                w.is_none(),
                format!("m={m} t={t}: radius {r} but a far point was returned"),
            )?;
            near += 1;
        }
    }
    ensure(far > 0 && near > 0, "corpus did not exercise both outcomes")?;
    Ok(format!(
        "2000 codes: {far} with a far point, {near} covering"
    ))
}

fn hajnal_inequality() -> Check {
    let cfg = CorpusConfig {
        exhaustive_max_n: 7,
        random_graphs: 10_000,
        random_max_n: 14,
        seed: 31_415,
    };
    let s = hajnal::hajnal_corpus(&cfg, None).map_err(|e| e.to_string())?;
    ensure(
        s.violations == 0,
        format!("{} violations, first {:?}", s.violations, s.first_violation),
    )?;
    Ok(format!("{} graphs, 0 violations", s.graphs))
}

fn deletion_process() -> Check {
    let (g, _) = shift::build_shift_graph(2).map_err(|e| e.to_string())?;
    let exact = alpha_prime_exact(&g).map_err(|e| e.to_string())?;
    let eps = Ratio::new(1, 12);
    let bound = alpha_prime_upper_bound(eps).map_err(|e| e.to_string())?;
    ensure(bound == Ratio::new(143, 432), "bound value")?;
    let value = exact.rational.ok_or("missing exact value")?;
    let holds = Ratio::new(*value.numer() as i64, *value.denom() as i64) <= bound;

    let params = ProcessParams::new(g.n(), 4, None, None).map_err(|e| e.to_string())?;
    ensure(params.epsilon == eps, "epsilon")?;
    let traces = alpha_prime::run_traces(&g, &params, 2024, 400).map_err(|e| e.to_string())?;
    // Recheck every recorded kernel size against a fresh computation.
    let mut recorded = 0;
    for trace in &traces {
        let mut alive = VertexSet::full(g.n());
        for (idx, step) in trace.steps.iter().enumerate() {
            let before = trace.alpha_before(idx);
            if params.qualifies(step.i, before) {
                let k = step
                    .kernel_size
                    .ok_or("qualifying step without kernel size")?;
                let (sub, _) = g.induced_subgraph(&alive).map_err(|e| e.to_string())?;
                let report = kernel_corona(&sub, DEFAULT_CAP);
                ensure(
                    report.kernel.len() == k && report.alpha == before,
                    "recorded kernel disagrees",
                )?;
                ensure(
                    k + alive.len() >= 2 * before,
                    format!("kernel {k} below 2*{before} - {}", alive.len()),
                )?;
                recorded += 1;
            }
            alive.remove(step.removed);
        }
    }
    let stats = alpha_prime::success_statistics(&traces, &params).map_err(|e| e.to_string())?;
    ensure(stats.kernel_bound_violations == 0, "kernel bound violated")?;
    ensure(
        stats.frequency_consistent(),
        format!(
            "success frequency {:?} < eps - 3se",
            stats.qualifying_frequency
        ),
    )?;
    Ok(format!(
        "alpha'(G_2) = {}/{} = {:.5} vs 143/432 = {:.5}: bound {} at n=12; 400 traces, {recorded} qualifying steps, success rate {:.4} +- {:.4}",
        value.numer(),
        value.denom(),
        exact.mean,
        143.0 / 432.0,
        if holds { "holds" } else { "does not hold" },
        stats.qualifying_frequency.unwrap_or(f64::NAN),
        stats.qualifying_stderr.unwrap_or(f64::NAN),
    ))
}

fn estimator_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut covered = 0;
    for i in 0..30u64 {
        let n = rng.gen_range(4..=16);
        let p = rng.gen_range(0.1..0.9);
        let g = Graph::random(n, p, &mut rng).map_err(|e| e.to_string())?;
        let exact = alpha_prime_exact(&g).map_err(|e| e.to_string())?;
        let mc = alpha_prime_mc(&g, 10_000, 1000 + i).map_err(|e| e.to_string())?;
        covered += mc.covers(exact.mean) as usize;
    }
    ensure(covered >= 27, format!("{covered}/30 intervals cover"))?;
    Ok(format!("{covered}/30 intervals cover the exact value"))
}

fn run_cli(
    dir: &Path,
    tag: &str,
    args: &[&str],
    workers: usize,
) -> Result<(Vec<u8>, Option<Vec<u8>>), String> {
    let json = dir.join(format!("{tag}-{workers}.json"));
    let rows = dir.join(format!("{tag}-{workers}.rows"));
    let status = Command::new(env!("CARGO_BIN_EXE_hitlab"))
        .args(args)
        .arg("--json")
        .arg(&json)
        .arg("--csv")
        .arg(&rows)
        .arg("--workers")
        .arg(workers.to_string())
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        status.status.success(),
        format!(
            "{tag}: exit {:?}: {}",
            status.status.code(),
            String::from_utf8_lossy(&status.stderr)
        ),
    )?;
    let j = std::fs::read(&json).map_err(|e| e.to_string())?;
    Ok((j, std::fs::read(&rows).ok()))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let commands: [(&str, &[&str]); 5] = [
        (
            "alpha-prime",
            &[
                "alpha-prime",
                "--k",
                "2",
                "--mode",
                "mc",
                "--samples",
                "5000",
                "--seed",
                "11",
            ],
        ),
        (
            "process",
            &["process", "--k", "2", "--traces", "150", "--seed", "12"],
        ),
        (
            "hajnal",
            &[
                "hajnal-corpus",
                "--max-n",
                "4",
                "--random",
                "300",
                "--random-max-n",
                "10",
                "--seed",
                "13",
            ],
        ),
        (
            "code",
            &[
                "covering-code",
                "--construction",
                "random",
                "--m",
                "12",
                "--t",
                "1",
                "--seed",
                "14",
            ],
        ),
        ("hitting", &["hitting-set", "--k", "3"]),
    ];
    for (tag, args) in commands {
        let a = run_cli(dir.path(), tag, args, 1)?;
        let b = run_cli(dir.path(), tag, args, 1)?;
        let c = run_cli(dir.path(), tag, args, 3)?;
        ensure(a == b, format!("{tag}: rerun differs"))?;
        ensure(a == c, format!("{tag}: output depends on worker count"))?;
    }
    Ok("5 commands byte-identical across reruns and worker counts".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("shift graphs: alpha, MIS family, exact h", shift_structure),
        (
            "shift graphs: small sets miss a MIS, cycle hits all",
            hitting_lower_bound,
        ),
        (
            "Hamming graphs: alpha and MIS family are balls",
            hamming_family,
        ),
        (
            "hitting number equals minimum covering code",
            code_correspondence,
        ),
        ("Hadamard code size 16 and radius", hadamard_bound),
        (
            "far point exists iff radius too large",
            discrepancy_mechanism,
        ),
        ("Hajnal kernel + corona inequality", hajnal_inequality),
        ("deletion process at n = 12", deletion_process),
        (
            "Monte Carlo intervals cover exact alpha'",
            estimator_consistency,
        ),
        ("byte-identical seeded artifacts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {:>2}. {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
