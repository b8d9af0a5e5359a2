use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use hitlab_cli::*;

/// Maximum independent sets, hitting numbers and covering codes.
#[derive(Parser, Debug)]
#[command(name = "hitlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write CSV rows here (hajnal-corpus) or JSON lines of trace steps (process).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shift graph G_k: alpha, MIS family, exact h and the cycle certificate.
    Shift(ShiftArgs),
    /// Hamming graph G_{m,t}: alpha, exact h as a covering code, bounds.
    Hamming(HammingArgs),
    /// Check |kernel| + |corona| >= 2 alpha on a graph corpus.
    HajnalCorpus(CorpusArgs),
    /// Exact or Monte Carlo alpha'.
    AlphaPrime(AlphaPrimeArgs),
    /// Random vertex-deletion process statistics.
    Process(ProcessArgs),
    /// Build or read a covering code and verify its radius.
    CoveringCode(CodeArgs),
    /// Minimum set meeting every maximum independent set.
    HittingSet(HittingArgs),
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .context("configuring workers")?;
    }
    let want_rows = cli.csv.is_some();
    let outcome = match &cli.command {
        Command::Shift(a) => cmd_shift(a)?,
        Command::Hamming(a) => cmd_hamming(a)?,
        Command::HajnalCorpus(a) => cmd_hajnal_corpus(a, want_rows)?,
        Command::AlphaPrime(a) => cmd_alpha_prime(a)?,
        Command::Process(a) => cmd_process(a, want_rows)?,
        Command::CoveringCode(a) => cmd_covering_code(a)?,
        Command::HittingSet(a) => cmd_hitting_set(a)?,
    };
    print!("{}", outcome.table);
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&outcome.json)? + "\n";
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &cli.csv {
        if let Some(body) = outcome.csv.as_ref().or(outcome.jsonl.as_ref()) {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
