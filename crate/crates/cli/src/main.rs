//! `hedgegraph`: connectivity measures, constructions and experiments on `.hg` files.
//!
//! Every run prints one JSON document to standard output. Exit codes: 0 on
//! success, 1 when the answer is a certificate of infeasibility, 2 on input
//! errors, 3 when an exhaustive oracle would exceed its limits.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use report::{CliError, ExitStatus, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "hedgegraph", version, about = "Hedgegraph connectivity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input hedgegraph in `.hg` format.
    #[arg(long)]
    pub file: PathBuf,
    /// Route to the exhaustive oracle (subject to oracle limits).
    #[arg(long)]
    pub exact: bool,
    /// Seed for randomized commands.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timing in the output.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sizes, weights, components and parse warnings.
    Info(Common),
    /// Hedge connectivity λ: a certified band, or the exact value with `--exact`.
    Connectivity(Common),
    /// Partition connectivity with a witness partition.
    Pc(Common),
    /// Weak partition connectivity (exhaustive only).
    Wpc(Common),
    /// Functional strength k*: greedy band, or exact with `--exact`.
    Kstar(Common),
    /// Pack k hedge-disjoint spanning-trimmable sets (k defaults to PC).
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Cover hedges by k acyclic-trimmable classes (k defaults to the minimum).
    Cover {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
    },
    /// A spanning-tree trimming, or a partition showing none exists.
    Trim(Common),
    /// Rooted k-out orientation.
    Orient {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Root vertex name; defaults to the first declared vertex.
        #[arg(long)]
        root: Option<String>,
    },
    /// Single hedge sample with `--p`, else a sampling experiment.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Run the base-sampling experiment instead of connectivity sampling.
        #[arg(long)]
        base: bool,
    },
    /// Partition sparsifier by strength-weighted sampling.
    Sparsify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "0.5")]
        epsilon: String,
        #[arg(long, default_value_t = hedgegraph::stochastic::DEFAULT_C0)]
        c0: f64,
    },
    /// Check an `orient` or `sparsify` output against the input graph.
    Verify {
        #[command(flatten)]
        common: Common,
        /// JSON document printed by `orient` or `sparsify`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Quotients δ(𝒫), or the number with `w(Q) ≤ t·κ_w` when `--t` is given.
    Quotients {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info(_) => "info",
            Command::Connectivity(_) => "connectivity",
            Command::Pc(_) => "pc",
            Command::Wpc(_) => "wpc",
            Command::Kstar(_) => "kstar",
            Command::Decompose { .. } => "decompose",
            Command::Cover { .. } => "cover",
            Command::Trim(_) => "trim",
            Command::Orient { .. } => "orient",
            Command::Sample { .. } => "sample",
            Command::Sparsify { .. } => "sparsify",
            Command::Verify { .. } => "verify",
            Command::Quotients { .. } => "quotients",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Info(c) | Command::Connectivity(c) | Command::Pc(c) | Command::Wpc(c) | Command::Kstar(c) => c,
            Command::Trim(c) => c,
            Command::Decompose { common, .. }
            | Command::Cover { common, .. }
            | Command::Orient { common, .. }
            | Command::Sample { common, .. }
            | Command::Sparsify { common, .. }
            | Command::Verify { common, .. }
            | Command::Quotients { common, .. } => common,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let common = cli.command.common().clone();
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(name));

    let text = match std::fs::read(&common.file) {
        Ok(bytes) => bytes,
        Err(e) => {
            let err = CliError::input("io", format!("{}: {e}", common.file.display()));
            return finish(doc, Err(err), None);
        }
    };
    doc.insert(
        "input".into(),
        json!({
            "file": common.file.display().to_string(),
            "sha256": hex::encode(Sha256::digest(&text)),
        }),
    );
    let start = Instant::now();
    let outcome = String::from_utf8(text)
        .map_err(|_| CliError::input("io", "input is not valid UTF-8"))
        .and_then(|text| commands::run(&cli.command, &text));
    let elapsed = common.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    finish(doc, outcome, elapsed)
}

fn finish(mut doc: Map<String, Value>, outcome: Result<report::Outcome, CliError>, elapsed: Option<f64>) -> ExitCode {
    let status = match outcome {
        Ok(out) => {
            doc.insert("method".into(), json!(out.method));
            doc.insert("result".into(), out.result);
            if out.infeasible {
                ExitStatus::Infeasible
            } else {
                ExitStatus::Ok
            }
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            doc.insert(
                "error".into(),
                json!({ "kind": err.kind, "message": err.message, "line": err.line }),
            );
            err.status
        }
    };
    if let Some(ms) = elapsed {
        doc.insert("timing_ms".into(), json!(ms));
    }
    doc.insert("exit_code".into(), json!(status as u8));
    let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
    // A closed pipe is not an error of the computation.
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(status as u8)
}
