use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use offended_voter::asymptotics::{beta, srw_exit_survival, DEFAULT_TOL};
use offended_voter::checks::{run_suite, Suite};
use offended_voter::dynamics::{run_with, DynamicsError, InitOpinions, ModelParams};
use offended_voter::experiments::{figure_datasets, run_sweep, ExperimentConfig, InitSpec};
use offended_voter::format::float;

#[derive(Parser)]
#[command(name = "ovm", version, about = "Offended voter model simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// One run to absorption; prints the outcome as JSON.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `balanced`, comma-separated opinion counts, or `@file.json` holding
        /// an init object with `opinions` and `graph`.
        #[arg(long, default_value = "balanced")]
        init: String,
        /// Per-step trace, tab separated.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Runs a sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Writes fig<which>.csv from a finished sweep directory.
    Figures {
        #[arg(long)]
        which: u8,
        #[arg(long)]
        from: PathBuf,
    },
    /// Runs a self-check suite; exit code 1 if any line fails.
    Check {
        /// invariants | coupling | oracle | lemma64 | regimes | all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Evaluates the limiting tail beta(x).
    Beta {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Exact survival curve `t,P(tau > t)` of the absorbed walk on {0..n}.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        start: usize,
        #[arg(long)]
        horizon: usize,
    },
}

/// Exit 1: a check or model invariant failed. Exit 2: bad input or I/O.
enum Failure {
    Assertion(String),
    Input(String),
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn parse_init(s: &str) -> Result<InitSpec, Failure> {
    if s == "balanced" {
        return Ok(InitSpec::default());
    }
    if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")));
    }
    let counts = s
        .split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Input(format!("bad --init {s:?}")))?;
    Ok(InitSpec { opinions: InitOpinions::Counts(counts), ..InitSpec::default() })
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cmd {
        Cmd::Simulate { n, q, k, eps, seed, init, trace_out } => {
            let init = parse_init(&init)?;
            let params = ModelParams { n, k, q, eps, init_opinions: init.opinions, init_graph: init.graph };
            params.validate().map_err(input)?;
            let mut trace = match trace_out {
                Some(p) => Some(BufWriter::new(
                    File::create(&p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                )),
                None => None,
            };
            let result = run_with(&params, seed, None, trace.as_mut().map(|w| w as &mut dyn Write));
            if let Some(mut w) = trace {
                w.flush().map_err(input)?;
            }
            let outcome = result.map_err(|e| match e {
                DynamicsError::Invariant(_) => Failure::Assertion(e.to_string()),
                other => input(other),
            })?;
            writeln!(out, "{}", serde_json::to_string_pretty(&outcome).map_err(input)?).map_err(input)?;
        }
        Cmd::Sweep { config } => {
            let config = ExperimentConfig::from_json_file(&config).map_err(input)?;
            let res = run_sweep(&config).map_err(input)?;
            let failed: u64 = res.aggregates.iter().map(|a| a.failed).sum();
            writeln!(out, "{} runs written to {} ({failed} failed)", res.records.len(), res.dir.display())
                .map_err(input)?;
        }
        Cmd::Figures { which, from } => {
            let fig = figure_datasets(&from, which).map_err(input)?;
            writeln!(out, "{} ({} rows)", fig.path.display(), fig.rows).map_err(input)?;
        }
        Cmd::Check { suite, workers } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::from_label(&suite)
                    .ok_or_else(|| Failure::Input(format!("unknown suite {suite:?}")))?]
            };
            let mut failed = 0;
            for s in suites {
                for line in run_suite(s, workers.max(1)) {
                    failed += usize::from(!line.passed);
                    writeln!(out, "{line}").map_err(input)?;
                    out.flush().map_err(input)?;
                }
            }
            if failed > 0 {
                return Err(Failure::Assertion(format!("{failed} check(s) failed")));
            }
        }
        Cmd::Beta { x, tol } => {
            let b = beta(x, tol).map_err(input)?;
            writeln!(out, "{}", serde_json::to_string(&b).map_err(input)?).map_err(input)?;
        }
        Cmd::Oracle { n, start, horizon } => {
            let curve = srw_exit_survival(n, start, horizon).map_err(input)?;
            writeln!(out, "t,survival").map_err(input)?;
            for (t, p) in curve.probabilities.iter().enumerate() {
                writeln!(out, "{t},{}", float(*p)).map_err(input)?;
            }
        }
    }
    out.flush().map_err(input)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(m)) => {
            eprintln!("ovm: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("ovm: {m}");
            ExitCode::from(2)
        }
    }
}
