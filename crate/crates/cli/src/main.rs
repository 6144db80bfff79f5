//! `groupinv`: batch front end for exact group inverses of class-D matrices.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 hypothesis violation
//! (class violation or no group inverse), 3 a verification found a mismatch.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use groupinv_core::generate::{generate, Family, GenParams};
use groupinv_core::matching::{maximum_matchings_brute_force, maximum_matchings_class_d, DEFAULT_BRUTE_FORCE_CAP};
use groupinv_core::sweep::{sweep, SweepConfig};
use groupinv_core::{
    analyze_structure, blockwise_group_inverse, build_digraph, classify_closure, graph_group_inverse,
    group_inverse_oracle, mu_table, verify_group_axioms, Error, RMatrix,
};

use crate::render::{emit, emit_json, emit_versioned, GinvReport};

#[derive(Parser, Debug)]
#[command(name = "groupinv", version, about = "Exact group inverses of matrices with class-D digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural report for D(A): symmetry, connectivity, pendants, class D, corona, star.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compute the group inverse.
    Ginv {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Dump the μ table with the alternating chain of every matchable pair.
        #[arg(long)]
        show_mu: bool,
    },
    /// List all maximum matchings with their products and Δ.
    Matchings {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
        /// Largest n the brute-force enumerator accepts.
        #[arg(long, env = "GROUPINV_BRUTE_CAP", default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        brute_cap: usize,
    },
    /// Predict and check whether D(A#) stays in class D (JSON).
    Classify { input: PathBuf },
    /// Generate a random instance in the matrix text format.
    Gen {
        #[arg(long, default_value = "classd")]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[command(flatten)]
        params: ParamArgs,
        /// Write to this file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check AXA = A, XAX = X and AX = XA for a candidate X.
    Verify {
        matrix: PathBuf,
        candidate: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run generated instances through every check and report counts (JSON).
    Sweep {
        #[arg(long, default_value = "mixed")]
        family: Family,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: ParamArgs,
        /// Also search every simple path for alternating chains.
        #[arg(long)]
        exhaustive_chains: bool,
    },
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct ParamArgs {
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    #[arg(long, default_value_t = 5)]
    weight: i64,
    #[arg(long, default_value_t = 0.4)]
    density: f64,
    #[arg(long, default_value_t = 3)]
    max_pendants: usize,
}

impl From<ParamArgs> for GenParams {
    fn from(p: ParamArgs) -> Self {
        GenParams { max_n: p.max_n, weight: p.weight, density: p.density, max_pendants: p.max_pendants }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Method {
    Graph,
    Block,
    Oracle,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Engine {
    Auto,
    Brute,
    Structural,
}

/// Terminal failure of a subcommand, mapped to an exit code.
enum Failure {
    Core(Error),
    Io(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(3),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) if e.is_hypothesis_violation() => {
            emit_json(&render::error_json(&e));
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read_matrix(path: &Path) -> Result<RMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    RMatrix::parse(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Analyze { input, format } => {
            let a = read_matrix(&input)?;
            let report = analyze_structure(&build_digraph(&a)?);
            match format {
                Format::Json => emit_versioned(&report),
                Format::Text => emit(&render::structure_text(&report)),
            }
            Ok(())
        }
        Command::Ginv { input, method, format, show_mu } => {
            let a = read_matrix(&input)?;
            let report = ginv(&a, method, show_mu)?;
            match format {
                Format::Json => emit_json(&report),
                Format::Text => emit(&report.to_text()),
            }
            if report.agree {
                Ok(())
            } else {
                eprintln!("error: methods disagree");
                Err(Failure::Mismatch)
            }
        }
        Command::Matchings { input, format, engine, brute_cap } => {
            let a = read_matrix(&input)?;
            let fam = match engine {
                Engine::Structural => maximum_matchings_class_d(&a)?,
                Engine::Brute => maximum_matchings_brute_force(&a, brute_cap)?,
                Engine::Auto => match maximum_matchings_class_d(&a) {
                    Ok(f) => f,
                    Err(Error::ClassViolation(_)) => maximum_matchings_brute_force(&a, brute_cap)?,
                    Err(e) => return Err(e.into()),
                },
            };
            match format {
                Format::Json => emit_versioned(&fam),
                Format::Text => emit(&render::matchings_text(&fam)),
            }
            Ok(())
        }
        Command::Classify { input } => {
            let a = read_matrix(&input)?;
            emit_versioned(&classify_closure(&a)?);
            Ok(())
        }
        Command::Gen { family, seed, index, params, output } => {
            let inst = generate(family, seed, index, &params.into())?;
            match output {
                Some(path) => std::fs::write(&path, inst.to_text())
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => emit(&inst.to_text()),
            }
            Ok(())
        }
        Command::Verify { matrix, candidate, format } => {
            let a = read_matrix(&matrix)?;
            let x = read_matrix(&candidate)?;
            let v = verify_group_axioms(&a, &x)?;
            match format {
                Format::Json => emit_json(&render::axioms_json(&v)),
                Format::Text => emit(&render::axioms_text(&v)),
            }
            if v.all_hold() {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Sweep { family, count, seed, params, exhaustive_chains } => {
            let config = SweepConfig { family, count, seed, params: params.into(), exhaustive_chains };
            let start = Instant::now();
            let report = sweep(&config)?;
            emit_json(&report);
            eprintln!(
                "sweep: {} instances, {} failed checks, wall time {:.3}s",
                report.instances,
                report.failure_count(),
                start.elapsed().as_secs_f64()
            );
            if report.failure_count() == 0 {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}

/// Runs the requested methods. With `All`, the formula routes are skipped
/// when the class-D hypotheses fail, and the oracle alone answers.
fn ginv(a: &RMatrix, method: Method, show_mu: bool) -> Result<GinvReport, Failure> {
    let mut results: Vec<(&'static str, RMatrix)> = Vec::new();
    let mut skipped = None;
    match method {
        Method::Graph => results.push(("graph", graph_group_inverse(a)?)),
        Method::Block => results.push(("block", blockwise_group_inverse(a)?)),
        Method::Oracle => results.push(("oracle", group_inverse_oracle(a)?)),
        Method::All => {
            match graph_group_inverse(a) {
                Ok(g) => {
                    results.push(("graph", g));
                    results.push(("block", blockwise_group_inverse(a)?));
                }
                Err(Error::ClassViolation(v)) => skipped = Some(v),
                Err(e) => return Err(e.into()),
            }
            results.push(("oracle", group_inverse_oracle(a)?));
        }
    }
    let delta = if skipped.is_none() && method != Method::Oracle {
        Some(maximum_matchings_class_d(a)?.delta)
    } else {
        None
    };
    let mu = if show_mu { Some(mu_table(a)?) } else { None };
    Ok(GinvReport::new(method, results, skipped, delta, mu))
}
