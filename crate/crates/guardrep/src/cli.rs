//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text destined for stdout and stderr, so it can be driven
//! in-process.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success; `guardian`: stable |
//! | 1 | input file missing, unreadable or malformed |
//! | 2 | dimension or parameter violation |
//! | 3 | `guardian`: on the stability boundary |
//! | 4 | `guardian`: unstable |
//! | 5 | `verify`: a property was violated |

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use guardrep_core::bialternate::bialternate_sum_self;
use guardrep_core::compound::{add_compound, mult_compound};
use guardrep_core::kron::kron_sum_self;
use guardrep_core::representations::{guardian_evaluate_with_tol, DEFAULT_ORACLE_TOL};
use guardrep_core::schlaflian::{lower_schlaflian, upper_schlaflian};
use guardrep_core::sweep::{sweep, sweep_refined};
use guardrep_core::{GuardianMapKind, HurwitzVerdict, Matrix};

use crate::error::{Error, Result};
use crate::format::{
    matrix_json, read_family, read_matrix, to_json, write_file, ReportDoc, SweepDoc,
};
use crate::verify::{run_suite, Backend, CoreBackend, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_FILE: i32 = 1;
pub const EXIT_PARAM: i32 = 2;
pub const EXIT_BOUNDARY: i32 = 3;
pub const EXIT_UNSTABLE: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

/// Refinement width used by `sweep --refine` when `--tol` is absent.
pub const DEFAULT_SWEEP_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(
    name = "guardrep",
    version,
    about = "Guardian maps and compound matrices for Hurwitz stability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a structured matrix from an input matrix.
    Compute {
        #[arg(long, value_enum)]
        map: ComputeMap,
        /// Compound order for `addk` and `mult`.
        #[arg(long)]
        k: Option<usize>,
        /// Monomial degree for `schlaflian`.
        #[arg(long)]
        p: Option<usize>,
        /// With `schlaflian`: emit `U_p` instead of `L_p`.
        #[arg(long)]
        upper: bool,
        /// Matrix JSON or CSV file, `-` for stdin.
        #[arg(long)]
        input: String,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a guardian map and classify stability.
    Guardian {
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long)]
        input: String,
        /// Oracle tolerance on the spectral abscissa.
        #[arg(long, default_value_t = DEFAULT_ORACLE_TOL)]
        tol: f64,
    },
    /// Sweep a one-parameter family and locate boundary crossings.
    Sweep {
        /// Family JSON file, `-` for stdin.
        #[arg(long)]
        family: String,
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long, allow_negative_numbers = true)]
        min: f64,
        #[arg(long, allow_negative_numbers = true)]
        max: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        refine: bool,
        #[arg(long, default_value_t = DEFAULT_SWEEP_TOL)]
        tol: f64,
    },
    /// Run a seeded randomized property suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComputeMap {
    Kron,
    Add2,
    Addk,
    Mult,
    Schlaflian,
    Bialt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapArg {
    Kron,
    Add2,
    Schlaflian,
    Bialt,
}

impl From<MapArg> for GuardianMapKind {
    fn from(m: MapArg) -> Self {
        match m {
            MapArg::Kron => GuardianMapKind::KroneckerSum,
            MapArg::Add2 => GuardianMapKind::AdditiveCompound2,
            MapArg::Schlaflian => GuardianMapKind::LowerSchlaflian2,
            MapArg::Bialt => GuardianMapKind::Bialternate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(e: Error) -> Self {
        Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command against
/// the library implementations.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_backend(args, stdin, &CoreBackend)
}

/// As [`run`], with `verify` exercising `backend`.
pub fn run_with_backend<I, T>(args: I, stdin: &mut dyn Read, backend: &dyn Backend) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_PARAM,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(EXIT_OK, text)
            };
        }
    };
    let result = match cli.command {
        Command::Compute {
            map,
            k,
            p,
            upper,
            input,
            output,
        } => cmd_compute(map, k, p, upper, &input, output.as_deref(), stdin),
        Command::Guardian { map, input, tol } => cmd_guardian(map.into(), &input, tol, stdin),
        Command::Sweep {
            family,
            map,
            min,
            max,
            samples,
            refine,
            tol,
        } => cmd_sweep(
            &family,
            map.into(),
            min,
            max,
            samples,
            refine.then_some(tol),
            stdin,
        ),
        Command::Verify {
            suite,
            n,
            trials,
            seed,
        } => cmd_verify(suite, n, trials, seed, backend),
    };
    result.unwrap_or_else(Outcome::fail)
}

fn require(value: Option<usize>, flag: &str, map: &str) -> Result<usize> {
    value.ok_or_else(|| Error::Param(format!("--map {map} requires {flag}")))
}

fn cmd_compute(
    map: ComputeMap,
    k: Option<usize>,
    p: Option<usize>,
    upper: bool,
    input: &str,
    output: Option<&std::path::Path>,
    stdin: &mut dyn Read,
) -> Result<Outcome> {
    let a = read_matrix(input, stdin)?;
    let m: Matrix = match map {
        ComputeMap::Kron => kron_sum_self(&a)?,
        ComputeMap::Add2 => add_compound(&a, 2)?,
        ComputeMap::Addk => add_compound(&a, require(k, "--k", "addk")?)?,
        ComputeMap::Mult => mult_compound(&a, require(k, "--k", "mult")?)?,
        ComputeMap::Schlaflian => {
            let p = require(p, "--p", "schlaflian")?;
            if upper {
                upper_schlaflian(&a, p)?
            } else {
                lower_schlaflian(&a, p)?
            }
        }
        ComputeMap::Bialt => bialternate_sum_self(&a)?,
    };
    let text = matrix_json(&m);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome::ok(EXIT_OK, String::new()))
        }
        None => Ok(Outcome::ok(EXIT_OK, text)),
    }
}

fn cmd_guardian(
    kind: GuardianMapKind,
    input: &str,
    tol: f64,
    stdin: &mut dyn Read,
) -> Result<Outcome> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::Param(format!(
            "--tol must be a finite non-negative number, got {tol}"
        )));
    }
    let a = read_matrix(input, stdin)?;
    let report = guardian_evaluate_with_tol(kind, &a, tol)?;
    let code = match report.classification() {
        HurwitzVerdict::Stable => EXIT_OK,
        HurwitzVerdict::Boundary => EXIT_BOUNDARY,
        HurwitzVerdict::Unstable => EXIT_UNSTABLE,
    };
    Ok(Outcome::ok(code, to_json(&ReportDoc::from(&report))))
}

fn cmd_sweep(
    family: &str,
    kind: GuardianMapKind,
    min: f64,
    max: f64,
    samples: usize,
    refine_tol: Option<f64>,
    stdin: &mut dyn Read,
) -> Result<Outcome> {
    let fam = read_family(family, stdin)?;
    let result = match refine_tol {
        Some(tol) => sweep_refined(&fam, kind, min, max, samples, tol)?,
        None => sweep(&fam, kind, min, max, samples)?,
    };
    Ok(Outcome::ok(EXIT_OK, to_json(&SweepDoc::from(&result))))
}

fn cmd_verify(
    suite: Suite,
    n: usize,
    trials: usize,
    seed: u64,
    backend: &dyn Backend,
) -> Result<Outcome> {
    let summary = run_suite(suite, n, trials, seed, backend).map_err(Error::Param)?;
    let mut out = Outcome::ok(EXIT_OK, to_json(&summary));
    if !summary.passed {
        out.code = EXIT_VIOLATION;
        for p in summary.properties.iter().filter(|p| !p.passed) {
            let v = p
                .first_violation
                .as_ref()
                .expect("failed property records its first violation");
            out.stderr.push_str(&format!(
                "violation: {} (suite {}, seed {}, trial {}): residual {:e} > {:e}; {}\n",
                p.name, v.suite, v.seed, v.trial, v.residual, p.tolerance, v.detail
            ));
        }
    }
    Ok(out)
}
