//! Randomized property suites over the core constructions.
//!
//! Each suite draws `trials` instances from [`trial_rng`] with its own stream
//! and reports, per property, the largest residual seen against a fixed
//! tolerance. Residuals are normalized where the property has a natural
//! scale, so every tolerance is compared against a dimensionless number.
//!
//! The constructions under test are reached through [`Backend`], so a
//! deliberately corrupted implementation can be swapped in to confirm that
//! the suites catch it.

use std::fmt;
use std::str::FromStr;

use guardrep_core::bialternate::bialternate_sum_self;
use guardrep_core::compound::{add_compound, binomial, mult_compound, LexIndex};
use guardrep_core::expm::expm;
use guardrep_core::kron::kron_sum_self;
use guardrep_core::ode::{
    asymmetry, extract_v, extract_w, matrix_ode_closed_form, matrix_ode_rhs,
    matrix_ode_rk4_trajectory,
};
use guardrep_core::representations::lie_bracket;
use guardrep_core::schlaflian::lower_schlaflian;
use guardrep_core::{GuardianMapKind, Matrix};
use rand::Rng;
use serde::Serialize;

use crate::format::MatrixDoc;
use crate::generate::{integer, skew, symmetric, trial_rng, uniform};

/// Largest `n` accepted by [`run_suite`].
pub const MAX_N: usize = 8;

pub const BIALTERNATE_TOL: f64 = 1e-12;
pub const CAUCHY_BINET_TOL: f64 = 1e-10;
pub const BRACKET_TOL: f64 = 1e-10;
pub const ODE_REDUCTION_TOL: f64 = 1e-7;
pub const ODE_STRUCTURE_TOL: f64 = 1e-9;
pub const RK4_TOL: f64 = 1e-6;
pub const SKEW_ACTION_TOL: f64 = 1e-11;

const ODE_TIMES: [f64; 3] = [0.3, 0.7, 1.5];
const RK4_STEPS: usize = 1000;
const TRAJECTORY_STEPS: usize = 200;

/// The constructions exercised by the suites.
pub trait Backend {
    fn bialternate(&self, a: &Matrix) -> guardrep_core::Result<Matrix> {
        bialternate_sum_self(a)
    }

    fn add_compound(&self, a: &Matrix, k: usize) -> guardrep_core::Result<Matrix> {
        add_compound(a, k)
    }

    fn mult_compound(&self, a: &Matrix, k: usize) -> guardrep_core::Result<Matrix> {
        mult_compound(a, k)
    }

    fn lower_schlaflian(&self, a: &Matrix, p: usize) -> guardrep_core::Result<Matrix> {
        lower_schlaflian(a, p)
    }

    fn kron_sum(&self, a: &Matrix) -> guardrep_core::Result<Matrix> {
        kron_sum_self(a)
    }

    fn rho(&self, kind: GuardianMapKind, a: &Matrix) -> guardrep_core::Result<Matrix> {
        match kind {
            GuardianMapKind::KroneckerSum => self.kron_sum(a),
            GuardianMapKind::AdditiveCompound2 => self.add_compound(a, 2),
            GuardianMapKind::LowerSchlaflian2 => self.lower_schlaflian(a, 2),
            GuardianMapKind::Bialternate => self.bialternate(a),
        }
    }
}

/// The library implementations, unmodified.
#[derive(Debug, Clone, Copy, Default)]
pub struct CoreBackend;

impl Backend for CoreBackend {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bialternate,
    CauchyBinet,
    Brackets,
    Ode,
    SkewAction,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 5] = [
        Suite::Bialternate,
        Suite::CauchyBinet,
        Suite::Brackets,
        Suite::Ode,
        Suite::SkewAction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Bialternate => "prop4",
            Suite::CauchyBinet => "cauchy-binet",
            Suite::Brackets => "brackets",
            Suite::Ode => "ode",
            Suite::SkewAction => "lemma1",
            Suite::All => "all",
        }
    }

    fn stream(self) -> u64 {
        Suite::SINGLE.iter().position(|&s| s == self).unwrap_or(0) as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::SINGLE
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.as_str() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// The first instance that broke a property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub suite: &'static str,
    pub seed: u64,
    pub trial: usize,
    pub residual: f64,
    pub detail: String,
    pub inputs: Vec<NamedMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub suite: &'static str,
    pub checks: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub violations: usize,
    pub passed: bool,
    pub first_violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub suite: &'static str,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

struct Recorder {
    suite: Suite,
    seed: u64,
    properties: Vec<PropertyResult>,
}

impl Recorder {
    fn slot(&mut self, name: &str, tolerance: f64) -> usize {
        if let Some(i) = self.properties.iter().position(|p| p.name == name) {
            return i;
        }
        self.properties.push(PropertyResult {
            name: name.to_string(),
            suite: self.suite.as_str(),
            checks: 0,
            max_residual: 0.0,
            tolerance,
            violations: 0,
            passed: true,
            first_violation: None,
        });
        self.properties.len() - 1
    }

    /// Records one check. A NaN residual or a construction error counts as a
    /// violation.
    fn check(
        &mut self,
        name: &str,
        tolerance: f64,
        trial: usize,
        residual: guardrep_core::Result<f64>,
        detail: impl FnOnce() -> String,
        inputs: &[(&str, &Matrix)],
    ) {
        let (suite, seed) = (self.suite.as_str(), self.seed);
        let i = self.slot(name, tolerance);
        let p = &mut self.properties[i];
        p.checks += 1;
        let (value, detail) = match residual {
            Ok(r) => (r, detail()),
            Err(e) => (f64::INFINITY, format!("{}; error: {e}", detail())),
        };
        if value.is_nan() || value > tolerance {
            p.violations += 1;
            p.passed = false;
            if p.first_violation.is_none() {
                p.first_violation = Some(Violation {
                    suite,
                    seed,
                    trial,
                    residual: value,
                    detail,
                    inputs: inputs
                        .iter()
                        .map(|(name, m)| NamedMatrix {
                            name: name.to_string(),
                            matrix: MatrixDoc::from(*m),
                        })
                        .collect(),
                });
            }
        }
        if value.is_nan() || value > p.max_residual {
            p.max_residual = value;
        }
    }
}

/// Runs `suite` (or every suite for [`Suite::All`]).
pub fn run_suite(
    suite: Suite,
    n: usize,
    trials: usize,
    seed: u64,
    backend: &dyn Backend,
) -> Result<Summary, String> {
    if !(2..=MAX_N).contains(&n) {
        return Err(format!("--n must be in 2..={MAX_N}, got {n}"));
    }
    if trials == 0 {
        return Err("--trials must be at least 1".to_string());
    }
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::SINGLE.to_vec(),
        s => vec![s],
    };
    let mut properties = Vec::new();
    for s in suites {
        let mut rec = Recorder {
            suite: s,
            seed,
            properties: Vec::new(),
        };
        for trial in 0..trials {
            let mut rng = trial_rng(seed, s.stream(), trial as u64);
            match s {
                Suite::Bialternate => bialternate_trial(&mut rec, backend, &mut rng, n, trial),
                Suite::CauchyBinet => cauchy_binet_trial(&mut rec, backend, &mut rng, n, trial),
                Suite::Brackets => brackets_trial(&mut rec, backend, &mut rng, n, trial),
                Suite::Ode => ode_trial(&mut rec, backend, &mut rng, n, trial),
                Suite::SkewAction => skew_action_trial(&mut rec, backend, &mut rng, n, trial),
                Suite::All => unreachable!("expanded above"),
            }
        }
        properties.extend(rec.properties);
    }
    Ok(Summary {
        suite: suite.as_str(),
        n,
        trials,
        seed,
        passed: properties.iter().all(|p| p.passed),
        properties,
    })
}

fn diff(
    a: guardrep_core::Result<Matrix>,
    b: guardrep_core::Result<Matrix>,
) -> guardrep_core::Result<f64> {
    a?.max_abs_diff(&b?)
}

fn bialternate_trial<R: Rng>(rec: &mut Recorder, be: &dyn Backend, rng: &mut R, n: usize, trial: usize) {
    let a = uniform(rng, n, n);
    let r = diff(be.bialternate(&a), be.add_compound(&a, 2));
    rec.check(
        "bialternate-equals-add2",
        BIALTERNATE_TOL,
        trial,
        r,
        || format!("n = {n}"),
        &[("a", &a)],
    );
    let z = integer(rng, n, n, 9);
    let r = diff(be.bialternate(&z), be.add_compound(&z, 2));
    rec.check(
        "bialternate-equals-add2-integer",
        0.0,
        trial,
        r,
        || format!("n = {n}"),
        &[("a", &z)],
    );
}

fn cauchy_binet_trial<R: Rng>(
    rec: &mut Recorder,
    be: &dyn Backend,
    rng: &mut R,
    n: usize,
    trial: usize,
) {
    for k in 1..=n.min(3) {
        let (m, p, q) = (
            rng.gen_range(k..=n),
            rng.gen_range(k..=n),
            rng.gen_range(k..=n),
        );
        let a = uniform(rng, m, p);
        let b = uniform(rng, p, q);
        let r = (|| {
            let ck_a = be.mult_compound(&a, k)?;
            let ck_b = be.mult_compound(&b, k)?;
            let lhs = be.mult_compound(&a.matmul(&b)?, k)?;
            let scale = 1.0 + ck_a.max_abs() * ck_b.max_abs() * binomial(p, k) as f64;
            Ok(lhs.max_abs_diff(&ck_a.matmul(&ck_b)?)? / scale)
        })();
        rec.check(
            &format!("cauchy-binet-k{k}"),
            CAUCHY_BINET_TOL,
            trial,
            r,
            || format!("k = {k}, shapes {m}x{p} * {p}x{q}"),
            &[("a", &a), ("b", &b)],
        );
    }
}

/// `‖ρ([A,B]) - [ρA, ρB]‖ / (1 + ‖ρA‖₁ ‖ρB‖₁)`, with `ρ` or its
/// contragradient `X ↦ ρ(-X)ᵀ`.
fn bracket_check(
    be: &dyn Backend,
    kind: GuardianMapKind,
    contragradient: bool,
    a: &Matrix,
    b: &Matrix,
) -> guardrep_core::Result<f64> {
    let rho = |x: &Matrix| -> guardrep_core::Result<Matrix> {
        if contragradient {
            Ok(be.rho(kind, &x.scale(-1.0))?.transpose())
        } else {
            be.rho(kind, x)
        }
    };
    let (ra, rb) = (rho(a)?, rho(b)?);
    let lhs = rho(&lie_bracket(a, b)?)?;
    let rhs = lie_bracket(&ra, &rb)?;
    Ok(lhs.max_abs_diff(&rhs)? / (1.0 + ra.norm1() * rb.norm1()))
}

fn brackets_trial<R: Rng>(
    rec: &mut Recorder,
    be: &dyn Backend,
    rng: &mut R,
    n: usize,
    trial: usize,
) {
    let a = uniform(rng, n, n);
    let b = uniform(rng, n, n);
    for kind in GuardianMapKind::ALL {
        for contra in [false, true] {
            let name = if contra {
                format!("bracket-{kind}-contragradient")
            } else {
                format!("bracket-{kind}")
            };
            let r = bracket_check(be, kind, contra, &a, &b);
            rec.check(
                &name,
                BRACKET_TOL,
                trial,
                r,
                || format!("n = {n}"),
                &[("a", &a), ("b", &b)],
            );
        }
    }
}

fn apply(m: &Matrix, v: &[f64]) -> Vec<f64> {
    (m * &Matrix::column(v)).into_vec()
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn ode_trial<R: Rng>(rec: &mut Recorder, be: &dyn Backend, rng: &mut R, n: usize, trial: usize) {
    let a = uniform(rng, n, n);
    let xs = symmetric(rng, n);
    let xk = skew(rng, n);
    for t in ODE_TIMES {
        let r = (|| {
            let wt = extract_w(&matrix_ode_closed_form(&a, &xs, t)?)?;
            let reduced = apply(&expm(&be.lower_schlaflian(&a, 2)?, t)?, &extract_w(&xs)?);
            Ok(max_gap(&wt, &reduced))
        })();
        let detail = || format!("t = {t}");
        rec.check(
            "symmetric-reduction",
            ODE_REDUCTION_TOL,
            trial,
            r,
            detail,
            &[("a", &a), ("x0", &xs)],
        );
        let r = (|| {
            let vt = extract_v(&matrix_ode_closed_form(&a, &xk, t)?)?;
            let reduced = apply(&expm(&be.add_compound(&a, 2)?, t)?, &extract_v(&xk)?);
            Ok(max_gap(&vt, &reduced))
        })();
        rec.check(
            "skew-reduction",
            ODE_REDUCTION_TOL,
            trial,
            r,
            detail,
            &[("a", &a), ("x0", &xk)],
        );
    }
    for (name, x0, pick) in [
        ("rk4-preserves-symmetry", &xs, 0usize),
        ("rk4-preserves-skew", &xk, 1),
    ] {
        let r = matrix_ode_rk4_trajectory(&a, x0, 1.0, TRAJECTORY_STEPS).map(|traj| {
            traj.iter().fold(0.0f64, |m, x| {
                let (sym, sk) = asymmetry(x);
                m.max([sym, sk][pick] / (1.0 + x.max_abs()))
            })
        });
        rec.check(
            name,
            ODE_STRUCTURE_TOL,
            trial,
            r,
            || format!("{TRAJECTORY_STEPS} steps to t = 1"),
            &[("a", &a), ("x0", x0)],
        );
    }
    let x0 = uniform(rng, n, n);
    let r = (|| {
        let traj = matrix_ode_rk4_trajectory(&a, &x0, 1.0, RK4_STEPS)?;
        let last = traj.last().expect("non-empty trajectory");
        last.max_abs_diff(&matrix_ode_closed_form(&a, &x0, 1.0)?)
    })();
    rec.check(
        "rk4-matches-closed-form",
        RK4_TOL,
        trial,
        r,
        || format!("{RK4_STEPS} steps to t = 1"),
        &[("a", &a), ("x0", &x0)],
    );
}

/// `A S_ij + S_ij Aᵀ` against the skew matrix lifted from `A^[2] e_(i,j)`.
fn skew_action_trial<R: Rng>(rec: &mut Recorder, be: &dyn Backend, rng: &mut R, n: usize, trial: usize) {
    let a = uniform(rng, n, n);
    let pairs = LexIndex::new(n, 2).expect("n in range");
    let r = be.add_compound(&a, 2).and_then(|a2| {
        let mut worst = 0.0f64;
        for (col, pair) in pairs.iter().enumerate() {
            let (i, j) = (pair[0], pair[1]);
            let mut s = Matrix::zeros(n, n);
            s[(i, j)] = 1.0;
            s[(j, i)] = -1.0;
            let image: Vec<f64> = (0..pairs.len()).map(|row| a2[(row, col)]).collect();
            let mut lifted = Matrix::zeros(n, n);
            for (x, p) in pairs.iter().enumerate() {
                lifted[(p[0], p[1])] = image[x];
                lifted[(p[1], p[0])] = -image[x];
            }
            worst = worst.max(lifted.max_abs_diff(&matrix_ode_rhs(&a, &s))?);
        }
        Ok(worst)
    });
    rec.check(
        "skew-basis-action",
        SKEW_ACTION_TOL,
        trial,
        r,
        || format!("all {} pairs", pairs.len()),
        &[("a", &a)],
    );
}
