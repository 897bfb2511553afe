//! Guardian representations: Lie-algebra representations `ρ` whose
//! determinant vanishes exactly when `A` has a pair of eigenvalues summing to
//! zero, together with the bracket checks and guardian-map evaluation.
//!
//! For a representation `ρ`, `g(A) = det ρ(A)` vanishes when `A` has a
//! purely imaginary pair `±iβ`, and `f(A) = det(A) · g(A)` additionally
//! vanishes on a zero eigenvalue, so `f` is zero on the whole boundary of the
//! Hurwitz set and nonzero inside it.

use core::fmt;
use core::str::FromStr;

use crate::bialternate::bialternate_sum_self;
use crate::compound::{add_compound, binomial};
use crate::eigen::{spectrum, HurwitzVerdict};
use crate::kron::kron_sum_self;
use crate::schlaflian::lower_schlaflian;
use crate::{Error, GuardianValue, Matrix, Result};

/// Oracle tolerance on `max Re λ` used when none is given.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-8;

/// The four guardian representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GuardianMapKind {
    /// `A ⊕ A`, n² × n².
    KroneckerSum,
    /// `A^[2]`, C(n,2) × C(n,2).
    AdditiveCompound2,
    /// `L_2(A)`, C(n+1,2) × C(n+1,2).
    LowerSchlaflian2,
    /// `A ⋄ A`, C(n,2) × C(n,2).
    Bialternate,
}

impl GuardianMapKind {
    pub const ALL: [GuardianMapKind; 4] = [
        GuardianMapKind::KroneckerSum,
        GuardianMapKind::AdditiveCompound2,
        GuardianMapKind::LowerSchlaflian2,
        GuardianMapKind::Bialternate,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            GuardianMapKind::KroneckerSum => "kron",
            GuardianMapKind::AdditiveCompound2 => "add2",
            GuardianMapKind::LowerSchlaflian2 => "schlaflian",
            GuardianMapKind::Bialternate => "bialt",
        }
    }

    /// Order of `ρ(A)` for an n × n input.
    pub fn output_dim(&self, n: usize) -> usize {
        match self {
            GuardianMapKind::KroneckerSum => n * n,
            GuardianMapKind::AdditiveCompound2 | GuardianMapKind::Bialternate => binomial(n, 2),
            GuardianMapKind::LowerSchlaflian2 => binomial(n + 1, 2),
        }
    }
}

impl fmt::Display for GuardianMapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GuardianMapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GuardianMapKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or(Error::Structure {
                what: "a guardian map name (kron, add2, schlaflian, bialt)",
                deviation: f64::NAN,
            })
    }
}

/// A linear map from n × n matrices to square matrices.
pub trait Representation {
    fn apply(&self, a: &Matrix) -> Result<Matrix>;
}

impl Representation for GuardianMapKind {
    fn apply(&self, a: &Matrix) -> Result<Matrix> {
        apply_rho(*self, a)
    }
}

/// `ρ̂(A) = (ρ(-A))ᵀ`, which negates the spectrum and is again a
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contragradient<R>(pub R);

impl<R: Representation> Representation for Contragradient<R> {
    fn apply(&self, a: &Matrix) -> Result<Matrix> {
        Ok(self.0.apply(&-a)?.transpose())
    }
}

pub fn apply_rho(kind: GuardianMapKind, a: &Matrix) -> Result<Matrix> {
    match kind {
        GuardianMapKind::KroneckerSum => kron_sum_self(a),
        GuardianMapKind::AdditiveCompound2 => add_compound(a, 2),
        GuardianMapKind::LowerSchlaflian2 => lower_schlaflian(a, 2),
        GuardianMapKind::Bialternate => bialternate_sum_self(a),
    }
}

pub fn contragradient(kind: GuardianMapKind, a: &Matrix) -> Result<Matrix> {
    Contragradient(kind).apply(a)
}

/// Commutator `AB - BA`.
pub fn lie_bracket(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.require_square()?;
    if b.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "lie_bracket",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(&(a * b) - &(b * a))
}

/// `max |ρ([A,B]) - [ρ(A), ρ(B)]|` for any representation.
pub fn bracket_residual<R: Representation + ?Sized>(
    rho: &R,
    a: &Matrix,
    b: &Matrix,
) -> Result<f64> {
    let lhs = rho.apply(&lie_bracket(a, b)?)?;
    let rhs = lie_bracket(&rho.apply(a)?, &rho.apply(b)?)?;
    lhs.max_abs_diff(&rhs)
}

pub fn bracket_preservation_residual(kind: GuardianMapKind, a: &Matrix, b: &Matrix) -> Result<f64> {
    bracket_residual(&kind, a, b)
}

/// Scale for bracket residuals: `1 + ‖ρ(A)‖₁ ‖ρ(B)‖₁` bounds every entry of
/// `[ρ(A), ρ(B)]` up to a factor 2.
pub fn bracket_scale<R: Representation + ?Sized>(rho: &R, a: &Matrix, b: &Matrix) -> Result<f64> {
    Ok(1.0 + rho.apply(a)?.norm1() * rho.apply(b)?.norm1())
}

/// `T ρ T⁻¹`.
pub fn similarity_transform(rho_of_a: &Matrix, t: &Matrix) -> Result<Matrix> {
    let n = rho_of_a.require_square()?;
    if t.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "similarity_transform",
            left: rho_of_a.shape(),
            right: t.shape(),
        });
    }
    // T ρ T⁻¹ = (T⁻ᵀ (T ρ)ᵀ)ᵀ
    let t_rho = t * rho_of_a;
    Ok(t.transpose().solve(&t_rho.transpose())?.transpose())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardianVerdict {
    NonzeroStable,
    ZeroBoundary,
    NonzeroUnstable,
}

impl GuardianVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            GuardianVerdict::NonzeroStable => "nonzero-stable",
            GuardianVerdict::ZeroBoundary => "zero-boundary",
            GuardianVerdict::NonzeroUnstable => "nonzero-unstable",
        }
    }
}

/// Guardian map evaluation at a single matrix, with the eigenvalue oracle
/// attached for cross-checking.
#[derive(Debug, Clone, PartialEq)]
pub struct GuardianReport {
    pub kind: GuardianMapKind,
    /// `det ρ(A)`.
    pub g_value: GuardianValue,
    pub det_a: GuardianValue,
    /// `det(A) · det ρ(A)`.
    pub f_value: GuardianValue,
    /// From the zero/nonzero status of `f`; the stable/unstable split of a
    /// nonzero `f` comes from the oracle's spectral abscissa.
    pub verdict: GuardianVerdict,
    pub oracle: HurwitzVerdict,
    /// Spectral abscissa `max Re λ(A)`.
    pub max_real: f64,
}

impl GuardianReport {
    /// Whether the guardian agrees with the oracle on the closure of the
    /// stable set: nonzero when stable, zero on the boundary. Off that closure
    /// `f` may vanish (any pair `λ_i + λ_j = 0`), so unstable matrices are
    /// always consistent.
    pub fn is_consistent(&self) -> bool {
        let zero = self.f_value.is_zero();
        match self.oracle {
            HurwitzVerdict::Stable => !zero,
            HurwitzVerdict::Boundary => zero,
            HurwitzVerdict::Unstable => true,
        }
    }

    /// Combined stability call: stable only when `f` is nonzero and the
    /// oracle agrees, unstable whenever the oracle says so, boundary
    /// otherwise.
    pub fn classification(&self) -> HurwitzVerdict {
        match (self.f_value.is_zero(), self.oracle) {
            (_, HurwitzVerdict::Unstable) => HurwitzVerdict::Unstable,
            (false, HurwitzVerdict::Stable) => HurwitzVerdict::Stable,
            _ => HurwitzVerdict::Boundary,
        }
    }
}

/// `det ρ(A)`, with the zero threshold taken relative to the larger of
/// `max |ρ(A)|` and `max |A|`.
pub fn guardian_g(kind: GuardianMapKind, a: &Matrix) -> Result<GuardianValue> {
    apply_rho(kind, a)?.det_signed_log_relative_to(a.max_abs())
}

pub fn guardian_evaluate(kind: GuardianMapKind, a: &Matrix) -> Result<GuardianReport> {
    guardian_evaluate_with_tol(kind, a, DEFAULT_ORACLE_TOL)
}

/// As [`guardian_evaluate`], with an explicit oracle tolerance on `max Re λ`.
pub fn guardian_evaluate_with_tol(
    kind: GuardianMapKind,
    a: &Matrix,
    tol: f64,
) -> Result<GuardianReport> {
    let g_value = guardian_g(kind, a)?;
    let det_a = a.det_signed_log()?;
    let f_value = det_a.product(g_value);
    let max_real = spectrum(a)?.max_real();
    let oracle = HurwitzVerdict::from_abscissa(max_real, tol);
    let verdict = if f_value.is_zero() {
        GuardianVerdict::ZeroBoundary
    } else if max_real < 0.0 {
        GuardianVerdict::NonzeroStable
    } else {
        GuardianVerdict::NonzeroUnstable
    };
    Ok(GuardianReport {
        kind,
        g_value,
        det_a,
        f_value,
        verdict,
        oracle,
        max_real,
    })
}
