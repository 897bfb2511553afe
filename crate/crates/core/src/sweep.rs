//! One-parameter stability sweeps driven by the zeros of the guardian map
//! `f(A(θ)) = det A(θ) · det ρ(A(θ))`.
//!
//! Sign changes of `f` are bisected. Some kinds vanish to even order on the
//! boundary: `det(A ⊕ A) = 2ⁿ det A · (det A^[2])²`, so `f` never changes
//! sign for [`GuardianMapKind::KroneckerSum`]. Those zeros are located by
//! minimising `log|f|` between grid neighbours and are accepted only when
//! `f` actually reaches the zero threshold.

use alloc::vec::Vec;

use crate::eigen::spectrum;
use crate::representations::{guardian_evaluate, guardian_g, GuardianMapKind, GuardianReport};
use crate::{Error, GuardianValue, Matrix, Result};

/// Iteration ceiling for bisection, far beyond what any tolerance needs.
const MAX_BISECTIONS: usize = 200;

/// Oracle slack on `max Re λ` when cross-checking a refined crossing.
pub const ORACLE_TOUCH_TOL: f64 = 1e-6;

/// `A(θ) = A₀ + θ A₁ + θ² A₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamFamily {
    base: Matrix,
    dir1: Matrix,
    dir2: Option<Matrix>,
}

impl ParamFamily {
    pub fn new(base: Matrix, dir1: Matrix, dir2: Option<Matrix>) -> Result<Self> {
        let n = base.require_square()?;
        for m in core::iter::once(&dir1).chain(dir2.as_ref()) {
            if m.shape() != (n, n) {
                return Err(Error::DimensionMismatch {
                    op: "ParamFamily",
                    left: base.shape(),
                    right: m.shape(),
                });
            }
        }
        Ok(ParamFamily { base, dir1, dir2 })
    }

    pub fn linear(base: Matrix, dir1: Matrix) -> Result<Self> {
        ParamFamily::new(base, dir1, None)
    }

    pub fn n(&self) -> usize {
        self.base.rows()
    }

    pub fn base(&self) -> &Matrix {
        &self.base
    }

    pub fn dir1(&self) -> &Matrix {
        &self.dir1
    }

    pub fn dir2(&self) -> Option<&Matrix> {
        self.dir2.as_ref()
    }

    pub fn at(&self, theta: f64) -> Result<Matrix> {
        let mut m = &self.base + &self.dir1.scale(theta);
        if let Some(d2) = &self.dir2 {
            m = &m + &d2.scale(theta * theta);
        }
        if !m.is_finite() {
            return Err(Error::NonFiniteEvaluation { theta });
        }
        Ok(m)
    }
}

/// `det A · det ρ(A)` as a sign/log pair.
pub fn guardian_f(kind: GuardianMapKind, a: &Matrix) -> Result<GuardianValue> {
    let g = guardian_g(kind, a)?;
    Ok(a.det_signed_log()?.product(g))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSample {
    pub theta: f64,
    pub report: GuardianReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    /// `f` takes opposite signs at adjacent grid points.
    SignChange,
    /// `f` is zero on grid point(s) between opposite signs.
    GridZero,
    /// `f` reaches zero without changing sign.
    EvenOrder,
}

impl CrossingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CrossingKind::SignChange => "sign-change",
            CrossingKind::GridZero => "grid-zero",
            CrossingKind::EvenOrder => "even-order",
        }
    }
}

/// A bracketed boundary crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub kind: CrossingKind,
    pub lo: f64,
    pub hi: f64,
    /// Best estimate of θ*: the bracket midpoint, a grid zero, or the
    /// refined value.
    pub theta: f64,
    /// Width of the final bracket.
    pub width: f64,
    pub refined: Option<RefinedCrossing>,
}

/// `f` vanishes on grid points at the edge of the range, where no bracket
/// exists; flagged, never refined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Touch {
    pub theta_first: f64,
    pub theta_last: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub kind: GuardianMapKind,
    pub samples: Vec<SweepSample>,
    pub crossings: Vec<Crossing>,
    pub touches: Vec<Touch>,
}

/// Uniform grid `θ_i = min + (max - min) i / (samples - 1)`.
pub fn grid(theta_min: f64, theta_max: f64, samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::OutOfRange {
            what: "samples",
            value: samples as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    if !(theta_min.is_finite() && theta_max.is_finite() && theta_min < theta_max) {
        return Err(Error::InvalidInterval {
            lo: theta_min,
            hi: theta_max,
        });
    }
    let last = (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            if i + 1 == samples {
                theta_max
            } else {
                theta_min + (theta_max - theta_min) * (i as f64) / last
            }
        })
        .collect())
}

/// Evaluates the guardian along the grid and brackets every sign change.
pub fn sweep(
    family: &ParamFamily,
    kind: GuardianMapKind,
    theta_min: f64,
    theta_max: f64,
    samples: usize,
) -> Result<SweepResult> {
    let thetas = grid(theta_min, theta_max, samples)?;
    let samples = thetas
        .iter()
        .map(|&theta| {
            Ok(SweepSample {
                theta,
                report: guardian_evaluate(kind, &family.at(theta)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (crossings, touches) = scan(&samples);
    Ok(SweepResult {
        kind,
        samples,
        crossings,
        touches,
    })
}

/// [`sweep`] followed by refinement of every crossing to width `tol`.
///
/// Grid-local minima of `log|f|` that do not change sign are searched for
/// even-order zeros; a minimum that never reaches the zero threshold is
/// dropped.
pub fn sweep_refined(
    family: &ParamFamily,
    kind: GuardianMapKind,
    theta_min: f64,
    theta_max: f64,
    samples: usize,
    tol: f64,
) -> Result<SweepResult> {
    let mut result = sweep(family, kind, theta_min, theta_max, samples)?;
    for c in &mut result.crossings {
        let r = match c.kind {
            CrossingKind::EvenOrder => refine_even_order(family, kind, c.lo, c.hi, tol)?,
            _ => Some(refine_crossing(family, kind, c.lo, c.hi, tol)?),
        };
        if let Some(r) = r {
            c.theta = r.theta;
            c.width = r.width;
            c.refined = Some(r);
        }
    }
    let s = &result.samples;
    for i in 1..s.len().saturating_sub(1) {
        let (l, m, r) = (
            s[i - 1].report.f_value,
            s[i].report.f_value,
            s[i + 1].report.f_value,
        );
        let dip = m.sign != 0
            && l.sign == m.sign
            && r.sign == m.sign
            && m.log_magnitude < l.log_magnitude
            && m.log_magnitude < r.log_magnitude;
        if !dip {
            continue;
        }
        let (lo, hi) = (s[i - 1].theta, s[i + 1].theta);
        if let Some(refined) = refine_even_order(family, kind, lo, hi, tol)? {
            result.crossings.push(Crossing {
                kind: CrossingKind::EvenOrder,
                lo,
                hi,
                theta: refined.theta,
                width: refined.width,
                refined: Some(refined),
            });
        }
    }
    result.crossings.sort_by(|a, b| {
        a.theta
            .partial_cmp(&b.theta)
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    Ok(result)
}

fn scan(samples: &[SweepSample]) -> (Vec<Crossing>, Vec<Touch>) {
    let sign = |i: usize| samples[i].report.f_value.sign;
    let theta = |i: usize| samples[i].theta;
    let mut crossings = Vec::new();
    let mut touches = Vec::new();
    let mut i = 0;
    while i < samples.len() {
        if sign(i) == 0 {
            let first = i;
            while i + 1 < samples.len() && sign(i + 1) == 0 {
                i += 1;
            }
            let last = i;
            let left = first.checked_sub(1).map(sign);
            let right = (last + 1 < samples.len()).then(|| sign(last + 1));
            match (left, right) {
                (Some(l), Some(r)) => {
                    let (lo, hi) = (theta(first - 1), theta(last + 1));
                    let est = if first == last {
                        theta(first)
                    } else {
                        0.5 * (theta(first) + theta(last))
                    };
                    crossings.push(Crossing {
                        kind: if l == r {
                            CrossingKind::EvenOrder
                        } else {
                            CrossingKind::GridZero
                        },
                        lo,
                        hi,
                        theta: est,
                        width: theta(last) - theta(first),
                        refined: None,
                    });
                }
                _ => touches.push(Touch {
                    theta_first: theta(first),
                    theta_last: theta(last),
                }),
            }
        } else if i + 1 < samples.len() && sign(i + 1) != 0 && sign(i + 1) != sign(i) {
            let (lo, hi) = (theta(i), theta(i + 1));
            crossings.push(Crossing {
                kind: CrossingKind::SignChange,
                lo,
                hi,
                theta: 0.5 * (lo + hi),
                width: hi - lo,
                refined: None,
            });
        }
        i += 1;
    }
    (crossings, touches)
}

/// Refinement result with the eigenvalue oracle evaluated around it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedCrossing {
    pub theta: f64,
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
    /// `max Re λ` at `θ* - tol`, `θ*`, `θ* + tol`.
    pub max_real_below: f64,
    pub max_real_at: f64,
    pub max_real_above: f64,
    /// The spectral abscissa changes sign across the bracket or is within
    /// [`ORACLE_TOUCH_TOL`] of zero at θ*.
    pub oracle_consistent: bool,
}

/// Bisects `[lo, hi]` on the sign of `f` until the bracket is at most `tol`
/// wide, returning its midpoint.
pub fn refine_crossing(
    family: &ParamFamily,
    kind: GuardianMapKind,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<RefinedCrossing> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let f_sign = |theta: f64| -> Result<i8> { Ok(guardian_f(kind, &family.at(theta)?)?.sign) };
    let (mut lo, mut hi) = (lo, hi);
    let s_lo = f_sign(lo)?;
    let s_hi = f_sign(hi)?;
    if s_lo == 0 {
        hi = lo;
    } else if s_hi == 0 {
        lo = hi;
    } else if s_lo == s_hi {
        return Err(Error::SameSignBracket { lo, hi });
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match f_sign(mid)? {
            0 => {
                lo = mid;
                hi = mid;
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
        iterations += 1;
    }
    with_oracle(family, 0.5 * (lo + hi), lo, hi, tol)
}

/// Golden-section minimisation of `log|f|` on `[lo, hi]`, stopping at the
/// first evaluation where `f` is zero. `None` when no zero is reached
/// before the bracket collapses to floating-point resolution.
pub fn refine_even_order(
    family: &ParamFamily,
    kind: GuardianMapKind,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Option<RefinedCrossing>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let inv_phi = 0.5 * (libm::sqrt(5.0) - 1.0);
    let log_f = |theta: f64| -> Result<Option<f64>> {
        let g = guardian_f(kind, &family.at(theta)?)?;
        Ok((!g.is_zero()).then_some(g.log_magnitude))
    };
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let Some(mut f1) = log_f(x1)? else {
        return with_oracle(family, x1, x1, x1, tol).map(Some);
    };
    let Some(mut f2) = log_f(x2)? else {
        return with_oracle(family, x2, x2, x2, tol).map(Some);
    };
    for _ in 0..MAX_BISECTIONS {
        let (x, fx) = if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            (x1, log_f(x1)?)
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            (x2, log_f(x2)?)
        };
        match fx {
            None => return with_oracle(family, x, x, x, tol).map(Some),
            Some(v) if x == x1 => f1 = v,
            Some(v) => f2 = v,
        }
        if !(x1 > a && x2 > x1 && b > x2) {
            break;
        }
    }
    Ok(None)
}

fn with_oracle(
    family: &ParamFamily,
    theta: f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<RefinedCrossing> {
    let abscissa = |t: f64| -> Result<f64> { Ok(spectrum(&family.at(t)?)?.max_real()) };
    let max_real_below = abscissa(theta - tol)?;
    let max_real_at = abscissa(theta)?;
    let max_real_above = abscissa(theta + tol)?;
    let oracle_consistent =
        max_real_below * max_real_above <= 0.0 || libm::fabs(max_real_at) <= ORACLE_TOUCH_TOL;
    Ok(RefinedCrossing {
        theta,
        lo,
        hi,
        width: hi - lo,
        max_real_below,
        max_real_at,
        max_real_above,
        oracle_consistent,
    })
}
