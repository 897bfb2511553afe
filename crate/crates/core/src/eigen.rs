//! Eigenvalues of dense real matrices: balancing, Householder reduction to
//! upper Hessenberg form, then Francis double-shift QR.
//!
//! This is the spectral oracle the guardian maps are checked against.

use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::complex::Complex;
use crate::num::{abs, copysign, sqrt};
use crate::{Error, Matrix, Result};

/// Total QR sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Per-pair tolerance used when comparing eigenvalue multisets of objects
/// built from a matrix with 1-norm `norm1`.
pub fn pairing_tolerance(norm1: f64) -> f64 {
    1e-7 * (1.0 + norm1)
}

/// Eigenvalues of a real square matrix, in no particular order. Complex
/// eigenvalues appear in conjugate pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Spectral abscissa `max Re λ`.
    pub fn max_real(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| z.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Worst pair distance of a greedy nearest-neighbour matching against
    /// `expected`, or `None` when the multisets differ in size.
    pub fn matching_distance(&self, expected: &[Complex]) -> Option<f64> {
        multiset_distance(&self.eigenvalues, expected)
    }

    pub fn matches(&self, expected: &[Complex], tol: f64) -> bool {
        self.matching_distance(expected).is_some_and(|d| d <= tol)
    }
}

/// Greedy matching: all cross pairs sorted by distance, closest pairs taken
/// first. Returns the largest accepted distance.
pub fn multiset_distance(a: &[Complex], b: &[Complex]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push((x.dist(*y), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = alloc::vec![false; a.len()];
    let mut used_b = alloc::vec![false; b.len()];
    let mut worst: f64 = 0.0;
    let mut matched = 0;
    for (d, i, j) in pairs {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        worst = worst.max(d);
        matched += 1;
        if matched == a.len() {
            break;
        }
    }
    Some(worst)
}

/// Outcome of the eigenvalue-based Hurwitz test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurwitzVerdict {
    Stable,
    Boundary,
    Unstable,
}

impl HurwitzVerdict {
    pub fn from_abscissa(max_re: f64, tol: f64) -> Self {
        if max_re < -tol {
            HurwitzVerdict::Stable
        } else if abs(max_re) <= tol {
            HurwitzVerdict::Boundary
        } else {
            HurwitzVerdict::Unstable
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            HurwitzVerdict::Stable => "stable",
            HurwitzVerdict::Boundary => "boundary",
            HurwitzVerdict::Unstable => "unstable",
        }
    }
}

/// Stable if `max Re λ < -tol`, boundary if `|max Re λ| <= tol`.
pub fn is_hurwitz(a: &Matrix, tol: f64) -> Result<HurwitzVerdict> {
    Ok(HurwitzVerdict::from_abscissa(spectrum(a)?.max_real(), tol))
}

/// All eigenvalues of `a`.
pub fn spectrum(a: &Matrix) -> Result<Spectrum> {
    let n = a.require_square()?;
    let mut h = OneBased::from(a);
    balance(&mut h);
    hessenberg(&mut h);
    let eigenvalues = hqr(&mut h)?;
    debug_assert_eq!(eigenvalues.len(), n);
    Ok(Spectrum { eigenvalues })
}

/// Square work array with 1-based indexing, which keeps the QR sweep close
/// to its classical formulation.
struct OneBased {
    n: usize,
    d: Vec<f64>,
}

impl From<&Matrix> for OneBased {
    fn from(m: &Matrix) -> Self {
        OneBased {
            n: m.rows(),
            d: m.as_slice().to_vec(),
        }
    }
}

impl Index<(usize, usize)> for OneBased {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.d[(i - 1) * self.n + (j - 1)]
    }
}

impl IndexMut<(usize, usize)> for OneBased {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.d[(i - 1) * self.n + (j - 1)]
    }
}

/// Diagonal similarity by powers of two to even out row and column norms.
fn balance(a: &mut OneBased) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let n = a.n;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 1..=n {
                if j != i {
                    c += abs(a[(j, i)]);
                    r += abs(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 1..=n {
                    a[(i, j)] *= g;
                }
                for j in 1..=n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form.
fn hessenberg(a: &mut OneBased) {
    let n = a.n;
    if n < 3 {
        return;
    }
    let mut v = alloc::vec![0.0; n + 1];
    for k in 1..=n - 2 {
        let mut norm = 0.0;
        for i in k + 1..=n {
            norm += a[(i, k)] * a[(i, k)];
        }
        let norm = sqrt(norm);
        if norm == 0.0 {
            continue;
        }
        let alpha = -copysign(norm, a[(k + 1, k)]);
        for i in k + 1..=n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = (k + 1..=n).map(|i| v[i] * v[i]).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        for j in k..=n {
            let s: f64 = (k + 1..=n).map(|i| v[i] * a[(i, j)]).sum();
            for i in k + 1..=n {
                a[(i, j)] -= beta * s * v[i];
            }
        }
        for i in 1..=n {
            let s: f64 = (k + 1..=n).map(|j| a[(i, j)] * v[j]).sum();
            for j in k + 1..=n {
                a[(i, j)] -= beta * s * v[j];
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..=n {
            a[(i, k)] = 0.0;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; destroys `a`.
fn hqr(a: &mut OneBased) -> Result<Vec<Complex>> {
    let n = a.n;
    let mut wr = alloc::vec![0.0; n + 1];
    let mut wi = alloc::vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += abs(a[(i, j)]);
        }
    }
    let mut nn = n;
    let mut t = 0.0;
    let mut total_sweeps = 0usize;
    let (mut p, mut q, mut r): (f64, f64, f64);
    let (mut x, mut y, mut z);
    while nn >= 1 {
        let mut its = 0usize;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = abs(a[(l - 1, l - 1)]) + abs(a[(l, l)]);
                if s == 0.0 {
                    s = anorm;
                }
                if abs(a[(l, l - 1)]) + s == s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[(nn, nn)];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
            } else {
                y = a[(nn - 1, nn - 1)];
                let mut w = a[(nn, nn - 1)] * a[(nn - 1, nn)];
                if l == nn - 1 {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = sqrt(abs(q));
                    x += t;
                    if q >= 0.0 {
                        z = p + copysign(z, p);
                        wr[nn - 1] = x + z;
                        wr[nn] = x + z;
                        if z != 0.0 {
                            wr[nn] = x - w / z;
                        }
                        wi[nn - 1] = 0.0;
                        wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = x + p;
                        wr[nn] = x + p;
                        wi[nn - 1] = -z;
                        wi[nn] = z;
                    }
                    nn -= 2;
                } else {
                    if its == MAX_SWEEPS_PER_EIGENVALUE {
                        return Err(Error::NoConvergence {
                            iterations: total_sweeps,
                        });
                    }
                    if its > 0 && its.is_multiple_of(10) {
                        // exceptional shift
                        t += x;
                        for i in 1..=nn {
                            a[(i, i)] -= x;
                        }
                        let s = abs(a[(nn, nn - 1)]) + abs(a[(nn - 1, nn - 2)]);
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    total_sweeps += 1;

                    let mut m = nn - 2;
                    loop {
                        z = a[(m, m)];
                        r = x - z;
                        let s = y - z;
                        p = (r * s - w) / a[(m + 1, m)] + a[(m, m + 1)];
                        q = a[(m + 1, m + 1)] - z - r - s;
                        r = a[(m + 2, m + 1)];
                        let s = abs(p) + abs(q) + abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = abs(a[(m, m - 1)]) * (abs(q) + abs(r));
                        let v = abs(p) * (abs(a[(m - 1, m - 1)]) + abs(z) + abs(a[(m + 1, m + 1)]));
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in m + 2..=nn {
                        a[(i, i - 2)] = 0.0;
                        if i != m + 2 {
                            a[(i, i - 3)] = 0.0;
                        }
                    }
                    let mut k = m;
                    while k < nn {
                        if k != m {
                            p = a[(k, k - 1)];
                            q = a[(k + 1, k - 1)];
                            r = 0.0;
                            if k != nn - 1 {
                                r = a[(k + 2, k - 1)];
                            }
                            x = abs(p) + abs(q) + abs(r);
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = copysign(sqrt(p * p + q * q + r * r), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a[(k, k - 1)] = -a[(k, k - 1)];
                                }
                            } else {
                                a[(k, k - 1)] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nn {
                                p = a[(k, j)] + q * a[(k + 1, j)];
                                if k != nn - 1 {
                                    p += r * a[(k + 2, j)];
                                    a[(k + 2, j)] -= p * z;
                                }
                                a[(k + 1, j)] -= p * y;
                                a[(k, j)] -= p * x;
                            }
                            let mmin = if nn < k + 3 { nn } else { k + 3 };
                            for i in l..=mmin {
                                p = x * a[(i, k)] + y * a[(i, k + 1)];
                                if k != nn - 1 {
                                    p += z * a[(i, k + 2)];
                                    a[(i, k + 2)] -= p * r;
                                }
                                a[(i, k + 1)] -= p * q;
                                a[(i, k)] -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 2 || l + 1 >= nn {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| Complex::new(wr[i], wi[i])).collect())
}
