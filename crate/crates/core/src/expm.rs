//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! (degrees 3, 5, 7, 9, 13), following Higham's 2005 selection thresholds.

use crate::{Matrix, Result};

const THETA: [(usize, f64); 5] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
    (13, 5.371_920_351_148_152),
];

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17_297_280.0,
    8_648_640.0,
    1_995_840.0,
    277_200.0,
    25_200.0,
    1512.0,
    56.0,
    1.0,
];
const B9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16380.0,
    182.0,
    1.0,
];

/// `e^{A t}` for square `a` and finite `t`.
pub fn expm(a: &Matrix, t: f64) -> Result<Matrix> {
    let n = a.require_square()?;
    if !t.is_finite() {
        return Err(crate::Error::NonFiniteEvaluation { theta: t });
    }
    let at = a.scale(t);
    let norm = at.norm1();
    let eye = Matrix::identity(n);
    if norm == 0.0 {
        return Ok(eye);
    }

    for &(m, theta) in &THETA[..4] {
        if norm <= theta {
            let coeffs: &[f64] = match m {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            return pade_low(&at, coeffs);
        }
    }

    let theta13 = THETA[4].1;
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > theta13 {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let scaled = at.scale(libm::ldexp(1.0, -(squarings as i32)));
    let mut r = pade13(&scaled)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

/// Odd/even split `U = A Σ b_{2j+1} A^{2j}`, `V = Σ b_{2j} A^{2j}`, result
/// `(V - U)^{-1} (V + U)`.
fn pade_low(a: &Matrix, b: &[f64]) -> Result<Matrix> {
    let n = a.rows();
    let a2 = a * a;
    let mut power = Matrix::identity(n);
    let mut u_inner = Matrix::zeros(n, n);
    let mut v = Matrix::zeros(n, n);
    for j in 0..b.len() / 2 {
        u_inner = &u_inner + &power.scale(b[2 * j + 1]);
        v = &v + &power.scale(b[2 * j]);
        power = &power * &a2;
    }
    let u = a * &u_inner;
    finish(&u, &v)
}

fn pade13(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let b = &B13;
    let eye = Matrix::identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let comb = |c6: f64, c4: f64, c2: f64, c0: f64| {
        &(&(&a6.scale(c6) + &a4.scale(c4)) + &a2.scale(c2)) + &eye.scale(c0)
    };
    let u_hi = &a6 * &(&(&a6.scale(b[13]) + &a4.scale(b[11])) + &a2.scale(b[9]));
    let u = a * &(&u_hi + &comb(b[7], b[5], b[3], b[1]));
    let v_hi = &a6 * &(&(&a6.scale(b[12]) + &a4.scale(b[10])) + &a2.scale(b[8]));
    let v = &v_hi + &comb(b[6], b[4], b[2], b[0]);
    finish(&u, &v)
}

fn finish(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    let p = v + u;
    let q = v - u;
    q.solve(&p)
}
