//! The matrix ODE `Ẋ = AX + XAᵀ`: integrator accuracy, structure
//! preservation and the reduced flows on symmetric and skew-symmetric
//! matrices.

mod common;

use common::*;
use guardrep_core::compound::add_compound;
use guardrep_core::kron::{kron_sum_self, vec_rows};
use guardrep_core::ode::{
    asymmetry, check_lemma1, check_prop6, check_prop7, extract_v, extract_w,
    matrix_ode_closed_form, matrix_ode_rhs, matrix_ode_rk4, matrix_ode_rk4_trajectory, skew_from_v,
    symmetric_from_w, DEFAULT_RK4_STEPS,
};
use guardrep_core::Matrix;
use rand::Rng;

fn symmetric(r: &mut impl Rng, n: usize) -> Matrix {
    let u = uniform(r, n, n);
    &u + &u.transpose()
}

fn skew(r: &mut impl Rng, n: usize) -> Matrix {
    let u = uniform(r, n, n);
    &u - &u.transpose()
}

#[test]
fn rk4_matches_closed_form() {
    let mut r = rng(30);
    for n in 1..=5 {
        let a = uniform(&mut r, n, n);
        let x0 = uniform(&mut r, n, n);
        let rk = matrix_ode_rk4(&a, &x0, 1.0, DEFAULT_RK4_STEPS).unwrap();
        let exact = matrix_ode_closed_form(&a, &x0, 1.0).unwrap();
        assert!(max_abs_diff(&rk, &exact) <= 1e-6, "n={n}");
    }
}

#[test]
fn rk4_is_fourth_order() {
    let mut r = rng(31);
    for _ in 0..20 {
        let a = uniform(&mut r, 3, 3);
        let x0 = uniform(&mut r, 3, 3);
        let exact = matrix_ode_closed_form(&a, &x0, 1.0).unwrap();
        let err = |steps| max_abs_diff(&matrix_ode_rk4(&a, &x0, 1.0, steps).unwrap(), &exact);
        let ratio = err(16) / err(32);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn rk4_preserves_symmetry_and_skewness() {
    let mut r = rng(32);
    for n in 2..=5 {
        let a = uniform(&mut r, n, n);
        for (x0, pick) in [(symmetric(&mut r, n), 0), (skew(&mut r, n), 1)] {
            for x in matrix_ode_rk4_trajectory(&a, &x0, 1.5, 300).unwrap() {
                let dev = [asymmetry(&x).0, asymmetry(&x).1][pick];
                assert!(dev <= 1e-9 * (1.0 + x.max_abs()));
            }
        }
    }
}

#[test]
fn vec_dynamics_follow_kron_sum() {
    let mut r = rng(33);
    let h = 1e-5;
    for n in 1..=4 {
        let a = uniform(&mut r, n, n);
        let x0 = uniform(&mut r, n, n);
        let t = 0.8;
        let fwd = matrix_ode_closed_form(&a, &x0, t + h).unwrap();
        let back = matrix_ode_closed_form(&a, &x0, t - h).unwrap();
        let deriv = vec_rows(&(&fwd - &back).scale(0.5 / h));
        let xt = matrix_ode_closed_form(&a, &x0, t).unwrap();
        let model = &kron_sum_self(&a).unwrap() * &vec_rows(&xt);
        assert!(
            max_abs_diff(&deriv, &model) <= 1e-7 * (1.0 + model.max_abs()),
            "n={n}"
        );
        assert!(max_abs_diff(&vec_rows(&matrix_ode_rhs(&a, &xt)), &model) <= 1e-13);
    }
}

#[test]
fn reduced_flows_match_full_flow() {
    let mut r = rng(34);
    for n in 2..=5 {
        for t in [0.3, 0.7, 1.5] {
            let a = uniform(&mut r, n, n);
            assert!(
                check_prop6(&a, &symmetric(&mut r, n), t).unwrap() <= 1e-7,
                "sym n={n} t={t}"
            );
            assert!(
                check_prop7(&a, &skew(&mut r, n), t).unwrap() <= 1e-7,
                "skew n={n} t={t}"
            );
        }
    }
}

#[test]
fn reductions_reject_wrong_structure() {
    let mut r = rng(35);
    let a = uniform(&mut r, 3, 3);
    assert!(check_prop6(&a, &skew(&mut r, 3), 0.5).is_err());
    assert!(check_prop7(&a, &symmetric(&mut r, 3), 0.5).is_err());
}

#[test]
fn skew_basis_action_all_pairs() {
    let mut r = rng(36);
    for n in 2..=6 {
        let a = uniform(&mut r, n, n);
        for i in 0..n {
            for j in i + 1..n {
                assert!(check_lemma1(&a, i, j).unwrap() <= 1e-11, "n={n} ({i},{j})");
            }
        }
        assert!(check_lemma1(&a, 1, 0).is_err());
        assert!(check_lemma1(&a, 0, n).is_err());
    }
}

#[test]
fn skew_coordinates_evolve_under_add2() {
    // the generator of the v-flow, read off column by column
    let mut r = rng(37);
    let n = 4;
    let a = uniform(&mut r, n, n);
    let a2 = add_compound(&a, 2).unwrap();
    for col in 0..a2.cols() {
        let mut e = vec![0.0; a2.cols()];
        e[col] = 1.0;
        let image = extract_v(&matrix_ode_rhs(&a, &skew_from_v(&e, n).unwrap())).unwrap();
        for (row, v) in image.iter().enumerate() {
            assert!((v - a2[(row, col)]).abs() <= 1e-15);
        }
    }
    let w: Vec<f64> = (0..10).map(|i| i as f64).collect();
    assert_eq!(extract_w(&symmetric_from_w(&w).unwrap()).unwrap(), w);
}
