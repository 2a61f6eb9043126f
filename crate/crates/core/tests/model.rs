mod common;

use std::f64::consts::PI;

use backstep::model::*;
use backstep::Error;
use common::*;

fn sec31() -> SystemParams {
    SystemParams::new(1.0 / 3.0, 0.25, 0.5, 0.25).unwrap()
}

#[test]
fn eigenvalue_formula() {
    let p = sec31();
    for n in 0..6 {
        let npi2 = (n as f64 * PI).powi(2);
        let want = -p.rho - npi2 + p.alpha * p.beta / (p.gamma + npi2);
        assert!((eigenvalue_analytic(n, &p).unwrap() - want).abs() < 1e-13);
    }
    assert!((eigenvalue_analytic(0, &p).unwrap() - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn trichotomy_of_reference_parameters() {
    let cases = [
        (SystemParams::new(1.0 / 3.0, 0.25, 0.5, 0.25).unwrap(), Stability::Unstable),
        (SystemParams::new(0.5, 1.0, 1.0, 1.0).unwrap(), Stability::Unstable),
        (SystemParams::new(1.0, 0.5, 0.5, 1.0).unwrap(), Stability::Stable),
    ];
    for (p, want) in cases {
        let r = is_open_loop_stable(&p).unwrap();
        assert_eq!(r.stability, want, "{p:?}");
        assert_eq!(r.margin.unwrap() > 0.0, want == Stability::Stable);
    }
}

#[test]
fn negative_gamma_may_destabilize_higher_mode() {
    // With gamma just above -pi^2 the n = 1 mode dominates.
    let p = SystemParams::new(1.0, 1.0, 1.0, -PI * PI + 0.05).unwrap();
    let r = is_open_loop_stable(&p).unwrap();
    assert_eq!(r.argmax_mode, 1);
    assert_eq!(r.stability, Stability::Unstable);
    assert!(r.margin.is_none());
}

#[test]
fn resonant_gamma_rejected() {
    for n in 0..4 {
        let g = -(n as f64 * PI).powi(2);
        let err = SystemParams::new(1.0, 0.5, 0.5, g).unwrap_err();
        assert!(matches!(err, Error::Resonance { mode, .. } if mode == n), "{err}");
    }
}

#[test]
fn rayleigh_quotients_converge_second_order() {
    let p = sec31();
    let ns = [32usize, 64, 128];
    let hs: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
    for mode in 0..=4 {
        let exact = eigenvalue_analytic(mode, &p).unwrap();
        let errs: Vec<f64> = ns
            .iter()
            .map(|&n| {
                let ops = DiscreteOperators::new(&p, &Grid::new(n).unwrap()).unwrap();
                (rayleigh_check(mode, &ops).unwrap() - exact).abs()
            })
            .collect();
        if mode == 0 {
            // Constants are exact discrete eigenvectors; only rounding remains.
            assert!(errs.iter().all(|&e| e < 1e-10), "{errs:?}");
        } else {
            let order = fitted_order(&hs, &errs);
            assert!(order >= 1.8, "mode {mode}: order {order}, {errs:?}");
            assert!(errs[2] <= 10.0 * (mode as f64 * PI).powi(4) * hs[2] * hs[2]);
        }
    }
}

#[test]
fn rayleigh_rejects_unresolved_mode() {
    let ops = DiscreteOperators::new(&sec31(), &Grid::new(16).unwrap()).unwrap();
    assert!(rayleigh_check(5, &ops).is_err());
}

#[test]
fn laplacian_self_adjoint_in_trapezoid_inner_product() {
    let g = Grid::new(40).unwrap();
    let d2 = neumann_laplacian(&g);
    let f = g.sample(|x| (1.3 * x).cos() + x * x * x);
    let h = g.sample(|x| (x - 0.3).powi(2) + (4.0 * x).sin());
    let lhs = g.inner(&d2.apply(&f), &h);
    let rhs = g.inner(&f, &d2.apply(&h));
    assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0), "{lhs} vs {rhs}");
}

#[test]
fn discrete_cosines_are_exact_eigenvectors() {
    let g = Grid::new(32).unwrap();
    let d2 = neumann_laplacian(&g);
    for k in 0..=32 {
        let phi = g.sample(|x| (k as f64 * PI * x).cos());
        let mu = neumann_eigenvalue(&g, k);
        let r: Vec<f64> = d2.apply(&phi).iter().zip(&phi).map(|(a, p)| a + mu * p).collect();
        assert!(r.iter().all(|v| v.abs() < 1e-8 * mu.max(1.0)), "mode {k}");
    }
}

#[test]
fn elliptic_solve_second_order_for_cosine_data() {
    let p = sec31();
    let ns = [32usize, 64, 128];
    let mut errs = Vec::new();
    for &n in &ns {
        let g = Grid::new(n).unwrap();
        let ops = DiscreteOperators::new(&p, &g).unwrap();
        let w = g.sample(|x| (2.0 * PI * x).cos());
        let v = ops.elliptic_solve(&w).unwrap();
        assert!(ops.elliptic_residual(&w, &v) < ELLIPTIC_RESIDUAL_TOL);
        let scale = p.beta / (p.gamma + 4.0 * PI * PI);
        let exact = g.sample(|x| scale * (2.0 * PI * x).cos());
        errs.push(max_abs_diff(&v, &exact));
    }
    let hs: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
    assert!(fitted_order(&hs, &errs) >= 1.8, "{errs:?}");
}

#[test]
fn discrete_resonance_named() {
    // gamma equal to minus a discrete Neumann eigenvalue makes gamma I - D2 singular.
    let g = Grid::new(16).unwrap();
    let shift = -neumann_eigenvalue(&g, 3);
    let err = check_discrete_shift(&g, shift).unwrap_err();
    assert!(matches!(err, Error::SingularElliptic { mode: 3, .. }), "{err}");
}

#[test]
fn grid_mismatch_reported() {
    let ops = DiscreteOperators::new(&sec31(), &Grid::new(16).unwrap()).unwrap();
    assert!(matches!(
        ops.elliptic_solve(&[0.0; 5]),
        Err(Error::GridMismatch { expected: 17, actual: 5 })
    ));
}
