mod common;

use backstep::kernels::*;
use backstep::model::Grid;
use common::*;

fn smooth(x: f64) -> f64 {
    (2.3 * x).sin() + 0.4 * x * x - 0.1
}

fn round_trip_errors(c: f64, upper: bool) -> (Vec<f64>, Vec<f64>) {
    let ns = [32usize, 64, 128];
    let mut hs = Vec::new();
    let mut errs = Vec::new();
    for &n in &ns {
        let g = Grid::new(n).unwrap();
        let f = g.sample(smooth);
        let back = if upper {
            let k = KernelTable::kb(c, &g).unwrap();
            let l = KernelTable::lb(c, &g).unwrap();
            volterra_upper_inverse(&l, &volterra_upper(&k, &f).unwrap()).unwrap()
        } else {
            let k = KernelTable::ka(c, &g).unwrap();
            let l = KernelTable::la(c, &g).unwrap();
            volterra_lower_inverse(&l, &volterra_lower(&k, &f).unwrap()).unwrap()
        };
        hs.push(g.h());
        errs.push(max_abs_diff(&back, &f));
    }
    (hs, errs)
}

#[test]
fn lower_round_trip_second_order() {
    for &c in &[0.5, 1.0, 5.0] {
        let (hs, errs) = round_trip_errors(c, false);
        let p = fitted_order(&hs, &errs);
        assert!(p >= 1.8, "gain {c}: order {p}, errors {errs:?}");
    }
}

#[test]
fn upper_round_trip_second_order() {
    for &c in &[0.5, 1.0, 5.0] {
        let (hs, errs) = round_trip_errors(c, true);
        let p = fitted_order(&hs, &errs);
        assert!(p >= 1.8, "gain {c}: order {p}, errors {errs:?}");
    }
}

#[test]
fn inverse_then_forward_also_recovers() {
    let g = Grid::new(128).unwrap();
    let f = g.sample(smooth);
    let k = KernelTable::ka(2.0, &g).unwrap();
    let l = KernelTable::la(2.0, &g).unwrap();
    let back = volterra_lower(&k, &volterra_lower_inverse(&l, &f).unwrap()).unwrap();
    assert!(max_abs_diff(&back, &f) < 1e-4);
}

#[test]
fn transform_of_polynomial_matches_exact_integral() {
    // For the zero-order-in-y kernel approximation at small gain, compare the
    // quadrature against a fine Gauss-Legendre evaluation of the same integral.
    let g = Grid::new(128).unwrap();
    let c = 1.0;
    let f = g.sample(|x| 1.0 + x);
    let got = volterra_lower(&KernelTable::ka(c, &g).unwrap(), &f).unwrap();
    for (i, &x) in g.nodes().iter().enumerate().step_by(16) {
        let integral = gauss_legendre(|y| kernel_ka(x, y.min(x), c).unwrap() * (1.0 + y), 0.0, x, 50);
        let want = 1.0 + x - integral;
        assert!((got[i] - want).abs() < 1e-4, "x = {x}: {} vs {want}", got[i]);
    }
}
