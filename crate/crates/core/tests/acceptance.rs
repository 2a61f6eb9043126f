//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use backstep::analysis::*;
use backstep::kernels::*;
use backstep::model::*;
use backstep::sim::*;
use common::{fitted_order, max_abs_diff};
use proptest::prelude::Rng;
use proptest::test_runner::{RngAlgorithm, TestRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s(e: backstep::Error) -> String {
    e.to_string()
}

fn sec31() -> SystemParams {
    SystemParams::new(1.0 / 3.0, 0.25, 0.5, 0.25).unwrap()
}

fn acceptance_config(t_final: f64) -> SimConfig {
    SimConfig { dt: 1e-3, t_final, record_every: 50, ..Default::default() }
}

fn acceptance_grid() -> Grid {
    Grid::new(128).unwrap()
}

fn spectral() -> Outcome {
    let p = sec31();
    // -rho + ab / gamma = -1/3 + 1/2
    let l0 = eigenvalue_analytic(0, &p).map_err(e2s)?;
    ensure((l0 - 1.0 / 6.0).abs() < 1e-14, format!("lambda_0 = {l0}"))?;
    let ns = [32usize, 64, 128];
    let hs: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
    let ops: Vec<DiscreteOperators> = ns
        .iter()
        .map(|&n| DiscreteOperators::new(&p, &Grid::new(n).unwrap()))
        .collect::<Result<_, _>>()
        .map_err(e2s)?;
    let mut worst_order = f64::INFINITY;
    for mode in 0..=4usize {
        let npi2 = (mode as f64 * PI).powi(2);
        let exact = -p.rho + p.alpha * p.beta / (p.gamma + npi2) - npi2;
        let errs: Vec<f64> = ops
            .iter()
            .map(|o| rayleigh_check(mode, o).map(|r| (r - exact).abs()))
            .collect::<Result<_, _>>()
            .map_err(e2s)?;
        if mode == 0 {
            // The constant mode is reproduced exactly by the discrete operator.
            ensure(errs.iter().all(|&e| e < 1e-12), format!("mode 0 errors {errs:?}"))?;
            continue;
        }
        let order = fitted_order(&hs, &errs);
        ensure(order >= 1.8, format!("mode {mode}: order {order:.3}, errors {errs:?}"))?;
        worst_order = worst_order.min(order);
    }
    Ok(format!("lambda_0 = {l0:.15}, min Rayleigh order {worst_order:.3}"))
}

fn trichotomy() -> Outcome {
    let g = acceptance_grid();
    let cases = [
        ((1.0 / 3.0, 0.25, 0.5, 0.25), Stability::Unstable),
        ((0.5, 1.0, 1.0, 1.0), Stability::Unstable),
        ((1.0, 0.5, 0.5, 1.0), Stability::Stable),
    ];
    let mut rates = Vec::new();
    for ((rho, a, b, gm), want) in cases {
        let p = SystemParams::new(rho, a, b, gm).map_err(e2s)?;
        let r = is_open_loop_stable(&p).map_err(e2s)?;
        ensure(r.stability == want, format!("({rho}, {a}, {b}, {gm}) classified {:?}", r.stability))?;
        let ts = simulate(&Scenario::new(ScenarioKind::OpenLoop), &p, &g, &acceptance_config(20.0)).map_err(e2s)?;
        let est = fit_decay_rate(&ts.times(), &ts.norm_w(), None).map_err(e2s)?;
        let grows = est.fitted_rate < 0.0;
        ensure(grows == (want == Stability::Unstable), format!("simulated rate {} contradicts {want:?}", est.fitted_rate))?;
        rates.push(-est.fitted_rate);
    }
    let rel = (rates[0] - 1.0 / 6.0).abs() / (1.0 / 6.0);
    ensure(rel <= 0.10, format!("growth rate {} vs 1/6 (rel {rel:.3})", rates[0]))?;
    Ok(format!("growth rates {:.5}, {:.5}, {:.5}; first within {:.2}% of 1/6", rates[0], rates[1], rates[2], 100.0 * rel))
}

fn residual(f: impl Fn(f64, f64) -> f64, s: f64, h: f64) -> f64 {
    [(0.75, 0.25), (0.5, 0.25), (0.875, 0.5), (0.625, 0.125)]
        .iter()
        .map(|&(x, y)| {
            let fxx = (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h);
            let fyy = (f(x, y + h) - 2.0 * f(x, y) + f(x, y - h)) / (h * h);
            (fxx - fyy - s * f(x, y)).abs()
        })
        .fold(0.0, f64::max)
}

fn kernel_fidelity() -> Outcome {
    let g = acceptance_grid();
    let mut worst = 0.0f64;
    for c in [0.5, 1.0, 5.0] {
        let lower = solve_kernel_numeric(c, &g, Orientation::Lower).map_err(e2s)?;
        let upper = solve_kernel_numeric(c, &g, Orientation::Upper).map_err(e2s)?;
        let inverse = solve_kernel_numeric(-c, &g, Orientation::Lower).map_err(e2s)?;
        let ka = KernelTable::ka(c, &g).map_err(e2s)?;
        let kb = KernelTable::kb(c, &g).map_err(e2s)?;
        let la = KernelTable::la(c, &g).map_err(e2s)?;
        let d_ka = lower.max_abs_diff(&ka).ok_or("orientation mismatch")?;
        let d_kb = upper.max_abs_diff(&kb).ok_or("orientation mismatch")?;
        let d_la = inverse.values().iter().zip(la.values()).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
        for (name, d) in [("k^a", d_ka), ("l^a", d_la), ("k^b", d_kb)] {
            ensure(d <= 1e-6, format!("{name} at gain {c}: {d:e}"))?;
            worst = worst.max(d);
        }
        for t in [&ka, &la, &kb] {
            ensure(t.diagonal_defect() == 0.0, format!("diagonal defect at gain {c}"))?;
        }
        let hs = [1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0];
        let orders = [
            fitted_order(&hs, &hs.map(|h| residual(|x, y| kernel_ka(x, y, c).unwrap(), c, h))),
            fitted_order(&hs, &hs.map(|h| residual(|x, y| kernel_la(x, y, c).unwrap(), -c, h))),
            fitted_order(&hs, &hs.map(|h| residual(|x, y| kernel_kb(y, x, c).unwrap(), c, h))),
        ];
        ensure(orders.iter().all(|&o| o >= 1.8), format!("residual orders {orders:?} at gain {c}"))?;
    }
    Ok(format!("max deviation from Goursat solution {worst:.2e}"))
}

fn round_trip() -> Outcome {
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut unit = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
    let mut worst = f64::INFINITY;
    for _ in 0..4 {
        let coeffs: Vec<(f64, f64)> = (0..4).map(|_| (unit(), 3.0 * unit())).collect();
        let f = |x: f64| coeffs.iter().enumerate().map(|(k, (a, s))| a * ((k as f64 + s) * x).sin()).sum::<f64>();
        for c in [0.5, 1.0, 5.0] {
            let mut errs = [Vec::new(), Vec::new()];
            let mut hs = Vec::new();
            for n in [32usize, 64, 128] {
                let g = Grid::new(n).unwrap();
                let v = g.sample(f);
                let lo = volterra_lower_inverse(
                    &KernelTable::la(c, &g).map_err(e2s)?,
                    &volterra_lower(&KernelTable::ka(c, &g).map_err(e2s)?, &v).map_err(e2s)?,
                )
                .map_err(e2s)?;
                let up = volterra_upper_inverse(
                    &KernelTable::lb(c, &g).map_err(e2s)?,
                    &volterra_upper(&KernelTable::kb(c, &g).map_err(e2s)?, &v).map_err(e2s)?,
                )
                .map_err(e2s)?;
                errs[0].push(max_abs_diff(&lo, &v));
                errs[1].push(max_abs_diff(&up, &v));
                hs.push(g.h());
            }
            for (name, e) in ["lower", "upper"].iter().zip(&errs) {
                let o = fitted_order(&hs, e);
                ensure(o >= 1.8, format!("{name} pair at gain {c}: order {o:.3}, errors {e:?}"))?;
                worst = worst.min(o);
            }
        }
    }
    Ok(format!("min fitted order {worst:.3}"))
}

fn monotone_after(ts: &TimeSeries, t0: f64, values: &[f64]) -> bool {
    ts.times()
        .iter()
        .zip(values.windows(2))
        .filter(|(t, _)| **t >= t0)
        .all(|(_, w)| w[1] <= w[0])
}

fn stabilization() -> Outcome {
    let p = sec31();
    let c2 = 1.2 - p.rho;
    let sc = Scenario::new(ScenarioKind::StateFeedback).with_c2(c2);
    let ts = simulate(&sc, &p, &acceptance_grid(), &acceptance_config(10.0)).map_err(e2s)?;
    ensure(monotone_after(&ts, 1.0, &ts.norm_w()), "||w|| not monotone after t = 1")?;
    ensure(monotone_after(&ts, 1.0, &ts.norm_v()), "||v|| not monotone after t = 1")?;
    let last = ts.last().ok_or("empty series")?;
    ensure(last.norm_w < 1e-2 * ts.samples[0].norm_w, "||w|| did not decay")?;
    let lyap = lyapunov_check(&ts, c2, &p).map_err(e2s)?;
    ensure(lyap.holds, format!("Lyapunov envelope fails at {:?}", lyap.violations.first()))?;
    let ell = elliptic_bound_check(&ts, c2, &p).map_err(e2s)?;
    ensure(ell.holds, format!("elliptic bound fails at {:?}", ell.violations.first()))?;
    let rate = fit_decay_rate(&ts.times(), &ts.norm_w(), None).map_err(e2s)?.fitted_rate;
    Ok(format!(
        "decay rate {rate:.4} (c3 = {:.4}), Lyapunov worst ratio {:.3}, elliptic worst ratio {:.3}",
        lyap.rate.unwrap_or(f64::NAN),
        lyap.worst_ratio,
        ell.worst_ratio
    ))
}

fn observer_two() -> Outcome {
    let p = SystemParams::new(0.5, 1.0, 1.0, 1.0).unwrap();
    let sc = Scenario::new(ScenarioKind::ObserverTwoMeas)
        .with_o2(5.0)
        .with_initial(InitialProfile::sin(1), InitialProfile::cos(1));
    let ts = simulate(&sc, &p, &acceptance_grid(), &acceptance_config(4.0)).map_err(e2s)?;
    let t = ts.times();
    let ew = fit_decay_rate(&t, &ts.norm_ew(), None).map_err(e2s)?;
    let ev = fit_decay_rate(&t, &ts.norm_ev(), None).map_err(e2s)?;
    for (name, e) in [("e_w", ew), ("e_v", ev)] {
        ensure(e.fitted_rate > 0.0 && e.r_squared >= 0.95, format!("{name}: {e:?}"))?;
    }
    let plant = fit_decay_rate(&t, &ts.norm_w(), None).map_err(e2s)?;
    let last = ts.last().ok_or("empty series")?;
    ensure(plant.fitted_rate < 0.0 && last.norm_w > ts.samples[0].norm_w, "plant norm did not grow")?;
    Ok(format!(
        "error rates {:.3} / {:.3} (r^2 {:.4} / {:.4}), plant growth {:.3}",
        ew.fitted_rate, ev.fitted_rate, ew.r_squared, ev.r_squared, -plant.fitted_rate
    ))
}

fn observer_one() -> Outcome {
    let p = SystemParams::new(1.0, 0.5, 0.5, 1.0).unwrap();
    let sc = Scenario::new(ScenarioKind::ObserverOneMeas)
        .with_o2(0.5)
        .with_c2(0.5)
        .with_initial(InitialProfile::sin(1), InitialProfile::sin(2));
    let ts = simulate(&sc, &p, &acceptance_grid(), &acceptance_config(10.0)).map_err(e2s)?;
    let t = ts.times();
    let ew = fit_decay_rate(&t, &ts.norm_ew(), None).map_err(e2s)?;
    let ev = fit_decay_rate(&t, &ts.norm_ev(), None).map_err(e2s)?;
    ensure(ew.fitted_rate > 0.0 && ev.fitted_rate > 0.0, format!("{ew:?} {ev:?}"))?;
    let last = ts.last().ok_or("empty series")?;
    let first = &ts.samples[0];
    ensure(last.norm_ew.unwrap() < 1e-2 * first.norm_ew.unwrap(), "error norm did not decay")?;
    Ok(format!("error rates {:.3} / {:.3}", ew.fitted_rate, ev.fitted_rate))
}

fn output_feedback() -> Outcome {
    let p = sec31();
    ensure(is_open_loop_stable(&p).map_err(e2s)?.stability == Stability::Unstable, "open loop not unstable")?;
    let sc = Scenario::new(ScenarioKind::OutputFeedback).with_c2(1.2 - p.rho).with_o2(3.0);
    let ts = simulate(&sc, &p, &acceptance_grid(), &acceptance_config(10.0)).map_err(e2s)?;
    let t = ts.times();
    let w = fit_decay_rate(&t, &ts.norm_w(), None).map_err(e2s)?;
    let v = fit_decay_rate(&t, &ts.norm_v(), None).map_err(e2s)?;
    ensure(w.fitted_rate > 0.0 && v.fitted_rate > 0.0, format!("{w:?} {v:?}"))?;
    let last = ts.last().ok_or("empty series")?;
    ensure(last.norm_w < 1e-2 * ts.samples[0].norm_w, "||w|| did not decay")?;
    ensure(last.norm_v < 1e-2 * ts.samples[0].norm_v, "||v|| did not decay")?;
    Ok(format!("decay rates w {:.4}, v {:.4}", w.fitted_rate, v.fitted_rate))
}

fn sweep_structure(kind: SweepKind, gain_max: f64) -> Result<usize, String> {
    let spec = SweepSpec {
        kind,
        alpha: 0.5,
        beta: 1.0,
        gamma: 1.0,
        rhos: vec![0.5, 1.0, 2.0],
        gain_min: 0.01,
        gain_max,
        points: 500,
    };
    let table = sweep_conditions(&spec).map_err(e2s)?;
    for w in table.rows.windows(3) {
        let s0 = (w[1].rhs - w[0].rhs) / (w[1].gain - w[0].gain);
        let s1 = (w[2].rhs - w[1].rhs) / (w[2].gain - w[1].gain);
        ensure(s0 > 0.0 && s1 > 0.0, format!("{kind:?}: rhs not increasing near {}", w[1].gain))?;
        ensure(s1 >= s0 * (1.0 - 1e-9), format!("{kind:?}: rhs not convex near {}", w[1].gain))?;
    }
    for row in &table.rows {
        for (k, l) in row.lhs.iter().enumerate() {
            ensure(row.satisfied[k] == (*l > row.rhs), "flag disagrees with line above curve")?;
        }
    }
    let crossings = table.crossings();
    ensure(!crossings.is_empty(), format!("{kind:?}: no crossings"))?;
    Ok(crossings.len())
}

fn conditions() -> Outcome {
    let p = sec31();
    let r = check_controller_condition(1.2 - p.rho, &p).map_err(e2s)?;
    ensure(r.satisfied, format!("controller condition: {r:?}"))?;
    let p43 = SystemParams::new(0.5, 1.0, 1.0, 1.0).unwrap();
    let o = check_observer2_condition(5.0, &p43).map_err(e2s)?;
    ensure(o.satisfied && o.lhs == 33.0 && o.rhs == 1.0, format!("observer condition: {o:?}"))?;
    let nc = sweep_structure(SweepKind::Controller, 5.0)?;
    let no = sweep_structure(SweepKind::ObserverSingle, 3.0)?;
    Ok(format!(
        "controller margin {:.4}, observer margin {}, sweep crossings {nc} / {no}",
        r.margin, o.margin
    ))
}

fn bound_soundness() -> Outcome {
    let g = Grid::new(256).unwrap();
    let mut tight = 0.0f64;
    for gain in [0.25, 0.5, 1.0, 2.0, 5.0] {
        let q = KernelNorms::quadrature(gain, &g).map_err(e2s)?;
        let b = KernelNorms::bounds(gain).map_err(e2s)?;
        for (name, qv, bv) in [("k^a", q.ka, b.ka), ("l^a", q.la, b.la), ("k^a_x(1,.)", q.kax1, b.kax1)] {
            ensure(qv <= bv, format!("{name} at gain {gain}: {qv} > {bv}"))?;
            tight = tight.max(qv / bv);
        }
    }
    Ok(format!("largest norm / bound ratio {tight:.4}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("spectral correctness", spectral, Some(5)),
        ("stability trichotomy", trichotomy, Some(60)),
        ("kernel fidelity", kernel_fidelity, Some(60)),
        ("transform round trip", round_trip, None),
        ("stabilization", stabilization, Some(120)),
        ("two-measurement observer", observer_two, Some(120)),
        ("one-measurement observer", observer_one, Some(120)),
        ("output feedback", output_feedback, Some(120)),
        ("condition checkers", conditions, None),
        ("bound soundness", bound_soundness, None),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, budget) {
            if elapsed > Duration::from_secs(*limit) {
                outcome = Err(format!("took {:.1} s, budget {limit} s", elapsed.as_secs_f64()));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("criterion {}: {tag} {name} [{:.2} s] {detail}", k + 1, elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
