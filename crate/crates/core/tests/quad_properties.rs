//! Engine-level properties of the quadrature routines: tolerance scaling,
//! agreement across independent strategies, linearity, and invariance
//! under power substitution.

use gptrans_core::expr::{classify_decay_with, parse, ParamMap};
use gptrans_core::quad::{
    integrate_abel, integrate_algebraic, integrate_auto, integrate_decay, integrate_finite,
    integrate_oscillatory, QuadOptions, QuadStatus, Strategy,
};
use proptest::prelude::*;

fn opts(rel: f64) -> QuadOptions {
    QuadOptions {
        rel_tol: rel,
        ..QuadOptions::default()
    }
}

#[test]
fn requested_tolerance_scales_the_achieved_error() {
    // exact: 1
    let f = |x: f64| (-x).exp();
    for rel in [1e-6, 1e-9, 1e-12] {
        let r = integrate_decay(f, &opts(rel)).unwrap();
        assert_eq!(r.status, QuadStatus::Converged);
        let err = (r.value - 1.0).abs();
        assert!(err <= 10.0 * rel, "rel={rel} err={err}");
        assert!(err <= r.err_est.max(1e-15) * 50.0, "estimate too optimistic");
    }
}

#[test]
fn strategies_agree_on_a_gaussian() {
    // exact: sqrt(pi)/2
    let exact = std::f64::consts::PI.sqrt() / 2.0;
    let f = |x: f64| (-(x * x)).exp();
    let o = opts(1e-11);
    let a = integrate_decay(f, &o).unwrap();
    let b = integrate_algebraic(f, &o).unwrap();
    assert!((a.value - exact).abs() < 1e-11);
    assert!((b.value - exact).abs() < 1e-11);
    assert!((a.value - b.value).abs() < 1e-11);
}

#[test]
fn oscillatory_and_decay_agree_on_a_damped_sine() {
    // exact: 1/2
    let f = |x: f64| x.sin() * (-x).exp();
    let o = opts(1e-11);
    let a = integrate_decay(f, &o).unwrap();
    let b = integrate_oscillatory(f, 2.0 * std::f64::consts::PI, &o).unwrap();
    let c = integrate_abel(f, None, &o).unwrap();
    assert!((a.value - 0.5).abs() < 1e-11);
    assert!((b.value - 0.5).abs() < 1e-10);
    assert!((c.value - 0.5).abs() < 1e-8);
}

#[test]
fn linearity_under_the_same_route() {
    let f = |x: f64| (-x).exp();
    let g = |x: f64| (-2.0 * x).exp();
    let combo = |x: f64| 2.0 * f(x) + 3.0 * g(x);
    let o = opts(1e-12);
    let rf = integrate_decay(f, &o).unwrap().value;
    let rg = integrate_decay(g, &o).unwrap().value;
    let rc = integrate_decay(combo, &o).unwrap().value;
    assert!((rc - (2.0 * rf + 3.0 * rg)).abs() < 1e-11);
}

#[test]
fn power_substitution_preserves_the_integral() {
    // int f(x) dx = int n t^(n-1) f(t^n) dt, both read by the same route.
    let f = |x: f64| (-x).exp();
    let o = opts(1e-12);
    let direct = integrate_decay(f, &o).unwrap().value;
    for n in [2.0, 3.0, 4.0] {
        let subst = |t: f64| n * t.powf(n - 1.0) * f(t.powf(n));
        let r = integrate_decay(subst, &o).unwrap().value;
        assert!((r - direct).abs() < 1e-10, "n={n}");
    }
}

#[test]
fn finite_interval_handles_endpoint_singularities() {
    let o = opts(1e-12);
    let r = integrate_finite(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &o).unwrap();
    assert_eq!(r.status, QuadStatus::Converged);
    assert!((r.value - 2.0).abs() < 1e-11);
    let r = integrate_finite(|x: f64| (1.0 - x).ln(), 0.0, 1.0, &o).unwrap();
    assert!((r.value + 1.0).abs() < 1e-10);
}

#[test]
fn log_divergence_is_not_reported_as_converged() {
    let r = integrate_algebraic(|x: f64| 1.0 / (1.0 + x), &opts(1e-10)).unwrap();
    assert_ne!(r.status, QuadStatus::Converged);
}

#[test]
fn pure_sine_splits_by_strategy() {
    // Cell summation must refuse; the damped limit is 1.
    let f = |x: f64| x.sin();
    let o = opts(1e-8);
    let cells = integrate_oscillatory(f, 2.0 * std::f64::consts::PI, &o).unwrap();
    assert_eq!(cells.status, QuadStatus::DivergentSuspected);
    let abel = integrate_abel(f, Some(2.0 * std::f64::consts::PI), &o).unwrap();
    assert_eq!(abel.status, QuadStatus::Converged);
    assert!((abel.value - 1.0).abs() < 1e-6);
}

#[test]
fn conditionally_convergent_sine_over_x() {
    // exact: pi/2, by cells with acceleration and by the damped limit.
    let f = |x: f64| if x == 0.0 { 1.0 } else { x.sin() / x };
    let exact = std::f64::consts::PI / 2.0;
    let o = opts(1e-9);
    let cells = integrate_oscillatory(f, 2.0 * std::f64::consts::PI, &o).unwrap();
    assert!((cells.value - exact).abs() < 1e-8);
    let abel = integrate_abel(f, Some(2.0 * std::f64::consts::PI), &o).unwrap();
    assert!((abel.value - exact).abs() < 1e-6);
}

#[test]
fn auto_dispatch_follows_the_classification() {
    let params = ParamMap::new().with("y", 1.0);
    let gauss = parse("exp(-(x^2))").unwrap();
    let class = classify_decay_with(&gauss, &params);
    let g = move |x: f64| gauss.eval_or_nan(x, &params);
    let r = integrate_auto(g, &class, &opts(1e-10)).unwrap();
    assert_eq!(r.strategy_used, Strategy::Decay);
    assert!((r.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-10);

    let params = ParamMap::new();
    let alg = parse("1/(1 + x^2)^2").unwrap();
    let class = classify_decay_with(&alg, &params);
    let g = move |x: f64| alg.eval_or_nan(x, &params);
    let r = integrate_auto(g, &class, &opts(1e-10)).unwrap();
    assert_eq!(r.strategy_used, Strategy::Algebraic);
    assert!((r.value - std::f64::consts::PI / 4.0).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exponential_rate_scaling(a in 0.2f64..5.0) {
        // int exp(-a x) = 1/a
        let r = integrate_decay(move |x: f64| (-a * x).exp(), &opts(1e-10)).unwrap();
        prop_assert!((r.value - 1.0 / a).abs() < 1e-9 / a);
    }

    #[test]
    fn dilation_divides_the_value(c in 0.25f64..4.0) {
        // int f(c x) dx = (1/c) int f
        let base = integrate_decay(|x: f64| (-(x * x)).exp(), &opts(1e-11)).unwrap().value;
        let scaled = integrate_decay(move |x: f64| (-(c * x) * (c * x)).exp(), &opts(1e-11))
            .unwrap()
            .value;
        prop_assert!((scaled - base / c).abs() < 1e-9);
    }
}
