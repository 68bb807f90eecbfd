//! Abel regularization of integrals over (0, inf).
//!
//! A(eps) = int_0^inf f(x) e^{-eps x} dx is computed on the geometric ladder
//! eps_j = eps0 / 2^j and Richardson-extrapolated to eps = 0. When the
//! original integral converges, the extrapolated value agrees with it; when
//! it is only Abel-summable (sin x, cos x, ...), the ladder produces the
//! regularized value with a clean error signal. When A(eps) itself blows up
//! as eps -> 0 (log-divergent integrands), the extrapolation diagonal stops
//! settling and the result is flagged DivergentSuspected.
//!
//! Richardson here assumes A(eps) = A(0) + c1 eps + c2 eps^2 + ...; with a
//! halving ladder the m-th sweep cancels the eps^m term via the standard
//! (2^m - 1) weights. Series with only even powers converge too, just at
//! half the sweep rate.

use super::tanhsinh::exp_sinh_raw;
use super::{integrate_cells, Budget, QuadOptions, QuadResult, QuadStatus, Strategy};

/// Rung integrals run this much tighter than the requested tolerance;
/// Richardson amplifies independent rung errors by at most ~3x
/// (prod of 1 + 1/(2^m - 1)), so total rung noise stays under ~0.5 rel_tol.
const RUNG_TIGHTEN: f64 = 50.0;

pub(crate) fn abel_ladder(
    f: &dyn Fn(f64) -> f64,
    period_hint: Option<f64>,
    opts: &QuadOptions,
    budget: &Budget,
) -> QuadResult {
    let rel = (opts.rel_tol / RUNG_TIGHTEN).max(1e-14);
    let abs = opts.abs_tol / RUNG_TIGHTEN;

    let mut rung_vals: Vec<f64> = Vec::with_capacity(opts.abel_rungs);
    let mut rung_noise_sq = 0.0f64;
    for j in 0..opts.abel_rungs {
        let eps = opts.abel_eps0 * 0.5f64.powi(j as i32);
        let damped = |x: f64| (-eps * x).exp() * f(x);
        let raw = match period_hint {
            Some(period) => {
                let half = period / 2.0;
                let mut boundary = |k: u64| k as f64 * half;
                integrate_cells(&damped, &mut boundary, rel, abs, true, budget)
            }
            None => exp_sinh_raw(&damped, rel, abs, budget),
        };
        let tol_ok = raw.err_est <= f64::max(rel * raw.value.abs(), abs.max(1e-300));
        if raw.divergent || (raw.truncated && tol_ok) {
            // Even the damped integral refuses; no basis for extrapolation.
            return QuadResult {
                value: raw.value,
                err_est: raw.err_est,
                evals: budget.used(),
                status: QuadStatus::DivergentSuspected,
                strategy_used: Strategy::Abel,
            };
        }
        if raw.exhausted || !tol_ok {
            return QuadResult {
                value: raw.value,
                err_est: raw.err_est,
                evals: budget.used(),
                status: QuadStatus::MaxEvals,
                strategy_used: Strategy::Abel,
            };
        }
        rung_vals.push(raw.value);
        rung_noise_sq += raw.err_est * raw.err_est;
    }

    // Richardson triangle: t[m][i] extrapolates rungs i..=i+m; the best
    // estimate is the diagonal entry built on the smallest eps values.
    let r = rung_vals.len();
    let mut rows: Vec<Vec<f64>> = vec![rung_vals.clone()];
    let mut diag: Vec<f64> = vec![*rung_vals.last().expect("rungs >= 2")];
    for m in 1..r {
        let prev = &rows[m - 1];
        let denom = 2.0f64.powi(m as i32) - 1.0;
        let mut row = Vec::with_capacity(r - m);
        for i in 0..r - m {
            let hi = prev[i + 1]; // the entry built on smaller eps
            let lo = prev[i];
            row.push(hi + (hi - lo) / denom);
        }
        diag.push(*row.last().expect("nonempty row"));
        rows.push(row);
    }

    let value = *diag.last().expect("diag nonempty");
    let scale = rung_vals
        .iter()
        .fold(value.abs(), |acc, v| acc.max(v.abs()));
    let d_last = (diag[diag.len() - 1] - diag[diag.len() - 2]).abs();
    let d_prev = if diag.len() >= 3 {
        (diag[diag.len() - 2] - diag[diag.len() - 3]).abs()
    } else {
        f64::INFINITY
    };
    let err_est = d_last + 3.0 * rung_noise_sq.sqrt();
    let tol = f64::max(opts.rel_tol * scale, opts.abs_tol);

    let status = if d_last > tol && d_last > 0.9 * d_prev {
        // Diagonal stopped contracting while still far from tolerance:
        // A(eps) is not settling toward a limit. (Power-law expansions
        // contract by at least 2^-1/2 per sweep; 0.9 only catches stalls.)
        QuadStatus::DivergentSuspected
    } else if err_est <= tol {
        QuadStatus::Converged
    } else {
        QuadStatus::MaxEvals
    };
    QuadResult {
        value,
        err_est,
        evals: budget.used(),
        status,
        strategy_used: Strategy::Abel,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{integrate_abel, QuadOptions, QuadStatus};
    use std::f64::consts::PI;

    #[test]
    fn abel_value_of_sine() {
        // int_0^inf sin x dx = 1 in the Abel sense.
        let r = integrate_abel(|x: f64| x.sin(), Some(2.0 * PI), &QuadOptions::default())
            .unwrap();
        assert_eq!(r.status, QuadStatus::Converged);
        assert!((r.value - 1.0).abs() < 1e-6, "value {}", r.value);
    }

    #[test]
    fn abel_value_of_cosine() {
        // int_0^inf cos x dx = 0 in the Abel sense.
        let r = integrate_abel(|x: f64| x.cos(), Some(2.0 * PI), &QuadOptions::default())
            .unwrap();
        assert_eq!(r.status, QuadStatus::Converged);
        assert!(r.value.abs() < 1e-6, "value {}", r.value);
    }

    #[test]
    fn abel_agrees_with_convergent_integral() {
        // For a genuinely convergent integral the ladder reproduces it.
        let r = integrate_abel(|x: f64| (-x).exp(), None, &QuadOptions::default()).unwrap();
        assert_eq!(r.status, QuadStatus::Converged);
        assert!((r.value - 1.0).abs() < 1e-8, "value {}", r.value);
    }

    #[test]
    fn abel_rejects_log_divergence() {
        // A(eps) = e^eps E1(eps) ~ -ln(eps) grows without bound; the
        // diagonal cannot settle.
        let r = integrate_abel(|x: f64| 1.0 / (1.0 + x), None, &QuadOptions::default())
            .unwrap();
        assert_ne!(r.status, QuadStatus::Converged, "value {}", r.value);
    }

    #[test]
    fn damped_oscillation_without_hint() {
        // Decay route (no period hint) also handles mild oscillation once
        // the rung damping is in place.
        let r = integrate_abel(
            |x: f64| (-0.5 * x).exp() * x.cos(),
            None,
            &QuadOptions::default(),
        )
        .unwrap();
        assert_eq!(r.status, QuadStatus::Converged);
        // int e^{-x/2} cos x = (1/2) / (1/4 + 1) = 0.4
        assert!((r.value - 0.4).abs() < 1e-7, "value {}", r.value);
    }
}
