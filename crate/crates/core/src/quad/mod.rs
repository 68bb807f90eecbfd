//! Quadrature on (0, inf) and finite intervals.
//!
//! Four baseline strategies, all built on double-exponential (DE) node maps:
//!
//! * [`integrate_decay`] - exp-sinh map for integrands that die off
//!   (exponentially or at least integrably) toward infinity.
//! * [`integrate_algebraic`] - split at 1 with the tail folded back to (0, 1]
//!   by x -> 1/x; the right tool when the integrand has algebraic tails or a
//!   pole-like denominator, where exp-sinh truncation would be flagged.
//! * [`integrate_oscillatory`] - half-period cells summed with Euler
//!   (van Wijngaarden) acceleration; converges for oscillatory integrands
//!   whose cell contributions decay, and refuses (status
//!   `DivergentSuspected`) when they do not.
//! * [`integrate_abel`] - Abel regularization: integrate f(x) e^{-eps x} on a
//!   ladder of eps values and Richardson-extrapolate eps -> 0. Assigns the
//!   classical regularized value to conditionally and Abel-summable
//!   integrals (sin x -> 1, cos x -> 0).
//!
//! [`integrate_auto`] picks among them from a [`DecayClass`].
//!
//! Honesty contract: `status == Converged` is only reported when the error
//! estimate met tolerance *and* no significant tail was cut off. A DE sum
//! that stabilizes because the node window ran out (e.g. 1/(1+x), whose
//! integral diverges) reports `DivergentSuspected`, never a silent finite
//! answer.

mod abel;
mod oscillatory;
mod tanhsinh;

pub(crate) use oscillatory::integrate_cells;
pub(crate) use tanhsinh::{exp_sinh_raw, tanh_sinh_raw, RawQuad};

use crate::expr::DecayClass;
use serde::{Deserialize, Serialize};
use std::cell::Cell;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Auto,
    Decay,
    Algebraic,
    Oscillatory,
    Abel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadStatus {
    /// Error estimate met tolerance with no truncated tail.
    Converged,
    /// Budget or refinement depth ran out first; value is best-effort.
    MaxEvals,
    /// Evidence the integral does not converge (growing estimates,
    /// non-decaying oscillation cells, or pseudo-convergence against the
    /// node window). Value is the best regularized/partial estimate.
    DivergentSuspected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub err_est: f64,
    pub evals: u64,
    pub status: QuadStatus,
    pub strategy_used: Strategy,
}

impl QuadResult {
    pub fn converged(&self) -> bool {
        self.status == QuadStatus::Converged
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: u64,
    pub strategy: Strategy,
    /// Period of the dominant oscillation, where the caller knows it and the
    /// integrand's own structure does not reveal it.
    pub oscillation_period_hint: Option<f64>,
    /// Largest damping exponent of the Abel ladder.
    pub abel_eps0: f64,
    /// Ladder length; eps_j = abel_eps0 / 2^j, j = 0..abel_rungs.
    pub abel_rungs: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_evals: 2_000_000,
            strategy: Strategy::Auto,
            oscillation_period_hint: None,
            abel_eps0: 0.25,
            abel_rungs: 8,
        }
    }
}

impl QuadOptions {
    pub fn validate(&self) -> Result<(), QuadError> {
        if !self.rel_tol.is_finite() || self.rel_tol < 1e-14 || self.rel_tol > 1e-1 {
            return Err(QuadError::BadOptions(
                "rel_tol must be in [1e-14, 1e-1]".into(),
            ));
        }
        if !self.abs_tol.is_finite() || self.abs_tol < 0.0 || self.abs_tol > 1.0 {
            return Err(QuadError::BadOptions("abs_tol must be in [0, 1]".into()));
        }
        if self.max_evals < 1_000 {
            return Err(QuadError::BadOptions(
                "max_evals below 1000 cannot complete even one refinement".into(),
            ));
        }
        if let Some(t) = self.oscillation_period_hint {
            if !(t > 0.0) || !t.is_finite() {
                return Err(QuadError::BadOptions(
                    "oscillation_period_hint must be finite and positive".into(),
                ));
            }
        }
        if !(self.abel_eps0 > 0.0 && self.abel_eps0 <= 1.0) {
            return Err(QuadError::BadOptions("abel_eps0 must be in (0, 1]".into()));
        }
        if self.abel_rungs < 2 || self.abel_rungs > 14 {
            return Err(QuadError::BadOptions(
                "abel_rungs must be in [2, 14]".into(),
            ));
        }
        Ok(())
    }

    /// Derived options for quadrature nested inside another integral: one
    /// decade tighter so inner noise stays below the outer estimate.
    /// Tolerances for an integral nested inside another one. The outer
    /// quadrature compares successive level estimates, each polluted by the
    /// inner error, so the inner tolerance must sit well below the outer
    /// target or the outer loop stalls just above it. A factor of 30 keeps
    /// the inner noise floor out of the way at roughly one extra inner level.
    pub fn inner(&self) -> QuadOptions {
        QuadOptions {
            rel_tol: (self.rel_tol / 30.0).max(1e-14),
            abs_tol: self.abs_tol / 30.0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid quadrature options: {0}")]
    BadOptions(String),
    #[error("integrand decay class is unknown; select an explicit strategy")]
    Unclassified,
    #[error("oscillatory/abel strategy needs a period (none in class or hint)")]
    MissingPeriod,
}

/// Shared evaluation counter. Every integrand call anywhere below an entry
/// point charges one unit, including nested cells and Abel rungs, so
/// `max_evals` bounds total work, not per-piece work.
pub(crate) struct Budget {
    used: Cell<u64>,
    cap: u64,
}

impl Budget {
    pub(crate) fn new(cap: u64) -> Self {
        Budget {
            used: Cell::new(0),
            cap,
        }
    }

    /// Charge one evaluation; false once the budget is exhausted.
    pub(crate) fn take(&self) -> bool {
        let u = self.used.get();
        if u >= self.cap {
            false
        } else {
            self.used.set(u + 1);
            true
        }
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.get()
    }
}

/// Map a raw DE/cell outcome onto the public result contract.
pub(crate) fn finish(raw: RawQuad, budget: &Budget, strategy_used: Strategy) -> QuadResult {
    let status = if raw.divergent || raw.truncated {
        // Either direct evidence of divergence, or the node walk hit the
        // window edge with terms still significant: the window sits at
        // x ~ e^700 (or at endpoint distance ~ 1e-304), so a tail that is
        // still alive there is not an integral we can claim a value for.
        QuadStatus::DivergentSuspected
    } else if raw.tol_met && !raw.exhausted {
        QuadStatus::Converged
    } else {
        QuadStatus::MaxEvals
    };
    QuadResult {
        value: raw.value,
        err_est: raw.err_est,
        evals: budget.used(),
        status,
        strategy_used,
    }
}

/// Integral over a finite interval [a, b] by tanh-sinh quadrature.
/// Integrable endpoint singularities are fine; non-finite integrand values
/// are treated as zero (they occur only where the weight vanishes faster).
pub fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadResult, QuadError> {
    opts.validate()?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadError::BadOptions(
            "integrate_finite requires finite a < b".into(),
        ));
    }
    let budget = Budget::new(opts.max_evals);
    let raw = tanh_sinh_raw(&f, a, b, opts.rel_tol, opts.abs_tol, &budget);
    Ok(finish(raw, &budget, Strategy::Auto))
}

/// Integral over (0, inf) of a decaying integrand via the exp-sinh map.
pub fn integrate_decay<F: Fn(f64) -> f64>(f: F, opts: &QuadOptions) -> Result<QuadResult, QuadError> {
    opts.validate()?;
    let budget = Budget::new(opts.max_evals);
    let raw = exp_sinh_raw(&f, opts.rel_tol, opts.abs_tol, &budget);
    Ok(finish(raw, &budget, Strategy::Decay))
}

/// Integral over (0, inf) with algebraic tails: split at 1, map the tail
/// back to (0, 1] by x -> 1/x, and integrate both pieces by tanh-sinh.
pub fn integrate_algebraic<F: Fn(f64) -> f64>(
    f: F,
    opts: &QuadOptions,
) -> Result<QuadResult, QuadError> {
    opts.validate()?;
    let budget = Budget::new(opts.max_evals);
    let raw = algebraic_raw(&f, opts.rel_tol, opts.abs_tol, &budget);
    Ok(finish(raw, &budget, Strategy::Algebraic))
}

/// Split-and-fold core of [`integrate_algebraic`], on a caller-owned budget.
pub(crate) fn algebraic_raw(
    f: &dyn Fn(f64) -> f64,
    rel_tol: f64,
    abs_tol: f64,
    budget: &Budget,
) -> RawQuad {
    // Each piece gets half the tolerance so their sum meets the target.
    let (rel, abs) = (rel_tol * 0.5, abs_tol * 0.5);
    let near = tanh_sinh_raw(f, 0.0, 1.0, rel, abs, budget);
    let folded = |t: f64| {
        let x = 1.0 / t;
        f(x) * x * x
    };
    let far = tanh_sinh_raw(&folded, 0.0, 1.0, rel, abs, budget);
    RawQuad {
        value: near.value + far.value,
        err_est: near.err_est + far.err_est,
        truncated: near.truncated || far.truncated,
        exhausted: near.exhausted || far.exhausted,
        divergent: near.divergent || far.divergent,
        tol_met: near.tol_met && far.tol_met,
    }
}

/// Integral over (0, inf) of an oscillatory integrand with known period:
/// half-period cells, each integrated by tanh-sinh, partial sums accelerated
/// by Euler averaging. Non-decaying cells trip the divergence guard.
pub fn integrate_oscillatory<F: Fn(f64) -> f64>(
    f: F,
    period: f64,
    opts: &QuadOptions,
) -> Result<QuadResult, QuadError> {
    opts.validate()?;
    if !(period > 0.0) || !period.is_finite() {
        return Err(QuadError::BadOptions(
            "oscillation period must be finite and positive".into(),
        ));
    }
    let budget = Budget::new(opts.max_evals);
    let half = period / 2.0;
    let mut boundary = move |k: u64| k as f64 * half;
    let raw = integrate_cells(
        &f,
        &mut boundary,
        opts.rel_tol,
        opts.abs_tol,
        true,
        &budget,
    );
    Ok(finish(raw, &budget, Strategy::Oscillatory))
}

/// Abel-regularized integral over (0, inf); see [`abel`] module docs.
pub fn integrate_abel<F: Fn(f64) -> f64>(
    f: F,
    period_hint: Option<f64>,
    opts: &QuadOptions,
) -> Result<QuadResult, QuadError> {
    opts.validate()?;
    if let Some(t) = period_hint {
        if !(t > 0.0) || !t.is_finite() {
            return Err(QuadError::BadOptions(
                "abel period hint must be finite and positive".into(),
            ));
        }
    }
    let budget = Budget::new(opts.max_evals);
    Ok(abel::abel_ladder(&f, period_hint, opts, &budget))
}

/// Strategy dispatch from a decay classification, honoring an explicit
/// strategy override in the options.
pub fn integrate_auto<F: Fn(f64) -> f64>(
    f: F,
    class: &DecayClass,
    opts: &QuadOptions,
) -> Result<QuadResult, QuadError> {
    opts.validate()?;
    let chosen = match opts.strategy {
        Strategy::Auto => match class {
            DecayClass::ExpDecay { .. } => Strategy::Decay,
            DecayClass::Algebraic { .. } => Strategy::Algebraic,
            DecayClass::Oscillatory { .. } => Strategy::Oscillatory,
            DecayClass::BoundedUnknown => return Err(QuadError::Unclassified),
        },
        s => s,
    };
    match chosen {
        Strategy::Decay => integrate_decay(f, opts),
        Strategy::Algebraic => integrate_algebraic(f, opts),
        Strategy::Oscillatory => {
            let (power, period) = osc_shape(class, opts)?;
            if power == 1.0 {
                integrate_oscillatory(f, period, opts)
            } else {
                let g = power_substituted(f, power);
                integrate_oscillatory(g, period, opts)
            }
        }
        Strategy::Abel => {
            let shape = osc_shape(class, opts).ok();
            match shape {
                Some((power, period)) if power != 1.0 => {
                    let g = power_substituted(f, power);
                    integrate_abel(g, Some(period), opts)
                }
                Some((_, period)) => integrate_abel(f, Some(period), opts),
                // No known period: the damped rungs decay on their own.
                None => integrate_abel(f, None, opts),
            }
        }
        Strategy::Auto => unreachable!("resolved above"),
    }
}

/// Oscillation shape (power p, period in t = x^p) from class or hint.
fn osc_shape(class: &DecayClass, opts: &QuadOptions) -> Result<(f64, f64), QuadError> {
    match class {
        DecayClass::Oscillatory { power, period } => Ok((*power, *period)),
        _ => match opts.oscillation_period_hint {
            Some(t) => Ok((1.0, t)),
            None => Err(QuadError::MissingPeriod),
        },
    }
}

/// Substitute t = x^p: int_0^inf f(x) dx = int_0^inf f(t^{1/p}) t^{1/p-1}/p dt.
/// Makes an oscillation in x^p uniform in t so half-period cells apply.
fn power_substituted<F: Fn(f64) -> f64>(f: F, p: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let x = t.powf(1.0 / p);
        f(x) * t.powf(1.0 / p - 1.0) / p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn options_validation() {
        assert!(QuadOptions::default().validate().is_ok());
        let dft = QuadOptions::default;
        assert!(QuadOptions { rel_tol: 0.5, ..dft() }.validate().is_err());
        assert!(QuadOptions { max_evals: 10, ..dft() }.validate().is_err());
        assert!(QuadOptions { abel_rungs: 1, ..dft() }.validate().is_err());
        let bad_hint = QuadOptions {
            oscillation_period_hint: Some(-1.0),
            ..dft()
        };
        assert!(bad_hint.validate().is_err());
    }

    #[test]
    fn inner_options_tighten() {
        let o = QuadOptions::default();
        let i = o.inner();
        assert!(i.rel_tol < o.rel_tol);
        assert!(i.abs_tol < o.abs_tol);
    }

    #[test]
    fn budget_counts_and_caps() {
        let b = Budget::new(3);
        assert!(b.take());
        assert!(b.take());
        assert!(b.take());
        assert!(!b.take());
        assert_eq!(b.used(), 3);
    }

    #[test]
    fn auto_rejects_unknown_class() {
        let r = integrate_auto(|x| x, &DecayClass::BoundedUnknown, &QuadOptions::default());
        assert!(matches!(r, Err(QuadError::Unclassified)));
    }

    #[test]
    fn oscillatory_needs_period() {
        let opts = QuadOptions {
            strategy: Strategy::Oscillatory,
            ..QuadOptions::default()
        };
        let r = integrate_auto(|x: f64| x.sin(), &DecayClass::BoundedUnknown, &opts);
        assert!(matches!(r, Err(QuadError::MissingPeriod)));
    }
}
