//! Exponential integral E1(x) = int_x^inf e^{-t}/t dt for x > 0.
//!
//! Series for x <= 1, continued fraction (modified Lentz) for x > 1. Both
//! carry ~1e-15 relative accuracy; the crossover is tested from both sides.

// Reference values are quoted at their published precision; f64 rounds
// them on parse.
#![allow(clippy::excessive_precision)]

use super::{AccuracyBudget, SpecFunError};

const EULER_GAMMA: f64 = 0.5772156649015329;

pub fn exp_e1(x: f64) -> Result<f64, SpecFunError> {
    exp_e1_with(x, &AccuracyBudget::default())
}

pub fn exp_e1_with(x: f64, budget: &AccuracyBudget) -> Result<f64, SpecFunError> {
    budget.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain {
            func: "exp_e1",
            arg: x,
            reason: "requires finite x > 0",
        });
    }
    if x <= 1.0 {
        series(x, budget)
    } else {
        continued_fraction(x, budget)
    }
}

/// E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!).
fn series(x: f64, budget: &AccuracyBudget) -> Result<f64, SpecFunError> {
    let base = -EULER_GAMMA - x.ln();
    let mut term = 1.0f64; // x^k / k! carried incrementally
    let mut sum = 0.0f64;
    for k in 1..=budget.max_terms {
        let kf = k as f64;
        term *= x / kf;
        let contrib = if k % 2 == 1 { term / kf } else { -term / kf };
        sum += contrib;
        // Truncation is judged against the full value, not the bare series:
        // for small x the log term dominates and permits an early stop.
        if term / kf <= budget.rel_tol * (base + sum).abs().max(1e-300) {
            return Ok(base + sum);
        }
    }
    Err(SpecFunError::NoConvergence {
        func: "exp_e1",
        rel_tol: budget.rel_tol,
        max_terms: budget.max_terms,
    })
}

/// E1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...))), evaluated
/// with the modified Lentz algorithm.
fn continued_fraction(x: f64, budget: &AccuracyBudget) -> Result<f64, SpecFunError> {
    const TINY: f64 = 1e-300;
    let mut f = x + 1.0;
    if f == 0.0 {
        f = TINY;
    }
    let mut c = f;
    let mut d = 0.0f64;
    for j in 1..=budget.max_terms {
        let jf = j as f64;
        let a = -jf * jf;
        let b = x + 2.0 * jf + 1.0;
        d = b + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = b + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < budget.rel_tol {
            return Ok((-x).exp() / f);
        }
    }
    Err(SpecFunError::NoConvergence {
        func: "exp_e1",
        rel_tol: budget.rel_tol,
        max_terms: budget.max_terms,
    })
}
