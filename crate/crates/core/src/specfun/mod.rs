//! Scalar special functions needed by the transform kernels and by the
//! closed forms they reduce to.
//!
//! Everything here is plain `f64` math with no allocation on the hot path.
//! The error-function family and gamma are fixed-precision rational or
//! Lanczos approximations; the Bessel and exponential-integral routines are
//! series/continued-fraction hybrids whose stopping rule is controlled by an
//! [`AccuracyBudget`].

mod bessel;
mod erf;
mod expint;
mod gamma;

pub use bessel::{besselj, besselj_with};
pub use erf::{erf, erfc, erfcx};
pub use expint::{exp_e1, exp_e1_with};
pub use gamma::{gamma, ln_gamma};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    /// Argument outside the range the routine supports.
    #[error("{func}({arg}) outside supported domain: {reason}")]
    Domain {
        func: &'static str,
        arg: f64,
        reason: &'static str,
    },
    /// A series or continued fraction failed to meet its budget.
    #[error("{func} did not reach rel_tol {rel_tol:e} within {max_terms} terms")]
    NoConvergence {
        func: &'static str,
        rel_tol: f64,
        max_terms: usize,
    },
    #[error("invalid accuracy budget: {reason}")]
    BadBudget { reason: &'static str },
}

/// Stopping rule for the series-driven routines ([`besselj`], [`exp_e1`]).
///
/// `rel_tol` is the target relative truncation error; `max_terms` bounds the
/// work. The defaults are comfortably below the quadrature tolerances used
/// elsewhere in the crate, so special-function noise never dominates an
/// integral's error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyBudget {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        AccuracyBudget {
            rel_tol: 1e-14,
            max_terms: 400,
        }
    }
}

impl AccuracyBudget {
    pub fn validate(&self) -> Result<(), SpecFunError> {
        if !self.rel_tol.is_finite() || self.rel_tol < 1e-16 || self.rel_tol > 1e-2 {
            return Err(SpecFunError::BadBudget {
                reason: "rel_tol must be finite and in [1e-16, 1e-2]",
            });
        }
        if self.max_terms < 10 {
            return Err(SpecFunError::BadBudget {
                reason: "max_terms must be at least 10",
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_default_is_valid() {
        AccuracyBudget::default().validate().unwrap();
    }

    #[test]
    fn budget_rejects_nonsense() {
        let b = AccuracyBudget {
            rel_tol: 0.0,
            max_terms: 100,
        };
        assert!(matches!(b.validate(), Err(SpecFunError::BadBudget { .. })));
        let b = AccuracyBudget {
            rel_tol: 1e-12,
            max_terms: 3,
        };
        assert!(matches!(b.validate(), Err(SpecFunError::BadBudget { .. })));
        let b = AccuracyBudget {
            rel_tol: f64::NAN,
            max_terms: 100,
        };
        assert!(matches!(b.validate(), Err(SpecFunError::BadBudget { .. })));
    }
}
