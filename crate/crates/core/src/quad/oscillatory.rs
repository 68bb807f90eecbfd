//! Oscillatory integrals over (0, inf) by cell summation.
//!
//! The axis is carved into cells (half-periods, or caller-supplied
//! boundaries such as the sign-change points of sin(c x^p)); each cell is
//! integrated by tanh-sinh, and the sequence of partial sums is accelerated
//! with Euler / van Wijngaarden averaging, which converges for alternating
//! cell series even when the envelope decays slowly.
//!
//! The averaging table also "converges" for series that do not decay at all
//! (for int sin x dx it settles on the Abel value 1), so acceleration alone
//! cannot certify convergence. The divergence guard watches the raw cell
//! magnitudes: if, after a settling-in stretch, the per-cell decay ratio
//! stays above RHO_MAX, the integral is reported DivergentSuspected and the
//! accelerated value is returned only as a best-effort regularization.
//! Callers wanting that regularized value on purpose should use
//! [`super::integrate_abel`].
//!
//! Blind spot, accepted: an integrand whose cells are each exactly zero
//! (e.g. cos x with cells aligned to its antiperiods) produces a zero sum
//! with no cells above noise, which reports as a converged 0. That matches
//! the Abel value; callers who care must choose boundaries aligned to the
//! oscillation's sign changes, as the transform layer does.

use super::{Budget, RawQuad};
use super::tanhsinh::tanh_sinh_raw;

/// Euler table depth; error of the accelerated value is ~ amplitude / 2^COLS
/// for an alternating series, far below f64 noise at this depth.
const EULER_COLS: usize = 48;
/// Don't trust diagonal agreement before this many cells.
const MIN_CELLS: usize = 12;
/// Start watching cell decay after this many cells...
const GUARD_START: usize = 10;
/// ...measuring the mean ratio across this span.
const GUARD_SPAN: usize = 6;
/// Mean per-cell decay ratio at or above this reads as "not decaying".
/// The slowest legitimately damped series this crate produces (Abel rung
/// eps = 2^-9 on period 2pi) has ratio ~0.9939, safely below.
const RHO_MAX: f64 = 0.99995;
const MAX_CELLS: usize = 4_000;

// Relative rounding noise of an alternating sum, measured against the largest
// cell. 1e-14 leaves one decade of headroom over the observed f64 floor for
// Euler-accelerated series with growing-then-decaying cells.
const CANCEL_NOISE: f64 = 1e-14;

/// Euler / van Wijngaarden averaging of a partial-sum sequence.
/// cols[j] holds the latest entry of averaging column j; pushing a new
/// partial sum updates every column and returns the deepest entry.
struct EulerTable {
    cols: Vec<f64>,
}

impl EulerTable {
    fn new() -> Self {
        EulerTable { cols: Vec::new() }
    }

    fn push(&mut self, s: f64) -> f64 {
        let mut cur = s;
        for slot in self.cols.iter_mut() {
            let old = *slot;
            *slot = cur;
            cur = 0.5 * (old + cur);
        }
        if self.cols.len() < EULER_COLS {
            self.cols.push(cur);
        } else {
            *self.cols.last_mut().expect("non-empty") = cur;
        }
        *self.cols.last().expect("non-empty")
    }
}

/// Sum cells [boundary(k), boundary(k+1)], k = 0, 1, ... with Euler
/// acceleration. `boundary` must be strictly increasing with boundary(0)
/// >= 0 (normally 0). `guard` enables the non-decay divergence check.
pub(crate) fn integrate_cells(
    f: &dyn Fn(f64) -> f64,
    boundary: &mut dyn FnMut(u64) -> f64,
    rel_tol: f64,
    abs_tol: f64,
    guard: bool,
    budget: &Budget,
) -> RawQuad {
    let cell_rel = (rel_tol * 0.1).max(1e-14);
    let cell_abs = abs_tol * 0.1;

    let mut table = EulerTable::new();
    let mut partial = 0.0f64;
    // Per-cell quadrature errors are independent; accumulate as RSS so a
    // long cell run is not blocked by the sum of conservative estimates.
    let mut cell_noise_sq = 0.0f64;
    let mut mags: Vec<f64> = Vec::new();
    let mut max_mag = 0.0f64;
    let mut est = 0.0f64;
    let mut err = f64::INFINITY;
    let mut truncated = false;

    let mut lo = boundary(0);
    for k in 0..MAX_CELLS {
        let hi = boundary(k as u64 + 1);
        if !(hi > lo) || !hi.is_finite() {
            // Boundary generator broke down; treat as exhaustion.
            return RawQuad {
                value: est,
                err_est: err,
                truncated,
                exhausted: true,
                divergent: false,
                tol_met: false,
            };
        }
        // A single cell never needs to beat the cancellation floor of the
        // whole sum: once some cell has magnitude M, resolving any cell
        // below ~1e-14 M is unusable precision. Without this floor a run of
        // large cells is integrated to cell_rel * M absolute error each,
        // and that residue (not the Euler remainder) caps the sum's
        // accuracy three orders of magnitude too early.
        let floor = 0.3 * CANCEL_NOISE * max_mag;
        let cell = tanh_sinh_raw(f, lo, hi, cell_rel, cell_abs.max(floor), budget);
        if cell.exhausted {
            return RawQuad {
                value: est,
                err_est: err,
                truncated,
                exhausted: true,
                divergent: false,
                tol_met: false,
            };
        }
        truncated |= cell.truncated;
        lo = hi;
        partial += cell.value;
        cell_noise_sq += cell.err_est * cell.err_est;
        let mag = cell.value.abs();
        mags.push(mag);
        max_mag = max_mag.max(mag);

        let new_est = table.push(partial);
        let signal = (new_est - est).abs();
        est = new_est;
        // Irreducible error floor: per-cell quadrature noise (independent,
        // so RSS) plus the cancellation noise of the alternating sum itself,
        // both scaled by the largest cell, not by the cancelled total.
        let noise = cell_noise_sq.sqrt().max(CANCEL_NOISE * max_mag);
        err = signal + noise;

        if guard && k + 1 >= GUARD_START && mags.len() > GUARD_SPAN {
            let c_new = mags[mags.len() - 1];
            let c_old = mags[mags.len() - 1 - GUARD_SPAN];
            let noise = abs_tol + 1e-14 * max_mag;
            if c_new > noise && c_old > noise {
                let rho = (c_new / c_old).powf(1.0 / GUARD_SPAN as f64);
                if rho > RHO_MAX {
                    return RawQuad {
                        value: est,
                        err_est: err,
                        truncated,
                        exhausted: false,
                        divergent: true,
                        tol_met: false,
                    };
                }
            }
        }

        // Converged once the accelerated estimate stops moving at the target
        // tolerance or at the noise floor, whichever is coarser. Testing the
        // full err against rel_tol * |est| would never terminate for heavily
        // cancelling sums, where the noise floor (set by the largest cell)
        // can exceed any relative measure of the near-zero total.
        if k + 1 >= MIN_CELLS && signal <= f64::max(rel_tol * est.abs(), abs_tol.max(noise)) {
            return RawQuad {
                value: est,
                err_est: err,
                truncated,
                exhausted: false,
                divergent: false,
                tol_met: true,
            };
        }
    }
    RawQuad {
        value: est,
        err_est: err,
        truncated,
        exhausted: true,
        divergent: false,
        tol_met: false,
    }
}
