//! Double-exponential node maps: tanh-sinh on a finite interval and
//! exp-sinh on (0, inf).
//!
//! Both walk levels h = 1, 1/2, 1/4, ... where level L adds nodes at odd
//! multiples of h_L, reusing every previous evaluation. The error estimate
//! is the difference between successive level sums, which for DE-friendly
//! integrands shrinks roughly quadratically in the exponent; reporting the
//! raw difference is therefore conservative.
//!
//! Endpoint arithmetic: nodes are produced as a *distance to the nearest
//! endpoint* (2 e^{-2s} / (1 + e^{-2s}) form), not as midpoint + r tanh(s),
//! so integrable endpoint singularities are sampled at the correct distance
//! instead of being rounded onto the endpoint.

use super::Budget;
use std::f64::consts::FRAC_PI_2;

/// Outcome of a raw DE or cell sum, before status mapping.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RawQuad {
    pub value: f64,
    pub err_est: f64,
    /// The outward node walk hit the u window while terms were still
    /// significant: some tail was cut off.
    pub truncated: bool,
    /// Budget or refinement depth ran out before tolerance.
    pub exhausted: bool,
    /// Direct evidence of divergence (growing level sums under truncation,
    /// or non-decaying oscillation cells).
    pub divergent: bool,
    /// The strategy's own convergence criterion was met. Distinct from
    /// comparing err_est against the tolerances afterwards: a cell sum, for
    /// instance, converges once the accelerated estimate stops moving, even
    /// though its reported error keeps the irreducible per-cell quadrature
    /// noise.
    pub tol_met: bool,
}

/// Deepest refinement: h = 2^-11, ~12k nodes per unit of u.
const MAX_LEVEL: i32 = 11;
/// Do not trust a two-level agreement before this depth.
const MIN_LEVEL: i32 = 3;
/// Outward walk stops after two consecutive terms this far under the peak.
const CUT_REL: f64 = 1e-17;
/// Hitting the u window with terms above this (relative to the peak) means
/// a tail significant at target tolerances was cut off.
const TRUNC_SIG: f64 = 1e-13;
/// tanh-sinh: (pi/2) sinh(6.1) ~ 350, node distances bottom out near 1e-304.
const U_MAX_FINITE: f64 = 6.1;
/// exp-sinh: keeps |(pi/2) sinh u| <= ~700 so exp() stays in range.
const U_MAX_EXP: f64 = 6.7925;

struct DeWalk<'a> {
    f: &'a dyn Fn(f64) -> f64,
    budget: &'a Budget,
    u_max: f64,
    /// Running sum of w * f over all nodes evaluated so far.
    sum: f64,
    /// Largest |w * f| seen; reference scale for cutoff decisions.
    scale: f64,
    /// Largest |u| at which a significant term has been seen, at any level.
    /// The outward cutoff must not fire inside this radius: an integrand
    /// concentrated away from the center (a kernel hugging one endpoint of
    /// a wide cell) looks dead near u = 0 at fine levels, and cutting there
    /// would freeze the level sums on garbage.
    u_far: f64,
    truncated: bool,
    exhausted: bool,
}

impl<'a> DeWalk<'a> {
    fn term(&mut self, x: f64, w: f64) -> f64 {
        if !self.budget.take() {
            self.exhausted = true;
            return 0.0;
        }
        let v = (self.f)(x);
        // Non-finite samples sit where the weight vanishes faster than the
        // integrand blows up (or the integrand is not DE-integrable at all,
        // which the level sums will expose); drop them rather than poison.
        if v.is_finite() {
            w * v
        } else {
            0.0
        }
    }

    /// Add all nodes of one level. `nodes(u)` maps u > 0 to the pair of
    /// nodes at +-u as ((x_minus, w_minus), (x_plus, w_plus)).
    fn walk(&mut self, h: f64, every: bool, nodes: &dyn Fn(f64) -> ((f64, f64), (f64, f64))) {
        let step = if every { 1u64 } else { 2u64 };
        let mut j = 1u64;
        let mut small_run = 0u32;
        let mut last_mag = 0.0f64;
        loop {
            if self.exhausted {
                return;
            }
            let u = j as f64 * h;
            if u > self.u_max {
                if last_mag > TRUNC_SIG * self.scale {
                    self.truncated = true;
                }
                return;
            }
            let ((xm, wm), (xp, wp)) = nodes(u);
            let tm = self.term(xm, wm);
            let tp = self.term(xp, wp);
            self.sum += tm + tp;
            let mag = tm.abs().max(tp.abs());
            last_mag = mag;
            self.scale = self.scale.max(mag);
            if mag <= CUT_REL * self.scale {
                small_run += 1;
                if small_run >= 2 && u >= self.u_far {
                    return;
                }
            } else {
                small_run = 0;
                self.u_far = self.u_far.max(u);
            }
            j += step;
        }
    }
}

fn de_integrate(
    f: &dyn Fn(f64) -> f64,
    center: (f64, f64),
    nodes: &dyn Fn(f64) -> ((f64, f64), (f64, f64)),
    u_max: f64,
    rel_tol: f64,
    abs_tol: f64,
    budget: &Budget,
) -> RawQuad {
    let mut st = DeWalk {
        f,
        budget,
        u_max,
        sum: 0.0,
        scale: 0.0,
        u_far: 0.0,
        truncated: false,
        exhausted: false,
    };
    let c = st.term(center.0, center.1);
    st.scale = c.abs();
    st.sum = c;
    st.walk(1.0, true, nodes);

    let mut est = st.sum; // h = 1
    let mut history = vec![est];
    let mut err = f64::INFINITY;
    let mut level = 0i32;
    while level < MAX_LEVEL && !st.exhausted {
        level += 1;
        let h = 0.5f64.powi(level);
        st.walk(h, false, nodes);
        if st.exhausted {
            // The level is incomplete; its partial sum is not an estimate
            // of anything. Fall back to the last finished level.
            break;
        }
        let new_est = st.sum * h;
        err = (new_est - est).abs();
        est = new_est;
        history.push(est);
        if level >= MIN_LEVEL && err <= f64::max(rel_tol * est.abs(), abs_tol) {
            return RawQuad {
                value: est,
                // Never claim better than a few ulps of the value.
                err_est: err.max(1e-16 * est.abs()),
                truncated: st.truncated,
                exhausted: false,
                divergent: growing(&history, st.truncated),
                tol_met: true,
            };
        }
    }
    RawQuad {
        value: est,
        err_est: err,
        truncated: st.truncated,
        exhausted: true,
        divergent: growing(&history, st.truncated),
        tol_met: false,
    }
}

/// Growing level sums while the walk is being truncated: each refinement
/// keeps finding more mass against the window, the signature of a divergent
/// integrand under a DE map.
fn growing(history: &[f64], truncated: bool) -> bool {
    if !truncated || history.len() < 4 {
        return false;
    }
    let last = history[history.len() - 1].abs();
    let base = history[history.len() - 4].abs();
    last > 1.25 * base && base > 0.0
}

/// tanh-sinh on [a, b].
pub(crate) fn tanh_sinh_raw(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    budget: &Budget,
) -> RawQuad {
    let m = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let nodes = move |u: f64| {
        let s = FRAC_PI_2 * u.sinh();
        let e2 = (-2.0 * s).exp();
        let d = r * 2.0 * e2 / (1.0 + e2); // distance to the near endpoint
        let w = r * FRAC_PI_2 * u.cosh() * 4.0 * e2 / ((1.0 + e2) * (1.0 + e2));
        ((a + d, w), (b - d, w))
    };
    de_integrate(f, (m, r * FRAC_PI_2), &nodes, U_MAX_FINITE, rel_tol, abs_tol, budget)
}

/// exp-sinh on (0, inf): x = exp((pi/2) sinh u).
pub(crate) fn exp_sinh_raw(
    f: &dyn Fn(f64) -> f64,
    rel_tol: f64,
    abs_tol: f64,
    budget: &Budget,
) -> RawQuad {
    let nodes = move |u: f64| {
        let t = FRAC_PI_2 * u.sinh();
        let wfac = FRAC_PI_2 * u.cosh();
        let xp = t.exp();
        let xm = (-t).exp();
        ((xm, xm * wfac), (xp, xp * wfac))
    };
    de_integrate(f, (1.0, FRAC_PI_2), &nodes, U_MAX_EXP, rel_tol, abs_tol, budget)
}
