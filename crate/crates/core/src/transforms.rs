//! The eight transform kinds and their evaluators.
//!
//! Kernel table, all over (0, inf) at a point y > 0:
//!
//! | kind       | integrand                                  | order constraint |
//! |------------|--------------------------------------------|------------------|
//! | laplace    | exp(-y x) f(x)                             |                  |
//! | l2         | x exp(-x^2 y^2) f(x)                       |                  |
//! | ln         | x^(n-1) exp(-y^n x^n) f(x)                 | n = 2^k          |
//! | l2n        | x^(2n-1) exp(-y^(2n) x^(2n)) f(x)          | n >= 1           |
//! | stieltjes  | f(x) / (x + y)                             |                  |
//! | pn         | x^(n-1) f(x) / (x^n + y^n)                 | n = 2^k          |
//! | p2n        | x^(2n-1) f(x) / (x^(2n) + y^(2n))          | n >= 1           |
//! | widder     | x f(x) / (x^2 + y^2)                       |                  |
//!
//! Every kind is one substitution away from a classical kernel: with
//! t = x^m (m the power column below), the exponential family becomes a
//! Laplace integral of f(t^(1/m)) at y^m scaled by 1/m, and the algebraic
//! family becomes a Stieltjes integral likewise. [`eval_transform`] goes
//! through that reduction; [`eval_transform_raw`] integrates the defining
//! column directly and exists only so the two routes can cross-check each
//! other. They share the quadrature engine but nothing else.
//!
//! Oscillatory f is routed through the same t = x^m substitution, where
//! sin(c x^q) has exact sign-change points, and summed cell-by-cell with
//! acceleration; the strategy is picked here, not guessed downstream.
//!
//! Iterated evaluators ([`iterate_l2n`], [`parseval_members`]) run inner
//! transforms at a tenth of the outer tolerance. The reported err_est
//! measures the outer quadrature against those inner values; the inner
//! bias is an order of magnitude below it by construction.

use crate::expr::{osc_info, EvalError, Expr, OscInfo, ParamMap, TrigKind};
use crate::quad::{
    algebraic_raw, exp_sinh_raw, finish, integrate_cells, Budget, QuadError, QuadOptions,
    QuadResult, QuadStatus, RawQuad, Strategy,
};
use std::cell::Cell;
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Laplace,
    L2,
    Ln { n: u32 },
    L2n { n: u32 },
    Stieltjes,
    Pn { n: u32 },
    P2n { n: u32 },
    Widder,
}

impl TransformKind {
    pub fn validate(self) -> Result<(), TransformError> {
        match self {
            TransformKind::Ln { n } | TransformKind::Pn { n }
                if n == 0 || !n.is_power_of_two() =>
            {
                Err(TransformError::BadOrder {
                    kind: self.base_name(),
                    msg: "order must be a power of two (1, 2, 4, ...)",
                })
            }
            TransformKind::L2n { n } | TransformKind::P2n { n } if n == 0 => {
                Err(TransformError::BadOrder {
                    kind: self.base_name(),
                    msg: "order must be at least 1",
                })
            }
            _ => Ok(()),
        }
    }

    /// The m of the reducing substitution t = x^m.
    pub fn power(self) -> f64 {
        match self {
            TransformKind::Laplace | TransformKind::Stieltjes => 1.0,
            TransformKind::L2 | TransformKind::Widder => 2.0,
            TransformKind::Ln { n } | TransformKind::Pn { n } => n as f64,
            TransformKind::L2n { n } | TransformKind::P2n { n } => 2.0 * n as f64,
        }
    }

    /// Exponential-kernel family (vs. algebraic-kernel family).
    pub fn is_laplace_type(self) -> bool {
        matches!(
            self,
            TransformKind::Laplace
                | TransformKind::L2
                | TransformKind::Ln { .. }
                | TransformKind::L2n { .. }
        )
    }

    fn base_name(self) -> &'static str {
        match self {
            TransformKind::Laplace => "laplace",
            TransformKind::L2 => "l2",
            TransformKind::Ln { .. } => "ln",
            TransformKind::L2n { .. } => "l2n",
            TransformKind::Stieltjes => "stieltjes",
            TransformKind::Pn { .. } => "pn",
            TransformKind::P2n { .. } => "p2n",
            TransformKind::Widder => "widder",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformKind::Ln { n }
            | TransformKind::L2n { n }
            | TransformKind::Pn { n }
            | TransformKind::P2n { n } => write!(out, "{}({n})", self.base_name()),
            _ => write!(out, "{}", self.base_name()),
        }
    }
}

/// One transform evaluation: kind, integrand, bindings, point, quadrature
/// options. The same request can be fed to both evaluation routes.
#[derive(Debug, Clone, Copy)]
pub struct TransformRequest<'a> {
    pub kind: TransformKind,
    pub f: &'a Expr,
    pub params: &'a ParamMap,
    pub point: f64,
    pub opts: &'a QuadOptions,
}

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("{kind}: {msg}")]
    BadOrder { kind: &'static str, msg: &'static str },
    #[error("evaluation point must be positive and finite, got {point}")]
    BadPoint { point: f64 },
    #[error(transparent)]
    Expr(#[from] EvalError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

fn check_point(point: f64) -> Result<(), TransformError> {
    if point > 0.0 && point.is_finite() {
        Ok(())
    } else {
        Err(TransformError::BadPoint { point })
    }
}

struct Routed {
    raw: RawQuad,
    strategy: Strategy,
}

/// An oscillation only earns the cell machinery if it alternates where the
/// kernel is still alive: first sign change inside e^-30 of the kernel's
/// decay. Past that the integrand has at most one negligible flip in its
/// living range and the plain decay route is both cheaper and immune to
/// cells whose mass hugs one endpoint.
const OSC_NEAR: f64 = 30.0;

/// First sign change of trig(c x^q), measured in kernel decay units
/// (p x^m for the exponential family at scale p = y^m).
fn osc_within_kernel(info: &OscInfo, m: f64, p: f64) -> bool {
    p * info.boundary(1).powf(m) < OSC_NEAR
}

/// Sign-change points of trig(c x^q) mapped through t = x^m and an extra
/// scale: returns k -> scale * (phase_k / c)^(m/q), with boundary(0) = 0.
fn osc_boundary(info: OscInfo, m: f64, scale: f64) -> impl FnMut(u64) -> f64 {
    let ratio = m / info.power;
    move |k: u64| {
        if k == 0 {
            return 0.0;
        }
        let phase = match info.kind {
            TrigKind::Sin => k as f64 * PI,
            TrigKind::Cos => (k as f64 - 0.5) * PI,
        };
        scale * (phase / info.coef).powf(ratio)
    }
}

/// Exponential-family core after the substitution t = x^m:
/// (1/m) int_0^inf e^(-p t) f(t^(1/m)) dt with p = y^m.
///
/// For p > 1 the extra rescale s = p t normalizes the kernel to e^-s so the
/// quadrature scale stays O(1) no matter how fast the kernel dies. For
/// p <= 1 that rescale would be a trap: with a decaying f all the mass ends
/// up in a band s <~ p that shrinks to a sliver in the exp-sinh variable,
/// narrow enough for coarse levels to straddle it and agree on zero. The
/// un-rescaled form keeps the integrand features at t = O(1) where f lives.
// The arguments are the already-split pieces of a TransformRequest; a
// bundling struct would just be a second request type.
#[allow(clippy::too_many_arguments)]
fn l_core(
    f: &Expr,
    params: &ParamMap,
    m: f64,
    p: f64,
    osc: Option<OscInfo>,
    rel_tol: f64,
    abs_tol: f64,
    budget: &Budget,
) -> Routed {
    let inv_m = 1.0 / m;
    let rescaled = p > 1.0;
    let pref = if rescaled { 1.0 / (m * p) } else { 1.0 / m };
    let w = move |s: f64| {
        let e = (if rescaled { -s } else { -p * s }).exp();
        if e == 0.0 {
            return 0.0;
        }
        let x = (if rescaled { s / p } else { s }).powf(inv_m);
        e * f.eval_or_nan(x, params) * pref
    };
    match osc {
        Some(info) if osc_within_kernel(&info, m, p) => {
            // Sign changes sit at x_k^m (times p when rescaled); the damped
            // alternating cell sums are accelerated instead of brute-forced.
            // Cells can grow while the kernel envelope is still flat, so the
            // divergence guard stays off: e^(-pt) guarantees eventual decay.
            let mut boundary = osc_boundary(info, m, if rescaled { p } else { 1.0 });
            Routed {
                raw: integrate_cells(&w, &mut boundary, rel_tol, abs_tol, false, budget),
                strategy: Strategy::Oscillatory,
            }
        }
        _ => Routed {
            raw: exp_sinh_raw(&w, rel_tol, abs_tol, budget),
            strategy: Strategy::Decay,
        },
    }
}

/// Algebraic-family core after t = x^m and t = q u, q = y^m:
/// (1/m) int_0^inf f((q u)^(1/m)) / (u + 1) du.
/// The split point of the algebraic strategy (u = 1) is thereby pinned to
/// the kernel scale t = y^m, i.e. x = y.
#[allow(clippy::too_many_arguments)] // same shape as l_core
fn s_core(
    f: &Expr,
    params: &ParamMap,
    m: f64,
    q: f64,
    osc: Option<OscInfo>,
    rel_tol: f64,
    abs_tol: f64,
    budget: &Budget,
) -> Routed {
    let inv_m = 1.0 / m;
    let v = move |u: f64| {
        let x = (q * u).powf(inv_m);
        f.eval_or_nan(x, params) / ((u + 1.0) * m)
    };
    match osc {
        Some(info) => {
            // The 1/(u+1) envelope decays from the first cell on, but the
            // integrand is kernel-backed either way; no divergence guard.
            let mut boundary = osc_boundary(info, m, 1.0 / q);
            Routed {
                raw: integrate_cells(&v, &mut boundary, rel_tol, abs_tol, false, budget),
                strategy: Strategy::Oscillatory,
            }
        }
        None => Routed {
            raw: algebraic_raw(&v, rel_tol, abs_tol, budget),
            strategy: Strategy::Algebraic,
        },
    }
}

fn validate_request(req: &TransformRequest) -> Result<(f64, f64), TransformError> {
    req.kind.validate()?;
    check_point(req.point)?;
    req.opts.validate()?;
    req.f.ensure_bound(req.params)?;
    let m = req.kind.power();
    let scale = req.point.powf(m);
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(TransformError::BadPoint { point: req.point });
    }
    Ok((m, scale))
}

/// Evaluate a transform through its canonical reduction to a classical
/// Laplace or Stieltjes kernel in t = x^m.
pub fn eval_transform(req: &TransformRequest) -> Result<QuadResult, TransformError> {
    let (m, scale) = validate_request(req)?;
    let osc = osc_info(req.f, req.params);
    let budget = Budget::new(req.opts.max_evals);
    let routed = if req.kind.is_laplace_type() {
        l_core(
            req.f, req.params, m, scale, osc, req.opts.rel_tol, req.opts.abs_tol, &budget,
        )
    } else {
        s_core(
            req.f, req.params, m, scale, osc, req.opts.rel_tol, req.opts.abs_tol, &budget,
        )
    };
    Ok(finish(routed.raw, &budget, routed.strategy))
}

/// Evaluate the defining integral directly in x, with no substitution or
/// rescale. Cross-validation route for [`eval_transform`]; slower and less
/// robust by design, deliberately sharing no reduction logic with it.
pub fn eval_transform_raw(req: &TransformRequest) -> Result<QuadResult, TransformError> {
    let (m, scale) = validate_request(req)?;
    let y = req.point;
    let osc = osc_info(req.f, req.params);
    let budget = Budget::new(req.opts.max_evals);
    let (f, params) = (req.f, req.params);
    let routed = if req.kind.is_laplace_type() {
        let w = move |x: f64| {
            let e = (-(y * x).powf(m)).exp();
            if e == 0.0 {
                return 0.0;
            }
            x.powf(m - 1.0) * e * f.eval_or_nan(x, params)
        };
        match osc {
            Some(info) if osc_within_kernel(&info, m, scale) => {
                let mut boundary = osc_boundary(info, 1.0, 1.0);
                Routed {
                    raw: integrate_cells(
                        &w,
                        &mut boundary,
                        req.opts.rel_tol,
                        req.opts.abs_tol,
                        false,
                        &budget,
                    ),
                    strategy: Strategy::Oscillatory,
                }
            }
            _ => Routed {
                raw: exp_sinh_raw(&w, req.opts.rel_tol, req.opts.abs_tol, &budget),
                strategy: Strategy::Decay,
            },
        }
    } else {
        let q = scale;
        let w = move |x: f64| x.powf(m - 1.0) * f.eval_or_nan(x, params) / (x.powf(m) + q);
        match osc {
            Some(info) => {
                let mut boundary = osc_boundary(info, 1.0, 1.0);
                Routed {
                    raw: integrate_cells(
                        &w,
                        &mut boundary,
                        req.opts.rel_tol,
                        req.opts.abs_tol,
                        false,
                        &budget,
                    ),
                    strategy: Strategy::Oscillatory,
                }
            }
            None => Routed {
                raw: algebraic_raw(&w, req.opts.rel_tol, req.opts.abs_tol, &budget),
                strategy: Strategy::Algebraic,
            },
        }
    };
    Ok(finish(routed.raw, &budget, routed.strategy))
}

/// Map the quality of an inner raw result to a status for propagation.
fn inner_status(raw: &RawQuad) -> QuadStatus {
    if raw.divergent || raw.truncated {
        QuadStatus::DivergentSuspected
    } else if raw.exhausted {
        QuadStatus::MaxEvals
    } else {
        QuadStatus::Converged
    }
}

pub(crate) fn worse(a: QuadStatus, b: QuadStatus) -> QuadStatus {
    use QuadStatus::*;
    match (a, b) {
        (DivergentSuspected, _) | (_, DivergentSuspected) => DivergentSuspected,
        (MaxEvals, _) | (_, MaxEvals) => MaxEvals,
        _ => Converged,
    }
}

/// Inner-quadrature trouble seen while sampling an outer integrand, weighted
/// by how much the affected node could matter. A stalled or suspect inner
/// integral at a node whose integrand magnitude sits below the outer
/// tolerance cannot move the result and does not earn a downgrade; nested
/// transforms routinely hit such nodes far out in a tail that contributes
/// nothing.
pub(crate) struct InnerTrouble {
    stalled_mag: Cell<f64>,
    suspect_mag: Cell<f64>,
}

impl InnerTrouble {
    pub(crate) fn new() -> Self {
        InnerTrouble {
            stalled_mag: Cell::new(0.0),
            suspect_mag: Cell::new(0.0),
        }
    }

    /// Record one inner outcome together with |outer integrand| at the node.
    pub(crate) fn note(&self, status: QuadStatus, mag: f64) {
        let slot = match status {
            QuadStatus::Converged => return,
            QuadStatus::MaxEvals => &self.stalled_mag,
            QuadStatus::DivergentSuspected => &self.suspect_mag,
        };
        slot.set(slot.get().max(mag));
    }

    /// Downgrade the outer status if any significant node had trouble.
    pub(crate) fn apply(&self, r: &mut QuadResult, rel_tol: f64, abs_tol: f64) {
        let bar = f64::max(rel_tol * r.value.abs(), abs_tol);
        if self.suspect_mag.get() > bar {
            r.status = worse(r.status, QuadStatus::DivergentSuspected);
        } else if self.stalled_mag.get() > bar {
            r.status = worse(r.status, QuadStatus::MaxEvals);
        }
    }
}

/// The exponential-family transform of order 2n applied twice:
/// outer over the inner's evaluation point, both on one budget. Inner
/// quadratures run at a tenth of the outer tolerance; an inner divergence
/// aborts with the offending evaluation point.
pub fn iterate_l2n(
    f: &Expr,
    params: &ParamMap,
    n: u32,
    z: f64,
    opts: &QuadOptions,
) -> Result<QuadResult, TransformError> {
    if n == 0 {
        return Err(TransformError::BadOrder {
            kind: "l2n",
            msg: "order must be at least 1",
        });
    }
    check_point(z)?;
    opts.validate()?;
    f.ensure_bound(params)?;
    let m = 2.0 * n as f64;
    let p = z.powf(m);
    if !(p > 0.0 && p.is_finite()) {
        return Err(TransformError::BadPoint { point: z });
    }
    let budget = Budget::new(opts.max_evals);
    let inner_opts = opts.inner();
    let osc = osc_info(f, params);
    let trouble = InnerTrouble::new();

    // Outer kernel in the folded variable: s = (z u)^{2n} where u is the
    // inner point, so the inner scale is u^{2n} = s / p.
    let w = |s: f64| {
        let e = (-s).exp();
        // Below this the outer weight cannot lift any sane inner value
        // above the noise floor; skip the (expensive) inner quadrature.
        if e < 1e-290 {
            return 0.0;
        }
        let inner = l_core(
            f,
            params,
            m,
            s / p,
            osc,
            inner_opts.rel_tol,
            inner_opts.abs_tol,
            &budget,
        );
        let v = e * inner.raw.value / (m * p);
        trouble.note(inner_status(&inner.raw), v.abs());
        v
    };
    let raw = exp_sinh_raw(&w, opts.rel_tol, opts.abs_tol, &budget);
    let mut r = finish(raw, &budget, Strategy::Decay);
    trouble.apply(&mut r, opts.rel_tol, opts.abs_tol);
    Ok(r)
}

/// The three members of the exchange identity for a pair (f, g) at order n:
///
/// 1. int_0^inf y^(2n-1) T_f(y) T_g(y) dy,
/// 2. (1/2n) int_0^inf x^(2n-1) f(x) U_g(x) dx,
/// 3. (1/2n) int_0^inf u^(2n-1) g(u) U_f(u) du,
///
/// where T is the order-2n exponential-family transform and U the order-2n
/// algebraic-family one. Each member runs on its own budget; inner
/// non-convergence degrades that member's status rather than the value
/// silently.
pub fn parseval_members(
    f: &Expr,
    g: &Expr,
    params: &ParamMap,
    n: u32,
    opts: &QuadOptions,
) -> Result<[QuadResult; 3], TransformError> {
    if n == 0 {
        return Err(TransformError::BadOrder {
            kind: "l2n",
            msg: "order must be at least 1",
        });
    }
    opts.validate()?;
    f.ensure_bound(params)?;
    g.ensure_bound(params)?;
    let m = 2.0 * n as f64;
    let inner_opts = opts.inner();
    let osc_f = osc_info(f, params);
    let osc_g = osc_info(g, params);

    // Member 1: algebraic tail y^(-2n-1) after the transforms decay.
    let m1 = {
        let budget = Budget::new(opts.max_evals);
        let trouble = InnerTrouble::new();
        let same = f == g;
        let integrand = |y: f64| {
            let p = y.powf(m);
            if !(p > 0.0 && p.is_finite()) {
                return 0.0;
            }
            let a = l_core(
                f, params, m, p, osc_f, inner_opts.rel_tol, inner_opts.abs_tol, &budget,
            );
            let mut st = inner_status(&a.raw);
            let prod = if same {
                a.raw.value * a.raw.value
            } else {
                let b = l_core(
                    g, params, m, p, osc_g, inner_opts.rel_tol, inner_opts.abs_tol, &budget,
                );
                st = worse(st, inner_status(&b.raw));
                a.raw.value * b.raw.value
            };
            let v = y.powf(m - 1.0) * prod;
            trouble.note(st, v.abs());
            v
        };
        let raw = algebraic_raw(&integrand, opts.rel_tol, opts.abs_tol, &budget);
        let mut r = finish(raw, &budget, Strategy::Algebraic);
        trouble.apply(&mut r, opts.rel_tol, opts.abs_tol);
        r
    };

    // Members 2 and 3: outer decay against the algebraic-family transform
    // of the other function.
    let cross = |outer: &Expr,
                 outer_osc: Option<OscInfo>,
                 inner: &Expr,
                 inner_osc: Option<OscInfo>| {
        let budget = Budget::new(opts.max_evals);
        let trouble = InnerTrouble::new();
        let integrand = |x: f64| {
            let q = x.powf(m);
            if !(q > 0.0 && q.is_finite()) {
                return 0.0;
            }
            let fx = outer.eval_or_nan(x, params);
            if fx == 0.0 {
                return 0.0;
            }
            let u = s_core(
                inner, params, m, q, inner_osc, inner_opts.rel_tol, inner_opts.abs_tol, &budget,
            );
            let v = x.powf(m - 1.0) * fx * u.raw.value / m;
            trouble.note(inner_status(&u.raw), v.abs());
            v
        };
        let (raw, strategy) = match outer_osc {
            Some(info) => {
                let mut boundary = osc_boundary(info, 1.0, 1.0);
                (
                    integrate_cells(
                        &integrand,
                        &mut boundary,
                        opts.rel_tol,
                        opts.abs_tol,
                        false,
                        &budget,
                    ),
                    Strategy::Oscillatory,
                )
            }
            None => (
                exp_sinh_raw(&integrand, opts.rel_tol, opts.abs_tol, &budget),
                Strategy::Decay,
            ),
        };
        let mut r = finish(raw, &budget, strategy);
        trouble.apply(&mut r, opts.rel_tol, opts.abs_tol);
        r
    };
    let m2 = cross(f, osc_f, g, osc_g);
    let m3 = cross(g, osc_g, f, osc_f);
    Ok([m1, m2, m3])
}
