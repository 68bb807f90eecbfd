//! Structural decay classification of integrands on (0, inf).
//!
//! The classifier looks at multiplicative factors only. It is deliberately
//! conservative: anything it cannot prove a shape for lands in
//! `BoundedUnknown`, and the quadrature layer refuses to guess a strategy
//! for that class. A wrong "this decays exponentially" claim would silently
//! truncate an integral; a `BoundedUnknown` merely forces the caller to
//! pick a strategy explicitly.

use super::{BinOp, Expr, Func, ParamMap};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum DecayClass {
    /// A factor exp(-rate * x^power) with rate > 0, power > 0.
    ExpDecay { power: f64, rate: f64 },
    /// Rational/root tail |f| ~ x^(-tail_power). Integrable iff
    /// tail_power > 1; the quadrature layer checks, not us.
    Algebraic { tail_power: f64 },
    /// A single sin/cos(c * x^power) factor. `period` is the period in the
    /// substituted variable t = x^power, i.e. 2*pi/c.
    Oscillatory { power: f64, period: f64 },
    /// No shape we are willing to certify.
    BoundedUnknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
}

/// The oscillatory factor of an integrand: kind(coef * x^power) with
/// coef > 0 (a sign on the argument is folded away since it only flips the
/// sign of the whole integrand or not at all).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscInfo {
    pub kind: TrigKind,
    pub coef: f64,
    pub power: f64,
}

impl OscInfo {
    /// k-th sign-change point of the trig factor in x, k = 1, 2, ...
    /// (for sin these are the zeros k*pi/c raised to 1/power).
    pub fn boundary(&self, k: u64) -> f64 {
        let phase = match self.kind {
            TrigKind::Sin => k as f64 * PI,
            TrigKind::Cos => (k as f64 - 0.5) * PI,
        };
        (phase / self.coef).powf(1.0 / self.power)
    }
}

pub fn classify_decay(e: &Expr) -> DecayClass {
    classify_decay_with(e, &ParamMap::new())
}

pub fn classify_decay_with(e: &Expr, params: &ParamMap) -> DecayClass {
    match exp_net(e, params) {
        ExpNet::Decay { power, rate } => return DecayClass::ExpDecay { power, rate },
        ExpNet::Growth => return DecayClass::BoundedUnknown,
        ExpNet::Nothing => {}
    }
    if let Some(info) = osc_info(e, params) {
        return DecayClass::Oscillatory {
            power: info.power,
            period: 2.0 * PI / info.coef,
        };
    }
    match tail_degree(e, params) {
        Some(d) => DecayClass::Algebraic { tail_power: -d },
        None => DecayClass::BoundedUnknown,
    }
}

/// Find the single oscillatory factor, if there is exactly one and its
/// argument is a recognizable c * x^p. Products of two oscillations, trig
/// in a denominator, or phased arguments all return None.
pub fn osc_info(e: &Expr, params: &ParamMap) -> Option<OscInfo> {
    let mut fs = Vec::new();
    factors(e, false, &mut fs);
    let mut found: Option<OscInfo> = None;
    for (f, inverted) in fs {
        if let Expr::Call(func @ (Func::Sin | Func::Cos), args) = f {
            if !args[0].uses_var() {
                continue; // constant phase factor
            }
            if inverted || found.is_some() {
                return None;
            }
            let (c, p) = power_form(&args[0], params)?;
            if !(c.is_finite() && c != 0.0 && p > 0.0) {
                return None;
            }
            let kind = match func {
                Func::Sin => TrigKind::Sin,
                _ => TrigKind::Cos,
            };
            found = Some(OscInfo {
                kind,
                coef: c.abs(),
                power: p,
            });
        }
    }
    found
}

enum ExpNet {
    Decay { power: f64, rate: f64 },
    Growth,
    Nothing,
}

/// Net exponential behaviour of all exp(...) factors whose arguments are
/// recognizable power terms. Factors with unrecognizable arguments are left
/// for `tail_degree` to veto (it returns None on any x-dependent call).
fn exp_net(e: &Expr, params: &ParamMap) -> ExpNet {
    let mut fs = Vec::new();
    factors(e, false, &mut fs);
    // (power, coefficient) per analyzable exp factor, denominator sign folded.
    let mut entries: Vec<(f64, f64)> = Vec::new();
    for (f, inverted) in fs {
        if let Expr::Call(Func::Exp, args) = f {
            if !args[0].uses_var() {
                continue;
            }
            let Some((c, p)) = power_form(&args[0], params) else {
                continue;
            };
            if p <= 0.0 {
                continue; // exp(-1/x) and friends are bounded, not decaying
            }
            entries.push((p, if inverted { -c } else { c }));
        }
    }
    let Some(p_max) = entries
        .iter()
        .map(|&(p, _)| p)
        .max_by(|a, b| a.total_cmp(b))
    else {
        return ExpNet::Nothing;
    };
    let net: f64 = entries
        .iter()
        .filter(|&&(p, _)| p == p_max)
        .map(|&(_, c)| c)
        .sum();
    if net < 0.0 {
        ExpNet::Decay {
            power: p_max,
            rate: -net,
        }
    } else if net > 0.0 {
        ExpNet::Growth
    } else {
        ExpNet::Nothing
    }
}

/// Flatten a product into its factors, tracking which side of the fraction
/// bar each sits on. Signs are irrelevant to classification and dropped.
fn factors<'a>(e: &'a Expr, inverted: bool, out: &mut Vec<(&'a Expr, bool)>) {
    match e {
        Expr::Bin(BinOp::Mul, a, b) => {
            factors(a, inverted, out);
            factors(b, inverted, out);
        }
        Expr::Bin(BinOp::Div, a, b) => {
            factors(a, inverted, out);
            factors(b, !inverted, out);
        }
        Expr::Neg(inner) => factors(inner, inverted, out),
        _ => out.push((e, inverted)),
    }
}

/// Recognize e == c * x^p structurally and evaluate c under `params`.
/// Returns None for anything else (sums, phases, unbound coefficients).
fn power_form(e: &Expr, params: &ParamMap) -> Option<(f64, f64)> {
    match e {
        Expr::Var => Some((1.0, 1.0)),
        Expr::Neg(inner) => power_form(inner, params).map(|(c, p)| (-c, p)),
        Expr::Bin(BinOp::Mul, a, b) => match (a.uses_var(), b.uses_var()) {
            (false, true) => {
                let c = const_val(a, params)?;
                let (cb, p) = power_form(b, params)?;
                Some((c * cb, p))
            }
            (true, false) => {
                let c = const_val(b, params)?;
                let (ca, p) = power_form(a, params)?;
                Some((c * ca, p))
            }
            (true, true) => {
                let (ca, pa) = power_form(a, params)?;
                let (cb, pb) = power_form(b, params)?;
                Some((ca * cb, pa + pb))
            }
            (false, false) => None,
        },
        Expr::Bin(BinOp::Div, a, b) => {
            if b.uses_var() {
                let (cb, pb) = power_form(b, params)?;
                if cb == 0.0 {
                    return None;
                }
                if a.uses_var() {
                    let (ca, pa) = power_form(a, params)?;
                    Some((ca / cb, pa - pb))
                } else {
                    let c = const_val(a, params)?;
                    Some((c / cb, -pb))
                }
            } else {
                let c = const_val(b, params)?;
                if c == 0.0 {
                    return None;
                }
                let (ca, p) = power_form(a, params)?;
                Some((ca / c, p))
            }
        }
        Expr::Bin(BinOp::Pow, a, b) => {
            if b.uses_var() || !a.uses_var() {
                return None;
            }
            let k = const_val(b, params)?;
            let (c, p) = power_form(a, params)?;
            if c == 1.0 {
                Some((1.0, p * k))
            } else if c > 0.0 {
                Some((c.powf(k), p * k))
            } else {
                None
            }
        }
        _ => None,
    }
}

fn const_val(e: &Expr, params: &ParamMap) -> Option<f64> {
    if e.uses_var() {
        return None;
    }
    e.eval(0.0, params).ok().filter(|v| v.is_finite())
}

/// Structural degree of the x -> inf tail: f ~ x^degree. `None` means we
/// cannot bound it (any call with an x-dependent argument other than
/// sqrt/abs). For sums this is an upper bound, which errs on the side of
/// claiming slower decay.
fn tail_degree(e: &Expr, params: &ParamMap) -> Option<f64> {
    if !e.uses_var() {
        return Some(0.0);
    }
    match e {
        Expr::Var => Some(1.0),
        Expr::Neg(a) => tail_degree(a, params),
        Expr::Bin(BinOp::Add, a, b) | Expr::Bin(BinOp::Sub, a, b) => {
            let da = tail_degree(a, params)?;
            let db = tail_degree(b, params)?;
            Some(da.max(db))
        }
        Expr::Bin(BinOp::Mul, a, b) => {
            Some(tail_degree(a, params)? + tail_degree(b, params)?)
        }
        Expr::Bin(BinOp::Div, a, b) => {
            Some(tail_degree(a, params)? - tail_degree(b, params)?)
        }
        Expr::Bin(BinOp::Pow, a, b) => {
            if b.uses_var() {
                return None;
            }
            let k = const_val(b, params)?;
            Some(tail_degree(a, params)? * k)
        }
        Expr::Call(Func::Sqrt, args) => Some(tail_degree(&args[0], params)? * 0.5),
        Expr::Call(Func::Abs, args) => tail_degree(&args[0], params),
        Expr::Call(..) => None,
        Expr::Num(_) | Expr::Param(_) => Some(0.0),
    }
}
