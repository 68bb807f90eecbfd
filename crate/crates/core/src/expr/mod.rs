//! Expression language for integrands: one distinguished variable `x`,
//! named parameters, arithmetic, and the special functions the transform
//! catalog needs.
//!
//! The surface syntax is deliberately small (see `docs/grammar.md` at the
//! repository root). Notable conventions:
//!
//! * `x` is always the integration variable; any other identifier is a
//!   parameter that must be bound at evaluation time.
//! * `pi` is pre-bound to the obvious constant unless the caller shadows it.
//! * `^` is right-associative and binds tighter than unary minus, so
//!   `-x^2` is `-(x^2)`.
//! * Implicit multiplication is rejected at lex time: `2x` is an error, not
//!   `2*x`.

mod classify;
mod parser;
mod token;

pub use classify::{classify_decay, classify_decay_with, osc_info, DecayClass, OscInfo, TrigKind};
pub use parser::parse;
pub use token::ParseError;

use crate::specfun;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sqrt,
    Abs,
    Ln,
    Erfc,
    Erfcx,
    BesselJ,
    Gamma,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Ln => "ln",
            Func::Erfc => "erfc",
            Func::Erfcx => "erfcx",
            Func::BesselJ => "besselj",
            Func::Gamma => "gamma",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "ln" => Func::Ln,
            "erfc" => Func::Erfc,
            "erfcx" => Func::Erfcx,
            "besselj" => Func::BesselJ,
            "gamma" => Func::Gamma,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Func::BesselJ => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// The integration variable, spelled `x` in the surface syntax.
    Var,
    Param(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// Parameter bindings, name -> value. `pi` is implicitly bound unless the
/// caller shadows it with an explicit entry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamMap(BTreeMap<String, f64>);

impl ParamMap {
    pub fn new() -> Self {
        ParamMap(BTreeMap::new())
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.0.insert(name.into(), value);
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        match self.0.get(name) {
            Some(v) => Some(*v),
            None if name == "pi" => Some(std::f64::consts::PI),
            None => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(String, f64)> for ParamMap {
    fn from_iter<T: IntoIterator<Item = (String, f64)>>(iter: T) -> Self {
        ParamMap(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound parameter `{name}`")]
    Unbound { name: String },
    #[error("domain error: {what}({arg})")]
    Domain { what: &'static str, arg: f64 },
}

impl Expr {
    pub fn eval(&self, x: f64, params: &ParamMap) -> Result<f64, EvalError> {
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::Var => Ok(x),
            Expr::Param(name) => params
                .get(name)
                .ok_or_else(|| EvalError::Unbound { name: name.clone() }),
            Expr::Neg(e) => Ok(-e.eval(x, params)?),
            Expr::Bin(op, a, b) => {
                let a = a.eval(x, params)?;
                let b = b.eval(x, params)?;
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(a * b),
                    // IEEE semantics for a/0 (inf) are fine: quadrature
                    // skips non-finite samples at singular endpoints.
                    BinOp::Div => Ok(a / b),
                    BinOp::Pow => pow_checked(a, b),
                }
            }
            Expr::Call(f, args) => {
                let a0 = args[0].eval(x, params)?;
                match f {
                    Func::Exp => Ok(a0.exp()),
                    Func::Sin => Ok(a0.sin()),
                    Func::Cos => Ok(a0.cos()),
                    Func::Abs => Ok(a0.abs()),
                    Func::Sqrt => {
                        if a0 < 0.0 {
                            Err(EvalError::Domain {
                                what: "sqrt",
                                arg: a0,
                            })
                        } else {
                            Ok(a0.sqrt())
                        }
                    }
                    Func::Ln => {
                        if a0 <= 0.0 {
                            Err(EvalError::Domain { what: "ln", arg: a0 })
                        } else {
                            Ok(a0.ln())
                        }
                    }
                    Func::Erfc => Ok(specfun::erfc(a0)),
                    Func::Erfcx => Ok(specfun::erfcx(a0)),
                    Func::Gamma => specfun::gamma(a0).map_err(|_| EvalError::Domain {
                        what: "gamma",
                        arg: a0,
                    }),
                    Func::BesselJ => {
                        let a1 = args[1].eval(x, params)?;
                        specfun::besselj(a0, a1).map_err(|_| EvalError::Domain {
                            what: "besselj",
                            arg: a1,
                        })
                    }
                }
            }
        }
    }

    /// Evaluate with runtime domain failures mapped to NaN. Call
    /// [`Expr::ensure_bound`] first so missing parameters surface as a real
    /// error instead of silently poisoning an integral.
    pub fn eval_or_nan(&self, x: f64, params: &ParamMap) -> f64 {
        self.eval(x, params).unwrap_or(f64::NAN)
    }

    /// Check that every parameter the expression mentions is bound.
    pub fn ensure_bound(&self, params: &ParamMap) -> Result<(), EvalError> {
        for name in self.free_params() {
            if params.get(&name).is_none() {
                return Err(EvalError::Unbound { name });
            }
        }
        Ok(())
    }

    pub fn free_params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) | Expr::Var => {}
            Expr::Param(name) => {
                out.insert(name.clone());
            }
            Expr::Neg(e) => e.collect_params(out),
            Expr::Bin(_, a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Expr::Call(_, args) => {
                for a in args {
                    a.collect_params(out);
                }
            }
        }
    }

    pub fn uses_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Num(_) | Expr::Param(_) => false,
            Expr::Neg(e) => e.uses_var(),
            Expr::Bin(_, a, b) => a.uses_var() || b.uses_var(),
            Expr::Call(_, args) => args.iter().any(Expr::uses_var),
        }
    }

    /// Replace every occurrence of the variable with `g` (composition).
    pub fn substitute_var(&self, g: &Expr) -> Expr {
        match self {
            Expr::Num(v) => Expr::Num(*v),
            Expr::Var => g.clone(),
            Expr::Param(name) => Expr::Param(name.clone()),
            Expr::Neg(e) => Expr::Neg(Box::new(e.substitute_var(g))),
            Expr::Bin(op, a, b) => Expr::Bin(
                *op,
                Box::new(a.substitute_var(g)),
                Box::new(b.substitute_var(g)),
            ),
            Expr::Call(f, args) => {
                Expr::Call(*f, args.iter().map(|a| a.substitute_var(g)).collect())
            }
        }
    }
}

fn pow_checked(base: f64, exp: f64) -> Result<f64, EvalError> {
    if base < 0.0 {
        if exp == exp.trunc() && exp.abs() < 2_147_483_647.0 {
            return Ok(base.powi(exp as i32));
        }
        return Err(EvalError::Domain {
            what: "pow of negative base",
            arg: base,
        });
    }
    Ok(base.powf(exp))
}

/// Operator precedence for printing: higher binds tighter.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add, ..) | Expr::Bin(BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul, ..) | Expr::Bin(BinOp::Div, ..) | Expr::Neg(_) => 2,
        Expr::Bin(BinOp::Pow, ..) => 3,
        Expr::Num(v) if *v < 0.0 => 2,
        _ => 4,
    }
}

impl fmt::Display for Expr {
    /// Minimal-parenthesis form that reparses to the same tree (for trees
    /// the parser can produce; constructed negative literals reparse as
    /// `Neg` of the positive literal, which is evaluation-equivalent).
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(out: &mut fmt::Formatter<'_>, e: &Expr, need: bool) -> fmt::Result {
            if need {
                write!(out, "(")?;
                write!(out, "{e}")?;
                write!(out, ")")
            } else {
                write!(out, "{e}")
            }
        }
        match self {
            Expr::Num(v) => write!(out, "{v}"),
            Expr::Var => write!(out, "x"),
            Expr::Param(name) => write!(out, "{name}"),
            Expr::Neg(e) => {
                write!(out, "-")?;
                wrap(out, e, prec(e) <= 2)
            }
            Expr::Bin(op, a, b) => {
                let (p, sym) = match op {
                    BinOp::Add => (1, "+"),
                    BinOp::Sub => (1, "-"),
                    BinOp::Mul => (2, "*"),
                    BinOp::Div => (2, "/"),
                    BinOp::Pow => (3, "^"),
                };
                if *op == BinOp::Pow {
                    // Right-associative: the left side needs parens at equal
                    // precedence, the right side does not.
                    wrap(out, a, prec(a) <= p)?;
                    write!(out, "{sym}")?;
                    wrap(out, b, prec(b) < p)
                } else {
                    wrap(out, a, prec(a) < p)?;
                    write!(out, " {sym} ")?;
                    wrap(out, b, prec(b) <= p)
                }
            }
            Expr::Call(f, args) => {
                write!(out, "{}(", f.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(out, ", ")?;
                    }
                    write!(out, "{a}")?;
                }
                write!(out, ")")
            }
        }
    }
}
