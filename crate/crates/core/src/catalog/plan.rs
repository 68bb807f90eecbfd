//! Executable readings of identity sides.
//!
//! A plan is a small recipe tree: closed forms, single transforms (through
//! the reduced kernel or the defining integral), nested transforms spelled
//! as outer integrals with transform-valued factors, the order-2n double
//! application, and Parseval members. A catalog record pairs two plans and
//! asks whether the numbers agree.

use std::collections::BTreeMap;

use crate::expr::{BinOp, Expr, ParamMap};
use crate::transforms::TransformKind;

/// Which transform a plan node applies. The order-generic variants read the
/// case order; `LnOf` reads a named scalar binding instead, for statements
/// that mix two orders at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindSpec {
    Laplace,
    L2,
    Stieltjes,
    Widder,
    /// Exponential kernel of the case order (a power of two).
    Ln,
    /// Exponential kernel of twice the case order.
    L2n,
    /// Algebraic kernel of the case order (a power of two).
    Pn,
    /// Algebraic kernel of twice the case order.
    P2n,
    /// Exponential kernel of a fixed order.
    LnFixed(u32),
    /// Algebraic kernel of a fixed order.
    PnFixed(u32),
    /// Exponential kernel whose order is the named scalar binding.
    LnOf(&'static str),
}

impl KindSpec {
    /// Resolve to a concrete transform kind for one case.
    pub fn resolve(&self, n: Option<u32>, params: &ParamMap) -> Result<TransformKind, String> {
        let case_n = || n.ok_or_else(|| "record case does not fix the order n".to_string());
        let kind = match *self {
            KindSpec::Laplace => TransformKind::Laplace,
            KindSpec::L2 => TransformKind::L2,
            KindSpec::Stieltjes => TransformKind::Stieltjes,
            KindSpec::Widder => TransformKind::Widder,
            KindSpec::Ln => TransformKind::Ln { n: case_n()? },
            KindSpec::L2n => TransformKind::L2n { n: case_n()? },
            KindSpec::Pn => TransformKind::Pn { n: case_n()? },
            KindSpec::P2n => TransformKind::P2n { n: case_n()? },
            KindSpec::LnFixed(k) => TransformKind::Ln { n: k },
            KindSpec::PnFixed(k) => TransformKind::Pn { n: k },
            KindSpec::LnOf(name) => {
                let v = params
                    .get(name)
                    .ok_or_else(|| format!("order parameter {name} is not bound"))?;
                if v.fract() != 0.0 || !(1.0..=64.0).contains(&v) {
                    return Err(format!(
                        "order parameter {name} = {v} is not a small positive integer"
                    ));
                }
                TransformKind::Ln { n: v as u32 }
            }
        };
        kind.validate().map_err(|e| e.to_string())?;
        Ok(kind)
    }
}

/// The function a transform acts on: an optional prefactor times an optional
/// named slot composed with an optional inner argument, all expressions in
/// the integration variable. Resolution builds one ordinary expression, so
/// downstream classification (oscillation detection in particular) sees the
/// full integrand.
#[derive(Debug, Clone)]
pub struct FuncSpec {
    pub coeff: Option<Expr>,
    pub slot: Option<&'static str>,
    pub arg: Option<Expr>,
}

impl FuncSpec {
    /// A named slot used as-is.
    pub fn named(slot: &'static str) -> FuncSpec {
        FuncSpec {
            coeff: None,
            slot: Some(slot),
            arg: None,
        }
    }

    /// A fixed expression with no slot.
    pub fn inline(e: Expr) -> FuncSpec {
        FuncSpec {
            coeff: Some(e),
            slot: None,
            arg: None,
        }
    }

    /// Compose the slot with an argument, as in f(1/x).
    pub fn at(mut self, arg: Expr) -> FuncSpec {
        self.arg = Some(arg);
        self
    }

    /// Multiply a prefactor in front, as in x^n f(x).
    pub fn times(mut self, coeff: Expr) -> FuncSpec {
        self.coeff = Some(coeff);
        self
    }

    /// Build the concrete integrand for one case's function bindings.
    pub fn resolve(&self, funcs: &BTreeMap<&'static str, Expr>) -> Result<Expr, String> {
        let body = match self.slot {
            Some(name) => {
                let f = funcs
                    .get(name)
                    .ok_or_else(|| format!("function slot {name} is not bound"))?;
                Some(match &self.arg {
                    Some(a) => f.substitute_var(a),
                    None => f.clone(),
                })
            }
            None => None,
        };
        match (&self.coeff, body) {
            (Some(c), Some(b)) => Ok(Expr::Bin(BinOp::Mul, Box::new(c.clone()), Box::new(b))),
            (Some(c), None) => Ok(c.clone()),
            (None, Some(b)) => Ok(b),
            (None, None) => Err("function spec has neither a prefactor nor a slot".to_string()),
        }
    }
}

/// One factor of an outer integrand, as a function of the outer variable.
#[derive(Debug, Clone)]
pub enum Factor {
    /// A closed expression.
    Fixed(Expr),
    /// A named function slot, optionally composed with an argument.
    Slot(&'static str, Option<Expr>),
    /// A transform evaluated at a point that depends on the outer variable.
    /// Inner transforms always go through the reduced kernel route.
    Transform {
        kind: KindSpec,
        func: FuncSpec,
        point: Expr,
    },
}

/// How an outer integral reaches infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanStrategy {
    /// The integrand dies off; one exp-sinh pass.
    Decay,
    /// Algebraic tail; split at 1 and fold the far piece.
    Algebraic,
    /// A trig factor with a known zero pattern; cell sums with acceleration.
    /// The pattern is read off the product of the fixed factors.
    Oscillatory,
    /// Conditionally convergent at best; damped evaluations extrapolated to
    /// the undamped limit, with the zero pattern read as above.
    Abel,
}

/// An executable reading of one side of an identity.
#[derive(Debug, Clone)]
pub enum Plan {
    /// A closed form in the free variables.
    Closed(Expr),
    /// A single transform of a function at a point. `raw` selects the
    /// defining integral instead of the reduced kernel route.
    Transform {
        kind: KindSpec,
        func: FuncSpec,
        point: Expr,
        raw: bool,
    },
    /// The exponential kernel of twice the case order applied twice.
    Iterate { func: FuncSpec, point: Expr },
    /// One member of the order-2n Parseval triple for the slots f and g:
    /// 0 the spectral integral, 1 and 2 the two weighted originals, the
    /// latter pair carrying the common 1/(2n).
    Member(u8),
    /// An outer integral of a product of factors over (0, inf).
    Integral {
        factors: Vec<Factor>,
        strategy: PlanStrategy,
    },
    /// A closed-form coefficient times another plan.
    Scaled(Expr, Box<Plan>),
    /// A sum of plans.
    Sum(Vec<Plan>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn e(s: &str) -> Expr {
        parse(s).expect(s)
    }

    #[test]
    fn kind_resolution() {
        let p = ParamMap::new().with("m", 4.0);
        assert_eq!(
            KindSpec::Ln.resolve(Some(2), &p).unwrap(),
            TransformKind::Ln { n: 2 }
        );
        assert_eq!(
            KindSpec::L2n.resolve(Some(3), &p).unwrap(),
            TransformKind::L2n { n: 3 }
        );
        assert_eq!(
            KindSpec::LnOf("m").resolve(None, &p).unwrap(),
            TransformKind::Ln { n: 4 }
        );
        assert!(KindSpec::Ln.resolve(None, &p).is_err());
        assert!(KindSpec::LnOf("k").resolve(None, &p).is_err());
        // Ln orders must be powers of two; resolution delegates that check.
        assert!(KindSpec::LnFixed(3).resolve(None, &p).is_err());
    }

    #[test]
    fn func_resolution_composes() {
        let mut funcs = BTreeMap::new();
        funcs.insert("f", e("exp(-(x^2))"));
        let spec = FuncSpec::named("f").at(e("1/x")).times(e("x^(-3)"));
        let got = spec.resolve(&funcs).unwrap();
        let p = ParamMap::new();
        let x = 1.7f64;
        let want = x.powi(-3) * (-x.powi(-2)).exp();
        assert!((got.eval(x, &p).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn func_resolution_requires_something() {
        let funcs = BTreeMap::new();
        assert!(FuncSpec::named("f").resolve(&funcs).is_err());
        let empty = FuncSpec {
            coeff: None,
            slot: None,
            arg: None,
        };
        assert!(empty.resolve(&funcs).is_err());
    }
}
