//! The built-in identity records.
//!
//! Construction conventions: `L` is the classical Laplace transform, `L2`
//! the order-two exponential kernel, `Ln`/`L2n` the power-of-two and
//! even-order exponential kernels, `S` the Stieltjes transform, `P` the
//! potential transform, `Pn`/`P2n` their higher-order forms. Statements are
//! written with `x` (or another letter) as the integration dummy; `t` marks
//! the dummy of an inner transform where two would otherwise collide.

use std::collections::BTreeMap;

use crate::expr::{parse, Expr, ParamMap};

use super::plan::{Factor, FuncSpec, KindSpec, Plan, PlanStrategy};
use super::{Case, Expected, IdentityRecord, Interpretation};

/// The four originals every reduction record is sampled with: two
/// super-exponential, one exponential, one algebraic.
const CORPUS: [&str; 4] = ["exp(-x)", "exp(-(x^2))", "exp(-(x^4))", "1/(1 + x^2)^2"];

/// Default evaluation points for the transform variable.
const YS: [f64; 3] = [0.5, 1.0, 2.0];

const GAUSS: &str = "exp(-(x^2))";
const QUARTIC: &str = "exp(-(x^4))";

fn e(src: &str) -> Expr {
    parse(src).unwrap_or_else(|err| panic!("catalog expression {src:?}: {err}"))
}

fn case(n: Option<u32>, scalars: &[(&'static str, f64)], funcs: &[(&'static str, &str)]) -> Case {
    let mut params = ParamMap::new();
    let mut label: Vec<String> = Vec::new();
    if let Some(n) = n {
        params.set("n", n as f64);
        label.push(format!("n={n}"));
    }
    for &(k, v) in scalars {
        params.set(k, v);
        label.push(format!("{k}={v}"));
    }
    let mut fs = BTreeMap::new();
    for &(k, src) in funcs {
        fs.insert(k, e(src));
        label.push(format!("{k}={src}"));
    }
    Case {
        n,
        params,
        funcs: fs,
        label: label.join(", "),
    }
}

fn trans(kind: KindSpec, func: FuncSpec, point: &str) -> Plan {
    Plan::Transform {
        kind,
        func,
        point: e(point),
        raw: false,
    }
}

fn raw(kind: KindSpec, func: FuncSpec, point: &str) -> Plan {
    Plan::Transform {
        kind,
        func,
        point: e(point),
        raw: true,
    }
}

fn scaled(coeff: &str, plan: Plan) -> Plan {
    Plan::Scaled(e(coeff), Box::new(plan))
}

fn closed(src: &str) -> Plan {
    Plan::Closed(e(src))
}

fn integral(factors: Vec<Factor>, strategy: PlanStrategy) -> Plan {
    Plan::Integral { factors, strategy }
}

fn fixed(src: &str) -> Factor {
    Factor::Fixed(e(src))
}

fn slot(name: &'static str) -> Factor {
    Factor::Slot(name, None)
}

fn slot_at(name: &'static str, arg: &str) -> Factor {
    Factor::Slot(name, Some(e(arg)))
}

fn tfac(kind: KindSpec, func: FuncSpec, point: &str) -> Factor {
    Factor::Transform {
        kind,
        func,
        point: e(point),
    }
}

fn named(slot: &'static str) -> FuncSpec {
    FuncSpec::named(slot)
}

fn inline(src: &str) -> FuncSpec {
    FuncSpec::inline(e(src))
}

fn corpus_cases(n: Option<u32>) -> Vec<Case> {
    let mut out = Vec::new();
    for f in CORPUS {
        for y in YS {
            out.push(case(n, &[("y", y)], &[("f", f)]));
        }
    }
    out
}

fn order_cases(ns: &[u32], f: &str) -> Vec<Case> {
    let mut out = Vec::new();
    for &n in ns {
        for y in YS {
            out.push(case(Some(n), &[("y", y)], &[("f", f)]));
        }
    }
    out
}

fn pair_cases(pairs: &[(&str, &str)], ns: &[u32]) -> Vec<Case> {
    let mut out = Vec::new();
    for &n in ns {
        for &(f, g) in pairs {
            out.push(case(Some(n), &[], &[("f", f), ("g", g)]));
        }
    }
    out
}

/// Every identity the crate ships with, in citation order.
pub fn builtin_catalog() -> Vec<IdentityRecord> {
    let mut cat: Vec<IdentityRecord> = Vec::with_capacity(33);

    cat.push(IdentityRecord {
        id: "R1",
        title: "order-two exponential kernel reduced to the Laplace transform",
        anchor: "(1.8)",
        statement: "L2{f(x); y} = (1/2) L{f(sqrt(x)); y^2}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: corpus_cases(None),
        lhs: raw(KindSpec::L2, named("f"), "y"),
        rhs: scaled(
            "1/2",
            trans(KindSpec::Laplace, named("f").at(e("sqrt(x)")), "y^2"),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "R2",
        title: "Laplace transform written through the order-two kernel",
        anchor: "(1.9)",
        statement: "L{f(x); y} = 2 L2{f(x^2); sqrt(y)}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: corpus_cases(None),
        lhs: raw(KindSpec::Laplace, named("f"), "y"),
        rhs: scaled("2", raw(KindSpec::L2, named("f").at(e("x^2")), "sqrt(y)")),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "R3",
        title: "order-four exponential kernel reduced to the Laplace transform",
        anchor: "(1.12)-(1.13)",
        statement: "L4{f(x); y} = (1/4) L{f(x^(1/4)); y^4} = (1/2) L2{f(sqrt(x)); y^2}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: corpus_cases(None),
        lhs: raw(KindSpec::LnFixed(4), named("f"), "y"),
        rhs: scaled(
            "1/4",
            trans(KindSpec::Laplace, named("f").at(e("x^(1/4)")), "y^4"),
        ),
        variants: vec![(
            "route through the order-two kernel",
            scaled("1/2", raw(KindSpec::L2, named("f").at(e("sqrt(x)")), "y^2")),
        )],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "R4",
        title: "power-of-two exponential kernel reduced to the Laplace transform",
        anchor: "(1.17)",
        statement: "Ln{f(x); y} = (1/n) L{f(x^(1/n)); y^n}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: corpus_cases(Some(2)),
        lhs: raw(KindSpec::Ln, named("f"), "y"),
        rhs: scaled(
            "1/n",
            trans(KindSpec::Laplace, named("f").at(e("x^(1/n)")), "y^n"),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "R5",
        title: "even-order exponential kernel reduced to the Laplace transform",
        anchor: "(1.18)",
        statement: "L2n{f(x); y} = (1/(2n)) L{f(x^(1/(2n))); y^(2n)}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: corpus_cases(Some(3)),
        lhs: raw(KindSpec::L2n, named("f"), "y"),
        rhs: scaled(
            "1/(2*n)",
            trans(
                KindSpec::Laplace,
                named("f").at(e("x^(1/(2*n))")),
                "y^(2*n)",
            ),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "R6",
        title: "power-of-two exponential kernel routed through the order-two kernel",
        anchor: "(1.19)",
        statement: "Ln{f(x); y} = (2/n) L2{f(x^(2/n)); y^(n/2)}",
        expected: Expected::Audit,
        interpretation: Interpretation::Direct,
        tol: 1e-7,
        free_vars: &[("y", "y > 0")],
        cases: order_cases(&[1, 2, 4], GAUSS),
        lhs: raw(KindSpec::Ln, named("f"), "y"),
        rhs: scaled(
            "2/n",
            raw(KindSpec::L2, named("f").at(e("x^(2/n)")), "y^(n/2)"),
        ),
        variants: vec![],
        abel: None,
        note: "the stated constant 2/n verifies as printed at every sampled order",
    });

    cat.push(IdentityRecord {
        id: "R7",
        title: "even-order exponential kernel routed through the order-two kernel",
        anchor: "(1.20)",
        statement: "L2n{f(x); y} = (1/n) L2{f(x^(1/n)); y^n}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: corpus_cases(Some(2)),
        lhs: raw(KindSpec::L2n, named("f"), "y"),
        rhs: scaled(
            "1/n",
            raw(KindSpec::L2, named("f").at(e("x^(1/n)")), "y^n"),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "R8",
        title: "power-of-two algebraic kernel reduced to the Stieltjes transform",
        anchor: "(1.23)",
        statement: "Pn{f(x); y} = (1/n) S{f(x^(1/n)); y^n}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: corpus_cases(Some(4)),
        lhs: raw(KindSpec::Pn, named("f"), "y"),
        rhs: scaled(
            "1/n",
            trans(KindSpec::Stieltjes, named("f").at(e("x^(1/n)")), "y^n"),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "R9",
        title: "power-of-two algebraic kernel routed through the potential transform",
        anchor: "(1.24)",
        statement: "Pn{f(x); y} = (2/n) P{f(x^(2/n)); y^(n/2)}",
        expected: Expected::Audit,
        interpretation: Interpretation::Direct,
        tol: 1e-7,
        free_vars: &[("y", "y > 0")],
        cases: order_cases(&[1, 2, 4], GAUSS),
        lhs: raw(KindSpec::Pn, named("f"), "y"),
        rhs: scaled(
            "2/n",
            raw(KindSpec::Widder, named("f").at(e("x^(2/n)")), "y^(n/2)"),
        ),
        variants: vec![],
        abel: None,
        note: "the stated constant 2/n verifies as printed",
    });

    cat.push(IdentityRecord {
        id: "R10",
        title: "even-order algebraic kernel reduced to the Stieltjes transform",
        anchor: "(1.25)",
        statement: "P2n{f(x); y} = (1/(2n)) S{f(x^(1/(2n))); y^(2n)}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: corpus_cases(Some(3)),
        lhs: raw(KindSpec::P2n, named("f"), "y"),
        rhs: scaled(
            "1/(2*n)",
            trans(
                KindSpec::Stieltjes,
                named("f").at(e("x^(1/(2*n))")),
                "y^(2*n)",
            ),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    let exchange_pairs: [(&str, &str); 2] = [(GAUSS, "exp(-x)"), (QUARTIC, GAUSS)];

    cat.push(IdentityRecord {
        id: "G1",
        title: "exchange identity for the Laplace transform",
        anchor: "(1.3)",
        statement: "int_0^inf f(x) L{g; x} dx = int_0^inf g(y) L{f; y} dy",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-8,
        free_vars: &[],
        cases: exchange_pairs
            .iter()
            .map(|&(f, g)| case(None, &[], &[("f", f), ("g", g)]))
            .collect(),
        lhs: integral(
            vec![slot("f"), tfac(KindSpec::Laplace, named("g"), "x")],
            PlanStrategy::Decay,
        ),
        rhs: integral(
            vec![slot("g"), tfac(KindSpec::Laplace, named("f"), "x")],
            PlanStrategy::Decay,
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "Y1",
        title: "product of two Laplace transforms as a Stieltjes exchange",
        anchor: "(1.4)",
        statement: "int_0^inf L{f; t} L{g; t} dt = int_0^inf g(y) S{f; y} dy",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-8,
        free_vars: &[],
        cases: exchange_pairs
            .iter()
            .map(|&(f, g)| case(None, &[], &[("f", f), ("g", g)]))
            .collect(),
        lhs: integral(
            vec![
                tfac(KindSpec::Laplace, named("f"), "x"),
                tfac(KindSpec::Laplace, named("g"), "x"),
            ],
            PlanStrategy::Decay,
        ),
        rhs: integral(
            vec![slot("g"), tfac(KindSpec::Stieltjes, named("f"), "x")],
            PlanStrategy::Decay,
        ),
        variants: vec![],
        abel: None,
        note: "the right side's kernel is symmetric in the two originals, so either may carry the Stieltjes factor",
    });

    cat.push(IdentityRecord {
        id: "SS1",
        title: "exchange identity for the potential transform",
        anchor: "(1.6)",
        statement: "int_0^inf x f(x) P{g; x} dx = int_0^inf y g(y) P{f; y} dy",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-8,
        free_vars: &[],
        cases: exchange_pairs
            .iter()
            .map(|&(f, g)| case(None, &[], &[("f", f), ("g", g)]))
            .collect(),
        lhs: integral(
            vec![fixed("x"), slot("f"), tfac(KindSpec::Widder, named("g"), "x")],
            PlanStrategy::Decay,
        ),
        rhs: integral(
            vec![fixed("x"), slot("g"), tfac(KindSpec::Widder, named("f"), "x")],
            PlanStrategy::Decay,
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "W1",
        title: "exchange identity for the order-four algebraic kernel",
        anchor: "(1.14)",
        statement: "int_0^inf x^3 f(x) P4{g; x} dx = int_0^inf u^3 g(u) P4{f; u} du",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-8,
        free_vars: &[],
        cases: exchange_pairs
            .iter()
            .map(|&(f, g)| case(None, &[], &[("f", f), ("g", g)]))
            .collect(),
        lhs: integral(
            vec![
                fixed("x^3"),
                slot("f"),
                tfac(KindSpec::PnFixed(4), named("g"), "x"),
            ],
            PlanStrategy::Decay,
        ),
        rhs: integral(
            vec![
                fixed("x^3"),
                slot("g"),
                tfac(KindSpec::PnFixed(4), named("f"), "x"),
            ],
            PlanStrategy::Decay,
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "L1",
        title: "iterated exponential kernels as an erfcx-weighted integral",
        anchor: "lemma 2.1",
        statement: "int_0^inf x^(n-1) exp(-(y x)^n) L2n{f; x} dx \
                    = (sqrt(pi)/(2n)) int_0^inf x^(n-1) erfcx(y^n/(2 x^n)) f(x) dx",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-6,
        free_vars: &[("y", "y > 0")],
        cases: vec![
            case(Some(1), &[("y", 0.5)], &[("f", GAUSS)]),
            case(Some(1), &[("y", 1.0)], &[("f", GAUSS)]),
            case(Some(2), &[("y", 0.5)], &[("f", GAUSS)]),
            case(Some(2), &[("y", 1.0)], &[("f", GAUSS)]),
        ],
        lhs: integral(
            vec![
                fixed("x^(n-1) * exp(-((y*x)^n))"),
                tfac(KindSpec::L2n, named("f"), "x"),
            ],
            PlanStrategy::Decay,
        ),
        rhs: scaled(
            "sqrt(pi)/(2*n)",
            integral(
                vec![fixed("x^(n-1) * erfcx((y^n)/(2*(x^n)))"), slot("f")],
                PlanStrategy::Decay,
            ),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    // Shared pieces of the lemma 2.2 right side: the moment term and the
    // erfcx coefficient written in underflow-safe form.
    let l2_t1 = || {
        scaled(
            "1/(2*n*(y^(2*n)))",
            integral(vec![fixed("x^(n-1)"), slot("f")], PlanStrategy::Decay),
        )
    };
    let l2_t2 = |coeff: &str| {
        scaled(
            coeff,
            integral(
                vec![
                    fixed("x^(-(2*n+1)) * erfcx(1/(2*(x^n)*(y^n)))"),
                    slot_at("f", "1/x"),
                ],
                PlanStrategy::Algebraic,
            ),
        )
    };

    cat.push(IdentityRecord {
        id: "L2",
        title: "asymptotic split of the iterated exponential kernels",
        anchor: "lemma 2.2",
        statement: "int_0^inf x^(2n-1) exp(-(y x)^(2n)) Ln{f; x} dx \
                    = (1/(2n y^(2n))) int_0^inf x^(n-1) f(x) dx \
                    - (sqrt(pi)/(4n y^(3n))) int_0^inf x^(-(2n+1)) f(1/x) erfcx(1/(2 x^n y^n)) dx",
        expected: Expected::Audit,
        interpretation: Interpretation::Iterated,
        tol: 1e-6,
        free_vars: &[("y", "y > 0")],
        cases: vec![
            case(Some(1), &[("y", 1.0)], &[("f", GAUSS)]),
            case(Some(1), &[("y", 2.0)], &[("f", GAUSS)]),
            case(Some(2), &[("y", 1.0)], &[("f", GAUSS)]),
            case(Some(2), &[("y", 2.0)], &[("f", GAUSS)]),
        ],
        lhs: integral(
            vec![
                fixed("x^(2*n-1) * exp(-((y*x)^(2*n)))"),
                tfac(KindSpec::Ln, named("f"), "x"),
            ],
            PlanStrategy::Decay,
        ),
        rhs: Plan::Sum(vec![l2_t1(), l2_t2("-(sqrt(pi)/(4*n*(y^(3*n))))")]),
        variants: vec![(
            "closing constant of the derivation, 1/(2 y^(3n))",
            Plan::Sum(vec![l2_t1(), l2_t2("-(1/(2*(y^(3*n))))")]),
        )],
        abel: None,
        note: "the statement's constant sqrt(pi)/(4n y^(3n)) verifies; the derivation's closing line, checked as a variant, does not",
    });

    cat.push(IdentityRecord {
        id: "C1",
        title: "iterated kernels rewritten through an inverted argument",
        anchor: "corollary 2.1",
        statement: "int_0^inf x^(2n-1) exp(-(y x)^(2n)) Ln{f; x} dx \
                    = (1/(2n y^(2n))) int_0^inf x^(n-1) f(x) dx \
                    - (1/(2 y^(3n))) int_0^inf x^(n-1) exp(-(x/y)^n) L2n{t^(-3n) f(1/t); x} dx",
        expected: Expected::Audit,
        interpretation: Interpretation::Iterated,
        tol: 1e-6,
        free_vars: &[("y", "y > 0")],
        cases: vec![
            case(Some(1), &[("y", 1.0)], &[("f", GAUSS)]),
            case(Some(2), &[("y", 1.0)], &[("f", GAUSS)]),
            case(Some(1), &[("y", 2.0)], &[("f", GAUSS)]),
        ],
        lhs: integral(
            vec![
                fixed("x^(2*n-1) * exp(-((y*x)^(2*n)))"),
                tfac(KindSpec::Ln, named("f"), "x"),
            ],
            PlanStrategy::Decay,
        ),
        rhs: Plan::Sum(vec![
            l2_t1(),
            scaled(
                "-(1/(2*(y^(3*n))))",
                integral(
                    vec![
                        fixed("x^(n-1) * exp(-((x/y)^n))"),
                        tfac(
                            KindSpec::L2n,
                            named("f").at(e("1/x")).times(e("x^(-(3*n))")),
                            "x",
                        ),
                    ],
                    PlanStrategy::Decay,
                ),
            ),
        ]),
        variants: vec![],
        abel: None,
        note: "",
    });

    let c2_points: [(f64, f64); 3] = [(2.0, 1.0), (4.0, 2.0), (4.0, 1.0)];
    let mut c2_cases = Vec::new();
    for &(n, m) in &c2_points {
        for f in [GAUSS, "1/(1 + x^2)^2"] {
            for y in YS {
                c2_cases.push(case(None, &[("n", n), ("m", m), ("y", y)], &[("f", f)]));
            }
        }
    }
    cat.push(IdentityRecord {
        id: "C2",
        title: "rescaling between exponential kernels of two orders",
        anchor: "corollary 2.2",
        statement: "Ln{f(x); y} = (m/n) Lm{f(x^(m/n)); y^(n/m)}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Direct,
        tol: 1e-8,
        free_vars: &[("y", "y > 0")],
        cases: c2_cases,
        lhs: raw(KindSpec::LnOf("n"), named("f"), "y"),
        rhs: scaled(
            "m/n",
            raw(KindSpec::LnOf("m"), named("f").at(e("x^(m/n)")), "y^(n/m)"),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "E1",
        title: "worked value of the erfcx-weighted integral",
        anchor: "example 2.1",
        statement: "int_0^inf x^(-(2n+1)) exp(-x^(-2n)) erfcx(1/(2 x^n y^n)) dx \
                    = y^n/(n (2 y^n + 1))",
        expected: Expected::Audit,
        interpretation: Interpretation::Direct,
        tol: 1e-7,
        free_vars: &[("y", "y > 0")],
        cases: vec![
            case(Some(1), &[("y", 1.0)], &[]),
            case(Some(1), &[("y", 2.0)], &[]),
            case(Some(2), &[("y", 1.0)], &[]),
        ],
        lhs: integral(
            vec![fixed(
                "x^(-(2*n+1)) * exp(-(x^(-(2*n)))) * erfcx(1/(2*(x^n)*(y^n)))",
            )],
            PlanStrategy::Algebraic,
        ),
        rhs: closed("(y^n)/(n * (2*(y^n) + 1))"),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "E2",
        title: "iterated reading of the sine integral vs the printed closed form",
        anchor: "example 2.2",
        statement: "(2/sqrt(pi)) int_0^inf exp(-y x) L2{sin(t); x} dx \
                    = sqrt(pi) y exp(y^2) erfc(y)",
        expected: Expected::Audit,
        interpretation: Interpretation::Iterated,
        tol: 1e-6,
        free_vars: &[("y", "y > 0")],
        cases: vec![
            case(None, &[("y", 0.5)], &[]),
            case(None, &[("y", 1.0)], &[]),
            case(None, &[("y", 2.0)], &[]),
        ],
        lhs: scaled(
            "2/sqrt(pi)",
            integral(
                vec![
                    fixed("exp(-(y*x))"),
                    tfac(KindSpec::L2, inline("sin(x)"), "x"),
                ],
                PlanStrategy::Decay,
            ),
        ),
        rhs: closed("sqrt(pi) * y * erfcx(y)"),
        variants: vec![],
        abel: Some(integral(
            vec![fixed("sin(x) * erfcx(y/(2*x))")],
            PlanStrategy::Abel,
        )),
        note: "the nested reading is self-consistent (see the damped-limit cross-check); the printed closed form tracks a different function of y",
    });

    cat.push(IdentityRecord {
        id: "E3",
        title: "iterated sine example at general order",
        anchor: "example 2.3",
        statement: "(2n/sqrt(pi)) int_0^inf x^(n-1) exp(-(y x)^n) L2n{sin(t^n); x} dx \
                    = (sqrt(pi)/n) y^n exp(y^(2n)) erfc(y^n)",
        expected: Expected::Audit,
        interpretation: Interpretation::Iterated,
        tol: 1e-6,
        free_vars: &[("y", "y > 0")],
        cases: vec![
            case(Some(2), &[("y", 1.0)], &[]),
            case(Some(2), &[("y", 0.5)], &[]),
        ],
        lhs: scaled(
            "(2*n)/sqrt(pi)",
            integral(
                vec![
                    fixed("x^(n-1) * exp(-((y*x)^n))"),
                    tfac(KindSpec::L2n, inline("sin(x^n)"), "x"),
                ],
                PlanStrategy::Decay,
            ),
        ),
        rhs: closed("(sqrt(pi)/n) * (y^n) * erfcx(y^n)"),
        variants: vec![],
        abel: None,
        note: "the printed closed form does not match the nested reading at any sampled point",
    });

    cat.push(IdentityRecord {
        id: "E4",
        title: "iterated cosine example vs the printed closed form",
        anchor: "example 2.4",
        statement: "(2/sqrt(pi)) int_0^inf exp(-y x) L2{cos(t)/t; x} dx \
                    = 4 sqrt(pi) y (2 y^2 + 3) exp(y^2) erfc(y) + 8 y^2",
        expected: Expected::Audit,
        interpretation: Interpretation::Iterated,
        tol: 1e-6,
        free_vars: &[("y", "y > 0")],
        cases: vec![case(None, &[("y", 1.0)], &[]), case(None, &[("y", 2.0)], &[])],
        lhs: scaled(
            "2/sqrt(pi)",
            integral(
                vec![
                    fixed("exp(-(y*x))"),
                    tfac(KindSpec::L2, inline("cos(x)/x"), "x"),
                ],
                PlanStrategy::Decay,
            ),
        ),
        rhs: closed("4*sqrt(pi)*y*(2*(y^2) + 3)*erfcx(y) + 8*(y^2)"),
        variants: vec![],
        abel: None,
        note: "the two sides disagree by roughly two orders of magnitude; the printed form reads like an unreduced intermediate",
    });

    let mut l3_cases = Vec::new();
    for f in [GAUSS, QUARTIC] {
        for n in [1, 2, 3] {
            for z in YS {
                l3_cases.push(case(Some(n), &[("z", z)], &[("f", f)]));
            }
        }
    }
    cat.push(IdentityRecord {
        id: "L3",
        title: "the even-order exponential kernel applied twice",
        anchor: "lemma 2.3",
        statement: "L2n{L2n{f; u}; z} = (1/(2n)) P2n{f; z}",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-7,
        free_vars: &[("z", "z > 0")],
        cases: l3_cases,
        lhs: Plan::Iterate {
            func: named("f"),
            point: e("z"),
        },
        rhs: scaled("1/(2*n)", trans(KindSpec::P2n, named("f"), "z")),
        variants: vec![],
        abel: None,
        note: "",
    });

    let osc_points: [(Option<u32>, f64, f64); 5] = [
        (Some(1), 0.5, 1.0),
        (Some(1), 1.0, 1.0),
        (Some(1), 2.0, 2.0),
        (Some(2), 1.0, 1.0),
        (Some(2), 1.0, 0.5),
    ];
    let osc_cases = |pts: &[(Option<u32>, f64, f64)]| -> Vec<Case> {
        pts.iter()
            .map(|&(n, z, y)| case(n, &[("z", z), ("y", y)], &[]))
            .collect()
    };

    cat.push(IdentityRecord {
        id: "E5",
        title: "sine under the even-order algebraic kernel",
        anchor: "example 2.5",
        statement: "P2n{sin(z^n t^n); y} = (pi/n) exp(-(z y)^n)",
        expected: Expected::Audit,
        interpretation: Interpretation::Abel,
        tol: 1e-7,
        free_vars: &[("z", "z > 0"), ("y", "y > 0")],
        cases: osc_cases(&osc_points),
        lhs: integral(
            vec![fixed(
                "x^(2*n-1) * sin((z^n) * (x^n)) / (x^(2*n) + y^(2*n))",
            )],
            PlanStrategy::Oscillatory,
        ),
        rhs: closed("(pi/n) * exp(-((z*y)^n))"),
        variants: vec![(
            "halved constant pi/(2n)",
            closed("(pi/(2*n)) * exp(-((z*y)^n))"),
        )],
        abel: None,
        note: "the printed constant pi/n is double the value the exchange theorem forces; the halved constant verifies and is the one the sine-kernel corollary needs",
    });

    cat.push(IdentityRecord {
        id: "E6",
        title: "cosine under the even-order algebraic kernel",
        anchor: "example 2.6",
        statement: "int_0^inf x^(n-1) cos(z^n x^n)/(x^(2n) + y^(2n)) dx \
                    = (pi/(2n y^n)) exp(-(z y)^n)",
        expected: Expected::Audit,
        interpretation: Interpretation::Abel,
        tol: 1e-7,
        free_vars: &[("z", "z > 0"), ("y", "y > 0")],
        cases: osc_cases(&osc_points),
        lhs: integral(
            vec![fixed(
                "x^(n-1) * cos((z^n) * (x^n)) / (x^(2*n) + y^(2*n))",
            )],
            PlanStrategy::Oscillatory,
        ),
        rhs: closed("(pi/(2*n*(y^n))) * exp(-((z*y)^n))"),
        variants: vec![],
        abel: None,
        note: "",
    });

    let t1_pairs: [(&str, &str); 3] = [(GAUSS, GAUSS), (GAUSS, "exp(-(4*x^2))"), (QUARTIC, QUARTIC)];

    cat.push(IdentityRecord {
        id: "T1a",
        title: "exchange theorem: spectral member vs first weighted original",
        anchor: "theorem 2.1 (2.51)",
        statement: "int_0^inf y^(2n-1) L2n{f; y} L2n{g; y} dy \
                    = (1/(2n)) int_0^inf x^(2n-1) f(x) P2n{g; x} dx",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-7,
        free_vars: &[],
        cases: pair_cases(&t1_pairs, &[1, 2]),
        lhs: Plan::Member(0),
        rhs: Plan::Member(1),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "T1b",
        title: "exchange theorem: spectral member vs second weighted original",
        anchor: "theorem 2.1 (2.52)",
        statement: "int_0^inf y^(2n-1) L2n{f; y} L2n{g; y} dy \
                    = (1/(2n)) int_0^inf u^(2n-1) g(u) P2n{f; u} du",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-7,
        free_vars: &[],
        cases: pair_cases(&t1_pairs, &[1, 2]),
        lhs: Plan::Member(0),
        rhs: Plan::Member(2),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "T1c",
        title: "exchange theorem: the two weighted originals agree",
        anchor: "theorem 2.1 (2.53)",
        statement: "int_0^inf x^(2n-1) f(x) P2n{g; x} dx = int_0^inf u^(2n-1) g(u) P2n{f; u} du",
        expected: Expected::MustPass,
        interpretation: Interpretation::Iterated,
        tol: 1e-7,
        free_vars: &[],
        cases: pair_cases(&t1_pairs, &[1, 2]),
        lhs: Plan::Member(1),
        rhs: Plan::Member(2),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "C3",
        title: "reciprocal-point corollary of the exchange theorem",
        anchor: "corollary 2.3",
        statement: "int_0^inf x^(n-1) exp(-(z x)^(2n)) L2n{f; 1/(2^(1/n) x)} dx \
                    = (sqrt(pi)/(2n z^n)) Ln{x^n f(x); z}",
        expected: Expected::Audit,
        interpretation: Interpretation::Iterated,
        tol: 1e-6,
        free_vars: &[("z", "z > 0")],
        cases: vec![
            case(Some(1), &[("z", 1.0)], &[("f", GAUSS)]),
            case(Some(1), &[("z", 2.0)], &[("f", GAUSS)]),
            case(Some(2), &[("z", 1.0)], &[("f", GAUSS)]),
        ],
        lhs: integral(
            vec![
                fixed("x^(2*n-1) * exp(-((z*x)^(2*n))) * x^(-n)"),
                tfac(KindSpec::L2n, named("f"), "1/(2^(1/n) * x)"),
            ],
            PlanStrategy::Decay,
        ),
        rhs: scaled(
            "sqrt(pi)/(2*n*(z^n))",
            trans(KindSpec::Ln, named("f").times(e("x^n")), "z"),
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "C4",
        title: "sine-kernel corollary of the exchange theorem",
        anchor: "corollary 2.4",
        statement: "int_0^inf x^(2n-1) sin(z^n x^n) P2n{f; x} dx = (pi/(2n)) Ln{x^n f(x); z}",
        expected: Expected::Audit,
        interpretation: Interpretation::Abel,
        tol: 1e-6,
        free_vars: &[("z", "z > 0")],
        cases: vec![
            case(Some(1), &[("z", 1.0)], &[("f", GAUSS)]),
            case(Some(2), &[("z", 1.0)], &[("f", GAUSS)]),
            case(Some(1), &[("z", 2.0)], &[("f", GAUSS)]),
        ],
        lhs: integral(
            vec![
                fixed("x^(2*n-1) * sin((z^n) * (x^n))"),
                tfac(KindSpec::P2n, named("f"), "x"),
            ],
            PlanStrategy::Oscillatory,
        ),
        rhs: scaled(
            "pi/(2*n)",
            trans(KindSpec::Ln, named("f").times(e("x^n")), "z"),
        ),
        variants: vec![],
        abel: None,
        note: "consistent with the halved constant of the sine example, not the printed one",
    });

    cat.push(IdentityRecord {
        id: "C5",
        title: "reciprocal-point corollary with an inverse-cube weight",
        anchor: "corollary 2.5",
        statement: "int_0^inf x^(-(n+1)) exp(-(z x)^(2n)) L2n{f; 1/(2^(1/n) x)} dx \
                    = (sqrt(pi)/n) Ln{f; z}",
        expected: Expected::Audit,
        interpretation: Interpretation::Iterated,
        tol: 1e-6,
        free_vars: &[("z", "z > 0")],
        cases: vec![
            case(Some(1), &[("z", 1.0)], &[("f", GAUSS)]),
            case(Some(1), &[("z", 2.0)], &[("f", GAUSS)]),
            case(Some(2), &[("z", 1.0)], &[("f", GAUSS)]),
        ],
        lhs: integral(
            vec![
                fixed("x^(2*n-1) * exp(-((z*x)^(2*n))) * x^(-(3*n))"),
                tfac(KindSpec::L2n, named("f"), "1/(2^(1/n) * x)"),
            ],
            PlanStrategy::Decay,
        ),
        rhs: scaled("sqrt(pi)/n", trans(KindSpec::Ln, named("f"), "z")),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat.push(IdentityRecord {
        id: "X1",
        title: "damped error-function moment vs the printed closed form",
        anchor: "example 3.1",
        statement: "int_0^inf x exp(-z x) erfc(a x) dx \
                    = (1/z)(sqrt(pi)/z - 1/(2a)) \
                    - (sqrt(pi)/2) exp(z/(4a^2)) (1/z^2 - 1/(2a^2)) erfc(z/(2a))",
        expected: Expected::Audit,
        interpretation: Interpretation::Direct,
        tol: 1e-7,
        free_vars: &[("a", "a > 0"), ("z", "z > 0")],
        cases: vec![
            case(None, &[("a", 1.0), ("z", 1.0)], &[]),
            case(None, &[("a", 1.0), ("z", 2.0)], &[]),
            case(None, &[("a", 2.0), ("z", 1.0)], &[]),
        ],
        lhs: integral(
            vec![fixed("x * exp(-(z*x)) * erfc(a*x)")],
            PlanStrategy::Decay,
        ),
        rhs: closed(
            "(1/z) * (sqrt(pi)/z - 1/(2*a)) \
             - (sqrt(pi)/2) * exp(z/(4*(a^2))) * (1/(z^2) - 1/(2*(a^2))) * erfc(z/(2*a))",
        ),
        variants: vec![(
            "exponent read as (z/(2a))^2",
            closed(
                "(1/z) * (sqrt(pi)/z - 1/(2*a)) \
                 - (sqrt(pi)/2) * (1/(z^2) - 1/(2*(a^2))) * erfcx(z/(2*a))",
            ),
        )],
        abel: None,
        note: "a direct derivation gives 1/z^2 - 1/(sqrt(pi) a z) + (1/(2 a^2) - 1/z^2) erfcx(z/(2a)), which matches the computed left side; neither printed variant does",
    });

    cat.push(IdentityRecord {
        id: "X2",
        title: "Bessel function under the exponential kernel",
        anchor: "example 3.2",
        statement: "Ln{x^(n v) J_v(2 a^n x^n); z} \
                    = ((4 a^n)^v gamma(v + 1/2)) / (n sqrt(pi) (z^(2n) + 4 a^(2n))^(v + 1/2))",
        expected: Expected::Audit,
        interpretation: Interpretation::Direct,
        tol: 1e-7,
        free_vars: &[("a", "a > 0"), ("z", "z > 0"), ("v", "v >= 0")],
        cases: vec![
            case(Some(1), &[("v", 0.0), ("a", 1.0), ("z", 1.0)], &[]),
            case(Some(1), &[("v", 0.0), ("a", 0.5), ("z", 2.0)], &[]),
            case(Some(1), &[("v", 0.5), ("a", 1.0), ("z", 1.0)], &[]),
            case(Some(2), &[("v", 0.5), ("a", 1.0), ("z", 1.0)], &[]),
        ],
        lhs: raw(
            KindSpec::Ln,
            inline("x^(n*v) * besselj(v, 2*(a^n)*(x^n))"),
            "z",
        ),
        rhs: closed(
            "((4*(a^n))^v * gamma(v + 1/2)) \
             / (n * sqrt(pi) * (z^(2*n) + 4*(a^(2*n)))^(v + 1/2))",
        ),
        variants: vec![],
        abel: None,
        note: "",
    });

    cat
}
