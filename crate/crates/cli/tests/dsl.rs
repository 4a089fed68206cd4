use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use qcartan::dsl::{parse, Expr};
use qcartan::eval::{EvalError, Evaluator, Value};
use qcartan_core::ncalg::frt::gl_q2;
use qcartan_core::ncalg::Algebra;
use qcartan_core::suites::{Engine, Options};

fn engine() -> Engine {
    let alg = Algebra::from_config(gl_q2()).unwrap();
    Engine::new(Arc::new(alg), Options::default()).unwrap()
}

fn eval(src: &str) -> Result<Value, EvalError> {
    let e = engine();
    let ev = Evaluator::new(e.cartan().unwrap());
    ev.eval(&parse(src).unwrap())
}

fn holds(lhs: &str, rhs: &str) -> bool {
    let e = engine();
    let ev = Evaluator::new(e.cartan().unwrap());
    let (l, r) = (
        ev.eval(&parse(lhs).unwrap()).unwrap(),
        ev.eval(&parse(rhs).unwrap()).unwrap(),
    );
    ev.equal(&l, &r, None).unwrap()
}

#[test]
fn sum_of_two_products() {
    let e = parse("q^-1 * a * b + (q - q^-1) * c * d").unwrap();
    let Expr::Add(l, r) = e else { panic!() };
    let Expr::Mul(ll, _) = *l else { panic!() };
    assert!(matches!(*ll, Expr::Mul(..)));
    let Expr::Mul(rl, _) = *r else { panic!() };
    let Expr::Mul(diff, _) = *rl else { panic!() };
    assert!(matches!(*diff, Expr::Sub(..)));
}

#[test]
fn power_binds_tighter_than_product() {
    let e = parse("a * b^2").unwrap();
    let Expr::Mul(_, r) = e else { panic!() };
    assert_eq!(*r, Expr::Pow(Box::new(Expr::Sym("b".into())), 2));
}

#[test]
fn bracket_node() {
    let e = parse("bracket(t[1,1], omega[1,1])").unwrap();
    let Expr::Call(head, args) = e else { panic!() };
    assert_eq!(*head, Expr::Sym("bracket".into()));
    assert_eq!(args.len(), 2);
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let err = parse("d(a * b").unwrap_err();
    assert_eq!((err.line, err.col), (1, 8));
    assert!(err.to_string().contains("end of input"));

    let err = parse("a +\nb * $").unwrap_err();
    assert_eq!((err.line, err.col), (2, 5));

    let err = parse("omega[1,]").unwrap_err();
    assert_eq!((err.line, err.col), (1, 9));

    assert!(parse("a b").is_err());
    assert!(parse("3(a)").is_err());
    assert!(parse("q^x").is_err());
}

#[test]
fn unknown_identifiers_are_rejected() {
    assert!(matches!(eval("foo * a"), Err(EvalError::Unknown(s)) if s == "foo"));
    assert!(matches!(eval("theta[1,1]"), Err(EvalError::Unknown(_))));
    assert!(matches!(eval("frob(a)"), Err(EvalError::Unknown(_))));
}

#[test]
fn indices_are_checked_against_the_instance() {
    assert!(matches!(
        eval("omega[1,3]"),
        Err(EvalError::IndexOutOfRange { index: 3, max: 2, .. })
    ));
    assert!(matches!(
        eval("t[0,1]"),
        Err(EvalError::IndexOutOfRange { index: 0, .. })
    ));
    assert!(matches!(
        eval("f[1,1,2]"),
        Err(EvalError::IndexCount {
            expected: 4,
            got: 3,
            ..
        })
    ));
    assert!(matches!(
        eval("Lp[1,1,1]"),
        Err(EvalError::IndexCount { expected: 2, .. })
    ));
}

#[test]
fn type_errors_are_reported() {
    assert!(matches!(eval("t[1,1] * t[1,2]"), Err(EvalError::Type(_))));
    assert!(matches!(eval("bracket(a, omega[1,1])"), Err(EvalError::Type(_))));
    assert!(matches!(eval("a / b"), Err(EvalError::Type(_))));
    assert!(matches!(eval("delta(a)"), Err(EvalError::Type(_))));
}

#[test]
fn evaluation_agrees_with_known_values() {
    assert!(holds("bracket(t[2,1], omega[2,1])", "1"));
    assert!(holds("bracket(t[2,1], omega[1,2])", "0"));
    assert!(holds("det * det_inv", "1"));
    assert!(holds("d(det * det_inv)", "0"));
    assert!(holds("conv(chi[1,1], b)", "t[1,1](b)"));
    assert!(holds("conv(twist(S, Lp[1,1]), a)", "conv(twist(S, Lp[1,1]), a)"));
    assert!(holds(
        "wedge(omega[1,1], a * omega[2,2])",
        "wedge(omega[1,1] * a, omega[2,2])"
    ));
    assert!(!holds("tensor(omega[1,1], omega[1,1])", "0"));
    assert!(holds(
        "i(t[1,1], wedge(omega[1,2], omega[2,1]))",
        "i(t[1,1], tensor(omega[1,2], omega[2,1]))"
    ));
}

#[test]
fn defect_index_is_nonzero_symbolically_and_vanishes_at_one() {
    let e = engine();
    let ev = Evaluator::new(e.cartan().unwrap());
    let one = num_rational::BigRational::from_integer(1.into());
    let mut nonzero = 0;
    for i in ["[1,1]", "[1,2]", "[2,1]", "[2,2]"] {
        for k in ["[1,1]", "[1,2]", "[2,1]", "[2,2]"] {
            let v = ev.eval(&parse(&format!("DI({i}, {k}, a)")).unwrap()).unwrap();
            if !ev.is_zero(&v, None).unwrap() {
                nonzero += 1;
            }
            assert!(ev.is_zero(&v, Some(&one)).unwrap());
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn delta_words() {
    let e = engine();
    let ev = Evaluator::new(e.cartan().unwrap());
    let v = ev.eval(&parse("delta(d)").unwrap()).unwrap();
    assert_eq!(ev.show(&v), "(1) * (d) # (1) + (1) * (1) # (d)");
    assert!(ev
        .eval(&parse("delta(t[1,1] * t[2,2] * i[1,2] * lie[2,1])").unwrap())
        .is_ok());
}

const NAMES: &[&str] = &["a", "b", "c", "d", "q", "det", "omega", "t", "bracket", "wedge", "x_1"];

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..1000).prop_map(|n| Expr::Int(BigInt::from(n))),
        prop::sample::select(NAMES).prop_map(|s| Expr::Sym(s.to_string())),
        (prop::sample::select(NAMES), prop::collection::vec(0u32..5, 1..5))
            .prop_map(|(s, idx)| Expr::Indexed(s.to_string(), idx)),
        prop::collection::vec(1u32..3, 2).prop_map(Expr::Index),
    ];
    leaf.prop_recursive(5, 48, 3, |inner| {
        let callee = inner
            .clone()
            .prop_filter("callable head", |e| !matches!(e, Expr::Int(_) | Expr::Index(_)));
        prop_oneof![
            (callee, prop::collection::vec(inner.clone(), 0..3)).prop_map(|(h, a)| Expr::Call(Box::new(h), a)),
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner, -4i32..5).prop_map(|(x, k)| Expr::Pow(Box::new(x), k)),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e);
    }

    #[test]
    fn printing_is_a_fixed_point(e in expr()) {
        let once = e.to_string();
        prop_assert_eq!(parse(&once).unwrap().to_string(), once);
    }
}
