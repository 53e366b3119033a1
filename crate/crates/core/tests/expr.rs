mod common;

use fracvoigt::expr::{parse, EvalError, Expr, Expression, ParseError};
use proptest::prelude::*;

#[test]
fn precedence_fixtures() {
    assert!(common::PRECEDENCE_FIXTURES.len() >= 20);
    for &(src, x, want) in common::PRECEDENCE_FIXTURES {
        let got = parse(src, "t").unwrap().eval(x).unwrap();
        assert_eq!(got, want, "{src} at {x}");
    }
}

#[test]
fn law_from_the_worked_example() {
    let e = parse("1/(1+eps)", "eps").unwrap();
    assert_eq!(e.eval(0.0), Ok(1.0));
    assert_eq!(e.eval(1.0), Ok(0.5));
    assert_eq!(
        parse("exp(-t)", "t").unwrap().eval(1.0),
        Ok((-1.0f64).exp())
    );
}

#[test]
fn errors_report_position() {
    let cases: &[(&str, usize)] = &[
        ("", 0),
        ("1 +", 3),
        ("(t", 2),
        ("t)", 1),
        ("2t", 1),
        ("sin(t,)", 6),
        ("foo(t)", 0),
        ("1 $ 2", 2),
    ];
    for &(src, at) in cases {
        let e = parse(src, "t").unwrap_err();
        assert_eq!(e.offset(), at, "{src}: {e}");
    }
    assert!(matches!(
        parse("x + 1", "t"),
        Err(ParseError::UnknownIdentifier { .. })
    ));
}

#[test]
fn evaluation_never_returns_non_finite() {
    for (src, x) in [
        ("1/t", 0.0),
        ("log(t)", 0.0),
        ("sqrt(t)", -1.0),
        ("t^0.5", -2.0),
        ("exp(exp(t))", 10.0),
        ("0^(-1)", 0.0),
    ] {
        let e = parse(src, "t").unwrap();
        let r = e.eval(x);
        assert!(r.is_err(), "{src} at {x}: {r:?}");
    }
    match parse("1 + 1/(t - 2)", "t").unwrap().eval(2.0) {
        Err(EvalError::DivisionByZero { expr }) => assert_eq!(expr, "(1.0 / (t - 2.0))"),
        other => panic!("{other:?}"),
    }
}

fn same_values(a: &Expression, b: &Expression, x: f64) -> bool {
    match (a.eval(x), b.eval(x)) {
        (Ok(u), Ok(v)) => (u - v).abs() <= 1e-12 * u.abs().max(1.0),
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

fn has_negative_literal(e: &Expr) -> bool {
    match e {
        Expr::Num(v) => *v < 0.0,
        Expr::Var => false,
        Expr::Neg(a) => has_negative_literal(a),
        Expr::Bin(_, l, r) => has_negative_literal(l) || has_negative_literal(r),
        Expr::Call(_, args) => args.iter().any(has_negative_literal),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pretty_print_round_trips(tree in common::arb_expr(), xs in prop::collection::vec(-10.0f64..10.0, 100)) {
        let original = Expression::new("t", tree.clone());
        let text = original.to_string();
        let reparsed = parse(&text, "t").map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        if !has_negative_literal(&tree) {
            prop_assert_eq!(reparsed.root(), &tree);
        }
        for x in xs {
            prop_assert!(same_values(&original, &reparsed, x), "{} at {}", text, x);
        }
    }

    #[test]
    fn parser_never_panics(src in "[-+*/^()., 0-9a-z]{0,24}") {
        let _ = parse(&src, "t");
    }

    #[test]
    fn variable_name_is_respected(name in "[a-z][a-z0-9_]{0,6}") {
        prop_assume!(!["exp", "log", "sqrt", "sin", "cos", "abs", "pow"].contains(&name.as_str()));
        let e = parse(&format!("2*{name}+1"), &name).unwrap();
        prop_assert_eq!(e.eval(3.0), Ok(7.0));
        prop_assert_eq!(e.var_name(), name.as_str());
    }
}
