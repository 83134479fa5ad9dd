use kkw::expr::{eval, ExprError};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("A".to_string()),
        Just("B".to_string()),
        Just("xi".to_string()),
        Just("kappa".to_string()),
        Just("u".to_string()),
        Just("f0".to_string()),
        Just("f1".to_string()),
        Just("i".to_string()),
        (1i64..9).prop_map(|n| n.to_string()),
        (1i64..9, 2i64..7).prop_map(|(a, b)| format!("({}/{})", a, b)),
        Just("1/(xi-i)".to_string()),
        Just("1/(xi+i)^2".to_string()),
    ]
}

/// P-free expressions (so products never overflow), optionally wrapped in functions.
fn expression() -> impl Strategy<Value = String> {
    atom().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({} + {})", a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({} - {})", a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({} * {})", a, b)),
            inner.clone().prop_map(|a| format!("tr({})", a)),
            inner.clone().prop_map(|a| format!("dxi({})", a)),
        ]
    })
}

proptest! {
    #[test]
    fn rendering_round_trips(src in expression()) {
        let v = eval(&src, 6).unwrap();
        let text = v.to_string();
        let again = eval(&text, 6).unwrap();
        prop_assert_eq!(&again, &v, "{} rendered as {}", src, text);
        prop_assert_eq!(again.to_string(), text);
    }

    #[test]
    fn projections_of_parsed_rationals_split_them(src in expression()) {
        let v = eval(&src, 6).unwrap();
        if v.poly.is_proper() {
            let plus = eval(&format!("piplus({})", v), 6).unwrap();
            let minus = eval(&format!("piminus({})", v), 6).unwrap();
            prop_assert_eq!(&plus.poly + &minus.poly, v.poly);
        }
    }
}

#[test]
fn documented_examples() {
    assert_eq!(eval("tr(P*A)", 6).unwrap().to_string(), "-4*kappa*u");
    assert_eq!(eval("piplus(1/((xi-i)*(xi+i)))", 6).unwrap().to_string(), "-i/(2*(xi-i))");
    assert_eq!(
        eval("int((2*i-6*xi)/((xi-i)^3*(xi+i)^3))", 6).unwrap().to_string(),
        "(3/4)*pi*i"
    );
}

#[test]
fn trace_depends_on_dimension() {
    assert_eq!(eval("tr(1)", 5).unwrap().to_string(), "4");
    assert_eq!(eval("tr(1)", 6).unwrap().to_string(), "8");
    assert_eq!(eval("tr(B*B)", 6).unwrap().to_string(), "-8");
}

#[test]
fn powers_of_pi_are_tracked() {
    let v = eval("int(1/((xi-i)*(xi+i))) * pi", 6).unwrap();
    assert_eq!(v.pi_power, 2);
    assert_eq!(v.to_string(), "pi^2");
    assert!(eval("pi + 1", 6).is_err());
}

#[test]
fn semantic_errors_carry_reasons() {
    assert!(matches!(eval("int(xi/((xi-i)*(xi+i)))", 6), Err(ExprError::Engine(_))));
    assert!(matches!(eval("piplus(xi)", 6), Err(ExprError::Engine(_))));
    assert!(matches!(eval("P*P", 6), Err(ExprError::Engine(_))));
    assert!(matches!(eval("1/(xi^2+2)", 6), Err(ExprError::Unsupported(_))));
    assert!(matches!(eval("(1", 6), Err(ExprError::Parse { pos: 2, .. })));
    assert!(matches!(eval("1 $ 2", 6), Err(ExprError::Parse { pos: 2, .. })));
}
