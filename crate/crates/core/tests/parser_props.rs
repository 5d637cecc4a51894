use flatweb::numfield::{rat, FieldElem};
use flatweb::parser::{parse_oneform, parse_polynomial, print_hpoly, print_oneform, ParseError, MAX_DEPTH};
use flatweb::poly::HPoly;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = FieldElem> {
    prop::array::uniform4((-9i64..=9, 1i64..=4)).prop_map(|c| {
        // mostly sparse, like hand-written input
        let keep = |k: usize, q: (i64, i64)| if k == 0 || q.0 % 3 == 0 { rat(q.0, q.1) } else { rat(0, 1) };
        FieldElem::new(keep(0, c[0]), keep(1, c[1]), keep(2, c[2]), keep(3, c[3]))
    })
}

fn hpoly(d: usize) -> impl Strategy<Value = HPoly> {
    prop::collection::vec(coeff(), d + 1).prop_map(HPoly::new)
}

fn form() -> impl Strategy<Value = (HPoly, HPoly)> {
    (1usize..=5).prop_flat_map(|d| (hpoly(d), hpoly(d))).prop_filter("nonzero", |(a, b)| !a.is_zero() || !b.is_zero())
}

proptest! {
    #[test]
    fn polynomial_round_trip(p in (0usize..=6).prop_flat_map(hpoly)) {
        prop_assume!(!p.is_zero());
        prop_assert_eq!(parse_polynomial(&print_hpoly(&p)).unwrap(), p);
    }

    #[test]
    fn oneform_round_trip((a, b) in form()) {
        let text = print_oneform(&a, &b);
        prop_assert_eq!(parse_oneform(&text).unwrap(), (a, b));
    }

    #[test]
    fn arbitrary_text_never_panics(s in "[xyd0-9IR3+*^()/ -]{0,40}") {
        let _ = parse_oneform(&s);
        let _ = parse_polynomial(&s);
    }

    #[test]
    fn syntax_errors_point_inside_the_input(s in "[xy0-9+*^() -]{1,30}") {
        if let Err(ParseError::Syntax { pos, .. }) = parse_polynomial(&s) {
            prop_assert!(pos <= s.len());
        }
    }
}

#[test]
fn deep_nesting_is_rejected_not_overflowed() {
    let deep = format!("{}x{}", "(".repeat(MAX_DEPTH + 50), ")".repeat(MAX_DEPTH + 50));
    assert!(matches!(parse_polynomial(&deep), Err(ParseError::Syntax { .. })));
    let ok = format!("{}x{}", "(".repeat(50), ")".repeat(50));
    assert_eq!(parse_polynomial(&ok).unwrap(), HPoly::x());
}

#[test]
fn huge_exponent_rejected() {
    assert!(parse_polynomial("x^100000").is_err());
}

#[test]
fn error_kinds() {
    assert!(matches!(parse_oneform("x*dx*dy"), Err(ParseError::MixedDifferentials { .. })));
    assert!(matches!(parse_oneform("y/x*dx + dy"), Err(ParseError::NonPolynomialCoefficient { .. })));
    assert!(matches!(parse_oneform("x^2*dx + x*y"), Err(ParseError::MissingDifferential)));
    assert!(matches!(parse_polynomial("x*dy"), Err(ParseError::UnexpectedDifferential { .. })));
    assert!(matches!(parse_oneform("x^2*dx + y*dy"), Err(ParseError::NotHomogeneous)));
    assert!(matches!(parse_oneform("x + $"), Err(ParseError::Syntax { pos: 4, .. })));
}

#[test]
fn omega9_verbatim() {
    let (a, b) = parse_oneform("y^2*((-3 + I*R3)*x + 2*y)*dx + x^2*((1 + I*R3)*x - 2*I*R3*y)*dy").unwrap();
    let w = FieldElem::new(rat(-3, 1), rat(0, 1), rat(0, 1), rat(1, 1));
    assert_eq!(a.coeff(2), &w);
    assert_eq!(b.coeff(1), &(-&(&FieldElem::i_sqrt3() + &FieldElem::i_sqrt3())));
}
