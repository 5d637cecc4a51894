use flatweb::numfield::FieldElem;
use flatweb::poly::{HPoly, UPoly, Var};
use proptest::prelude::*;

fn upoly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|c| UPoly::from_ints(&c))
}

fn hpoly(d: usize) -> impl Strategy<Value = HPoly> {
    prop::collection::vec(-6i64..=6, d + 1).prop_map(|c| HPoly::from_ints(&c))
}

fn unimodular() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-3i64..=3).prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0)
}

proptest! {
    #[test]
    fn division_identity(a in upoly(7), b in upoly(4)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.deg0() < b.deg0());
    }

    #[test]
    fn gcd_divides_and_bezout(a in upoly(6), b in upoly(6)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (g, s, t) = a.ext_gcd(&b);
        prop_assert_eq!(&g, &a.gcd(&b));
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn squarefree_reconstructs(a in upoly(3), b in upoly(2), c in upoly(2)) {
        let p = &(&a * &b.pow(2)) * &c.pow(3);
        prop_assume!(!p.is_constant());
        let parts = p.squarefree();
        let prod = parts.iter().fold(UPoly::one(), |acc, (f, k)| &acc * &f.pow(*k as u32));
        prop_assert_eq!(prod, p.monic());
        for (f, _) in &parts {
            prop_assert!(f.is_squarefree());
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in upoly(4), b in upoly(4)) {
        prop_assume!(!a.is_constant() && !b.is_constant());
        prop_assert_eq!(a.resultant(&b).is_zero(), !a.gcd(&b).is_constant());
    }

    #[test]
    fn resultant_is_multiplicative(a in upoly(3), b in upoly(3), c in upoly(3)) {
        prop_assume!(!a.is_constant() && !b.is_constant() && !c.is_constant());
        prop_assert_eq!(a.resultant(&(&b * &c)), &a.resultant(&b) * &a.resultant(&c));
    }

    #[test]
    fn euler_identity(p in hpoly(5)) {
        let d = FieldElem::from_int(5);
        let lhs = (&HPoly::x() * &p.diff(Var::X)).checked_add(&(&HPoly::y() * &p.diff(Var::Y))).unwrap();
        prop_assert_eq!(lhs, p.scale(&d));
    }

    #[test]
    fn divides_agrees_with_gcd(a in hpoly(2), b in hpoly(3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = &a * &b;
        prop_assert!(a.divides(&prod));
        prop_assert_eq!(a.divides(&b), a.gcd(&b).degree() == a.degree());
    }

    #[test]
    fn linear_change_inverts(p in hpoly(4), m in unimodular()) {
        let f: [FieldElem; 4] = m.map(FieldElem::from_int);
        let det = FieldElem::from_int(m[0] * m[3] - m[1] * m[2]).inv().unwrap();
        let inv = [&f[3] * &det, -&(&f[1] * &det), -&(&f[2] * &det), &f[0] * &det];
        let there = p.compose_linear([&f[0], &f[1], &f[2], &f[3]]);
        prop_assert_eq!(there.compose_linear([&inv[0], &inv[1], &inv[2], &inv[3]]), p);
    }

    #[test]
    fn homogeneous_squarefree_reconstructs(a in hpoly(2), b in hpoly(1)) {
        let p = &a * &b.pow(3);
        prop_assume!(!p.is_zero());
        let prod = p.squarefree().iter().fold(HPoly::constant(FieldElem::one()), |acc, (f, k)| &acc * &f.pow(*k as u32));
        prop_assert!(prod.divides(&p) && p.divides(&prod));
    }
}
