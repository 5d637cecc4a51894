//! Exact arithmetic in `K = Q(i, √3)`.
//!
//! Elements are stored on the fixed basis `{1, i, √3, i√3}`. Every coefficient
//! that occurs in the catalogued foliations lives in this field, so no general
//! number-field machinery is needed.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero in Q(i,√3)")]
    DivisionByZero,
}

/// Build a rational from a numerator and a nonzero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Element `a0 + a1·i + a2·√3 + a3·i√3` of `K`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    c: [Rational; 4],
}

impl FieldElem {
    pub fn new(a0: Rational, a1: Rational, a2: Rational, a3: Rational) -> Self {
        FieldElem { c: [a0, a1, a2, a3] }
    }

    pub fn zero() -> Self {
        FieldElem::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElem { c: [q, Rational::zero(), Rational::zero(), Rational::zero()] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        let mut e = Self::zero();
        e.c[1] = Rational::one();
        e
    }

    /// `√3`.
    pub fn sqrt3() -> Self {
        let mut e = Self::zero();
        e.c[2] = Rational::one();
        e
    }

    /// `i√3`.
    pub fn i_sqrt3() -> Self {
        let mut e = Self::zero();
        e.c[3] = Rational::one();
        e
    }

    pub fn components(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElem { c: [&self.c[0] * q, &self.c[1] * q, &self.c[2] * q, &self.c[3] * q] }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse, obtained by solving `self · x = 1` as a 4×4
    /// rational linear system.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // Column j of the matrix is self · e_j.
        let basis = [Self::one(), Self::i(), Self::sqrt3(), Self::i_sqrt3()];
        let cols: Vec<FieldElem> = basis.iter().map(|b| self * b).collect();
        let mut m: Vec<Vec<Rational>> = (0..4)
            .map(|row| {
                let mut r: Vec<Rational> = (0..4).map(|col| cols[col].c[row].clone()).collect();
                r.push(if row == 0 { Rational::one() } else { Rational::zero() });
                r
            })
            .collect();
        for col in 0..4 {
            let pivot = (col..4)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(FieldError::DivisionByZero)?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..4 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..5 {
                        let t = &m[col][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
        }
        Ok(FieldElem { c: [m[0][4].clone(), m[1][4].clone(), m[2][4].clone(), m[3][4].clone()] })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self * &other.inv()?)
    }

    /// Complex conjugation `i ↦ −i`.
    pub fn conj(&self) -> Self {
        FieldElem { c: [self.c[0].clone(), -&self.c[1], self.c[2].clone(), -&self.c[3]] }
    }

    pub fn to_complex(&self) -> Complex64 {
        let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
        Complex64::new(f(&self.c[0]) + f(&self.c[2]) * SQRT3, f(&self.c[1]) + f(&self.c[3]) * SQRT3)
    }

    /// True when printing needs parentheses inside a product.
    pub(crate) fn is_compound(&self) -> bool {
        self.c.iter().filter(|q| !q.is_zero()).count() > 1
    }

    /// True when the element is a single basis term with negative coefficient.
    pub(crate) fn is_negative_monomial(&self) -> bool {
        let nz: Vec<&Rational> = self.c.iter().filter(|q| !q.is_zero()).collect();
        nz.len() == 1 && nz[0].is_negative()
    }
}

/// Writes a rational as `p` or `p/q`.
pub(crate) fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "I", "R3", "I*R3"];
        let mut first = true;
        for (q, unit) in self.c.iter().zip(UNITS) {
            if q.is_zero() {
                continue;
            }
            let mag = q.abs();
            if first {
                if q.is_negative() {
                    f.write_str("-")?;
                }
            } else if q.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if unit.is_empty() {
                fmt_rational(&mag, f)?;
            } else if mag.is_one() {
                f.write_str(unit)?;
            } else {
                fmt_rational(&mag, f)?;
                write!(f, "*{unit}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl From<Rational> for FieldElem {
    fn from(q: Rational) -> Self {
        FieldElem::from_rational(q)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem {
            c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2], &self.c[3] + &o.c[3]],
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem {
            c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2], &self.c[3] - &o.c[3]],
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &o.c;
        let three = Rational::from_integer(BigInt::from(3));
        let e0 = a0 * b0 - a1 * b1 + (a2 * b2 - a3 * b3) * &three;
        let e1 = a0 * b1 + a1 * b0 + (a2 * b3 + a3 * b2) * &three;
        let e2 = a0 * b2 + a2 * b0 - (a1 * b3 + a3 * b1);
        let e3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        FieldElem { c: [e0, e1, e2, e3] }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]] }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, o: &FieldElem) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, o: &FieldElem) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a -= b;
        }
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, o: &FieldElem) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for FieldElem {
    fn sum<I: Iterator<Item = FieldElem>>(iter: I) -> Self {
        iter.fold(FieldElem::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fe(a: [i64; 4]) -> FieldElem {
        FieldElem::new(rat(a[0], 1), rat(a[1], 1), rat(a[2], 1), rat(a[3], 1))
    }

    #[test]
    fn i_sqrt3_squared_is_minus_three() {
        let e = FieldElem::i_sqrt3();
        assert_eq!(&e * &e, FieldElem::from_int(-3));
    }

    #[test]
    fn norm_of_one_plus_i() {
        let a = fe([1, 1, 0, 0]);
        let b = fe([1, -1, 0, 0]);
        assert_eq!(a * b, FieldElem::from_int(2));
    }

    #[test]
    fn inverse_of_sqrt3() {
        let inv = FieldElem::sqrt3().inv().unwrap();
        assert_eq!(inv, FieldElem::sqrt3().scale(&rat(1, 3)));
        assert!((&inv * &FieldElem::sqrt3()).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(FieldElem::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn complex_embedding() {
        assert_eq!(FieldElem::one().to_complex(), Complex64::new(1.0, 0.0));
        assert_eq!(FieldElem::i_sqrt3().to_complex(), Complex64::new(0.0, 1.7320508075688772));
        let w = (fe([-3, 0, 0, 1])).scale(&rat(1, 2));
        let z = w.to_complex();
        assert!((z.re + 1.5).abs() < 1e-15);
        assert!((z.im - 0.8660254037844386).abs() < 1e-15);
    }

    #[test]
    fn display_forms() {
        assert_eq!(FieldElem::zero().to_string(), "0");
        assert_eq!(fe([-3, 0, 0, 1]).to_string(), "-3 + I*R3");
        assert_eq!(FieldElem::i_sqrt3().scale(&rat(3, 2)).to_string(), "3/2*I*R3");
        assert_eq!(fe([0, -2, 0, 0]).to_string(), "-2*I");
    }

    fn arb_elem() -> impl Strategy<Value = FieldElem> {
        prop::array::uniform4((-1000i64..1000, 1i64..1000))
            .prop_map(|v| FieldElem::new(rat(v[0].0, v[0].1), rat(v[1].0, v[1].1), rat(v[2].0, v[2].1), rat(v[3].0, v[3].1)))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn embedding_is_a_ring_homomorphism(a in arb_elem(), b in arb_elem()) {
            let (za, zb) = (a.to_complex(), b.to_complex());
            let prod = (&a * &b).to_complex();
            let sum = (&a + &b).to_complex();
            prop_assert!((prod - za * zb).norm() <= 1e-12 * (1.0 + (za * zb).norm()));
            prop_assert!((sum - (za + zb)).norm() <= 1e-12 * (1.0 + (za + zb).norm()));
        }
    }
}
