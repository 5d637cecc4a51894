use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::numfield::FieldElem;

/// Univariate polynomial over `K`, coefficients in ascending powers.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<FieldElem>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| FieldElem::from_int(n)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![FieldElem::zero(), FieldElem::one()])
    }

    /// `z - r`.
    pub fn linear_root(r: &FieldElem) -> Self {
        Self::new(vec![-r, FieldElem::one()])
    }

    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let mut v = vec![FieldElem::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> FieldElem {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &FieldElem::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, z: &FieldElem) -> FieldElem {
        self.coeffs.iter().rev().fold(FieldElem::zero(), |acc, c| &(&acc * z) + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex())
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(FieldElem::to_complex).collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![FieldElem::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[k + j] -= &t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Quotient of an exact division, `None` if the remainder is nonzero.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, p: &UPoly) -> bool {
        p.rem(self).is_zero()
    }

    /// Monic greatest common divisor. `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("nonzero leading coefficient");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Yun's square-free decomposition.
    ///
    /// Returns monic, pairwise coprime, square-free factors `f_k` with their
    /// multiplicities `k`, so that `∏ f_k^k` equals `self` up to a constant.
    pub fn squarefree(&self) -> Vec<(UPoly, usize)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.exact_div(&a0).expect("gcd divides");
        let c = d.exact_div(&a0).expect("gcd divides");
        let mut dd = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&dd);
            let nb = b.exact_div(&a).expect("gcd divides");
            let nc = dd.exact_div(&a).expect("gcd divides");
            dd = &nc - &nb.derivative();
            if !a.is_constant() {
                out.push((a.monic(), k));
            }
            b = nb;
            k += 1;
        }
        out
    }

    /// Square-free part (product of distinct irreducible factors), monic.
    pub fn squarefree_part(&self) -> UPoly {
        self.squarefree().iter().fold(UPoly::one(), |acc, (f, _)| &acc * f)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Resultant `Res(self, other)`, equal to
    /// `lc(self)^deg(other) · ∏ other(α)` over the roots `α` of `self`.
    pub fn resultant(&self, other: &UPoly) -> FieldElem {
        super::resultant::resultant(&self.coeffs, &other.coeffs)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::fmt_terms(f, self.coeffs.iter().enumerate().rev().map(|(k, c)| (c, vec![("z", k)])))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![FieldElem::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        UPoly::new(v)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
