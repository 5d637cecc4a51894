use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use super::upoly::UPoly;
use crate::numfield::FieldElem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Homogeneous polynomial in `x, y` of a fixed degree `d`.
///
/// `coeffs[k]` is the coefficient of `x^(d-k) y^k`. The zero polynomial of
/// degree `d` is the all-zero vector of length `d + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HPoly {
    degree: usize,
    coeffs: Vec<FieldElem>,
}

pub fn hp_arith(p: &HPoly, q: &HPoly, op: ArithOp) -> Result<HPoly, PolyError> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => Ok(p * q),
    }
}

impl HPoly {
    /// Builds from `d + 1` coefficients; panics on an empty vector.
    pub fn new(coeffs: Vec<FieldElem>) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial needs at least one coefficient");
        HPoly { degree: coeffs.len() - 1, coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| FieldElem::from_int(n)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        HPoly { degree, coeffs: vec![FieldElem::zero(); degree + 1] }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^i y^j`.
    pub fn monomial(c: FieldElem, i: usize, j: usize) -> Self {
        let mut p = Self::zero(i + j);
        p.coeffs[j] = c;
        p
    }

    pub fn x() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn y() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `a x + b y`.
    pub fn linear(a: FieldElem, b: FieldElem) -> Self {
        Self::new(vec![a, b])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^(d-k) y^k`.
    pub fn coeff(&self, k: usize) -> &FieldElem {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        HPoly { degree: self.degree, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn checked_add(&self, o: &HPoly) -> Result<HPoly, PolyError> {
        self.zip(o, |a, b| a + b)
    }

    pub fn checked_sub(&self, o: &HPoly) -> Result<HPoly, PolyError> {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &HPoly, f: impl Fn(&FieldElem, &FieldElem) -> FieldElem) -> Result<HPoly, PolyError> {
        if self.degree != o.degree {
            return Err(PolyError::DegreeMismatch { left: self.degree, right: o.degree });
        }
        Ok(HPoly { degree: self.degree, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(FieldElem::one()), |acc, _| &acc * self)
    }

    /// Partial derivative. A constant differentiates to the degree-0 zero.
    pub fn diff(&self, var: Var) -> HPoly {
        let d = self.degree;
        if d == 0 {
            return HPoly::zero(0);
        }
        let coeffs = match var {
            Var::X => (0..d).map(|k| &self.coeffs[k] * &FieldElem::from_int((d - k) as i64)).collect(),
            Var::Y => (0..d).map(|j| &self.coeffs[j + 1] * &FieldElem::from_int((j + 1) as i64)).collect(),
        };
        HPoly { degree: d - 1, coeffs }
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let d = self.degree as u32;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| &(c * &x.pow(d - k as u32)) * &y.pow(k as u32))
            .sum()
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        let d = self.degree as i32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_complex() * x.powi(d - k as i32) * y.powi(k as i32))
            .sum()
    }

    /// `p(1, z)`.
    pub fn dehomogenize_x(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }

    /// `p(x, 1)`.
    pub fn dehomogenize_y(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Degree-`d` homogenization of `u(z)` with `z = y/x`.
    pub fn homogenize(u: &UPoly, d: usize) -> HPoly {
        assert!(u.deg0() <= d, "homogenization degree too small");
        HPoly { degree: d, coeffs: (0..=d).map(|k| u.coeff(k)).collect() }
    }

    /// Exponent of the largest power of `x` dividing `self`.
    pub fn x_power(&self) -> usize {
        match self.dehomogenize_x().degree() {
            Some(k) => self.degree - k,
            None => self.degree,
        }
    }

    /// Exponent of the largest power of `y` dividing `self`.
    pub fn y_power(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count().min(self.degree)
    }

    /// Quotient `self / f` when exact.
    pub fn exact_div(&self, f: &HPoly) -> Option<HPoly> {
        assert!(!f.is_zero(), "division by the zero polynomial");
        if f.degree > self.degree {
            return None;
        }
        let dq = self.degree - f.degree;
        if self.is_zero() {
            return Some(HPoly::zero(dq));
        }
        if f.x_power() > self.x_power() {
            return None;
        }
        let q = self.dehomogenize_x().exact_div(&f.dehomogenize_x())?;
        Some(HPoly::homogenize(&q, dq))
    }

    pub fn divides(&self, p: &HPoly) -> bool {
        p.exact_div(self).is_some()
    }

    /// Monic (in the dehomogenized sense) homogeneous gcd.
    pub fn gcd(&self, o: &HPoly) -> HPoly {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let a = self.x_power().min(o.x_power());
        let g = self.dehomogenize_x().gcd(&o.dehomogenize_x());
        let g = HPoly::homogenize(&g, g.deg0());
        &g * &HPoly::x().pow(a as u32)
    }

    /// Scaled so the leading nonzero `z`-coefficient of `p(1, z)` is one.
    pub fn normalized(&self) -> HPoly {
        match self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Square-free decomposition: distinct multiplicities `k` with the
    /// square-free product `f_k` of all irreducible factors of multiplicity `k`.
    pub fn squarefree(&self) -> Vec<(HPoly, usize)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let mut out: Vec<(HPoly, usize)> = self
            .dehomogenize_x()
            .squarefree()
            .into_iter()
            .map(|(f, k)| (HPoly::homogenize(&f, f.deg0()), k))
            .collect();
        let a = self.x_power();
        if a > 0 {
            match out.iter_mut().find(|(_, k)| *k == a) {
                Some(entry) => entry.0 = &entry.0 * &HPoly::x(),
                None => out.push((HPoly::x(), a)),
            }
        }
        out.sort_by_key(|(_, k)| *k);
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree().iter().all(|(_, k)| *k == 1)
    }

    /// `p(a x + b y, c x + d y)`.
    pub fn compose_linear(&self, m: [&FieldElem; 4]) -> HPoly {
        let l1 = HPoly::linear(m[0].clone(), m[1].clone());
        let l2 = HPoly::linear(m[2].clone(), m[3].clone());
        let d = self.degree;
        let mut out = HPoly::zero(d);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = (&l1.pow((d - k) as u32) * &l2.pow(k as u32)).scale(c);
            out = out.checked_add(&t).expect("same degree");
        }
        out
    }

    /// Zero-pads to the given degree by multiplying with `x^(deg - d)`.
    pub fn times_x_pow(&self, e: usize) -> HPoly {
        self * &HPoly::x().pow(e as u32)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        super::fmt_terms(f, self.coeffs.iter().enumerate().map(|(k, c)| (c, vec![("x", d - k), ("y", k)])))
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly[{}]({self})", self.degree)
    }
}

impl<'a> std::ops::Mul<&'a HPoly> for &'a HPoly {
    type Output = HPoly;
    fn mul(self, o: &HPoly) -> HPoly {
        let mut out = HPoly::zero(self.degree + o.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out.coeffs[i + j] += &(a * b);
            }
        }
        out
    }
}

impl std::ops::Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        self.scale(&FieldElem::from_int(-1))
    }
}
