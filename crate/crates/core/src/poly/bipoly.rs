use std::collections::BTreeMap;
use std::fmt;

use super::hpoly::HPoly;
use crate::numfield::FieldElem;

/// Sparse polynomial in `x, y`, not necessarily homogeneous.
/// Keys are `(i, j)` for the monomial `x^i y^j`; zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), FieldElem>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: FieldElem, i: usize, j: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(FieldElem::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(FieldElem::one(), 0, 1)
    }

    fn add_term(&mut self, i: usize, j: usize, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &FieldElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Homogeneous component of degree `k`.
    pub fn part(&self, k: usize) -> HPoly {
        let mut coeffs = vec![FieldElem::zero(); k + 1];
        for (&(i, j), c) in &self.terms {
            if i + j == k {
                coeffs[j] = c.clone();
            }
        }
        HPoly::new(coeffs)
    }

    pub fn from_hpoly(p: &HPoly) -> Self {
        let d = p.degree();
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(d - k, k, c.clone());
        }
        out
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> BiPoly {
        self.mul(&Self::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        (0..e).fold(Self::constant(FieldElem::one()), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(usize, usize)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0)));
        super::fmt_terms(f, keys.into_iter().map(|k| (&self.terms[k], vec![("x", k.0), ("y", k.1)])))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
