//! Subresultant PRS resultant over an integral domain.

use super::upoly::UPoly;
use crate::numfield::FieldElem;

/// Minimal integral-domain interface for the subresultant algorithm.
pub trait Domain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known in advance to be exact.
    fn div_exact(&self, o: &Self) -> Self;

    fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl Domain for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.checked_div(o).expect("exact division by zero")
    }
}

impl Domain for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::one()
    }
    fn is_zero(&self) -> bool {
        UPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o).expect("inexact polynomial division")
    }
}

fn trim<R: Domain>(mut v: Vec<R>) -> Vec<R> {
    while v.last().is_some_and(R::is_zero) {
        v.pop();
    }
    v
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a mod b`.
fn prem<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = a.len() - b.len() + 1;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<R> = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[shift + j] = next[shift + j].sub(&lr.mul(bc));
        }
        r = trim(next);
        e -= 1;
    }
    let f = lb.pow(e);
    r.iter().map(|c| c.mul(&f)).collect()
}

/// Resultant of two polynomials given by ascending coefficient slices.
///
/// Uses the convention `Res(u, v) = lc(u)^deg(v) ∏_{u(α)=0} v(α)`.
/// Either input being zero gives zero.
pub fn resultant<R: Domain>(u: &[R], v: &[R]) -> R {
    let (mut a, mut b) = (trim(u.to_vec()), trim(v.to_vec()));
    if a.is_empty() || b.is_empty() {
        return R::zero();
    }
    let mut s = R::one();
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = s.neg();
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return s.mul(&b[0].pow(a.len() - 1));
    }
    let (mut g, mut h) = (R::one(), R::one());
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg();
        }
        let r = prem(&a, &b);
        a = b;
        let den = g.mul(&h.pow(delta));
        b = r.iter().map(|c| c.div_exact(&den)).collect();
        g = a[a.len() - 1].clone();
        if delta > 0 {
            h = g.pow(delta).div_exact(&h.pow(delta - 1));
        }
        if b.is_empty() {
            return R::zero();
        }
        if b.len() == 1 {
            break;
        }
    }
    let da = a.len() - 1;
    let hh = b[0].pow(da);
    let hh = if da >= 1 { hh.div_exact(&h.pow(da - 1)) } else { hh.mul(&h) };
    s.mul(&hh)
}

/// `Res_z(u(z), v(z, λ))` where `v` is given by its z-coefficients, each a
/// polynomial in `λ`. The result is a polynomial in `λ`.
pub fn resultant_lambda(u: &UPoly, v: &[UPoly]) -> UPoly {
    let lifted: Vec<UPoly> = u.coeffs().iter().cloned().map(UPoly::constant).collect();
    resultant(&lifted, v)
}
