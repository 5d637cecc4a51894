use std::fmt;
use std::sync::Arc;

use super::upoly::UPoly;
use crate::numfield::FieldElem;

/// Element of `K[z]/(m)` for a square-free modulus `m`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotElem {
    rep: UPoly,
    modulus: Arc<UPoly>,
}

/// A zero divisor was met while inverting: `factor` is a nontrivial monic
/// divisor of the modulus on which the element vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEvent {
    pub factor: UPoly,
}

impl QuotElem {
    pub fn new(rep: &UPoly, modulus: &Arc<UPoly>) -> Self {
        QuotElem { rep: rep.rem(modulus), modulus: Arc::clone(modulus) }
    }

    pub fn constant(c: FieldElem, modulus: &Arc<UPoly>) -> Self {
        Self::new(&UPoly::constant(c), modulus)
    }

    /// The class of `z`, a symbolic root of the modulus.
    pub fn root(modulus: &Arc<UPoly>) -> Self {
        Self::new(&UPoly::var(), modulus)
    }

    pub fn rep(&self) -> &UPoly {
        &self.rep
    }

    pub fn modulus(&self) -> &Arc<UPoly> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn check(&self, o: &QuotElem) {
        debug_assert!(self.modulus == o.modulus, "quotient elements over different moduli");
    }

    pub fn add(&self, o: &QuotElem) -> QuotElem {
        self.check(o);
        QuotElem { rep: &self.rep + &o.rep, modulus: self.modulus.clone() }
    }

    pub fn sub(&self, o: &QuotElem) -> QuotElem {
        self.check(o);
        QuotElem { rep: &self.rep - &o.rep, modulus: self.modulus.clone() }
    }

    pub fn mul(&self, o: &QuotElem) -> QuotElem {
        self.check(o);
        Self::new(&(&self.rep * &o.rep), &self.modulus)
    }

    pub fn neg(&self) -> QuotElem {
        QuotElem { rep: -&self.rep, modulus: self.modulus.clone() }
    }

    pub fn scale(&self, c: &FieldElem) -> QuotElem {
        QuotElem { rep: self.rep.scale(c), modulus: self.modulus.clone() }
    }

    /// Inverse, or the gcd with the modulus when the element is a zero divisor.
    /// The zero element reports the whole modulus.
    pub fn inv(&self) -> Result<QuotElem, SplitEvent> {
        let (g, s, _) = self.rep.ext_gcd(&self.modulus);
        if g.is_zero() || !g.is_constant() {
            let factor = if g.is_zero() { self.modulus.monic() } else { g };
            return Err(SplitEvent { factor });
        }
        Ok(Self::new(&s, &self.modulus))
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(p: &UPoly, r: &QuotElem) -> QuotElem {
        p.coeffs().iter().rev().fold(QuotElem::constant(FieldElem::zero(), &r.modulus), |acc, c| {
            acc.mul(r).add(&QuotElem::constant(c.clone(), &r.modulus))
        })
    }
}

impl fmt::Debug for QuotElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.rep, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = Arc::new(UPoly::from_ints(&[-3, 0, 1]));
        let z = QuotElem::root(&m);
        assert_eq!(z.mul(&z).rep(), &UPoly::from_ints(&[3]));
        let zi = z.inv().unwrap();
        assert_eq!(zi.rep(), &UPoly::new(vec![FieldElem::zero(), FieldElem::from_frac(1, 3)]));

        let m = Arc::new(UPoly::from_ints(&[0, -1, 1]));
        let e = QuotElem::new(&UPoly::from_ints(&[-1, 1]), &m);
        assert_eq!(e.inv(), Err(SplitEvent { factor: UPoly::from_ints(&[-1, 1]) }));
    }

    #[test]
    fn eval_at_root_vanishes() {
        let m = Arc::new(UPoly::from_ints(&[1, 1, 0, 1]));
        let r = QuotElem::root(&m);
        assert!(QuotElem::eval_poly(&m, &r).is_zero());
        let p = UPoly::from_ints(&[2, 0, 1]);
        assert_eq!(QuotElem::eval_poly(&p, &r).rep(), &UPoly::from_ints(&[2, 0, 1]));
    }
}
