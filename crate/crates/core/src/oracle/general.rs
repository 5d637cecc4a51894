//! Affine foliations `Σ (A_i dx + B_i dy)` and their homogeneous limit.

use num_complex::Complex64;
use thiserror::Error;

use crate::foliation::{FoliationError, HomFoliation};
use crate::numfield::FieldElem;
use crate::poly::{BiPoly, HPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenerationError {
    #[error("the line at infinity is not invariant")]
    NotInvariantInfinity,
    #[error("top-degree parts share the factor {0}")]
    TopPartDegenerate(HPoly),
    #[error("the 1-form is zero")]
    ZeroForm,
}

/// Graded parts `A_0..A_d`, `B_0..B_d` of an affine 1-form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFoliation {
    a: Vec<HPoly>,
    b: Vec<HPoly>,
}

impl GeneralFoliation {
    pub fn new(a: &BiPoly, b: &BiPoly) -> Result<Self, DegenerationError> {
        let d = a.total_degree().into_iter().chain(b.total_degree()).max().ok_or(DegenerationError::ZeroForm)?;
        Ok(GeneralFoliation { a: (0..=d).map(|k| a.part(k)).collect(), b: (0..=d).map(|k| b.part(k)).collect() })
    }

    pub fn from_homogeneous(h: &HomFoliation) -> Self {
        Self::new(&BiPoly::from_hpoly(h.a()), &BiPoly::from_hpoly(h.b())).expect("nonzero form")
    }

    /// `(x^d - x) dy - (y^d - y) dx`.
    pub fn fermat(d: usize) -> Self {
        let one = FieldElem::one();
        let a = BiPoly::y().sub(&BiPoly::monomial(one.clone(), 0, d));
        let b = BiPoly::monomial(one, d, 0).sub(&BiPoly::x());
        Self::new(&a, &b).expect("nonzero form")
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a_parts(&self) -> &[HPoly] {
        &self.a
    }

    pub fn b_parts(&self) -> &[HPoly] {
        &self.b
    }

    pub fn a(&self) -> BiPoly {
        self.a.iter().fold(BiPoly::zero(), |acc, p| acc.add(&BiPoly::from_hpoly(p)))
    }

    pub fn b(&self) -> BiPoly {
        self.b.iter().fold(BiPoly::zero(), |acc, p| acc.add(&BiPoly::from_hpoly(p)))
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let a = self.a.iter().map(|p| p.eval_complex(x, y)).sum();
        let b = self.b.iter().map(|p| p.eval_complex(x, y)).sum();
        (a, b)
    }
}

/// Homogeneous foliation `A_d dx + B_d dy` obtained as the limit of the
/// homotheties `(x, y) ↦ (x/ε, y/ε)` applied to `g`.
pub fn general_to_homogeneous(g: &GeneralFoliation) -> Result<HomFoliation, DegenerationError> {
    let d = g.degree();
    let (ad, bd) = (&g.a[d], &g.b[d]);
    let radial = (&HPoly::x() * ad).checked_add(&(&HPoly::y() * bd)).expect("equal degrees");
    if radial.is_zero() {
        return Err(DegenerationError::NotInvariantInfinity);
    }
    match HomFoliation::new(ad.clone(), bd.clone()) {
        Ok(h) => Ok(h),
        Err(FoliationError::NotCoprime(c)) => Err(DegenerationError::TopPartDegenerate(c)),
        Err(_) => Err(DegenerationError::ZeroForm),
    }
}

/// Camacho-Sad index along the line at infinity at `[x0:1:0]`, by finite
/// differences in the chart `(x, z) = (x/y, 1/y)`.
pub fn cs_at_infinity_numeric(g: &GeneralFoliation, x0: Complex64, h: f64) -> Complex64 {
    let d = g.degree();
    let one = Complex64::new(1.0, 0.0);
    // In the chart the foliation is P dx + Q dz with
    // P = Σ z^(d-i+1) A_i(x,1) and Q = -Σ z^(d-i) (x A_i(x,1) + B_i(x,1)).
    let p = |x: Complex64, z: Complex64| -> Complex64 {
        (0..=d).map(|i| z.powi((d - i + 1) as i32) * g.a[i].eval_complex(x, one)).sum()
    };
    let q = |x: Complex64, z: Complex64| -> Complex64 {
        (0..=d)
            .map(|i| -z.powi((d - i) as i32) * (x * g.a[i].eval_complex(x, one) + g.b[i].eval_complex(x, one)))
            .sum()
    };
    let zero = Complex64::new(0.0, 0.0);
    let dp_dz = (p(x0, Complex64::new(h, 0.0)) - p(x0, Complex64::new(-h, 0.0))) / (2.0 * h);
    let dq_dx = (q(x0 + h, zero) - q(x0 - h, zero)) / (2.0 * h);
    -dp_dz / dq_dx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_general_oneform;

    #[test]
    fn fermat_limit_is_minus_omega1() {
        let h = general_to_homogeneous(&GeneralFoliation::fermat(3)).unwrap();
        assert_eq!(h.a(), &HPoly::from_ints(&[0, 0, 0, -1]));
        assert_eq!(h.b(), &HPoly::from_ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn homogeneous_is_fixed() {
        let (a, b) = parse_general_oneform("y^3*dx - x^3*dy").unwrap();
        let g = GeneralFoliation::new(&a, &b).unwrap();
        let h = general_to_homogeneous(&g).unwrap();
        assert_eq!(GeneralFoliation::from_homogeneous(&h), g);
    }

    #[test]
    fn degenerate_top_part() {
        let (a, b) = parse_general_oneform("(x*y^2 + 1)*dx + (x^3 + y)*dy").unwrap();
        let g = GeneralFoliation::new(&a, &b).unwrap();
        assert_eq!(general_to_homogeneous(&g), Err(DegenerationError::TopPartDegenerate(HPoly::x())));
        let (a, b) = parse_general_oneform("(y^2 + x)*dx - x*y*dy").unwrap();
        let g = GeneralFoliation::new(&a, &b).unwrap();
        assert_eq!(general_to_homogeneous(&g), Err(DegenerationError::NotInvariantInfinity));
    }
}
