//! Implicit equation `F(p, q, x) = A(x, px - q) + p B(x, px - q)` of the
//! dual web.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::general::GeneralFoliation;
use crate::foliation::HomFoliation;
use crate::numfield::FieldElem;

/// Sparse polynomial in `p, q, x`; keys are exponents `[i, j, k]` of
/// `p^i q^j x^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<[usize; 3], FieldElem>,
}

impl TriPoly {
    pub fn monomial(c: FieldElem, e: [usize; 3]) -> Self {
        let mut t = TriPoly::default();
        t.add_term(e, c);
        t
    }

    fn add_term(&mut self, e: [usize; 3], c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_default();
        *v += &c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize; 3], &FieldElem)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, o: &TriPoly) -> TriPoly {
        let mut out = TriPoly::default();
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> TriPoly {
        (0..n).fold(TriPoly::monomial(FieldElem::one(), [0, 0, 0]), |acc, _| acc.mul(self))
    }

    pub fn degree_in_x(&self) -> usize {
        self.terms.keys().map(|e| e[2]).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        crate::poly::fmt_terms(f, self.terms.iter().rev().map(|(e, c)| (c, vec![("p", e[0]), ("q", e[1]), ("x", e[2])])))
    }
}

/// The dual web as an implicit differential equation, with both exact and
/// floating-point coefficients.
#[derive(Debug, Clone)]
pub struct ImplicitWeb {
    pub f: TriPoly,
    pub degree_in_x: usize,
    terms: Vec<([i32; 3], Complex64)>,
}

impl ImplicitWeb {
    pub fn new(f: TriPoly) -> Self {
        let terms = f.terms().map(|(e, c)| ([e[0] as i32, e[1] as i32, e[2] as i32], c.to_complex())).collect();
        ImplicitWeb { degree_in_x: f.degree_in_x(), f, terms }
    }

    /// Web given directly by complex terms, used for synthetic webs.
    pub fn from_complex(terms: Vec<([i32; 3], Complex64)>) -> Self {
        let degree_in_x = terms.iter().map(|(e, _)| e[2] as usize).max().unwrap_or(0);
        ImplicitWeb { f: TriPoly::default(), degree_in_x, terms }
    }

    /// `F` and its partials `(F, F_p, F_q, F_x)`.
    pub fn eval_with_partials(&self, p: Complex64, q: Complex64, x: Complex64) -> [Complex64; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let mut out = [zero; 4];
        let pw = |b: Complex64, e: i32| if e < 0 { zero } else { b.powi(e) };
        for (e, c) in &self.terms {
            let (pi, qj, xk) = (pw(p, e[0]), pw(q, e[1]), pw(x, e[2]));
            out[0] += c * pi * qj * xk;
            out[1] += c * e[0] as f64 * pw(p, e[0] - 1) * qj * xk;
            out[2] += c * e[1] as f64 * pi * pw(q, e[1] - 1) * xk;
            out[3] += c * e[2] as f64 * pi * qj * pw(x, e[2] - 1);
        }
        out
    }

    /// Coefficients of `F(p, q, ·)` in ascending powers of `x`.
    pub fn x_coefficients(&self, p: Complex64, q: Complex64) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); self.degree_in_x + 1];
        for (e, v) in &self.terms {
            c[e[2] as usize] += v * p.powi(e[0]) * q.powi(e[1]);
        }
        c
    }
}

/// `A(x, px - q) + p B(x, px - q)` for an affine foliation.
pub fn legendre_general(g: &GeneralFoliation) -> ImplicitWeb {
    let one = FieldElem::one();
    let lin = TriPoly::monomial(one.clone(), [1, 0, 1]).add(&TriPoly::monomial(-&one, [0, 1, 0]));
    let p = TriPoly::monomial(one, [1, 0, 0]);
    let mut f = TriPoly::default();
    for (parts, extra) in [(g.a_parts(), None), (g.b_parts(), Some(&p))] {
        for h in parts {
            let d = h.degree();
            for (k, c) in h.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // c x^(d-k) y^k with y = px - q
                let mut t = TriPoly::monomial(c.clone(), [0, 0, d - k]).mul(&lin.pow(k));
                if let Some(p) = extra {
                    t = t.mul(p);
                }
                f = f.add(&t);
            }
        }
    }
    ImplicitWeb::new(f)
}

pub fn legendre_implicit(h: &HomFoliation) -> ImplicitWeb {
    legendre_general(&GeneralFoliation::from_homogeneous(h))
}
