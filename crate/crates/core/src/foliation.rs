//! Homogeneous foliations `A dx + B dy` and their invariants.
//!
//! The line `y = z x` through the origin corresponds to the point `[1:z:0]`
//! on the line at infinity, and `x = 0` to `[0:1:0]`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use num_rational::Ratio;
use num_traits::Zero;

use crate::numfield::{FieldElem, Rational};
use crate::oracle::roots::roots;
use crate::poly::{resultant_lambda, HPoly, UPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoliationError {
    #[error("coefficients have different degrees ({a} and {b})")]
    DegreeMismatch { a: usize, b: usize },
    #[error("the 1-form is zero")]
    ZeroForm,
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("coefficients share the factor {0}")]
    NotCoprime(HPoly),
    #[error("tangent cone is not square-free, some singularity at infinity is degenerate")]
    DegenerateInfinity,
    #[error("singular linear map")]
    SingularMap,
}

/// Foliation given by `A dx + B dy`, `A` and `B` coprime and homogeneous of
/// degree `d ≥ 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomFoliation {
    a: HPoly,
    b: HPoly,
}

impl fmt::Debug for HomFoliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomFoliation({})", crate::parser::print_oneform(&self.a, &self.b))
    }
}

impl fmt::Display for HomFoliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print_oneform(&self.a, &self.b))
    }
}

/// Value of the Gauss map, possibly the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaussValue<T> {
    Finite(T),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Fixed,
    Transverse,
}

/// Square-free factor of `D_H` whose lines all have multiplicity `k` and the
/// same kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorFactor {
    pub poly: HPoly,
    pub multiplicity: usize,
    pub kind: FactorKind,
}

/// Counts `r_k` of radial singularities and `t_k` of transverse inflection
/// lines of order `k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FoliationType {
    pub r: BTreeMap<usize, usize>,
    pub t: BTreeMap<usize, usize>,
}

impl FoliationType {
    pub fn from_pairs(r: &[(usize, usize)], t: &[(usize, usize)]) -> Self {
        FoliationType { r: r.iter().copied().collect(), t: t.iter().copied().collect() }
    }

    /// `Σ k (r_k + t_k)`.
    pub fn weight(&self) -> usize {
        self.r.iter().chain(&self.t).map(|(k, n)| k * n).sum()
    }

    /// `Σ (r_k + t_k)`.
    pub fn degree(&self) -> usize {
        self.r.values().chain(self.t.values()).sum()
    }
}

impl fmt::Display for FoliationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .r
            .iter()
            .map(|(k, n)| format!("{n}·R{k}"))
            .chain(self.t.iter().map(|(k, n)| format!("{n}·T{k}")))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Point `[x:y:0]` on the line at infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum Direction {
    Exact([FieldElem; 2]),
    /// One root of an irreducible-or-not square-free factor, located numerically.
    Numeric { factor: HPoly, point: [Complex64; 2] },
}

impl Direction {
    pub fn to_complex(&self) -> [Complex64; 2] {
        match self {
            Direction::Exact([x, y]) => [x.to_complex(), y.to_complex()],
            Direction::Numeric { point, .. } => *point,
        }
    }
}

/// Exact or floating-point index.
#[derive(Debug, Clone, PartialEq)]
pub enum Index {
    Exact(FieldElem),
    Numeric(Complex64),
}

impl Index {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Index::Exact(v) => v.to_complex(),
            Index::Numeric(v) => *v,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfinitySingularity {
    pub direction: Direction,
    pub nu: usize,
    pub tau: usize,
    /// Multiplicity of the line in `C_H`; 1 means non-degenerate.
    pub mu: usize,
    pub cs: Option<Index>,
    pub bb: Option<Index>,
}

impl InfinitySingularity {
    pub fn is_radial(&self) -> bool {
        self.tau >= 2
    }

    pub fn is_degenerate(&self) -> bool {
        self.mu != 1
    }
}

/// The three components of the inflection divisor `z · C_H · D_H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InflectionDivisor {
    pub tangent_cone: HPoly,
    pub d_divisor: HPoly,
}

impl InflectionDivisor {
    pub const LINE_AT_INFINITY_DEGREE: usize = 1;

    pub fn degrees(&self) -> (usize, usize, usize) {
        (Self::LINE_AT_INFINITY_DEGREE, self.tangent_cone.degree(), self.d_divisor.degree())
    }

    pub fn total_degree(&self) -> usize {
        let (a, b, c) = self.degrees();
        a + b + c
    }
}

#[derive(Debug, Clone)]
pub struct FoliationAnalysis {
    pub foliation: HomFoliation,
    pub tangent_cone: HPoly,
    pub d_divisor: HPoly,
    pub factors: Vec<DivisorFactor>,
    pub ftype: FoliationType,
    pub infinity_sings: Vec<InfinitySingularity>,
    /// `None` when the tangent cone is not square-free.
    pub cs_polynomial: Option<UPoly>,
    pub convex: bool,
}

impl HomFoliation {
    pub fn new(a: HPoly, b: HPoly) -> Result<Self, FoliationError> {
        if a.degree() != b.degree() {
            return Err(FoliationError::DegreeMismatch { a: a.degree(), b: b.degree() });
        }
        if a.is_zero() && b.is_zero() {
            return Err(FoliationError::ZeroForm);
        }
        if a.degree() == 0 {
            return Err(FoliationError::DegreeZero);
        }
        let g = a.gcd(&b);
        if g.degree() > 0 {
            return Err(FoliationError::NotCoprime(g));
        }
        Ok(HomFoliation { a, b })
    }

    pub fn a(&self) -> &HPoly {
        &self.a
    }

    pub fn b(&self) -> &HPoly {
        &self.b
    }

    pub fn degree(&self) -> usize {
        self.a.degree()
    }

    /// `C_H = x A + y B`.
    pub fn tangent_cone(&self) -> HPoly {
        (&HPoly::x() * &self.a).checked_add(&(&HPoly::y() * &self.b)).expect("equal degrees")
    }

    /// `D_H = A_x B_y - A_y B_x`.
    pub fn d_divisor(&self) -> HPoly {
        let l = &self.a.diff(Var::X) * &self.b.diff(Var::Y);
        let r = &self.a.diff(Var::Y) * &self.b.diff(Var::X);
        l.checked_sub(&r).expect("equal degrees")
    }

    /// Pullback by the linear map `(x, y) ↦ (a x + b y, c x + d y)`.
    pub fn pullback(&self, m: [&FieldElem; 4]) -> Result<HomFoliation, FoliationError> {
        let [a, b, c, d] = m;
        if (&(a * d) - &(b * c)).is_zero() {
            return Err(FoliationError::SingularMap);
        }
        let ap = self.a.compose_linear(m);
        let bp = self.b.compose_linear(m);
        let na = ap.scale(a).checked_add(&bp.scale(c)).expect("equal degrees");
        let nb = ap.scale(b).checked_add(&bp.scale(d)).expect("equal degrees");
        HomFoliation::new(na, nb)
    }

    /// Pullback by the shear `(x, y) ↦ (x + t y, y)`.
    pub fn shear(&self, t: i64) -> HomFoliation {
        let (one, zero, t) = (FieldElem::one(), FieldElem::zero(), FieldElem::from_int(t));
        self.pullback([&one, &t, &zero, &one]).expect("shears are invertible")
    }

    /// `G(z) = -A(1,z) / B(1,z)`.
    pub fn gauss_eval(&self, z: &FieldElem) -> GaussValue<FieldElem> {
        let bz = self.b.eval(&FieldElem::one(), z);
        if bz.is_zero() {
            return GaussValue::Infinity;
        }
        let az = self.a.eval(&FieldElem::one(), z);
        GaussValue::Finite(-&az.checked_div(&bz).expect("nonzero"))
    }

    pub fn gauss_eval_complex(&self, z: Complex64) -> GaussValue<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let bz = self.b.eval_complex(one, z);
        if bz.norm() == 0.0 {
            return GaussValue::Infinity;
        }
        GaussValue::Finite(-self.a.eval_complex(one, z) / bz)
    }

    /// Gauss map at a projective point `[x:y]`, as a projective value
    /// `[-A(x,y) : B(x,y)]`.
    pub fn gauss_projective(&self, p: [Complex64; 2]) -> [Complex64; 2] {
        [self.b.eval_complex(p[0], p[1]), -self.a.eval_complex(p[0], p[1])]
    }

    pub fn divisor_analysis(&self) -> (Vec<DivisorFactor>, FoliationType) {
        let d = self.d_divisor();
        let c = self.tangent_cone();
        let mut factors = Vec::new();
        let mut ftype = FoliationType::default();
        if d.is_zero() || d.degree() == 0 {
            return (factors, ftype);
        }
        for (f, k) in d.squarefree() {
            let fixed = f.gcd(&c);
            let trans = f.exact_div(&fixed).expect("gcd divides");
            for (poly, kind) in [(fixed, FactorKind::Fixed), (trans, FactorKind::Transverse)] {
                if poly.degree() == 0 {
                    continue;
                }
                let counts = if kind == FactorKind::Fixed { &mut ftype.r } else { &mut ftype.t };
                *counts.entry(k).or_default() += poly.degree();
                factors.push(DivisorFactor { poly, multiplicity: k, kind });
            }
        }
        (factors, ftype)
    }

    pub fn inflection_divisor(&self) -> InflectionDivisor {
        InflectionDivisor { tangent_cone: self.tangent_cone(), d_divisor: self.d_divisor() }
    }

    /// No transverse inflection line.
    pub fn is_convex(&self) -> bool {
        self.divisor_analysis().0.iter().all(|f| f.kind == FactorKind::Fixed)
    }

    /// Camacho-Sad index at the point `[x:y:0]`, exact.
    pub fn cs_exact(&self, p: &[FieldElem; 2]) -> Option<FieldElem> {
        let c = self.tangent_cone();
        let [x, y] = p;
        if !y.is_zero() {
            let x0 = x.checked_div(y).ok()?;
            let one = FieldElem::one();
            let num = self.a.eval(&x0, &one);
            let den = c.diff(Var::X).eval(&x0, &one);
            num.checked_div(&den).ok()
        } else {
            let z0 = y.checked_div(x).ok()?;
            let one = FieldElem::one();
            let num = self.b.eval(&one, &z0);
            let den = c.diff(Var::Y).eval(&one, &z0);
            num.checked_div(&den).ok()
        }
    }

    /// Camacho-Sad index at `[x:y:0]` in floating point, using the better
    /// conditioned chart.
    pub fn cs_complex(&self, p: [Complex64; 2]) -> Complex64 {
        let c = self.tangent_cone();
        let one = Complex64::new(1.0, 0.0);
        if p[1].norm() >= p[0].norm() {
            let x0 = p[0] / p[1];
            self.a.eval_complex(x0, one) / c.diff(Var::X).eval_complex(x0, one)
        } else {
            let z0 = p[1] / p[0];
            self.b.eval_complex(one, z0) / c.diff(Var::Y).eval_complex(one, z0)
        }
    }

    pub fn infinity_singularities(&self) -> Vec<InfinitySingularity> {
        let c = self.tangent_cone();
        let d = self.d_divisor();
        let levels = if d.degree() == 0 || d.is_zero() { Vec::new() } else { d.squarefree() };
        let mut out = Vec::new();
        for (g, mu) in c.squarefree() {
            let mut rest = g;
            let mut pieces = Vec::new();
            for (f, k) in &levels {
                let h = rest.gcd(f);
                if h.degree() > 0 {
                    rest = rest.exact_div(&h).expect("gcd divides");
                    pieces.push((h, k + 1));
                }
            }
            if rest.degree() > 0 {
                pieces.push((rest, 1));
            }
            for (piece, tau) in pieces {
                for direction in line_points(&piece) {
                    let (cs, bb) = if mu == 1 { self.indices(&direction) } else { (None, None) };
                    out.push(InfinitySingularity { direction, nu: 1, tau, mu, cs, bb });
                }
            }
        }
        out
    }

    fn indices(&self, dir: &Direction) -> (Option<Index>, Option<Index>) {
        match dir {
            Direction::Exact(p) => match self.cs_exact(p) {
                Some(cs) => {
                    let bb = cs.inv().ok().map(|inv| &(&cs + &inv) + &FieldElem::from_int(2));
                    (Some(Index::Exact(cs)), bb.map(Index::Exact))
                }
                None => (None, None),
            },
            Direction::Numeric { point, .. } => {
                let cs = self.cs_complex(*point);
                (Some(Index::Numeric(cs)), Some(Index::Numeric(cs + 1.0 / cs + 2.0)))
            }
        }
    }

    /// Monic `∏ (λ - CS(s))` over the singular points at infinity, computed
    /// from a resultant without locating the points.
    pub fn cs_polynomial(&self) -> Result<UPoly, FoliationError> {
        let c_h = self.tangent_cone();
        if !c_h.is_squarefree() {
            return Err(FoliationError::DegenerateInfinity);
        }
        let c = c_h.dehomogenize_y();
        let a = self.a.dehomogenize_y();
        let dc = c.derivative();
        let n = c.deg0().max(1);
        let v: Vec<UPoly> = (0..n)
            .map(|k| UPoly::new(vec![-&a.coeff(k), dc.coeff(k)]))
            .collect();
        let mut poly = resultant_lambda(&c, &v).monic();
        if c.deg0() < c_h.degree() {
            let cs = self
                .cs_exact(&[FieldElem::one(), FieldElem::zero()])
                .expect("nonzero derivative at a simple root");
            poly = &poly * &UPoly::linear_root(&cs);
        }
        Ok(poly)
    }

    pub fn analyze(&self) -> FoliationAnalysis {
        let (factors, ftype) = self.divisor_analysis();
        let convex = factors.iter().all(|f| f.kind == FactorKind::Fixed);
        FoliationAnalysis {
            foliation: self.clone(),
            tangent_cone: self.tangent_cone(),
            d_divisor: self.d_divisor(),
            factors,
            ftype,
            infinity_sings: self.infinity_singularities(),
            cs_polynomial: self.cs_polynomial().ok(),
            convex,
        }
    }
}

/// Points `[x:y]` of the lines of a square-free homogeneous factor.
pub fn line_points(f: &HPoly) -> Vec<Direction> {
    if f.degree() == 1 {
        // a x + b y = 0 contains (b, -a)
        let (a, b) = (f.coeff(0), f.coeff(1));
        let p = if b.is_zero() {
            [FieldElem::zero(), FieldElem::one()]
        } else {
            [FieldElem::one(), -&a.checked_div(b).expect("nonzero")]
        };
        return vec![Direction::Exact(p)];
    }
    let mut out: Vec<Direction> = (0..f.x_power()).map(|_| Direction::Exact([FieldElem::zero(), FieldElem::one()])).collect();
    let mut u = f.dehomogenize_x();
    if u.deg0() == 0 {
        return out;
    }
    // peel off roots that lie in K, verified exactly
    for z in roots(&u.to_complex(), 1e-14).expect("root finding on an exact polynomial") {
        if let Some(r) = snap(z).into_iter().find(|r| u.eval(r).is_zero()) {
            u = u.exact_div(&UPoly::linear_root(&r)).expect("exact root");
            out.push(Direction::Exact([FieldElem::one(), r]));
        }
    }
    if u.deg0() >= 1 {
        let rest = HPoly::homogenize(&u, u.deg0());
        out.extend(projective_roots(&rest).into_iter().map(|point| Direction::Numeric { factor: rest.clone(), point }));
    }
    out
}

/// Candidate elements of `K` near `z` with small denominators: each of the
/// real and imaginary parts is tried as `a` and as `a·√3`.
fn snap(z: Complex64) -> Vec<FieldElem> {
    fn small(v: f64) -> Option<Rational> {
        if v.abs() < 1e-12 {
            return Some(Rational::zero());
        }
        let q = Ratio::<i64>::approximate_float(v)?;
        let ok = *q.denom() <= 1000 && (*q.numer() as f64 / *q.denom() as f64 - v).abs() < 1e-9 * (1.0 + v.abs());
        ok.then(|| Rational::new((*q.numer()).into(), (*q.denom()).into()))
    }
    let s3 = 3f64.sqrt();
    let zero = Rational::zero();
    let re = [(small(z.re), false), (small(z.re / s3), true)];
    let im = [(small(z.im), false), (small(z.im / s3), true)];
    let mut out = Vec::new();
    for (a, ra) in &re {
        for (b, rb) in &im {
            let (Some(a), Some(b)) = (a, b) else { continue };
            let mut c = [zero.clone(), zero.clone(), zero.clone(), zero.clone()];
            c[if *ra { 2 } else { 0 }] = a.clone();
            c[if *rb { 3 } else { 1 }] = b.clone();
            let [c0, c1, c2, c3] = c;
            out.push(FieldElem::new(c0, c1, c2, c3));
        }
    }
    out
}

/// Numeric roots `[x:y]` of a homogeneous polynomial, with multiplicity.
pub fn projective_roots(f: &HPoly) -> Vec<[Complex64; 2]> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let u = f.dehomogenize_x();
    let mut out: Vec<[Complex64; 2]> = vec![[zero, one]; f.x_power()];
    if u.deg0() >= 1 {
        let rs = roots(&u.to_complex(), 1e-14).expect("root finding on an exact polynomial");
        out.extend(rs.into_iter().map(|z| [one, z]));
    }
    out
}

/// Sum over the singular points of a complex-valued index, for checks.
pub fn cs_sum(sings: &[InfinitySingularity]) -> Option<Complex64> {
    sings.iter().map(|s| s.cs.as_ref().map(Index::to_complex)).sum()
}
