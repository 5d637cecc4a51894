//! Floating-point cross-checks, independent of the exact engine.

pub mod beta;
pub mod curvature;
pub mod general;
pub mod legendre;
pub mod roots;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::Serialize;
use thiserror::Error;

pub use beta::{beta_at, beta_flatness_test, BetaEvaluation, BetaReport};
pub use curvature::{curvature_test, web_curvature_at, CurvatureReport, CurvatureSample};
pub use general::{general_to_homogeneous, DegenerationError, GeneralFoliation};
pub use legendre::{legendre_general, legendre_implicit, ImplicitWeb, TriPoly};
pub use roots::{roots, RootError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("sample {0} is too close to a critical value of the Gauss map")]
    NearCriticalValue(Complex64),
    #[error("point ({0}, {1}) is too close to the discriminant")]
    OnDiscriminant(Complex64, Complex64),
    #[error("finite differences disagree under step halving at ({0}, {1})")]
    IllConditionedStencil(Complex64, Complex64),
    #[error("need at least three leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("no valid sample point after {0} attempts")]
    ResamplingExhausted(usize),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Oracle verdict. Floating point corroborates, it never certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NumericVerdict {
    Flat,
    NotFlat,
    Inconclusive,
}

/// Thresholds shared by the two methods: below `flat_tol` is flat, above
/// `nonflat_tol` is not, anything between is inconclusive.
pub(crate) fn verdict(value: f64, flat_tol: f64, nonflat_tol: f64) -> NumericVerdict {
    if value < flat_tol {
        NumericVerdict::Flat
    } else if value > nonflat_tol {
        NumericVerdict::NotFlat
    } else {
        NumericVerdict::Inconclusive
    }
}

/// Reproducible generator for sample `index` of a run seeded by `seed`.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Uniform point of the annulus `lo ≤ |z| ≤ hi`.
pub(crate) fn annulus_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    let r = rng.random_range(lo..=hi);
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

pub(crate) fn median(values: &[Complex64]) -> Complex64 {
    let mid = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        let n = v.len();
        if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) }
    };
    Complex64::new(mid(values.iter().map(|z| z.re).collect()), mid(values.iter().map(|z| z.im).collect()))
}

/// `[re, im]`, the JSON form of a complex number.
pub(crate) fn cjson(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}
