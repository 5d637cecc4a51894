//! Constancy of the β function along the dual coordinate.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::{annulus_point, cjson, median, roots, sample_rng, verdict, NumericVerdict, OracleError};
use crate::exec::Exec;
use crate::foliation::HomFoliation;

const ROOT_TOL: f64 = 1e-14;
/// Relative separation below which a fiber is treated as non-simple.
const SEPARATION: f64 = 1e-2;
const ATTEMPTS_PER_SAMPLE: usize = 3;
const NONFLAT_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct BetaEvaluation {
    pub p: Complex64,
    pub fiber: Vec<Complex64>,
    pub lambdas: Vec<Complex64>,
    /// Derivatives of the `lambdas` with respect to `p`.
    pub dlambdas: Vec<Complex64>,
    pub beta: Complex64,
    /// Largest relative residual of the fiber equation.
    pub residual: f64,
}

/// Cyclic sum of `-λ_i' / ((λ_i - λ_j)(λ_i - λ_k))` over one triple.
fn triple_term(l: [Complex64; 3], dl: [Complex64; 3]) -> Complex64 {
    (0..3)
        .map(|a| {
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            -dl[a] / ((l[a] - l[b]) * (l[a] - l[c]))
        })
        .sum()
}

/// `Σ_{i<j<k} β_ijk` from the slopes `λ_i` and their derivatives.
pub fn beta_sum(lambdas: &[Complex64], dlambdas: &[Complex64]) -> Complex64 {
    let n = lambdas.len();
    let mut beta = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                beta += triple_term([lambdas[i], lambdas[j], lambdas[k]], [dlambdas[i], dlambdas[j], dlambdas[k]]);
            }
        }
    }
    beta
}

pub fn beta_at(h: &HomFoliation, p: Complex64) -> Result<BetaEvaluation, OracleError> {
    let d = h.degree();
    if d < 3 {
        return Err(OracleError::TooFewLeaves(d));
    }
    let a = h.a().dehomogenize_x().to_complex();
    let b = h.b().dehomogenize_x().to_complex();
    let zero = Complex64::new(0.0, 0.0);
    let coeffs: Vec<Complex64> =
        (0..=d).map(|k| a.get(k).copied().unwrap_or(zero) + p * b.get(k).copied().unwrap_or(zero)).collect();
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if coeffs[d].norm() < 1e-6 * max {
        // a fiber point escapes to infinity
        return Err(OracleError::NearCriticalValue(p));
    }
    let fiber = roots(&coeffs, ROOT_TOL)?;
    let size = 1.0 + fiber.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for (i, zi) in fiber.iter().enumerate() {
        if fiber[i + 1..].iter().any(|zj| (zi - zj).norm() < SEPARATION * size)
            || (p - zi).norm() < SEPARATION * (1.0 + p.norm())
        {
            return Err(OracleError::NearCriticalValue(p));
        }
    }
    let residual = fiber.iter().map(|&z| roots::backward_error(&coeffs, z)).fold(0.0, f64::max);

    let one = Complex64::new(1.0, 0.0);
    let dd = h.d_divisor();
    let mut lambdas = Vec::with_capacity(d);
    let mut dlambdas = Vec::with_capacity(d);
    for &z in &fiber {
        let bz = h.b().eval_complex(one, z);
        let dz = dd.eval_complex(one, z);
        // 1/G'(z) through G' = D(1,z) / (d B(1,z)^2)
        let dp = d as f64 * bz * bz / dz;
        let w = p - z;
        lambdas.push(1.0 / w);
        dlambdas.push(-(1.0 - dp) / (w * w));
    }
    let beta = beta_sum(&lambdas, &dlambdas);
    Ok(BetaEvaluation { p, fiber, lambdas, dlambdas, beta, residual })
}

#[derive(Debug, Clone)]
pub struct BetaReport {
    pub samples: Vec<BetaEvaluation>,
    pub median: Complex64,
    pub spread: f64,
    /// `1 + |median|`.
    pub scale: f64,
    pub flat: bool,
    pub verdict: NumericVerdict,
    pub seed: u64,
    pub tol: f64,
}

impl BetaReport {
    pub fn to_json(&self) -> Value {
        json!({
            "method": "beta",
            "samples": self.samples.iter().map(|s| json!({"p": cjson(s.p), "value": cjson(s.beta)})).collect::<Vec<_>>(),
            "median": cjson(self.median),
            "spread": self.spread,
            "scale": self.scale,
            "flat": self.flat,
            "verdict": self.verdict,
            "seed": self.seed,
            "tol": self.tol,
        })
    }
}

/// Samples β at `n` points of the annulus `0.5 ≤ |p| ≤ 2`. Sample `i`
/// draws from its own substream, so results do not depend on `exec`.
pub fn beta_flatness_test(
    h: &HomFoliation,
    n: usize,
    seed: u64,
    tol: f64,
    exec: Exec,
) -> Result<BetaReport, OracleError> {
    let results = exec.map_range(n, |i| {
        let mut rng = sample_rng(seed, i);
        let mut last = OracleError::ResamplingExhausted(ATTEMPTS_PER_SAMPLE);
        for _ in 0..ATTEMPTS_PER_SAMPLE {
            match beta_at(h, annulus_point(&mut rng, 0.5, 2.0)) {
                Ok(e) => return Ok(e),
                Err(e @ (OracleError::NearCriticalValue(_) | OracleError::Root(_))) => last = e,
                Err(e) => return Err(e),
            }
        }
        Err(last)
    });
    let samples = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let values: Vec<Complex64> = samples.iter().map(|s| s.beta).collect();
    let median = if values.is_empty() { Complex64::new(0.0, 0.0) } else { median(&values) };
    let spread = values.iter().map(|v| (v - median).norm()).fold(0.0, f64::max);
    let scale = 1.0 + median.norm();
    Ok(BetaReport {
        samples,
        median,
        spread,
        scale,
        flat: spread < tol * scale,
        verdict: verdict(spread / scale, tol, NONFLAT_TOL),
        seed,
        tol,
    })
}
