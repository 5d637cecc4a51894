//! Pointwise Blaschke curvature of an implicit web through the η system.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::{annulus_point, cjson, roots, sample_rng, verdict, ImplicitWeb, NumericVerdict, OracleError};
use crate::exec::Exec;

pub const DEFAULT_STEP: f64 = 1e-4;
const ROOT_TOL: f64 = 1e-14;
const SEPARATION: f64 = 1e-3;
const FLAT_TOL: f64 = 1e-6;
const NONFLAT_TOL: f64 = 1e-3;
const RICHARDSON_TOL: f64 = 1e-3;
const ATTEMPTS_PER_POINT: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSample {
    pub point: (Complex64, Complex64),
    /// `η = g dp + h dq` at the point.
    pub eta: (Complex64, Complex64),
    pub k: Complex64,
    /// `|k| / (1 + |g| + |h|)`.
    pub scaled: f64,
    /// Worst relative least-squares residual over the stencil.
    pub residual: f64,
}

struct Eta {
    g: Complex64,
    h: Complex64,
    residual: f64,
}

/// Least-squares solution of `rows · (g, h) = rhs` through the normal
/// equations.
fn lstsq(rows: &[[Complex64; 2]], rhs: &[Complex64]) -> Option<([Complex64; 2], f64)> {
    let zero = Complex64::new(0.0, 0.0);
    let (mut m, mut v) = ([[zero; 2]; 2], [zero; 2]);
    for (r, b) in rows.iter().zip(rhs) {
        for i in 0..2 {
            v[i] += r[i].conj() * b;
            for j in 0..2 {
                m[i][j] += r[i].conj() * r[j];
            }
        }
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let norm = m[0][0].norm() + m[1][1].norm();
    if det.norm() <= 1e-24 * norm * norm {
        return None;
    }
    let x = [(m[1][1] * v[0] - m[0][1] * v[1]) / det, (m[0][0] * v[1] - m[1][0] * v[0]) / det];
    let (mut res, mut size) = (0.0f64, 0.0f64);
    for (r, b) in rows.iter().zip(rhs) {
        let ax = r[0] * x[0] + r[1] * x[1];
        res = res.max((ax - b).norm());
        size = size.max(b.norm() + r[0].norm() * x[0].norm() + r[1].norm() * x[1].norm());
    }
    Some((x, if size == 0.0 { 0.0 } else { res / size }))
}

fn eta_at(w: &ImplicitWeb, p: Complex64, q: Complex64) -> Result<Eta, OracleError> {
    let k = w.degree_in_x;
    if k < 3 {
        return Err(OracleError::TooFewLeaves(k));
    }
    let coeffs = w.x_coefficients(p, q);
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if coeffs[k].norm() < 1e-6 * max {
        return Err(OracleError::OnDiscriminant(p, q));
    }
    let xs = roots(&coeffs, ROOT_TOL)?;
    let size = 1.0 + xs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for (i, a) in xs.iter().enumerate() {
        if xs[i + 1..].iter().any(|b| (a - b).norm() < SEPARATION * size) {
            return Err(OracleError::OnDiscriminant(p, q));
        }
    }
    // implicit derivatives of each slope
    let (mut xp, mut xq) = (Vec::with_capacity(k), Vec::with_capacity(k));
    for &x in &xs {
        let [_, fp, fq, fx] = w.eval_with_partials(p, q, x);
        xp.push(-fp / fx);
        xq.push(-fq / fx);
    }
    let zero = Complex64::new(0.0, 0.0);
    let (mut g, mut h, mut residual) = (zero, zero, 0.0f64);
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                // d(u ω_r) = η ∧ u ω_r with ω_r = dq - x_r dp and u = x_t - x_s
                let mut rows = Vec::with_capacity(3);
                let mut rhs = Vec::with_capacity(3);
                for (r, s, t) in [(i, j, l), (j, l, i), (l, i, j)] {
                    let u = xs[t] - xs[s];
                    let (up, uq) = (xp[t] - xp[s], xq[t] - xq[s]);
                    rows.push([u, u * xs[r]]);
                    rhs.push(up + uq * xs[r] + u * xq[r]);
                }
                let ([gi, hi], res) = lstsq(&rows, &rhs).ok_or(OracleError::OnDiscriminant(p, q))?;
                g += gi;
                h += hi;
                residual = residual.max(res);
            }
        }
    }
    Ok(Eta { g, h, residual })
}

/// `∂_p h - ∂_q g` by central differences with step `s`.
fn curl(w: &ImplicitWeb, p: Complex64, q: Complex64, s: f64) -> Result<(Complex64, f64), OracleError> {
    let e = Complex64::new(s, 0.0);
    let pp = eta_at(w, p + e, q)?;
    let pm = eta_at(w, p - e, q)?;
    let qp = eta_at(w, p, q + e)?;
    let qm = eta_at(w, p, q - e)?;
    let k = (pp.h - pm.h) / (2.0 * s) - (qp.g - qm.g) / (2.0 * s);
    let res = [pp.residual, pm.residual, qp.residual, qm.residual].into_iter().fold(0.0, f64::max);
    Ok((k, res))
}

pub fn web_curvature_at(w: &ImplicitWeb, p: Complex64, q: Complex64, step: f64) -> Result<CurvatureSample, OracleError> {
    let centre = eta_at(w, p, q)?;
    let (k1, r1) = curl(w, p, q, step)?;
    let (k2, r2) = curl(w, p, q, step / 2.0)?;
    let scale = 1.0 + centre.g.norm() + centre.h.norm();
    // halving the step must not move the estimate beyond the flat noise floor
    if (k1 - k2).norm() > RICHARDSON_TOL * k2.norm().max(FLAT_TOL * scale) {
        return Err(OracleError::IllConditionedStencil(p, q));
    }
    let k = (4.0 * k2 - k1) / 3.0;
    Ok(CurvatureSample {
        point: (p, q),
        eta: (centre.g, centre.h),
        k,
        scaled: k.norm() / scale,
        residual: centre.residual.max(r1).max(r2),
    })
}

#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub samples: Vec<CurvatureSample>,
    /// Largest scaled curvature.
    pub spread: f64,
    pub verdict: NumericVerdict,
    pub seed: u64,
    pub step: f64,
}

impl CurvatureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "method": "eta",
            "samples": self.samples.iter().map(|s| json!({
                "p": cjson(s.point.0),
                "q": cjson(s.point.1),
                "value": cjson(s.k),
                "scaled": s.scaled,
            })).collect::<Vec<_>>(),
            "spread": self.spread,
            "verdict": self.verdict,
            "seed": self.seed,
            "step": self.step,
            "tol": FLAT_TOL,
        })
    }
}

/// Curvature at `n` random points with `0.5 ≤ |p|, |q| ≤ 2`; a point on or
/// near the discriminant is redrawn from the same substream.
pub fn curvature_test(w: &ImplicitWeb, n: usize, seed: u64, step: f64, exec: Exec) -> Result<CurvatureReport, OracleError> {
    let results = exec.map_range(n, |i| {
        let mut rng = sample_rng(seed, i);
        let mut last = OracleError::ResamplingExhausted(ATTEMPTS_PER_POINT);
        for _ in 0..ATTEMPTS_PER_POINT {
            let p = annulus_point(&mut rng, 0.5, 2.0);
            let q = annulus_point(&mut rng, 0.5, 2.0);
            match web_curvature_at(w, p, q, step) {
                Ok(s) => return Ok(s),
                Err(e @ OracleError::TooFewLeaves(_)) => return Err(e),
                Err(e) => last = e,
            }
        }
        Err(last)
    });
    let samples = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let spread = samples.iter().map(|s| s.scaled).fold(0.0, f64::max);
    Ok(CurvatureReport { verdict: verdict(spread, FLAT_TOL, NONFLAT_TOL), samples, spread, seed, step })
}
