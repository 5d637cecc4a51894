//! Aberth-Ehrlich simultaneous root finding.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const MAX_ITER: usize = 200;
const RESTARTS: u64 = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("no convergence within {0} iterations")]
    NoConvergence(usize),
    #[error("polynomial has degree zero or a negligible leading coefficient")]
    Degenerate,
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `Σ |c_k| |z|^k`, the natural scale for the residual at `z`.
pub fn residual_scale(c: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

/// Relative backward error of `z` as a root.
pub fn backward_error(c: &[Complex64], z: Complex64) -> f64 {
    horner(c, z).0.norm() / residual_scale(c, z).max(f64::MIN_POSITIVE)
}

/// All complex roots, with multiplicity, of `Σ c_k z^k`.
///
/// Leading coefficients below `tol` relative to the largest one are an error;
/// exact zeros at either end are stripped first.
pub fn roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>, RootError> {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(RootError::Degenerate);
    }
    let mut c: Vec<Complex64> = coeffs.iter().map(|a| a / max).collect();
    while c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 || c[c.len() - 1].norm() < tol {
        return Err(RootError::Degenerate);
    }
    let zeros = c.iter().take_while(|a| a.norm() == 0.0).count();
    let c = c.split_off(zeros);
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if c.len() > 1 {
        out.extend(aberth(&c)?);
    }
    Ok(out)
}

fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    let n = c.len() - 1;
    let lc = c[n];
    if n == 1 {
        return Ok(vec![-c[0] / lc]);
    }
    let radius = (c[0] / lc).norm().powf(1.0 / n as f64).max(1e-3);
    for attempt in 0..RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + attempt);
        let rad = radius * (1.0 + 0.3 * attempt as f64);
        let offset: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let jitter: f64 = rng.random_range(0.9..1.1);
                let theta = offset + std::f64::consts::TAU * k as f64 / n as f64;
                Complex64::from_polar(rad * jitter, theta)
            })
            .collect();
        let mut best = f64::INFINITY;
        let mut stall = 0;
        for _ in 0..MAX_ITER {
            let mut max_step: f64 = 0.0;
            for i in 0..n {
                let (p, dp) = horner(c, z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
                let w = ratio / (1.0 - ratio * s);
                if w.is_finite() {
                    z[i] -= w;
                    max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
                }
            }
            if max_step < 1e-15 {
                break;
            }
            if max_step < best * 0.999 {
                best = max_step;
                stall = 0;
            } else {
                stall += 1;
                if stall > 40 {
                    break;
                }
            }
        }
        let ok = z.iter().all(|&r| r.is_finite() && backward_error(c, r) < 1e-9);
        if ok {
            polish(c, &mut z);
            return Ok(z);
        }
    }
    Err(RootError::NoConvergence(MAX_ITER))
}

/// A few Newton steps per root, kept only when they reduce the residual.
fn polish(c: &[Complex64], z: &mut [Complex64]) {
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(c, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *r - p / dp;
            if horner(c, cand).0.norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
}

/// Groups roots closer than `radius` into clusters with multiplicity.
pub fn cluster(roots: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        match out.iter_mut().find(|(c, _)| (c - r).norm() <= radius * (1.0 + c.norm())) {
            Some((c, m)) => {
                *c = (*c * *m as f64 + r) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => out.push((r, 1)),
        }
    }
    out
}
