//! Exact flatness criteria for the dual web of a homogeneous foliation.
//!
//! Flatness reduces to conditions along the transverse inflection lines. A
//! simple line is tested by the barycentre condition in the quotient ring
//! `K[z]/(f(1,z))`, a line of maximal order `d-1` by the vanishing of `dω`
//! along it.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::exec::Exec;
use crate::foliation::{projective_roots, DivisorFactor, FactorKind, FoliationType, HomFoliation};
use crate::models::{table1, ModelId};
use crate::numfield::FieldElem;
use crate::poly::{HPoly, QuotElem, SplitEvent, UPoly, Var};

/// Number of shears tried before giving up on a chart.
pub const MAX_SHEARS: i64 = 8;

/// Relative tolerance for grouping critical values of the Gauss map.
pub const FIBER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatnessError {
    #[error("factor has multiplicity {found}, expected {expected}")]
    WrongMultiplicity { expected: usize, found: usize },
    #[error("factor is not transverse")]
    NotTransverse,
    #[error("another critical point shares the critical value")]
    HypothesisViolated,
    #[error("no admissible chart after {MAX_SHEARS} shears")]
    ChartExhausted,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("foliation has degree {0}, expected 3")]
    NotDegree3(usize),
    #[error("foliation is not flat")]
    NotFlat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Barycentre,
    Divergence,
    NoCriterion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisCheck {
    ExactAutomatic,
    NumericPassed,
    NumericFailed,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed,
    Failed,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCertificate {
    pub factor: DivisorFactor,
    pub criterion: Criterion,
    pub hypothesis: HypothesisCheck,
    pub outcome: CheckOutcome,
    /// Nonzero remainder or quotient-ring value demonstrating a failure, or
    /// the reason a check could not be completed.
    pub witness: Option<String>,
}

impl LineCertificate {
    pub fn passed(&self) -> bool {
        self.outcome == CheckOutcome::Passed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatnessStatus {
    Flat,
    NotFlat,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessVerdict {
    pub status: FlatnessStatus,
    pub certificates: Vec<LineCertificate>,
    pub reason: Option<String>,
}

fn require_transverse(f: &DivisorFactor, k: usize) -> Result<(), FlatnessError> {
    if f.kind != FactorKind::Transverse {
        return Err(FlatnessError::NotTransverse);
    }
    if f.multiplicity != k {
        return Err(FlatnessError::WrongMultiplicity { expected: k, found: f.multiplicity });
    }
    Ok(())
}

/// `dω = (B_x - A_y) dx∧dy` must vanish on every line of `f`.
pub fn maximal_line_check(h: &HomFoliation, f: &DivisorFactor) -> Result<LineCertificate, FlatnessError> {
    require_transverse(f, h.degree() - 1)?;
    let dw = h.b().diff(Var::X).checked_sub(&h.a().diff(Var::Y)).expect("equal degrees");
    let (outcome, witness) = match dw.exact_div(&f.poly) {
        Some(_) => (CheckOutcome::Passed, None),
        None => {
            let rem = dw.dehomogenize_x().rem(&f.poly.dehomogenize_x());
            let w = if f.poly.x_power() > 0 && rem.is_zero() {
                format!("x does not divide {dw}")
            } else {
                format!("remainder {rem}")
            };
            (CheckOutcome::Failed, Some(w))
        }
    };
    Ok(LineCertificate {
        factor: f.clone(),
        criterion: Criterion::Divergence,
        hypothesis: HypothesisCheck::NotApplicable,
        outcome,
        witness,
    })
}

/// Whether each line of `f` is the only critical point of the Gauss map in
/// its fiber.
pub fn fiber_hypothesis_check(h: &HomFoliation, f: &DivisorFactor) -> HypothesisCheck {
    if h.degree() <= 3 {
        return HypothesisCheck::ExactAutomatic;
    }
    let dsf = h.d_divisor().squarefree().into_iter().fold(HPoly::constant(FieldElem::one()), |acc, (g, _)| &acc * &g);
    let crit = projective_roots(&dsf);
    let lines = projective_roots(&f.poly);
    let gv = |p: [Complex64; 2]| h.gauss_projective(p);
    for l in &lines {
        let v = gv(*l);
        for c in &crit {
            if proj_close(*c, *l, 1e-6) {
                continue;
            }
            if proj_close(gv(*c), v, FIBER_TOL) {
                return HypothesisCheck::NumericFailed;
            }
        }
    }
    HypothesisCheck::NumericPassed
}

fn proj_close(a: [Complex64; 2], b: [Complex64; 2], tol: f64) -> bool {
    let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
    let nb = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
    (a[0] * b[1] - a[1] * b[0]).norm() <= tol * na * nb
}

enum Branches {
    Done { passed: bool, witness: Option<String> },
    NeedsShear,
}

/// Synthetic division of `Σ c_k y^k` by `y - r`: quotient and remainder.
fn synthetic_div(c: &[QuotElem], r: &QuotElem) -> (Vec<QuotElem>, QuotElem) {
    let n = c.len() - 1;
    let mut q = vec![c[n].clone(); n];
    for k in (1..n).rev() {
        q[k - 1] = c[k].add(&q[k].mul(r));
    }
    let rem = if n == 0 { c[0].clone() } else { c[0].add(&q[0].mul(r)) };
    (q, rem)
}

fn horner(c: &[QuotElem], r: &QuotElem) -> QuotElem {
    let zero = QuotElem::constant(FieldElem::zero(), r.modulus());
    c.iter().rev().fold(zero, |acc, a| acc.mul(r).add(a))
}

fn barycentre(h: &HomFoliation, m0: UPoly) -> Result<Branches, FlatnessError> {
    let d = h.degree();
    let a1 = h.a().dehomogenize_x();
    let b1 = h.b().dehomogenize_x();
    let c1 = h.tangent_cone().dehomogenize_x();
    let mut stack = vec![m0];
    let mut passed = true;
    let mut witness = None;
    while let Some(m) = stack.pop() {
        let m = Arc::new(m);
        let r = QuotElem::root(&m);
        let ar = QuotElem::eval_poly(&a1, &r);
        let br = QuotElem::eval_poly(&b1, &r);
        let binv = match br.inv() {
            Ok(v) => v,
            Err(SplitEvent { factor }) => {
                if factor.deg0() == m.deg0() {
                    return Ok(Branches::NeedsShear);
                }
                let other = m.exact_div(&factor).expect("factor divides the modulus");
                stack.push(factor);
                stack.push(other);
                continue;
            }
        };
        let u = ar.mul(&binv).neg();
        let n: Vec<QuotElem> = (0..=d)
            .map(|k| br.scale(&h.a().coeffs()[k]).sub(&ar.scale(&h.b().coeffs()[k])))
            .collect();
        let (q1, rem1) = synthetic_div(&n, &r);
        let (p, rem2) = synthetic_div(&q1, &r);
        if !rem1.is_zero() || !rem2.is_zero() {
            return Err(FlatnessError::Inconsistent("line is not a double root of the fiber numerator".into()));
        }
        let dp: Vec<QuotElem> = p.iter().enumerate().skip(1).map(|(k, c)| c.scale(&FieldElem::from_int(k as i64))).collect();
        let pr = horner(&p, &r);
        let dpr = if dp.is_empty() { QuotElem::constant(FieldElem::zero(), &m) } else { horner(&dp, &r) };
        let crit = pr.scale(&FieldElem::from_int(d as i64 - 2)).add(&u.sub(&r).mul(&dpr));
        let ok = crit.is_zero();
        if d == 3 {
            let fixed = QuotElem::eval_poly(&c1, &u).is_zero();
            if fixed != ok {
                return Err(FlatnessError::Inconsistent("barycentre and fixed-point formulations disagree".into()));
            }
        }
        if !ok {
            passed = false;
            witness = Some(format!("{} mod {}", crit.rep(), m));
        }
    }
    Ok(Branches::Done { passed, witness })
}

/// Barycentre criterion on a simple transverse factor.
pub fn simple_line_check(h: &HomFoliation, f: &DivisorFactor) -> Result<LineCertificate, FlatnessError> {
    require_transverse(f, 1)?;
    let hypothesis = fiber_hypothesis_check(h, f);
    if hypothesis == HypothesisCheck::NumericFailed {
        return Err(FlatnessError::HypothesisViolated);
    }
    let one = FieldElem::one();
    let zero = FieldElem::zero();
    for t in 0..=MAX_SHEARS {
        let (hh, ff) = if t == 0 {
            (h.clone(), f.poly.clone())
        } else {
            let tt = FieldElem::from_int(t);
            (h.shear(t), f.poly.compose_linear([&one, &tt, &zero, &one]))
        };
        if ff.x_power() > 0 {
            continue;
        }
        match barycentre(&hh, ff.dehomogenize_x().monic())? {
            Branches::NeedsShear => continue,
            Branches::Done { passed, witness } => {
                return Ok(LineCertificate {
                    factor: f.clone(),
                    criterion: Criterion::Barycentre,
                    hypothesis,
                    outcome: if passed { CheckOutcome::Passed } else { CheckOutcome::Failed },
                    witness,
                });
            }
        }
    }
    Err(FlatnessError::ChartExhausted)
}

fn undecided(f: &DivisorFactor, criterion: Criterion, hypothesis: HypothesisCheck, why: String) -> LineCertificate {
    LineCertificate { factor: f.clone(), criterion, hypothesis, outcome: CheckOutcome::Undecided, witness: Some(why) }
}

fn certify(h: &HomFoliation, f: &DivisorFactor) -> LineCertificate {
    let d = h.degree();
    if f.multiplicity == 1 {
        match simple_line_check(h, f) {
            Ok(c) => c,
            Err(FlatnessError::HypothesisViolated) => undecided(
                f,
                Criterion::Barycentre,
                HypothesisCheck::NumericFailed,
                "another critical point shares the critical value".into(),
            ),
            Err(e) => undecided(f, Criterion::Barycentre, fiber_hypothesis_check(h, f), e.to_string()),
        }
    } else if f.multiplicity == d - 1 {
        maximal_line_check(h, f).expect("multiplicity checked")
    } else {
        undecided(
            f,
            Criterion::NoCriterion,
            HypothesisCheck::NotApplicable,
            format!("no criterion for inflection order {}", f.multiplicity),
        )
    }
}

pub fn flatness_decision(h: &HomFoliation) -> FlatnessVerdict {
    flatness_decision_with(h, Exec::Sequential)
}

/// As [`flatness_decision`], checking the transverse factors with `exec`.
pub fn flatness_decision_with(h: &HomFoliation, exec: Exec) -> FlatnessVerdict {
    if h.degree() <= 2 {
        return FlatnessVerdict {
            status: FlatnessStatus::Flat,
            certificates: Vec::new(),
            reason: Some("below curvature threshold".into()),
        };
    }
    let (factors, _) = h.divisor_analysis();
    let transverse: Vec<DivisorFactor> = factors.into_iter().filter(|f| f.kind == FactorKind::Transverse).collect();
    if transverse.is_empty() {
        return FlatnessVerdict {
            status: FlatnessStatus::Flat,
            certificates: Vec::new(),
            reason: Some("convex".into()),
        };
    }
    let certificates = exec.map(&transverse, |f| certify(h, f));
    let status = if certificates.iter().any(|c| c.outcome == CheckOutcome::Failed) {
        FlatnessStatus::NotFlat
    } else if certificates.iter().any(|c| c.outcome == CheckOutcome::Undecided) {
        FlatnessStatus::Undecided
    } else {
        FlatnessStatus::Flat
    };
    let reason = match status {
        FlatnessStatus::Undecided => certificates.iter().find_map(|c| {
            (c.outcome == CheckOutcome::Undecided).then(|| c.witness.clone().unwrap_or_default())
        }),
        _ => None,
    };
    FlatnessVerdict { status, certificates, reason }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelMatch {
    Model(ModelId),
    NoMatch,
}

/// Type and monic Camacho-Sad polynomial, the data compared to the table.
pub fn fingerprint(h: &HomFoliation) -> (FoliationType, Option<UPoly>) {
    (h.divisor_analysis().1, h.cs_polynomial().ok())
}

/// Identifies a flat degree-3 foliation with one of the eleven models.
pub fn classify_degree3(h: &HomFoliation) -> Result<ModelMatch, FlatnessError> {
    if h.degree() != 3 {
        return Err(FlatnessError::NotDegree3(h.degree()));
    }
    if flatness_decision(h).status != FlatnessStatus::Flat {
        return Err(FlatnessError::NotFlat);
    }
    let (ty, cs) = fingerprint(h);
    let Some(cs) = cs else {
        return Ok(ModelMatch::NoMatch);
    };
    Ok(table1()
        .into_iter()
        .find(|row| row.ftype == ty && row.cs == cs)
        .map_or(ModelMatch::NoMatch, |row| ModelMatch::Model(row.id)))
}
