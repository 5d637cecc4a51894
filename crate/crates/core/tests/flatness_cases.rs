mod common;

use flatweb::flatness::{
    classify_degree3, fiber_hypothesis_check, flatness_decision, maximal_line_check, simple_line_check, CheckOutcome,
    Criterion, FlatnessError, FlatnessStatus, HypothesisCheck, ModelMatch,
};
use flatweb::foliation::{DivisorFactor, FactorKind, HomFoliation};
use flatweb::models::{catalog_model, omega2d, omega5d, ModelId};
use flatweb::numfield::FieldElem;
use flatweb::parser::{parse_oneform, parse_polynomial};
use flatweb::poly::HPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hf(s: &str) -> HomFoliation {
    let (a, b) = parse_oneform(s).unwrap();
    HomFoliation::new(a, b).unwrap()
}

fn transverse(h: &HomFoliation, multiplicity: usize) -> Vec<DivisorFactor> {
    h.divisor_analysis()
        .0
        .into_iter()
        .filter(|f| f.kind == FactorKind::Transverse && f.multiplicity == multiplicity)
        .collect()
}

#[test]
fn exact_form_passes_maximal_check() {
    let h = hf("x^3*dx - y^3*dy");
    for f in transverse(&h, 2) {
        assert!(maximal_line_check(&h, &f).unwrap().passed());
    }
}

#[test]
fn omega4_double_line_passes() {
    let h = catalog_model("omega4").unwrap();
    let f = transverse(&h, 2);
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].poly, parse_polynomial("x + y").unwrap());
    let c = maximal_line_check(&h, &f[0]).unwrap();
    assert_eq!((c.criterion, c.outcome), (Criterion::Divergence, CheckOutcome::Passed));
}

#[test]
fn radial_transverse_model_fails_divergence() {
    // -(x^d + y^d) dx + x^d dy: type 1·R(d-1) + 1·T(d-1), failing on y = 0
    for d in [3usize, 4, 5] {
        let h = hf(&format!("-(x^{d} + y^{d})*dx + x^{d}*dy"));
        let f = transverse(&h, d - 1);
        assert_eq!(f.len(), 1, "d = {d}");
        assert_eq!(f[0].poly, HPoly::y());
        let c = maximal_line_check(&h, &f[0]).unwrap();
        assert_eq!(c.outcome, CheckOutcome::Failed);
        // B_x - A_y = d x^(d-1) + ... leaves the remainder d on y = 0
        assert_eq!(c.witness.unwrap(), format!("remainder {d}"));
        assert_eq!(flatness_decision(&h).status, FlatnessStatus::NotFlat);
    }
}

#[test]
fn wrong_multiplicity_rejected() {
    let h = catalog_model("omega7").unwrap();
    let f = &transverse(&h, 1)[0];
    assert!(matches!(maximal_line_check(&h, f), Err(FlatnessError::WrongMultiplicity { .. })));
}

#[test]
fn omega7_and_its_perturbation() {
    let h = catalog_model("omega7").unwrap();
    for f in transverse(&h, 1) {
        let c = simple_line_check(&h, &f).unwrap();
        assert_eq!((c.criterion, c.hypothesis, c.outcome), (Criterion::Barycentre, HypothesisCheck::ExactAutomatic, CheckOutcome::Passed));
    }
    let w = hf("y^3*dx + (-x^3 + 3*x*y^2 + y^3)*dy");
    let outcomes: Vec<CheckOutcome> = transverse(&w, 1).iter().map(|f| simple_line_check(&w, f).unwrap().outcome).collect();
    assert!(outcomes.contains(&CheckOutcome::Failed));
}

#[test]
fn omega9_single_transverse_line() {
    let h = catalog_model("omega9").unwrap();
    let f = transverse(&h, 1);
    assert_eq!(f.len(), 1);
    assert!(simple_line_check(&h, &f[0]).unwrap().passed());
}

#[test]
fn lemma_family_with_delta_one_is_not_flat() {
    assert_eq!(flatness_decision(&hf("y^3*dx + (x^3 - 3*x*y^2 + y^3)*dy")).status, FlatnessStatus::NotFlat);
}

#[test]
fn fiber_hypothesis_cases() {
    let h = catalog_model("omega7").unwrap();
    assert_eq!(fiber_hypothesis_check(&h, &transverse(&h, 1)[0]), HypothesisCheck::ExactAutomatic);
    let h = omega5d(5).unwrap();
    let f = transverse(&h, 1);
    assert!(!f.is_empty());
    for f in &f {
        assert_eq!(fiber_hypothesis_check(&h, f), HypothesisCheck::NumericPassed);
    }
}

#[test]
fn shared_critical_value_fails_hypothesis() {
    // A(1,z), B(1,z) even in z, so the critical points ±r share G-values
    let h = hf("(x^4 + y^4)*dx + (2*x^4 + x^2*y^2)*dy");
    let f = transverse(&h, 1);
    assert_eq!(f.len(), 1, "{:?}", h.divisor_analysis().0);
    assert_eq!(fiber_hypothesis_check(&h, &f[0]), HypothesisCheck::NumericFailed);
    assert_ne!(flatness_decision(&h).status, FlatnessStatus::Flat);
}

#[test]
fn classification_examples() {
    assert_eq!(classify_degree3(&catalog_model("omega10").unwrap()).unwrap(), ModelMatch::Model(ModelId(10)));
    assert_eq!(classify_degree3(&catalog_model("omega2").unwrap()).unwrap(), ModelMatch::Model(ModelId(2)));
    assert_eq!(classify_degree3(&catalog_model("omega11").unwrap()).unwrap(), ModelMatch::Model(ModelId(11)));
    let swapped = hf("x^3*dy - y^3*dx");
    assert_eq!(classify_degree3(&swapped).unwrap(), ModelMatch::Model(ModelId(1)));
    assert!(matches!(classify_degree3(&omega2d(4).unwrap()), Err(FlatnessError::NotDegree3(4))));
    assert!(matches!(classify_degree3(&catalog_model("nonflat_witness").unwrap()), Err(FlatnessError::NotFlat)));
}

#[test]
fn conjugated_catalog_keeps_verdict_and_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (k, id) in flatweb::models::FIXED_IDS.iter().enumerate() {
        let h = catalog_model(id).unwrap();
        let g = common::conjugate(&h, &common::random_gl2(&mut rng, 2));
        assert_eq!(flatness_decision(&g).status, FlatnessStatus::Flat);
        assert_eq!(classify_degree3(&g).unwrap(), ModelMatch::Model(ModelId(k as u8 + 1)));
    }
    let w = catalog_model("nonflat_witness").unwrap();
    let g = common::conjugate(&w, &[1, 2, -1, 1].map(FieldElem::from_int));
    assert_eq!(flatness_decision(&g).status, FlatnessStatus::NotFlat);
}

#[test]
fn convex_implies_flat() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for d in 3..=5 {
        for _ in 0..40 {
            let h = common::random_foliation(&mut rng, d, 2);
            if h.is_convex() {
                assert_eq!(flatness_decision(&h).status, FlatnessStatus::Flat);
            }
        }
    }
    for id in ["omega1", "omega3"] {
        let h = catalog_model(id).unwrap();
        assert!(h.is_convex());
        assert_eq!(flatness_decision(&h).reason.as_deref(), Some("convex"));
    }
}
