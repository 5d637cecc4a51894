//! Generators shared by the integration tests.
#![allow(dead_code)]

use flatweb::foliation::HomFoliation;
use flatweb::numfield::FieldElem;
use flatweb::poly::HPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_hpoly(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> HPoly {
    HPoly::from_ints(&(0..=d).map(|_| rng.random_range(-bound..=bound)).collect::<Vec<_>>())
}

/// Random foliation of degree `d` with integer coefficients in
/// `[-bound, bound]`, redrawn until the coefficients are coprime.
pub fn random_foliation(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> HomFoliation {
    loop {
        let (a, b) = (random_hpoly(rng, d, bound), random_hpoly(rng, d, bound));
        if let Ok(h) = HomFoliation::new(a, b) {
            return h;
        }
    }
}

/// Random invertible integer matrix with entries in `[-bound, bound]`.
pub fn random_gl2(rng: &mut ChaCha8Rng, bound: i64) -> [FieldElem; 4] {
    loop {
        let m: [i64; 4] = std::array::from_fn(|_| rng.random_range(-bound..=bound));
        if m[0] * m[3] - m[1] * m[2] != 0 {
            return m.map(FieldElem::from_int);
        }
    }
}

pub fn conjugate(h: &HomFoliation, m: &[FieldElem; 4]) -> HomFoliation {
    h.pullback([&m[0], &m[1], &m[2], &m[3]]).expect("invertible")
}
