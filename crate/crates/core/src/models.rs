//! Catalogue of named foliations: the eleven flat cubic models, the
//! parameterised families of flat homogeneous foliations, and fixtures.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::foliation::{FoliationType, HomFoliation};
use crate::numfield::{FieldElem, Rational};
use crate::oracle::general::GeneralFoliation;
use crate::parser::{parse_oneform, ParseError};
use crate::poly::{HPoly, UPoly};

/// Catalogue file: `id: <1-form>` per line, `#` starts a comment.
pub const CATALOG: &str = include_str!("../data/catalog.txt");

pub const FIXED_IDS: [&str; 11] =
    ["omega1", "omega2", "omega3", "omega4", "omega5", "omega6", "omega7", "omega8", "omega9", "omega10", "omega11"];

pub const FAMILY_IDS: [&str; 7] = ["omega1d", "omega2d", "omega3d", "omega4d", "omega5d", "omega6d", "fermat"];

pub const FIXTURE_IDS: [&str; 2] = ["omega_ex5", "nonflat_witness"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("model {model} needs --{param}")]
    MissingParameter { model: String, param: &'static str },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("catalogue line {line}: {err}")]
    Catalog { line: usize, err: ParseError },
}

/// Index `1..=11` of a flat cubic model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelId(pub u8);

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub id: ModelId,
    pub ftype: FoliationType,
    pub cs: UPoly,
}

fn cs_from_roots(roots: &[(i64, i64, u32)]) -> UPoly {
    roots
        .iter()
        .fold(UPoly::one(), |acc, &(n, d, m)| &acc * &UPoly::linear_root(&FieldElem::from_frac(n, d)).pow(m))
}

/// Types and Camacho-Sad polynomials of the eleven models.
pub fn table1() -> Vec<TableRow> {
    let rows: [(&[(usize, usize)], &[(usize, usize)], &[(i64, i64, u32)]); 11] = [
        (&[(2, 2)], &[], &[(1, 1, 2), (-1, 2, 2)]),
        (&[], &[(2, 2)], &[(1, 4, 4)]),
        (&[(1, 2), (2, 1)], &[], &[(1, 1, 3), (-2, 1, 1)]),
        (&[(1, 2)], &[(2, 1)], &[(1, 1, 2), (-1, 2, 2)]),
        (&[(1, 1), (2, 1)], &[(1, 1)], &[(1, 1, 2), (-1, 5, 1), (-4, 5, 1)]),
        (&[(1, 1)], &[(1, 1), (2, 1)], &[(1, 1, 1), (-2, 7, 1), (1, 7, 2)]),
        (&[(2, 1)], &[(1, 2)], &[(1, 1, 1), (1, 4, 1), (-1, 8, 2)]),
        (&[], &[(1, 2), (2, 1)], &[(1, 10, 2), (2, 5, 2)]),
        (&[(1, 3)], &[(1, 1)], &[(1, 1, 3), (-2, 1, 1)]),
        (&[(1, 2)], &[(1, 2)], &[(1, 1, 2), (-1, 2, 2)]),
        (&[], &[(1, 4)], &[(1, 4, 4)]),
    ];
    rows.iter()
        .enumerate()
        .map(|(i, (r, t, cs))| TableRow {
            id: ModelId(i as u8 + 1),
            ftype: FoliationType::from_pairs(r, t),
            cs: cs_from_roots(cs),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub text: String,
}

pub fn catalog_entries() -> Result<Vec<CatalogEntry>, ModelError> {
    let mut out = Vec::new();
    for (n, line) in CATALOG.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((id, text)) = line.split_once(':') else {
            return Err(ModelError::Catalog {
                line: n + 1,
                err: ParseError::Syntax { pos: 0, msg: "expected `id: form`".into() },
            });
        };
        parse_oneform(text.trim()).map_err(|err| ModelError::Catalog { line: n + 1, err })?;
        out.push(CatalogEntry { id: id.trim().to_string(), text: text.trim().to_string() });
    }
    Ok(out)
}

fn from_text(text: &str) -> HomFoliation {
    let (a, b) = parse_oneform(text).expect("catalogue entries parse");
    HomFoliation::new(a, b).expect("catalogue entries are valid foliations")
}

/// A fixed catalogue entry by id.
pub fn catalog_model(id: &str) -> Result<HomFoliation, ModelError> {
    catalog_entries()?
        .into_iter()
        .find(|e| e.id == id)
        .map(|e| from_text(&e.text))
        .ok_or_else(|| ModelError::UnknownModel(id.to_string()))
}

/// The eleven flat cubic models in order.
pub fn fixed_models() -> Vec<HomFoliation> {
    FIXED_IDS.iter().map(|id| catalog_model(id).expect("fixed model")).collect()
}

fn binom(n: usize, k: usize) -> FieldElem {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    FieldElem::from_rational(Rational::from_integer(c))
}

fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

/// `Σ_{i ∈ range} C(d,i) x^(d-i) y^i`.
fn binom_sum(d: usize, range: std::ops::RangeInclusive<usize>) -> HPoly {
    let mut c = vec![FieldElem::zero(); d + 1];
    for i in range {
        c[i] = binom(d, i);
    }
    HPoly::new(c)
}

fn hom(a: HPoly, b: HPoly) -> Result<HomFoliation, ModelError> {
    HomFoliation::new(a, b).map_err(|e| ModelError::InvalidParameter(e.to_string()))
}

fn check_degree(d: usize, min: usize) -> Result<(), ModelError> {
    if d < min || d > 40 {
        return Err(ModelError::InvalidParameter(format!("degree {d} outside {min}..=40")));
    }
    Ok(())
}

fn check_nu(d: usize, nu: usize) -> Result<(), ModelError> {
    if nu < 1 || nu + 2 > d {
        return Err(ModelError::InvalidParameter(format!("nu = {nu} outside 1..={}", d.saturating_sub(2))));
    }
    Ok(())
}

/// `y^d dx - x^d dy`.
pub fn omega1d(d: usize) -> Result<HomFoliation, ModelError> {
    check_degree(d, 1)?;
    hom(HPoly::monomial(fe(1), 0, d), HPoly::monomial(fe(-1), d, 0))
}

/// `x^d dx - y^d dy`.
pub fn omega2d(d: usize) -> Result<HomFoliation, ModelError> {
    check_degree(d, 1)?;
    hom(HPoly::monomial(fe(1), d, 0), HPoly::monomial(fe(-1), 0, d))
}

pub fn omega3d(d: usize, nu: usize) -> Result<HomFoliation, ModelError> {
    check_degree(d, 3)?;
    check_nu(d, nu)?;
    hom(binom_sum(d, nu + 1..=d), binom_sum(d, 0..=nu).scale(&fe(-1)))
}

pub fn omega4d(d: usize, nu: usize) -> Result<HomFoliation, ModelError> {
    check_degree(d, 3)?;
    check_nu(d, nu)?;
    let a = binom_sum(d, nu + 1..=d).scale(&fe((d - nu - 1) as i64));
    let b = binom_sum(d, 0..=nu).scale(&fe(nu as i64));
    hom(a, b)
}

/// `x^(d-1) (d y - (d-1) x)`, the common `dy` coefficient of the last two families.
fn omega56_b(d: usize) -> HPoly {
    let mut c = vec![FieldElem::zero(); d + 1];
    c[0] = fe(-(d as i64 - 1));
    c[1] = fe(d as i64);
    HPoly::new(c)
}

/// `s y^d dx + x^(d-1) (d y - (d-1) x) dy`; the family member has `s = 2`.
pub fn omega5d_with(d: usize, s: i64) -> Result<HomFoliation, ModelError> {
    check_degree(d, 2)?;
    hom(HPoly::monomial(fe(s), 0, d), omega56_b(d))
}

pub fn omega5d(d: usize) -> Result<HomFoliation, ModelError> {
    omega5d_with(d, 2)
}

pub fn omega6d(d: usize) -> Result<HomFoliation, ModelError> {
    check_degree(d, 2)?;
    let di = d as i64;
    let mut c = vec![FieldElem::zero(); d + 1];
    c[0] = fe((di - 1) * (di - 1));
    c[1] = fe(-di * (di - 1));
    c[d] = &c[d] + &fe(di + 1);
    hom(HPoly::new(c), omega56_b(d))
}

/// A resolved model.
#[derive(Debug, Clone)]
pub enum Model {
    Homogeneous(HomFoliation),
    General(GeneralFoliation),
}

impl Model {
    pub fn homogeneous(&self) -> Option<&HomFoliation> {
        match self {
            Model::Homogeneous(h) => Some(h),
            Model::General(_) => None,
        }
    }
}

/// Looks up a fixed model, fixture or family member.
pub fn lookup(id: &str, d: Option<usize>, nu: Option<usize>) -> Result<Model, ModelError> {
    let need_d = || d.ok_or_else(|| ModelError::MissingParameter { model: id.to_string(), param: "d" });
    let need_nu = || nu.ok_or_else(|| ModelError::MissingParameter { model: id.to_string(), param: "nu" });
    let h = match id {
        "omega1d" => omega1d(need_d()?)?,
        "omega2d" => omega2d(need_d()?)?,
        "omega3d" => omega3d(need_d()?, need_nu()?)?,
        "omega4d" => omega4d(need_d()?, need_nu()?)?,
        "omega5d" => omega5d(need_d()?)?,
        "omega6d" => omega6d(need_d()?)?,
        "fermat" => {
            let d = need_d()?;
            check_degree(d, 2)?;
            return Ok(Model::General(GeneralFoliation::fermat(d)));
        }
        other => catalog_model(other)?,
    };
    Ok(Model::Homogeneous(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_size() {
        let ids: Vec<String> = catalog_entries().unwrap().into_iter().map(|e| e.id).collect();
        assert_eq!(ids.len(), 13);
        for id in FIXED_IDS.iter().chain(&FIXTURE_IDS) {
            assert!(ids.iter().any(|i| i == id), "{id}");
        }
    }

    #[test]
    fn families_reduce_to_cubic_models() {
        assert_eq!(omega1d(3).unwrap(), catalog_model("omega1").unwrap());
        assert_eq!(omega2d(3).unwrap(), catalog_model("omega2").unwrap());
        assert_eq!(omega3d(3, 1).unwrap(), catalog_model("omega3").unwrap());
        assert_eq!(omega4d(3, 1).unwrap(), catalog_model("omega4").unwrap());
        assert_eq!(omega5d(3).unwrap(), catalog_model("omega5").unwrap());
        assert_eq!(omega6d(3).unwrap(), catalog_model("omega6").unwrap());
    }

    #[test]
    fn family_parameters() {
        assert!(matches!(lookup("omega3d", Some(4), None), Err(ModelError::MissingParameter { .. })));
        assert!(matches!(omega4d(4, 3), Err(ModelError::InvalidParameter(_))));
        assert!(matches!(lookup("nope", None, None), Err(ModelError::UnknownModel(_))));
        assert!(matches!(lookup("fermat", Some(3), None), Ok(Model::General(_))));
    }

    #[test]
    fn table_rows_distinct() {
        let t = table1();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                assert!(t[i].ftype != t[j].ftype || t[i].cs != t[j].cs);
            }
        }
    }
}
