//! Report assembly. Exact values serialize as strings in parser syntax, so
//! they re-parse to identical field elements; floats appear only in numeric
//! sub-reports.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::flatness::{FlatnessVerdict, ModelMatch};
use crate::foliation::{Direction, FoliationAnalysis, Index};
use crate::poly::UPoly;

pub const SCHEMA_VERSION: &str = "1";

/// A polynomial in the CS variable, written with `λ`.
pub fn cs_text(p: &UPoly) -> String {
    p.to_string().replace('z', "λ")
}

fn direction_json(d: &Direction) -> Value {
    match d {
        Direction::Exact([x, y]) => json!({"exact": [x.to_string(), y.to_string()]}),
        Direction::Numeric { factor, point } => json!({
            "factor": factor.to_string(),
            "numeric": [[point[0].re, point[0].im], [point[1].re, point[1].im]],
        }),
    }
}

fn index_json(i: &Option<Index>) -> Value {
    match i {
        None => Value::Null,
        Some(Index::Exact(v)) => json!({"exact": v.to_string()}),
        Some(Index::Numeric(v)) => json!({"numeric": [v.re, v.im]}),
    }
}

pub fn analysis_json(a: &FoliationAnalysis) -> Value {
    json!({
        "form": a.foliation.to_string(),
        "degree": a.foliation.degree(),
        "tangent_cone": a.tangent_cone.to_string(),
        "d_divisor": a.d_divisor.to_string(),
        "type": a.ftype.to_string(),
        "factors": a.factors.iter().map(|f| json!({
            "poly": f.poly.to_string(),
            "multiplicity": f.multiplicity,
            "kind": format!("{:?}", f.kind),
        })).collect::<Vec<_>>(),
        "infinity_singularities": a.infinity_sings.iter().map(|s| json!({
            "direction": direction_json(&s.direction),
            "nu": s.nu,
            "tau": s.tau,
            "mu": s.mu,
            "cs": index_json(&s.cs),
            "bb": index_json(&s.bb),
        })).collect::<Vec<_>>(),
        "cs_polynomial": a.cs_polynomial.as_ref().map(|p| json!({
            "text": cs_text(p),
            "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })),
        "convex": a.convex,
    })
}

pub fn verdict_json(v: &FlatnessVerdict) -> Value {
    json!({
        "status": format!("{:?}", v.status),
        "reason": v.reason,
        "certificates": v.certificates.iter().map(|c| json!({
            "factor": c.factor.poly.to_string(),
            "multiplicity": c.factor.multiplicity,
            "criterion": format!("{:?}", c.criterion),
            "hypothesis": format!("{:?}", c.hypothesis),
            "outcome": format!("{:?}", c.outcome),
            "witness": c.witness,
        })).collect::<Vec<_>>(),
    })
}

pub fn match_json(m: &ModelMatch) -> Value {
    match m {
        ModelMatch::Model(id) => json!(id.to_string()),
        ModelMatch::NoMatch => json!("NoMatch"),
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub analysis: Option<FoliationAnalysis>,
    pub flatness: Option<FlatnessVerdict>,
    pub numeric: Option<Value>,
    pub model_match: Option<ModelMatch>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "analysis": self.analysis.as_ref().map(analysis_json),
            "flatness": self.flatness.as_ref().map(verdict_json),
            "numeric": self.numeric,
            "model_match": self.model_match.as_ref().map(match_json),
        })
    }
}

/// `a + bi` with six decimals and a single sign.
pub fn complex_text(z: num_complex::Complex64) -> String {
    let im = if z.im.abs() < 5e-7 { 0.0 } else { z.im };
    let re = if z.re.abs() < 5e-7 { 0.0 } else { z.re };
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6} {} {:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

pub fn analysis_text(a: &FoliationAnalysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "form          {}", a.foliation);
    let _ = writeln!(s, "degree        {}", a.foliation.degree());
    let _ = writeln!(s, "C_H           {}", a.tangent_cone);
    let _ = writeln!(s, "D_H           {}", a.d_divisor);
    let _ = writeln!(s, "type          {}", a.ftype);
    let _ = writeln!(s, "convex        {}", a.convex);
    match &a.cs_polynomial {
        Some(p) => {
            let _ = writeln!(s, "CS polynomial {}", cs_text(p));
        }
        None => {
            let _ = writeln!(s, "CS polynomial undefined (degenerate singularity at infinity)");
        }
    }
    for f in &a.factors {
        let _ = writeln!(s, "  factor {:<24} multiplicity {} {:?}", f.poly.to_string(), f.multiplicity, f.kind);
    }
    for sg in &a.infinity_sings {
        let dir = match &sg.direction {
            Direction::Exact([x, y]) => format!("[{x} : {y} : 0]"),
            Direction::Numeric { point, .. } => format!("[{} : {} : 0]", complex_text(point[0]), complex_text(point[1])),
        };
        let cs = match &sg.cs {
            Some(Index::Exact(v)) => v.to_string(),
            Some(Index::Numeric(v)) => complex_text(*v),
            None => "-".into(),
        };
        let _ = writeln!(s, "  singularity {dir}  nu {} tau {} CS {cs}", sg.nu, sg.tau);
    }
    s
}

pub fn verdict_text(v: &FlatnessVerdict) -> String {
    let mut s = format!("verdict       {:?}", v.status);
    if let Some(r) = &v.reason {
        let _ = write!(s, " ({r})");
    }
    s.push('\n');
    for c in &v.certificates {
        let _ = writeln!(s, "  line {:<24} {:?} {:?} -> {:?}", c.factor.poly.to_string(), c.criterion, c.hypothesis, c.outcome);
        if let Some(w) = &c.witness {
            let _ = writeln!(s, "    witness {w}");
        }
    }
    s
}
