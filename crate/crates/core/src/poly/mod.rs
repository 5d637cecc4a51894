//! Polynomial algebra over `K`.

use std::fmt;

use crate::numfield::FieldElem;

mod bipoly;
mod hpoly;
mod quotient;
mod resultant;
mod upoly;

pub use bipoly::BiPoly;
pub use hpoly::{hp_arith, ArithOp, HPoly, PolyError, Var};
pub use quotient::{QuotElem, SplitEvent};
pub use resultant::{resultant, resultant_lambda, Domain};
pub use upoly::UPoly;

/// Writes `Σ c·m` in parser syntax. Terms with zero coefficient are skipped
/// and an empty sum prints as `0`.
pub(crate) fn fmt_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a FieldElem, Vec<(&'static str, usize)>)>,
{
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let m = mono
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*");
        let neg = c.is_negative_monomial();
        let mag = if neg { -c } else { c.clone() };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if m.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(&m)?;
        } else if mag.is_compound() {
            write!(f, "({mag})*{m}")?;
        } else {
            write!(f, "{mag}*{m}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
