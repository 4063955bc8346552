//! Text forms: `D{0,1}^3 * D{E}` for monomials, `psi-{0} * psi-{E}` for
//! products of `ψ^-` classes.

use super::DivisorMonomial;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Parses `{0,1}`, `0,1`, `{E}` or `E` into a flat of `m`. Elements may be
/// given by index or by label.
pub fn parse_flat(m: &Matroid, text: &str) -> Result<Subset> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(t)
        .trim();
    let set = if inner == "E" {
        m.all()
    } else if inner.is_empty() {
        Subset::EMPTY
    } else {
        let mut s = Subset::EMPTY;
        for tok in inner.split(',').map(str::trim) {
            let by_label = m
                .ground()
                .labels()
                .and_then(|l| l.iter().position(|x| x == tok));
            let e = match by_label {
                Some(e) => e,
                None => tok
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad element `{tok}` in `{t}`")))?,
            };
            if e >= m.n() {
                return Err(Error::Parse(format!(
                    "element {e} in `{t}` is outside the ground set of size {}",
                    m.n()
                )));
            }
            s = s.with(e);
        }
        s
    };
    if !m.is_flat(set) {
        return Err(Error::Parse(format!("`{t}` is not a flat of this matroid")));
    }
    Ok(set)
}

fn split_factors(text: &str) -> impl Iterator<Item = &str> {
    text.split('*').map(str::trim).filter(|s| !s.is_empty())
}

/// Parses a product of divisors such as `D{0,1}^3 * D{0,1,2,3,4}^2 * D{E}`.
pub fn parse_monomial(m: &Matroid, text: &str) -> Result<DivisorMonomial> {
    let mut mono = DivisorMonomial::new();
    let mut any = false;
    for factor in split_factors(text) {
        any = true;
        let body = factor
            .strip_prefix('D')
            .ok_or_else(|| Error::Parse(format!("factor `{factor}` does not start with D")))?;
        let (set, exp) = match body.rfind('^') {
            Some(p) if body[p..].find('}').is_none() => (&body[..p], Some(&body[p + 1..])),
            _ => (body, None),
        };
        let d: u32 = match exp {
            None => 1,
            Some(e) => e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
        };
        if d == 0 {
            return Err(Error::Parse(format!("zero exponent in `{factor}`")));
        }
        let f = parse_flat(m, set)?;
        if f == m.loops() {
            return Err(Error::Parse(format!(
                "`{}` is the least flat and has no divisor",
                set.trim()
            )));
        }
        mono.multiply(f, d);
    }
    if !any {
        return Err(Error::Parse("empty monomial".into()));
    }
    Ok(mono)
}

/// Parses `psi-{0} * psi-{E} * ..` into its list of flats, in order.
pub fn parse_psi_product(m: &Matroid, text: &str) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for factor in split_factors(text) {
        let (body, power) = match factor.rfind('^') {
            Some(p) if factor[p..].find('}').is_none() => (&factor[..p], &factor[p + 1..]),
            _ => (factor, "1"),
        };
        let set = body
            .strip_prefix("psi-")
            .or_else(|| body.strip_prefix("ψ-"))
            .ok_or_else(|| Error::Parse(format!("factor `{factor}` does not start with psi-")))?;
        let d: usize = power
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
        let f = parse_flat(m, set)?;
        out.extend(std::iter::repeat_n(f, d));
    }
    Ok(out)
}
