//! Canonical term-list text: `coeff*s^a*t^b*x^d` terms joined by ` + `, in
//! descending order of `x`, then `s`, then `t`. Coefficients are always
//! written (`-1*s^2`, never `-s^2`) so the format parses back without
//! ambiguity.

use super::{Mono, WeightedBivar, XPoly};
use crate::error::{Error, Result};
use crate::finite_field::Ring;

pub(crate) fn term_string<R: Ring>(ring: &R, c: &R::Elem, s: u32, t: u32, x: usize) -> String {
    let mut out = ring.elem_to_string(c);
    let mut push = |var: &str, e: usize| match e {
        0 => {}
        1 => {
            out.push('*');
            out.push_str(var);
        }
        _ => out.push_str(&format!("*{var}^{e}")),
    };
    push("s", s as usize);
    push("t", t as usize);
    push("x", x);
    out
}

/// Parse one `coeff*s^a*t^b*x^d` term.
fn parse_term<R: Ring>(ring: &R, term: &str) -> Result<(R::Elem, u32, u32, usize)> {
    let mut parts = term.split('*');
    let head = parts.next().unwrap_or("");
    let c = ring
        .parse_elem(head)
        .ok_or_else(|| Error::Parse(format!("bad coefficient `{head}`")))?;
    let (mut s, mut t, mut x) = (0u32, 0u32, 0usize);
    for factor in parts {
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => {
                let e: usize = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (v, e)
            }
            None => (factor, 1),
        };
        match var {
            "s" => s += exp as u32,
            "t" => t += exp as u32,
            "x" => x += exp,
            _ => return Err(Error::Parse(format!("unknown variable `{var}`"))),
        }
    }
    Ok((c, s, t, x))
}

/// Coefficient and exponents of `s`, `t`, `x`.
type Term<E> = (E, u32, u32, usize);

fn parse_terms<R: Ring>(ring: &R, text: &str) -> Result<Vec<Term<R::Elem>>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if text == "0" {
        return Ok(Vec::new());
    }
    text.split(" + ").map(|t| parse_term(ring, t.trim())).collect()
}

pub fn parse_bivar<R: Ring>(ring: &R, text: &str) -> Result<WeightedBivar<R>> {
    let mut terms = Vec::new();
    for (c, s, t, x) in parse_terms(ring, text)? {
        if x != 0 {
            return Err(Error::Parse("unexpected x in a polynomial in s, t".into()));
        }
        terms.push((Mono::new(s, t), c));
    }
    Ok(WeightedBivar::new(ring.clone(), terms))
}

/// Parse the x-part of an [`XPoly`]; the parity is carried separately.
pub fn parse_xpoly<R: Ring>(ring: &R, text: &str, parity: bool) -> Result<XPoly<R>> {
    let parsed = parse_terms(ring, text)?;
    let deg = parsed.iter().map(|p| p.3).max().unwrap_or(0);
    let mut buckets: Vec<Vec<(Mono, R::Elem)>> = vec![Vec::new(); deg + 1];
    for (c, s, t, x) in parsed {
        buckets[x].push((Mono::new(s, t), c));
    }
    let coeffs = buckets
        .into_iter()
        .map(|b| WeightedBivar::new(ring.clone(), b))
        .collect();
    Ok(XPoly::new(ring.clone(), coeffs, parity))
}
