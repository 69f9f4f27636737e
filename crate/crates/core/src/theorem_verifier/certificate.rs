use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_field::{factor, PrimeField};
use crate::frobenius_form::{EtaData, ThetaData};
use crate::supersingular::e3_e4;
use crate::weighted_poly::{dehomogenize, from_u, WeightedBivar};

/// A prime `Q` of `F_p[s,t]` and the `Q`-adic orders of the theta
/// coefficients, leading first.
#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinCertificate {
    pub p: u64,
    pub prime: WeightedBivar<PrimeField>,
    pub ord_lead: u32,
    /// `None` for a zero coefficient.
    pub ord_middle: Vec<Option<u32>>,
    pub ord_const: u32,
}

impl EisensteinCertificate {
    /// The pattern `(1, >= 1, ..., >= 1, 0)`.
    pub fn holds(&self) -> bool {
        self.ord_lead == 1
            && self.ord_middle.iter().all(|o| o.is_none_or(|k| k >= 1))
            && self.ord_const == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prime": self.prime.to_string(),
            "ord_lead": self.ord_lead,
            "ord_middle": self.ord_middle,
            "ord_const": self.ord_const,
        })
    }
}

fn ord_nonzero(c: &WeightedBivar<PrimeField>, q: &WeightedBivar<PrimeField>) -> Result<u32> {
    c.ord(q)?.ok_or(Error::ZeroPolynomial)
}

/// First prime factor of the leading coefficient: `s`, then `t`, then the
/// smallest irreducible factor of the remaining `u`-polynomial.
fn canonical_prime(theta: &ThetaData, seed: u64) -> Result<WeightedBivar<PrimeField>> {
    let field = theta.field();
    let (e3, e4) = e3_e4(theta.p);
    if e3 == 1 {
        return Ok(WeightedBivar::s(field));
    }
    if e4 == 1 {
        return Ok(WeightedBivar::t(field));
    }
    let b = dehomogenize(theta.lead())?.upoly;
    let first = factor(&b, seed)?
        .factors
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("leading coefficient has no prime factor".into()))?;
    Ok(from_u(&first.0))
}

pub fn eisenstein_theta(theta: &ThetaData, seed: u64) -> Result<EisensteinCertificate> {
    let prime = canonical_prime(theta, seed)?;
    let ord_middle = theta
        .middle()
        .into_iter()
        .map(|(_, c)| c.ord(&prime))
        .collect::<Result<_>>()?;
    Ok(EisensteinCertificate {
        p: theta.p,
        ord_lead: ord_nonzero(theta.lead(), &prime)?,
        ord_middle,
        ord_const: ord_nonzero(theta.constant(), &prime)?,
        prime,
    })
}

/// Orders of the x~-linear coefficients of `eta` at the theta prime.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaCertificate {
    pub p: u64,
    pub prime: WeightedBivar<PrimeField>,
    /// `ord c_{pi-1}` for `1 <= i <= p-1`; `None` for a zero coefficient.
    pub ord_middle: Vec<Option<u32>>,
    pub ord_const: u32,
}

impl EtaCertificate {
    pub fn holds(&self) -> bool {
        self.ord_middle.iter().all(|o| o.is_none_or(|k| k >= 1)) && self.ord_const == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prime": self.prime.to_string(),
            "ord_middle": self.ord_middle,
            "ord_const": self.ord_const,
        })
    }
}

pub fn eisenstein_eta(eta: &EtaData, prime: &WeightedBivar<PrimeField>) -> Result<EtaCertificate> {
    let last = (eta.p * eta.p - 1) as u32;
    let ord_middle = eta
        .c
        .iter()
        .filter(|(k, _)| **k != last)
        .map(|(_, c)| c.ord(prime))
        .collect::<Result<_>>()?;
    Ok(EtaCertificate {
        p: eta.p,
        prime: prime.clone(),
        ord_middle,
        ord_const: ord_nonzero(&eta.c[&last], prime)?,
    })
}
