use super::{Ring, UniPoly};
use crate::error::{Error, Result};

fn exact(ring: &impl Ring, what: &str) -> Error {
    Error::Internal(format!("subresultant step over {} was not exact: {what}", ring.tag()))
}

/// Resultant by the subresultant polynomial remainder sequence.
///
/// Works over any ring with exact division, which lets the same code run over
/// `F_p` and over `F_p[j]`.
pub fn resultant<R: Ring>(f: &UniPoly<R>, g: &UniPoly<R>) -> Result<R::Elem> {
    let ring = f.ring().clone();
    if ring != *g.ring() {
        return Err(Error::MismatchedFields);
    }
    let (Some(da), Some(db)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        negate = da % 2 == 1 && db % 2 == 1;
    }
    let sign = |v: R::Elem, neg: bool| if neg { ring.neg(&v) } else { v };

    let db = b.degree().unwrap_or(0);
    if db == 0 {
        let da = a.degree().unwrap_or(0) as u64;
        return Ok(sign(ring.pow(&b.coeffs()[0], da), negate));
    }

    let mut big_g = ring.one();
    let mut h = ring.one();
    loop {
        let (na, nb) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
        let delta = na - nb;
        if na % 2 == 1 && nb % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        let divisor = ring.mul(&big_g, &ring.pow(&h, delta as u64));
        b = r
            .exact_div_scalar(&divisor)
            .ok_or_else(|| exact(&ring, "remainder"))?;
        big_g = a.lead().cloned().unwrap_or_else(|| ring.zero());
        h = match delta {
            0 => h,
            1 => big_g.clone(),
            _ => {
                let num = ring.pow(&big_g, delta as u64);
                let den = ring.pow(&h, delta as u64 - 1);
                ring.exact_div(&num, &den).ok_or_else(|| exact(&ring, "h update"))?
            }
        };
        match b.degree() {
            None => return Ok(ring.zero()),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let na = a.degree().unwrap_or(0) as u64;
    let lb = b.coeffs()[0].clone();
    let res = if na == 1 {
        lb
    } else {
        let num = ring.pow(&lb, na);
        let den = ring.pow(&h, na - 1);
        ring.exact_div(&num, &den).ok_or_else(|| exact(&ring, "final"))?
    };
    Ok(sign(res, negate))
}
