use super::{Mono, WeightedBivar};
use crate::error::{Error, Result};
use crate::finite_field::{factor, Field, UniPoly};

/// `s^exp_s * t^exp_t * sum_i c_i (s^3)^i (t^2)^(N - i)` written as the
/// univariate `sum_i c_i u^i` in `u = s^3 / t^2`.
///
/// `exp_s` and `exp_t` are the residues forced by the weight (`exp_s < 3`,
/// `exp_t < 2`), so powers of `s^3` show up as powers of `u` and spare powers
/// of `t^2` as a degree deficit `N - deg`. `N` is recovered from the weight.
#[derive(Clone, Debug, PartialEq)]
pub struct DehomForm<F: Field> {
    pub exp_s: u32,
    pub exp_t: u32,
    pub upoly: UniPoly<F>,
}

/// The residues `(a, b)` with `a < 3`, `b < 2` and `2a + 3b = w mod 6`.
pub fn weight_residues(w: u32) -> (u32, u32) {
    (2 * w % 3, w % 2)
}

fn block_count(w: u32, exp_s: u32, exp_t: u32) -> Option<u32> {
    let base = 2 * exp_s + 3 * exp_t;
    (w >= base && (w - base).is_multiple_of(6)).then(|| (w - base) / 6)
}

pub fn dehomogenize<F: Field>(a: &WeightedBivar<F>) -> Result<DehomForm<F>> {
    let w = a.homogeneous_weight()?;
    let field = a.ring().clone();
    let (exp_s, exp_t) = weight_residues(w);
    let n = block_count(w, exp_s, exp_t)
        .ok_or_else(|| Error::Internal(format!("weight {w} has no monomials")))?;
    let mut coeffs = vec![field.zero(); n as usize + 1];
    for (m, c) in a.terms() {
        let (ds, dt) = (m.s - exp_s, m.t - exp_t);
        if ds % 3 != 0 || dt % 2 != 0 || ds / 3 + dt / 2 != n {
            return Err(Error::Internal(format!(
                "monomial s^{}t^{} is off the dehomogenization lattice",
                m.s, m.t
            )));
        }
        coeffs[(ds / 3) as usize] = c.clone();
    }
    Ok(DehomForm { exp_s, exp_t, upoly: UniPoly::new(field, coeffs, "u") })
}

pub fn rehomogenize<F: Field>(d: &DehomForm<F>, weight: u32) -> Result<WeightedBivar<F>> {
    let n = block_count(weight, d.exp_s, d.exp_t)
        .ok_or(Error::InconsistentWeight { weight })?;
    if d.upoly.degree().is_some_and(|k| k > n as usize) {
        return Err(Error::InconsistentWeight { weight });
    }
    let terms: Vec<_> = d
        .upoly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let i = i as u32;
            (Mono::new(d.exp_s + 3 * i, d.exp_t + 2 * (n - i)), c.clone())
        })
        .collect();
    Ok(WeightedBivar::new(d.upoly.ring().clone(), terms))
}

/// Split a nonzero homogeneous polynomial into its monomial content
/// `s^a t^b` and a `u`-polynomial with nonzero constant term.
pub(crate) fn content<F: Field>(a: &WeightedBivar<F>) -> Result<(Mono, UniPoly<F>)> {
    let w = a.homogeneous_weight()?;
    let d = dehomogenize(a)?;
    let n = block_count(w, d.exp_s, d.exp_t).expect("validated by dehomogenize");
    let ord = d.upoly.coeffs().iter().position(|c| !d.upoly.ring().is_zero(c)).unwrap_or(0);
    let deg = d.upoly.degree().unwrap_or(0);
    let prim = UniPoly::new(d.upoly.ring().clone(), d.upoly.coeffs()[ord..].to_vec(), "u");
    let mono = Mono::new(d.exp_s + 3 * ord as u32, d.exp_t + 2 * (n - deg as u32));
    Ok((mono, prim))
}

/// The homogeneous polynomial `sum c_i s^(3i) t^(2(k-i))` of a `u`-polynomial
/// of degree `k`.
pub(crate) fn from_u<F: Field>(r: &UniPoly<F>) -> WeightedBivar<F> {
    let k = r.degree().unwrap_or(0) as u32;
    let d = DehomForm { exp_s: 0, exp_t: 0, upoly: r.clone() };
    rehomogenize(&d, 6 * k).expect("weight matches degree")
}

/// Greatest common divisor of homogeneous polynomials, monic in the leading
/// (highest `s`) coefficient.
pub fn wb_gcd<F: Field>(a: &WeightedBivar<F>, b: &WeightedBivar<F>) -> Result<WeightedBivar<F>> {
    if a.ring() != b.ring() {
        return Err(Error::MismatchedFields);
    }
    if a.is_zero() {
        if !b.is_zero() {
            b.homogeneous_weight()?;
        }
        return Ok(b.monic());
    }
    if b.is_zero() {
        a.homogeneous_weight()?;
        return Ok(a.monic());
    }
    let (ma, ra) = content(a)?;
    let (mb, rb) = content(b)?;
    let g = ra.gcd(&rb)?;
    let mono = Mono::new(ma.s.min(mb.s), ma.t.min(mb.t));
    Ok(from_u(&g).mul_mono(mono).monic())
}

/// Outcome of [`wb_squarefree_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeCheck<F: Field> {
    pub squarefree: bool,
    /// A prime factor dividing the input at least twice.
    pub witness: Option<WeightedBivar<F>>,
}

pub fn wb_squarefree_check<F: Field>(a: &WeightedBivar<F>) -> Result<SquarefreeCheck<F>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = a.ring().clone();
    let (mono, prim) = content(a)?;
    let repeated = |w: WeightedBivar<F>| SquarefreeCheck { squarefree: false, witness: Some(w) };
    if mono.s >= 2 {
        return Ok(repeated(WeightedBivar::s(field)));
    }
    if mono.t >= 2 {
        return Ok(repeated(WeightedBivar::t(field)));
    }
    if prim.degree().unwrap_or(0) > 0 {
        let g = prim.gcd(&prim.derivative())?;
        if !g.is_one() {
            // derivative can vanish identically in characteristic p
            let first = factor(&g, 0)?.factors.remove(0).0;
            return Ok(repeated(from_u(&first)));
        }
    }
    Ok(SquarefreeCheck { squarefree: true, witness: None })
}
