//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting.
//!
//! The equal-degree step draws its random polynomials from a ChaCha8 stream
//! seeded with `seed_from_u64(seed)`, so a given seed always yields the same
//! splitting path. Output order never depends on the path: factors are sorted
//! by degree and then by coefficient coordinates, constant term first.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ExtField, Field, PrimeField, UniPoly};
use crate::error::{Error, Result};

/// A factorization `f = unit * prod(g_i ^ e_i)` into monic irreducibles.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(UniPoly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    /// Multiply the monic factors back together (the unit is left out).
    pub fn reassemble(&self, field: &F, var: &'static str) -> UniPoly<F> {
        self.factors
            .iter()
            .fold(UniPoly::one(field.clone(), var), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: Field>(f: &UniPoly<F>) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let q = f.ring().order();
    let x = UniPoly::x(f.ring().clone(), f.var());
    // powers[i] = x^(q^i) mod f
    let mut powers = vec![x.rem(&f)?];
    for i in 0..n {
        let next = powers[i].pow_mod(&q, &f)?;
        powers.push(next);
    }
    if powers[n] != powers[0] {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let h = powers[n / r].sub(&x);
        if !f.gcd(&h)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Undo the Frobenius on a polynomial whose exponents are all multiples of `p`.
fn pth_root_poly<F: Field>(f: &UniPoly<F>) -> UniPoly<F> {
    let field = f.ring();
    let p = field.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c))
        .collect();
    UniPoly::new(field.clone(), coeffs, f.var())
}

/// Squarefree decomposition of a nonzero polynomial: pairwise coprime monic
/// squarefree parts with their multiplicities, in no particular order.
pub fn squarefree_decomposition<F: Field>(f: &UniPoly<F>) -> Result<Vec<(UniPoly<F>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let p = f.ring().characteristic() as usize;
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.exact_quo(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.exact_quo(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_quo(&y)?;
        w = y;
    }
    if !c.is_one() {
        let root = pth_root_poly(&c);
        for (g, e) in squarefree_decomposition(&root)? {
            out.push((g, e * p));
        }
    }
    Ok(out)
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree<F: Field>(f: &UniPoly<F>) -> Result<Vec<(UniPoly<F>, usize)>> {
    let q = f.ring().order();
    let x = UniPoly::x(f.ring().clone(), f.var());
    let mut rest = f.monic();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().is_some_and(|n| n >= 2 * d) {
        h = h.pow_mod(&q, &rest)?;
        let g = rest.gcd(&h.sub(&x))?;
        if !g.is_one() {
            rest = rest.exact_quo(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    Ok(out)
}

/// Split a monic squarefree product of irreducibles of common degree `d`.
pub fn equal_degree<F: Field>(f: &UniPoly<F>, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<UniPoly<F>>> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == d {
        return Ok(vec![f.monic()]);
    }
    if d == 0 || n % d != 0 {
        return Err(Error::InvalidArgument(format!(
            "degree {n} is not a multiple of {d}"
        )));
    }
    let field = f.ring().clone();
    let e = (num_traits::pow(field.order(), d) - BigUint::one()) >> 1;
    let one = UniPoly::one(field.clone(), f.var());
    let mut pending = vec![f.monic()];
    let mut done = Vec::new();
    while let Some(g) = pending.pop() {
        let gn = g.degree().unwrap_or(0);
        if gn == d {
            done.push(g);
            continue;
        }
        loop {
            let coeffs = (0..gn).map(|_| field.random(rng)).collect();
            let a = UniPoly::new(field.clone(), coeffs, f.var());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = a.pow_mod(&e, &g)?.sub(&one);
            let h = g.gcd(&b)?;
            let hd = h.degree().unwrap_or(0);
            if hd > 0 && hd < gn {
                let other = g.exact_quo(&h)?;
                pending.push(h);
                pending.push(other);
                break;
            }
        }
    }
    Ok(done)
}

/// Full factorization into sorted monic irreducibles.
pub fn factor<F: Field>(f: &UniPoly<F>, seed: u64) -> Result<Factorization<F>> {
    let lead = f.lead().cloned().ok_or(Error::ZeroPolynomial)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, e) in squarefree_decomposition(f)? {
        for (block, d) in distinct_degree(&part)? {
            for g in equal_degree(&block, d, &mut rng)? {
                factors.push((g, e));
            }
        }
    }
    factors.sort_by_key(|(g, _)| g.sort_key());
    Ok(Factorization { unit: lead, factors })
}

/// Distinct roots of `f` in its own coefficient field, sorted by coordinates.
pub fn roots<F: Field>(f: &UniPoly<F>, seed: u64) -> Result<Vec<F::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let field = f.ring().clone();
    let m = f.monic();
    let x = UniPoly::x(field.clone(), f.var());
    let frob = x.pow_mod(&field.order(), &m)?;
    let split = m.gcd(&frob.sub(&x))?;
    let n = split.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<F::Elem> = equal_degree(&split, 1, &mut rng)?
        .into_iter()
        .map(|g| field.neg(&g.coeff(0)))
        .collect();
    out.sort_by_key(|r| field.coords(r));
    Ok(out)
}

/// Roots in an extension field of a polynomial defined over `F_p`.
pub fn roots_in(f: &UniPoly<PrimeField>, field: &ExtField) -> Result<Vec<Vec<u64>>> {
    if f.ring().p() != field.characteristic() {
        return Err(Error::MismatchedFields);
    }
    let lifted = f.map(field, |&c| field.from_u64(c));
    roots(&lifted, 0)
}
