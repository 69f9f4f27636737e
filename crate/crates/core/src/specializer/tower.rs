use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CurveSpec, Curve, Point, PrimeData};
use crate::error::{Error, Result};
use crate::finite_field::{distinct_degree, equal_degree, roots, ExtField, Field, Ring, UniPoly};
use crate::frobenius_form::eval_ext;

/// Largest absolute degree over `F_p` the tower may reach.
pub const TOWER_DEGREE_LIMIT: usize = 4096;

/// A point of order `p^n` reached through the chain `x_1, ..., x_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionWitness {
    pub n: u32,
    /// `[F_q(x_k) : F_q]` for `k = 1..=n`.
    pub x_degrees: Vec<usize>,
    /// Whether `y_n` already lies in `F_q(x_n)`.
    pub y_in_x_field: bool,
    /// `[F_q(x_n, y_n) : F_q]`.
    pub degree: usize,
    /// `[p^(n-1)] P != O` and `[p^n] P = O`.
    pub exact_order: bool,
    /// The top field and the coordinates of the point in it.
    pub field: ExtField,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

/// Adjoin a root of the lowest-degree irreducible factor of `f` to its
/// coefficient field.
fn adjoin_root(f: &UniPoly<ExtField>, rng: &mut ChaCha8Rng) -> Result<(ExtField, Vec<u64>)> {
    let field = f.ring().clone();
    let monic = f.monic();
    // distinct roots only: repeated factors carry no new field information
    let sqfree = monic.exact_quo(&monic.gcd(&monic.derivative())?)?;
    let (block, d) = distinct_degree(&sqfree)?
        .into_iter()
        .min_by_key(|(_, d)| *d)
        .ok_or_else(|| Error::Internal("polynomial has no irreducible factor".into()))?;
    if d == 1 {
        let r = roots(&block, rng.next_seed())?;
        return Ok((field, r[0].clone()));
    }
    if field.degree() * d > TOWER_DEGREE_LIMIT {
        return Err(Error::Budget(format!(
            "extension of degree {} exceeds the tower limit {TOWER_DEGREE_LIMIT}",
            field.degree() * d
        )));
    }
    let mut parts = equal_degree(&block, d, rng)?;
    parts.sort_by_key(|g| g.sort_key());
    let top = field.extend_unchecked(&parts[0])?;
    let g = top.generator();
    Ok((top, g))
}

trait NextSeed {
    fn next_seed(&mut self) -> u64;
}

impl NextSeed for ChaCha8Rng {
    fn next_seed(&mut self) -> u64 {
        rand::RngCore::next_u64(self)
    }
}

/// Walk `x_1, ..., x_n` with `theta(x_1^p) = 0` and
/// `eta_{x~ = x_{k-1}}(x_k^p) = 0`, then find `y_n` and check the order.
pub fn torsion_tower(data: &PrimeData, c: &CurveSpec, n: u32, seed: u64) -> Result<TorsionWitness> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if c.p() != data.p {
        return Err(Error::MismatchedFields);
    }
    let base = &c.field;
    if base.is_zero(&eval_ext(data.theta.lead(), base, &c.s0, &c.t0)) {
        return Err(Error::Supersingular);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rel = |f: &ExtField| f.degree() / base.degree();

    let theta = data.theta.specialize(base, &c.s0, &c.t0);
    let (mut field, big_x) = adjoin_root(&theta, &mut rng)?;
    let mut x = field.pth_root(&big_x);
    let mut x_degrees = vec![rel(&field)];
    for _ in 1..n {
        let s0 = field.embed(base, &c.s0);
        let t0 = field.embed(base, &c.t0);
        let eta = data.eta.specialize(&field, &s0, &t0, &x);
        let (next, big_x) = adjoin_root(&eta, &mut rng)?;
        x = next.pth_root(&big_x);
        field = next;
        x_degrees.push(rel(&field));
    }

    let (s0, t0) = (field.embed(base, &c.s0), field.embed(base, &c.t0));
    let rhs = Curve { field: &field, a: s0, b: t0 }.rhs(&x);
    let y_poly = UniPoly::new(field.clone(), vec![field.neg(&rhs), field.zero(), field.one()], "Y");
    let (top, y, y_in_x_field) = match roots(&y_poly, rng.next_seed())?.into_iter().next() {
        Some(y) => (field.clone(), y, true),
        None => {
            let top = field.extend_unchecked(&y_poly)?;
            let y = top.generator();
            (top, y, false)
        }
    };
    let x = top.embed(&field, &x);
    let e = Curve { field: &top, a: top.embed(base, &c.s0), b: top.embed(base, &c.t0) };
    let pt = Point::Affine(x.clone(), y.clone());
    let p = data.p;
    let below = e.mul(&pt, p.pow(n - 1));
    let exact_order = e.contains(&pt) && below != Point::Infinity && e.mul(&below, p) == Point::Infinity;
    Ok(TorsionWitness {
        n,
        degree: rel(&top),
        x_degrees,
        y_in_x_field,
        exact_order,
        field: top,
        x,
        y,
    })
}
