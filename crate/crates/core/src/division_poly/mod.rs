//! Division polynomials of `y^2 = x^3 + s x + t` over `Z[s,t]` and
//! `F_p[s,t]`, the x-coordinate of multiplication by `m`, and the polynomial
//! `sigma(x) = -psi_{p+1} psi_{p-1} + x psi_p^2 - x~ psi_p^2` whose zeros are
//! the points `S` with `x([p]S) = x~`.

mod cache;

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::finite_field::{IntegerRing, PrimeField, Ring};
use crate::weighted_poly::{WeightedBivar, XPoly};

pub use cache::CACHE_FORMAT_VERSION;

/// Memoized `psi_m` over one coefficient ring.
///
/// Entries are stored as [`XPoly`] with the y-parity set exactly for even
/// `m`, so `psi_m = y * (x-part)` there. Only the indices a request actually
/// needs are computed; [`DivPolyTable::warm`] fills a whole prefix.
pub struct DivPolyTable<R: Ring> {
    ring: R,
    table: BTreeMap<u32, XPoly<R>>,
    cache_dir: Option<PathBuf>,
}

impl<R: Ring> DivPolyTable<R> {
    pub fn new(ring: R) -> Self {
        let mut t = DivPolyTable { ring, table: BTreeMap::new(), cache_dir: None };
        t.seed();
        t
    }

    /// A table that reads and writes one file per computed `psi_m` in `dir`.
    pub fn with_cache(ring: R, dir: impl Into<PathBuf>) -> Self {
        let mut t = Self::new(ring);
        t.cache_dir = Some(dir.into());
        t
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    fn seed(&mut self) {
        let r = self.ring.clone();
        let poly = |terms: &[(i64, u32, u32, usize)], parity: bool| {
            terms
                .iter()
                .fold(XPoly::zero(r.clone()), |acc, &(c, s, t, d)| {
                    acc.add(&XPoly::monomial_i64(r.clone(), c, s, t, d))
                })
                .with_parity(parity)
        };
        self.table.insert(1, XPoly::one(r.clone()));
        self.table.insert(2, poly(&[(2, 0, 0, 0)], true));
        self.table.insert(
            3,
            poly(&[(3, 0, 0, 4), (6, 1, 0, 2), (12, 0, 1, 1), (-1, 2, 0, 0)], false),
        );
        self.table.insert(
            4,
            poly(
                &[
                    (4, 0, 0, 6),
                    (20, 1, 0, 4),
                    (80, 0, 1, 3),
                    (-20, 2, 0, 2),
                    (-16, 1, 1, 1),
                    (-32, 0, 2, 0),
                    (-4, 3, 0, 0),
                ],
                true,
            ),
        );
    }

    /// Indices whose values `psi_m` is built from.
    fn deps(m: u32) -> Vec<u32> {
        let k = m / 2;
        if m % 2 == 1 {
            vec![k - 1, k, k + 1, k + 2]
        } else {
            vec![k - 2, k - 1, k, k + 1, k + 2]
        }
    }

    pub fn get(&mut self, m: u32) -> Result<XPoly<R>> {
        if m == 0 {
            return Err(Error::InvalidArgument("division polynomial index must be at least 1".into()));
        }
        self.ensure(m)?;
        Ok(self.table[&m].clone())
    }

    /// Compute `psi_1, ..., psi_{m_max}`.
    pub fn warm(&mut self, m_max: u32) -> Result<()> {
        for m in 1..=m_max {
            self.ensure(m)?;
        }
        Ok(())
    }

    fn ensure(&mut self, m: u32) -> Result<()> {
        if self.table.contains_key(&m) {
            return Ok(());
        }
        if let Some(dir) = &self.cache_dir {
            if let Some(p) = cache::load(dir, &self.ring, m) {
                self.table.insert(m, p);
                return Ok(());
            }
        }
        for d in Self::deps(m) {
            self.ensure(d)?;
        }
        let p = self.compute(m)?;
        if let Some(dir) = &self.cache_dir {
            cache::store(dir, &self.ring, m, &p)?;
        }
        self.table.insert(m, p);
        Ok(())
    }

    /// x-part of `psi_i`, parity dropped.
    fn x_part(&self, i: u32) -> XPoly<R> {
        self.table[&i].clone().with_parity(false)
    }

    fn compute(&self, m: u32) -> Result<XPoly<R>> {
        let k = m / 2;
        let psi = |i: u32| &self.table[&i];
        if m % 2 == 1 {
            // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
            let a = psi(k + 2).mul(&psi(k).square().mul(psi(k)));
            let b = psi(k - 1).mul(&psi(k + 1).square().mul(psi(k + 1)));
            return Ok(a.sub(&b).with_parity(false));
        }
        // psi_{2k} / y = P_k (P_{k+2} P_{k-1}^2 - P_{k-2} P_{k+1}^2) / 2 on
        // x-parts P_i, for either parity of k
        let inner = self
            .x_part(k + 2)
            .mul(&self.x_part(k - 1).square())
            .sub(&self.x_part(k - 2).mul(&self.x_part(k + 1).square()));
        let twice = self.x_part(k).mul(&inner);
        let two = self.ring.from_i64(2);
        let half = twice.exact_div_scalar(&two).ok_or_else(|| {
            Error::Internal(format!("psi_{m}: halving step was not exact"))
        })?;
        Ok(half.with_parity(true))
    }

    /// Numerator and denominator of `x([m]P)`, both free of `y`.
    pub fn mult_by_m_x(&mut self, m: u32) -> Result<(XPoly<R>, XPoly<R>)> {
        if m < 2 {
            return Err(Error::InvalidArgument("multiplier must be at least 2".into()));
        }
        let den = self.get(m)?.square();
        let num = XPoly::x(self.ring.clone())
            .mul(&den)
            .sub(&self.get(m - 1)?.mul(&self.get(m + 1)?));
        Ok((num, den))
    }

    /// `sigma` for the prime `p`, split by the power of `x~`.
    pub fn sigma(&mut self, p: u32) -> Result<SigmaPoly<R>> {
        let sq = self.get(p)?.square();
        let base = XPoly::x(self.ring.clone())
            .mul(&sq)
            .sub(&self.get(p + 1)?.mul(&self.get(p - 1)?));
        Ok(SigmaPoly { base, xt: sq.neg() })
    }
}

/// `sigma(x) = base(x) + x~ * xt(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaPoly<R: Ring> {
    pub base: XPoly<R>,
    pub xt: XPoly<R>,
}

impl<R: Ring> SigmaPoly<R> {
    pub fn degree(&self) -> Option<usize> {
        self.base.degree().max(self.xt.degree())
    }

    /// Coefficient of `x^d` as the pair (x~-free part, x~-linear part).
    pub fn coeff(&self, d: usize) -> (WeightedBivar<R>, WeightedBivar<R>) {
        (self.base.coeff(d), self.xt.coeff(d))
    }
}

pub fn division_poly<R: Ring>(m: u32, ring: R) -> Result<XPoly<R>> {
    DivPolyTable::new(ring).get(m)
}

pub fn mult_by_m_x<R: Ring>(m: u32, ring: R) -> Result<(XPoly<R>, XPoly<R>)> {
    DivPolyTable::new(ring).mult_by_m_x(m)
}

pub fn sigma_poly<R: Ring>(p: u32, ring: R) -> Result<SigmaPoly<R>> {
    if p < 2 {
        return Err(Error::InvalidArgument("sigma needs p >= 2".into()));
    }
    DivPolyTable::new(ring).sigma(p)
}

/// Coefficientwise reduction `Z[s,t][x] -> F_p[s,t][x]`.
pub fn reduce_mod_p(f: &XPoly<IntegerRing>, field: PrimeField) -> XPoly<PrimeField> {
    let p = BigInt::from(field.p());
    f.map(&field, |c| {
        let r = c.mod_floor(&p);
        u64::try_from(&r).expect("residue fits")
    })
}
