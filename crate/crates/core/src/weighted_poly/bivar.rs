use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finite_field::{Field, Ring};

/// A monomial `s^s t^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub s: u32,
    pub t: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { s: 0, t: 0 };

    pub fn new(s: u32, t: u32) -> Self {
        Mono { s, t }
    }

    /// `wt(s) = 2`, `wt(t) = 3`.
    pub fn weight(self) -> u32 {
        2 * self.s + 3 * self.t
    }

    pub fn divides(self, other: Mono) -> bool {
        self.s <= other.s && self.t <= other.t
    }

    fn mul(self, o: Mono) -> Mono {
        Mono { s: self.s + o.s, t: self.t + o.t }
    }

    fn div(self, o: Mono) -> Mono {
        Mono { s: self.s - o.s, t: self.t - o.t }
    }
}

/// Result of [`WeightedBivar::weight_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(u32),
    Inhomogeneous,
}

impl Weight {
    pub fn value(self) -> Option<u32> {
        match self {
            Weight::Homogeneous(w) => Some(w),
            Weight::Inhomogeneous => None,
        }
    }
}

/// Sparse polynomial in `s, t` with nonzero coefficients only.
///
/// Terms are kept sorted by `s` descending, then `t` descending, so the first
/// term is the leading term for the lexicographic order with `s > t`.
#[derive(Clone)]
pub struct WeightedBivar<R: Ring> {
    ring: R,
    terms: Vec<(Mono, R::Elem)>,
}

impl<R: Ring> PartialEq for WeightedBivar<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<R: Ring> fmt::Debug for WeightedBivar<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<R: Ring> fmt::Display for WeightedBivar<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| super::text::term_string(&self.ring, c, m.s, m.t, 0))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> WeightedBivar<R> {
    /// Build from arbitrary terms; duplicates are merged and zeros dropped.
    pub fn new(ring: R, terms: impl IntoIterator<Item = (Mono, R::Elem)>) -> Self {
        let mut map: BTreeMap<Mono, R::Elem> = BTreeMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => ring.add_assign(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(ring, map)
    }

    fn from_map(ring: R, map: BTreeMap<Mono, R::Elem>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !ring.is_zero(c))
            .collect();
        WeightedBivar { ring, terms }
    }

    /// Terms already sorted descending with no zeros and no duplicates.
    pub(crate) fn from_sorted(ring: R, terms: Vec<(Mono, R::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !ring.is_zero(c)));
        WeightedBivar { ring, terms }
    }

    pub fn from_i64s(ring: R, terms: &[(u32, u32, i64)]) -> Self {
        let it: Vec<_> = terms
            .iter()
            .map(|&(s, t, c)| (Mono::new(s, t), ring.from_i64(c)))
            .collect();
        Self::new(ring, it)
    }

    pub fn zero(ring: R) -> Self {
        WeightedBivar { ring, terms: Vec::new() }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::new(ring, [(Mono::ONE, c)])
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::constant(ring, one)
    }

    pub fn monomial(ring: R, c: R::Elem, s: u32, t: u32) -> Self {
        Self::new(ring, [(Mono::new(s, t), c)])
    }

    pub fn s(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 1, 0)
    }

    pub fn t(ring: R) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 0, 1)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> &[(Mono, R::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.ring.is_one(&self.terms[0].1)
    }

    /// Leading term (largest `s`, then largest `t`).
    pub fn lead(&self) -> Option<&(Mono, R::Elem)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: Mono) -> R::Elem {
        self.terms
            .iter()
            .find(|(k, _)| *k == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.zero())
    }

    fn to_map(&self) -> BTreeMap<Mono, R::Elem> {
        self.terms.iter().cloned().collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert!(self.ring == o.ring);
        let mut map = self.to_map();
        for (m, c) in &o.terms {
            match map.get_mut(m) {
                Some(acc) => self.ring.add_assign(acc, c),
                None => {
                    map.insert(*m, c.clone());
                }
            }
        }
        Self::from_map(self.ring.clone(), map)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, self.ring.neg(c))).collect();
        WeightedBivar { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert!(self.ring == o.ring);
        let mut map: BTreeMap<Mono, R::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(*mb);
                match map.get_mut(&m) {
                    Some(acc) => self.ring.mul_acc(acc, ca, cb),
                    None => {
                        map.insert(m, self.ring.mul(ca, cb));
                    }
                }
            }
        }
        Self::from_map(self.ring.clone(), map)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let terms = self.terms.iter().map(|(m, a)| (*m, self.ring.mul(a, c)));
        Self::new(self.ring.clone(), terms.collect::<Vec<_>>())
    }

    pub fn mul_mono(&self, mono: Mono) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect();
        WeightedBivar { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.ring.clone()), |acc, _| acc.mul(self))
    }

    /// Exact quotient by multivariate division; a nonzero remainder is
    /// reported in the error.
    pub fn exact_div(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision { remainder: r.to_string() })
        }
    }

    /// Division with remainder for the lexicographic order `s > t`.
    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self)> {
        let (mb, cb) = b.lead().cloned().ok_or(Error::ZeroPolynomial)?;
        let mut r = self.to_map();
        let mut q: Vec<(Mono, R::Elem)> = Vec::new();
        let mut rem: Vec<(Mono, R::Elem)> = Vec::new();
        while let Some((m, c)) = r.pop_last() {
            if self.ring.is_zero(&c) {
                continue;
            }
            let qc = if mb.divides(m) { self.ring.exact_div(&c, &cb) } else { None };
            let Some(qc) = qc else {
                rem.push((m, c));
                continue;
            };
            let qm = m.div(mb);
            for (m2, c2) in b.terms.iter().skip(1) {
                let k = m2.mul(qm);
                let t = self.ring.mul(&qc, c2);
                match r.get_mut(&k) {
                    Some(acc) => *acc = self.ring.sub(acc, &t),
                    None => {
                        r.insert(k, self.ring.neg(&t));
                    }
                }
            }
            q.push((qm, qc));
        }
        Ok((
            Self::new(self.ring.clone(), q),
            Self::new(self.ring.clone(), rem),
        ))
    }

    /// Common weight of all monomials.
    pub fn weight_of(&self) -> Result<Weight> {
        let first = self.terms.first().ok_or(Error::ZeroPolynomial)?.0.weight();
        if self.terms.iter().all(|(m, _)| m.weight() == first) {
            Ok(Weight::Homogeneous(first))
        } else {
            Ok(Weight::Inhomogeneous)
        }
    }

    pub fn homogeneous_weight(&self) -> Result<u32> {
        self.weight_of()?.value().ok_or(Error::Inhomogeneous)
    }

    pub fn eval(&self, s0: &R::Elem, t0: &R::Elem) -> R::Elem {
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let v = self.ring.mul(&self.ring.pow(s0, m.s as u64), &self.ring.pow(t0, m.t as u64));
            self.ring.mul_acc(&mut acc, c, &v);
        }
        acc
    }

    /// Evaluate in another ring, lifting coefficients with `lift`.
    pub fn eval_in<S: Ring>(
        &self,
        target: &S,
        lift: impl Fn(&R::Elem) -> S::Elem,
        s0: &S::Elem,
        t0: &S::Elem,
    ) -> S::Elem {
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let v = target.mul(&target.pow(s0, m.s as u64), &target.pow(t0, m.t as u64));
            target.mul_acc(&mut acc, &lift(c), &v);
        }
        acc
    }

    pub fn map<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> WeightedBivar<S> {
        WeightedBivar::new(
            target.clone(),
            self.terms.iter().map(|(m, c)| (*m, f(c))).collect::<Vec<_>>(),
        )
    }

    /// Number of times `q` divides `self`; `None` for the zero polynomial.
    pub fn ord(&self, q: &Self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Ok(None);
        }
        if q.lead().map(|(m, _)| *m == Mono::ONE).unwrap_or(true) {
            return Err(Error::InvalidArgument("order at a unit is undefined".into()));
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Ok(next) = cur.exact_div(q) {
            cur = next;
            k += 1;
        }
        Ok(Some(k))
    }
}

impl<F: Field> WeightedBivar<F> {
    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.ring.inv(c).expect("nonzero")),
        }
    }

    pub fn lead_coeff(&self) -> Option<F::Elem> {
        self.lead().map(|(_, c)| c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::{IntegerRing, PrimeField};

    fn z(terms: &[(u32, u32, i64)]) -> WeightedBivar<IntegerRing> {
        WeightedBivar::from_i64s(IntegerRing, terms)
    }

    #[test]
    fn ring_operations() {
        let a = z(&[(1, 0, 1), (0, 1, 1)]);
        let b = z(&[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(a.mul(&b), z(&[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(a.sub(&a), z(&[]));
    }

    #[test]
    fn exact_division() {
        let a = z(&[(2, 1, 1), (1, 2, 1)]);
        let st = z(&[(1, 1, 1)]);
        assert_eq!(a.exact_div(&st).unwrap(), z(&[(1, 0, 1), (0, 1, 1)]));
        let bad = z(&[(2, 0, 1), (0, 2, 1)]);
        let err = bad.exact_div(&z(&[(1, 0, 1)])).unwrap_err();
        assert_eq!(err, Error::InexactDivision { remainder: "1*t^2".into() });
    }

    #[test]
    fn weights() {
        let d = z(&[(3, 0, 4), (0, 2, 27)]);
        assert_eq!(d.weight_of().unwrap(), Weight::Homogeneous(6));
        assert_eq!(z(&[(1, 0, 1), (0, 1, 1)]).weight_of().unwrap(), Weight::Inhomogeneous);
        assert_eq!(z(&[]).weight_of(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn ord_counts_repeated_division() {
        let f = PrimeField::new(7).unwrap();
        let s = WeightedBivar::s(f);
        let a = WeightedBivar::from_i64s(f, &[(3, 1, 2), (2, 3, 1)]);
        assert_eq!(a.ord(&s).unwrap(), Some(2));
        assert_eq!(a.ord(&WeightedBivar::t(f)).unwrap(), Some(1));
        assert_eq!(WeightedBivar::zero(f).ord(&s).unwrap(), None);
    }
}
