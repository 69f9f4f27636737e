use std::fmt;

use num_bigint::BigUint;

use super::{Field, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a ring, lowest coefficient first.
///
/// Stored coefficient vectors never carry trailing zeros, so the zero
/// polynomial is the empty vector and its degree is `None`.
#[derive(Clone)]
pub struct UniPoly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
    var: &'static str,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    /// Descending powers, `c*v^k` terms joined by ` + `, unit coefficients
    /// elided on non-constant terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, k),
            };
            if k == 0 {
                write!(f, "{}", self.ring.elem_to_string(c))?;
            } else if self.ring.is_one(c) {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", self.ring.elem_to_string(c), mono)?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>, var: &'static str) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs, var }
    }

    pub fn from_i64s(ring: R, coeffs: &[i64], var: &'static str) -> Self {
        let c = coeffs.iter().map(|&v| ring.from_i64(v)).collect();
        Self::new(ring, c, var)
    }

    pub fn zero(ring: R, var: &'static str) -> Self {
        UniPoly { ring, coeffs: Vec::new(), var }
    }

    pub fn one(ring: R, var: &'static str) -> Self {
        let one = ring.one();
        Self::new(ring, vec![one], var)
    }

    pub fn constant(ring: R, c: R::Elem, var: &'static str) -> Self {
        Self::new(ring, vec![c], var)
    }

    pub fn monomial(ring: R, c: R::Elem, d: usize, var: &'static str) -> Self {
        let mut coeffs = vec![ring.zero(); d + 1];
        coeffs[d] = c;
        Self::new(ring, coeffs, var)
    }

    /// The variable itself.
    pub fn x(ring: R, var: &'static str) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 1, var)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn with_var(mut self, var: &'static str) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.ring.is_one(&self.coeffs[0])
    }

    pub fn lead(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    fn same(&self, coeffs: Vec<R::Elem>) -> Self {
        Self::new(self.ring.clone(), coeffs, self.var)
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert!(self.ring == o.ring);
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.ring.zero();
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = o.coeffs.get(i).unwrap_or(&z);
                self.ring.add(a, b)
            })
            .collect();
        self.same(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert!(self.ring == o.ring);
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.ring.zero();
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = o.coeffs.get(i).unwrap_or(&z);
                self.ring.sub(a, b)
            })
            .collect();
        self.same(c)
    }

    pub fn neg(&self) -> Self {
        self.same(self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert!(self.ring == o.ring);
        if self.is_zero() || o.is_zero() {
            return self.same(Vec::new());
        }
        let mut c = vec![self.ring.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                self.ring.mul_acc(&mut c[i + j], a, b);
            }
        }
        self.same(c)
    }

    pub fn scale(&self, s: &R::Elem) -> Self {
        self.same(self.coeffs.iter().map(|c| self.ring.mul(c, s)).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone(), self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.mul(&acc, x);
            self.ring.add_assign(&mut acc, c);
        }
        acc
    }

    /// Substitute a polynomial for the variable.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = self.same(Vec::new());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&self.same(vec![c.clone()]));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| self.ring.mul(c, &self.ring.from_i64(k as i64)))
            .collect();
        self.same(c)
    }

    pub fn map<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> UniPoly<S> {
        UniPoly::new(target.clone(), self.coeffs.iter().map(f).collect(), self.var)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Result<Self> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let lb = b.coeffs[db].clone();
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Ok(self.clone());
        };
        if da < db {
            return Ok(self.clone());
        }
        let delta = da - db;
        let mut steps = 0;
        let mut k = da;
        loop {
            if r.len() > k && !self.ring.is_zero(&r[k]) {
                let c = r[k].clone();
                for x in r.iter_mut() {
                    *x = self.ring.mul(x, &lb);
                }
                for (i, bc) in b.coeffs.iter().enumerate() {
                    let t = self.ring.mul(&c, bc);
                    r[k - db + i] = self.ring.sub(&r[k - db + i], &t);
                }
            } else {
                for x in r.iter_mut() {
                    *x = self.ring.mul(x, &lb);
                }
            }
            steps += 1;
            if k == db {
                break;
            }
            k -= 1;
        }
        debug_assert_eq!(steps, delta + 1);
        r.truncate(db);
        Ok(self.same(r))
    }

    /// Divide every coefficient exactly by a ring element.
    pub fn exact_div_scalar(&self, d: &R::Elem) -> Option<Self> {
        let c: Option<Vec<_>> = self
            .coeffs
            .iter()
            .map(|c| self.ring.exact_div(c, d))
            .collect();
        c.map(|c| self.same(c))
    }
}

impl<F: Field> UniPoly<F> {
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let li = self.ring.inv(l).expect("nonzero leading coefficient");
                self.scale(&li)
            }
        }
    }

    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        if self.ring != b.ring {
            return Err(Error::MismatchedFields);
        }
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let li = self.ring.inv(&b.coeffs[db]).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((self.same(Vec::new()), self.clone()));
        }
        let mut q = vec![self.ring.zero(); r.len() - db];
        for k in (db..r.len()).rev() {
            if self.ring.is_zero(&r[k]) {
                continue;
            }
            let c = self.ring.mul(&r[k], &li);
            for (i, bc) in b.coeffs.iter().enumerate() {
                let t = self.ring.mul(&c, bc);
                r[k - db + i] = self.ring.sub(&r[k - db + i], &t);
            }
            q[k - db] = c;
        }
        r.truncate(db);
        Ok((self.same(q), self.same(r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient; errors carry the nonzero remainder.
    pub fn exact_quo(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision { remainder: r.to_string() })
        }
    }

    pub fn divides(&self, a: &Self) -> Result<bool> {
        Ok(a.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        if self.ring != o.ring {
            return Err(Error::MismatchedFields);
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> Result<(Self, Self, Self)> {
        if self.ring != o.ring {
            return Err(Error::MismatchedFields);
        }
        let zero = self.same(Vec::new());
        let one = Self::one(self.ring.clone(), self.var);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if let Some(l) = r0.lead() {
            let li = self.ring.inv(l).expect("nonzero");
            Ok((r0.scale(&li), s0.scale(&li), t0.scale(&li)))
        } else {
            Ok((r0, s0, t0))
        }
    }

    pub fn mulmod(&self, b: &Self, m: &Self) -> Result<Self> {
        self.mul(b).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        let base = self.rem(m)?;
        let mut acc = Self::one(self.ring.clone(), self.var).rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m)?;
            if e.bit(i) {
                acc = acc.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative())?.is_one())
    }

    pub fn from_roots(ring: F, roots: &[F::Elem], var: &'static str) -> Self {
        let mut acc = Self::one(ring.clone(), var);
        for r in roots {
            let lin = Self::new(ring.clone(), vec![ring.neg(r), ring.one()], var);
            acc = acc.mul(&lin);
        }
        acc
    }

    /// Canonical ordering key: degree, then coordinates from the constant
    /// term upward.
    pub fn sort_key(&self) -> (usize, Vec<Vec<u64>>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().map(|c| self.ring.coords(c)).collect(),
        )
    }
}

/// The polynomial ring `F[var]` viewed as a coefficient ring, used for
/// resultants with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    var: &'static str,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, var: &'static str) -> Self {
        PolyRing { field, var }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = UniPoly<F>;

    fn zero(&self) -> UniPoly<F> {
        UniPoly::zero(self.field.clone(), self.var)
    }
    fn one(&self) -> UniPoly<F> {
        UniPoly::one(self.field.clone(), self.var)
    }
    fn is_zero(&self, a: &UniPoly<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a.add(b)
    }
    fn sub(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a.sub(b)
    }
    fn neg(&self, a: &UniPoly<F>) -> UniPoly<F> {
        a.neg()
    }
    fn mul(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a.mul(b)
    }
    fn from_i64(&self, v: i64) -> UniPoly<F> {
        UniPoly::constant(self.field.clone(), self.field.from_i64(v), self.var)
    }
    fn exact_div(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> Option<UniPoly<F>> {
        a.exact_quo(b).ok()
    }
    fn tag(&self) -> String {
        format!("{}[{}]", self.field.tag(), self.var)
    }
    fn elem_to_string(&self, a: &UniPoly<F>) -> String {
        format!("({})", a)
    }
    fn parse_elem(&self, _s: &str) -> Option<UniPoly<F>> {
        None
    }
}
