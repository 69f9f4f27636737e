use std::fmt;
use std::sync::Arc;

use rand::Rng as RandRng;

use super::factor::is_irreducible;
use super::prime::PrimeField;
use super::{Field, Ring, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
struct Level {
    degree: usize,
    /// Non-leading coefficients of the monic modulus, each an element of the
    /// level below in flattened coordinates.
    modulus: Vec<Vec<u64>>,
}

#[derive(PartialEq, Eq)]
struct Tower {
    base: PrimeField,
    levels: Vec<Level>,
    /// `sizes[d]` is the absolute degree of the field at depth `d`.
    sizes: Vec<usize>,
}

/// A finite field `F_{p^k}` presented as a tower of simple extensions over
/// `F_p`.
///
/// Every level adjoins a root of a monic irreducible polynomial over the level
/// below, so elements are flat coordinate vectors in the product basis. A
/// field built by [`field_make`] is a single level over `F_p`; the torsion
/// code keeps stacking levels on top of that, and any prefix of the tower is
/// itself a valid (sub)field whose elements embed by zero padding.
#[derive(Clone)]
pub struct ExtField {
    tower: Arc<Tower>,
    depth: usize,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        if self.depth != other.depth {
            return false;
        }
        if Arc::ptr_eq(&self.tower, &other.tower) {
            return true;
        }
        self.tower.base == other.tower.base
            && self.tower.levels[..self.depth] == other.tower.levels[..other.depth]
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.tower.base.p(), self.size())
    }
}

/// The field of order `p^k` with the first monic irreducible modulus in
/// lexicographic order of `(c_0, c_1, ..., c_{k-1})`.
pub fn field_make(p: u64, k: usize) -> Result<ExtField> {
    let base = PrimeField::new(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
    }
    let prime = ExtField::prime(base);
    if k == 1 {
        return Ok(prime);
    }
    let total = (p as u128)
        .checked_pow(k as u32)
        .filter(|&t| t <= u64::MAX as u128)
        .ok_or_else(|| Error::Budget(format!("modulus search space p^{k} is too large")))?
        as u64;
    for idx in 0..total {
        // most significant digit is c_0
        let mut c = vec![0u64; k + 1];
        let mut rest = idx;
        for slot in (0..k).rev() {
            c[slot] = rest % p;
            rest /= p;
        }
        c[k] = 1;
        if c[0] == 0 {
            continue;
        }
        let f = UniPoly::new(base, c, "T");
        if is_irreducible(&f)? {
            let lifted = f.map(&prime, |&v| vec![v]);
            return prime.extend_unchecked(&lifted);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {k} over F_{p}")))
}

impl ExtField {
    /// `F_p` itself as a depth-zero tower.
    pub fn prime(base: PrimeField) -> Self {
        ExtField {
            tower: Arc::new(Tower { base, levels: Vec::new(), sizes: vec![1] }),
            depth: 0,
        }
    }

    pub fn base(&self) -> PrimeField {
        self.tower.base
    }

    fn size(&self) -> usize {
        self.tower.sizes[self.depth]
    }

    /// Number of levels above `F_p`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Degree of the top level over the one below it.
    pub fn relative_degree(&self) -> usize {
        match self.depth {
            0 => 1,
            d => self.tower.levels[d - 1].degree,
        }
    }

    /// The field one level down, or `None` at `F_p`.
    pub fn subfield(&self) -> Option<ExtField> {
        (self.depth > 0).then(|| ExtField { tower: self.tower.clone(), depth: self.depth - 1 })
    }

    /// The defining polynomial of the top level over [`Self::subfield`]; `T`
    /// for the prime field.
    pub fn modulus(&self) -> UniPoly<ExtField> {
        match self.subfield() {
            None => UniPoly::x(self.clone(), "T"),
            Some(sub) => {
                let lvl = &self.tower.levels[self.depth - 1];
                let mut c = lvl.modulus.clone();
                c.push(sub.one());
                UniPoly::new(sub, c, "T")
            }
        }
    }

    /// The adjoined root of the top level.
    pub fn generator(&self) -> Vec<u64> {
        let mut g = vec![0; self.size()];
        match self.depth {
            0 => g[0] = 0,
            d => g[self.tower.sizes[d - 1]] = 1,
        }
        g
    }

    /// `true` when `sub` is a prefix of this tower.
    pub fn contains(&self, sub: &ExtField) -> bool {
        sub.depth <= self.depth
            && self.tower.base == sub.tower.base
            && (Arc::ptr_eq(&self.tower, &sub.tower)
                || self.tower.levels[..sub.depth] == sub.tower.levels[..sub.depth])
    }

    /// Embed an element of a prefix subfield.
    pub fn embed(&self, sub: &ExtField, a: &[u64]) -> Vec<u64> {
        debug_assert!(self.contains(sub));
        let mut v = a.to_vec();
        v.resize(self.size(), 0);
        v
    }

    pub fn from_prime(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.size()];
        v[0] = a % self.tower.base.p();
        v
    }

    /// `Some(c)` when the element lies in `F_p`.
    pub fn as_prime(&self, a: &[u64]) -> Option<u64> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }

    /// Adjoin a root of a monic irreducible polynomial over this field.
    pub fn extend(&self, modulus: &UniPoly<ExtField>) -> Result<ExtField> {
        if modulus.ring() != self {
            return Err(Error::MismatchedFields);
        }
        if !is_irreducible(modulus)? {
            return Err(Error::Reducible);
        }
        self.extend_unchecked(modulus)
    }

    /// As [`Self::extend`], for moduli already known to be irreducible (for
    /// instance factors returned by the factorizer).
    pub fn extend_unchecked(&self, modulus: &UniPoly<ExtField>) -> Result<ExtField> {
        let deg = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Err(Error::InvalidArgument("modulus must have positive degree".into()));
        }
        let m = modulus.monic();
        let level = Level { degree: deg, modulus: m.coeffs()[..deg].to_vec() };
        let mut levels = self.tower.levels[..self.depth].to_vec();
        levels.push(level);
        let mut sizes = self.tower.sizes[..=self.depth].to_vec();
        sizes.push(self.size() * deg);
        Ok(ExtField {
            tower: Arc::new(Tower { base: self.tower.base, levels, sizes }),
            depth: self.depth + 1,
        })
    }

    fn p(&self) -> u64 {
        self.tower.base.p()
    }

    fn mul_at(&self, d: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p();
        if d == 0 {
            return vec![a[0] * b[0] % p];
        }
        let lvl = &self.tower.levels[d - 1];
        let k = lvl.degree;
        if d == 1 {
            let mut acc = vec![0u128; 2 * k - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] += (x * y) as u128;
                }
            }
            let mut prod: Vec<u64> = acc.iter().map(|&v| (v % p as u128) as u64).collect();
            for t in (k..2 * k - 1).rev() {
                let c = prod[t];
                if c == 0 {
                    continue;
                }
                let nc = p - c;
                for (i, m) in lvl.modulus.iter().enumerate() {
                    prod[t - k + i] = (prod[t - k + i] + nc * m[0]) % p;
                }
            }
            prod.truncate(k);
            return prod;
        }
        let s = self.tower.sizes[d - 1];
        let mut prod = vec![0u64; (2 * k - 1) * s];
        for i in 0..k {
            let ai = &a[i * s..(i + 1) * s];
            if ai.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..k {
                let bj = &b[j * s..(j + 1) * s];
                if bj.iter().all(|&c| c == 0) {
                    continue;
                }
                let m = self.mul_at(d - 1, ai, bj);
                add_into(p, &mut prod[(i + j) * s..(i + j + 1) * s], &m);
            }
        }
        for t in (k..2 * k - 1).rev() {
            let c = prod[t * s..(t + 1) * s].to_vec();
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            for (i, m) in lvl.modulus.iter().enumerate() {
                if m.iter().all(|&v| v == 0) {
                    continue;
                }
                let cm = self.mul_at(d - 1, &c, m);
                sub_into(p, &mut prod[(t - k + i) * s..(t - k + i + 1) * s], &cm);
            }
        }
        prod.truncate(k * s);
        prod
    }
}

fn add_into(p: u64, acc: &mut [u64], x: &[u64]) {
    for (a, &b) in acc.iter_mut().zip(x) {
        let s = *a + b;
        *a = if s >= p { s - p } else { s };
    }
}

fn sub_into(p: u64, acc: &mut [u64], x: &[u64]) {
    for (a, &b) in acc.iter_mut().zip(x) {
        *a = if *a >= b { *a - b } else { *a + p - b };
    }
}

impl Ring for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.size()]
    }
    fn one(&self) -> Vec<u64> {
        self.from_prime(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut r = a.clone();
        add_into(self.p(), &mut r, b);
        r
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut r = a.clone();
        sub_into(self.p(), &mut r, b);
        r
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let p = self.p();
        a.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.mul_at(self.depth, a, b)
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        self.from_prime(self.tower.base.reduce_i64(v))
    }
    fn exact_div(&self, a: &Vec<u64>, b: &Vec<u64>) -> Option<Vec<u64>> {
        self.div(a, b)
    }
    fn tag(&self) -> String {
        format!("Fq:{}^{}", self.p(), self.size())
    }
    fn elem_to_string(&self, a: &Vec<u64>) -> String {
        if a.len() == 1 {
            return a[0].to_string();
        }
        let parts: Vec<String> = a.iter().map(u64::to_string).collect();
        format!("[{}]", parts.join(","))
    }
    fn parse_elem(&self, s: &str) -> Option<Vec<u64>> {
        let s = s.trim();
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        let mut v = Vec::new();
        for part in inner.split(',') {
            let x: i64 = part.trim().parse().ok()?;
            v.push(self.tower.base.reduce_i64(x));
        }
        if v.len() > self.size() {
            return None;
        }
        v.resize(self.size(), 0);
        Some(v)
    }
    fn add_assign(&self, acc: &mut Vec<u64>, b: &Vec<u64>) {
        add_into(self.p(), acc, b);
    }
}

impl Field for ExtField {
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let Some(sub) = self.subfield() else {
            return self.tower.base.inv_u64(a[0]).map(|x| vec![x]);
        };
        let s = sub.size();
        let blocks: Vec<Vec<u64>> = a.chunks(s).map(<[u64]>::to_vec).collect();
        let f = UniPoly::new(sub.clone(), blocks, "T");
        let (g, u, _) = f.ext_gcd(&self.modulus()).ok()?;
        debug_assert!(g.is_one());
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.relative_degree() {
            out.extend(u.coeff(i));
        }
        Some(out)
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn degree(&self) -> usize {
        self.size()
    }
    fn from_u64(&self, v: u64) -> Vec<u64> {
        self.from_prime(v)
    }
    fn coords(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }
    fn from_coords(&self, c: &[u64]) -> Vec<u64> {
        let p = self.p();
        let mut v: Vec<u64> = c.iter().take(self.size()).map(|&x| x % p).collect();
        v.resize(self.size(), 0);
        v
    }
    fn random<R: RandRng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let p = self.p();
        (0..self.size()).map(|_| rng.gen_range(0..p)).collect()
    }
}
