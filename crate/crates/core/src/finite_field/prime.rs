use rand::Rng as RandRng;

use super::{Field, Ring};
use crate::error::{Error, Result};

/// Deterministic primality test; trial division is plenty below `2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field `F_p` with `5 <= p < 2^31`.
///
/// Elements are canonical residues in `[0, p)`. Products of two residues fit
/// in a `u64`, so no wide reduction is needed for a single multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 {
            return Err(if p >= 2 && is_prime(p) {
                Error::PrimeTooSmall(p)
            } else {
                Error::NotPrime(p)
            });
        }
        if p >= 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv_u64(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i64(t0))
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inv_u64(*b).map(|bi| self.mul(a, &bi))
    }
    fn tag(&self) -> String {
        format!("Fp:{}", self.p)
    }
    fn elem_to_string(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Option<u64> {
        let v: i64 = s.trim().parse().ok()?;
        Some(self.reduce_i64(v))
    }
    #[inline]
    fn add_assign(&self, acc: &mut u64, b: &u64) {
        *acc = self.add(acc, b);
    }
    #[inline]
    fn mul_acc(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = (*acc + a * b) % self.p;
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        self.inv_u64(*a)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_coords(&self, c: &[u64]) -> u64 {
        c.first().copied().unwrap_or(0) % self.p
    }
    fn random<R: RandRng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_characteristics() {
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(3), Err(Error::PrimeTooSmall(3)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(2147483659), Err(Error::PrimeTooLarge(2147483659)));
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn large_prime_products_do_not_overflow() {
        let f = PrimeField::new(2147483647).unwrap();
        let a = 2147483646;
        assert_eq!(f.mul(&a, &a), 1);
        let mut acc = a;
        f.mul_acc(&mut acc, &a, &a);
        assert_eq!(acc, 0);
    }
}
