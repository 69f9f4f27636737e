//! Exact arithmetic in `F_p`, `F_{p^k}` (including towers of extensions),
//! the integers, and univariate polynomials over them.
//!
//! Ring objects are explicit context values: elements are plain data and every
//! operation goes through the ring (`field.mul(&a, &b)`), which keeps a single
//! polynomial implementation usable over `F_p`, extension towers, `Z` and
//! `F_p[j]`.

mod ext;
mod factor;
mod integers;
mod poly;
mod prime;
mod resultant;

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng as RandRng;

pub use ext::{field_make, ExtField};
pub use factor::{
    distinct_degree, equal_degree, factor, is_irreducible, roots, roots_in,
    squarefree_decomposition, Factorization,
};
pub use integers::IntegerRing;
pub use poly::{PolyRing, UniPoly};
pub use prime::{is_prime, PrimeField};
pub use resultant::resultant;

/// A commutative ring with identity, given as a context object.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    /// `Some(q)` with `q * b == a`, or `None` when `b` does not divide `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Short tag identifying the ring in cache headers (`Z`, `Fp:7`, ...).
    fn tag(&self) -> String;
    fn elem_to_string(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    /// `acc += a * b`
    fn mul_acc(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        self.add_assign(acc, &t);
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A finite field of odd characteristic.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// Absolute degree over the prime field.
    fn degree(&self) -> usize;
    fn from_u64(&self, v: u64) -> Self::Elem;
    /// Coordinates over the prime field in the field's basis, lowest first.
    fn coords(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_coords(&self, c: &[u64]) -> Self::Elem;
    fn random<R: RandRng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.characteristic()), self.degree())
    }

    /// Order as a machine integer when it fits.
    fn order_u64(&self) -> Option<u64> {
        let p = self.characteristic();
        let mut q: u64 = 1;
        for _ in 0..self.degree() {
            q = q.checked_mul(p)?;
        }
        Some(q)
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic())
    }

    /// The unique `p`-th root (finite fields are perfect).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let mut r = a.clone();
        for _ in 1..self.degree() {
            r = self.frobenius(&r);
        }
        r
    }

    /// Euler's criterion.
    fn is_square(&self, a: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (self.order() - BigUint::one()) >> 1;
        self.is_one(&self.pow_big(a, &e))
    }

    /// Element with index `i` in the base-`p` enumeration of coordinates.
    fn from_index(&self, mut i: u64) -> Self::Elem {
        let p = self.characteristic();
        let mut c = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            c.push(i % p);
            i /= p;
        }
        self.from_coords(&c)
    }

    fn index_of(&self, a: &Self::Elem) -> u64 {
        let p = self.characteristic();
        self.coords(a)
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c)
    }
}
