use std::fmt;

use super::{Mono, Weight, WeightedBivar};
use crate::error::{Error, Result};
use crate::finite_field::{Field, Ring, UniPoly};

/// A polynomial in `x` with coefficients in `R[s, t]`, optionally times `y`.
///
/// `parity == true` means the represented object is `y * (x-part)`. Products
/// of two odd objects fold `y^2` back in as `x^3 + s*x + t`, so only these two
/// shapes ever occur.
#[derive(Clone)]
pub struct XPoly<R: Ring> {
    ring: R,
    coeffs: Vec<WeightedBivar<R>>,
    parity: bool,
}

impl<R: Ring> PartialEq for XPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.parity == other.parity && self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for XPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parity {
            write!(f, "y*({})", self)
        } else {
            write!(f, "{}", self)
        }
    }
}

impl<R: Ring> fmt::Display for XPoly<R> {
    /// Canonical term list of the x-part; the `y` factor is not printed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            for (m, v) in c.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}", super::text::term_string(&self.ring, v, m.s, m.t, d))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: Ring> XPoly<R> {
    pub fn new(ring: R, mut coeffs: Vec<WeightedBivar<R>>, parity: bool) -> Self {
        while coeffs.last().is_some_and(WeightedBivar::is_zero) {
            coeffs.pop();
        }
        XPoly { ring, coeffs, parity }
    }

    pub fn zero(ring: R) -> Self {
        XPoly { ring, coeffs: Vec::new(), parity: false }
    }

    pub fn constant(ring: R, c: WeightedBivar<R>) -> Self {
        Self::new(ring, vec![c], false)
    }

    pub fn one(ring: R) -> Self {
        let one = WeightedBivar::one(ring.clone());
        Self::constant(ring, one)
    }

    pub fn x(ring: R) -> Self {
        let z = WeightedBivar::zero(ring.clone());
        let one = WeightedBivar::one(ring.clone());
        Self::new(ring, vec![z, one], false)
    }

    /// `x^3 + s*x + t`, the square of `y`.
    pub fn curve_rhs(ring: R) -> Self {
        let coeffs = vec![
            WeightedBivar::t(ring.clone()),
            WeightedBivar::s(ring.clone()),
            WeightedBivar::zero(ring.clone()),
            WeightedBivar::one(ring.clone()),
        ];
        Self::new(ring, coeffs, false)
    }

    /// `c * x^d` with integer coefficient.
    pub fn monomial_i64(ring: R, c: i64, s: u32, t: u32, d: usize) -> Self {
        let mut coeffs = vec![WeightedBivar::zero(ring.clone()); d + 1];
        coeffs[d] = WeightedBivar::from_i64s(ring.clone(), &[(s, t, c)]);
        Self::new(ring, coeffs, false)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[WeightedBivar<R>] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> WeightedBivar<R> {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(|| WeightedBivar::zero(self.ring.clone()))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn parity(&self) -> bool {
        self.parity
    }

    pub fn with_parity(mut self, parity: bool) -> Self {
        self.parity = parity;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&WeightedBivar<R>> {
        self.coeffs.last()
    }

    /// Total number of `(s, t, x)` terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(WeightedBivar::len).sum()
    }

    fn check_parity(&self, o: &Self) -> bool {
        self.is_zero() || o.is_zero() || self.parity == o.parity
    }

    fn result_parity(&self, o: &Self) -> bool {
        if self.is_zero() {
            o.parity
        } else {
            self.parity
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.check_parity(o), "adding polynomials of different y-parity");
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|d| self.coeff(d).add(&o.coeff(d))).collect();
        Self::new(self.ring.clone(), coeffs, self.result_parity(o))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(WeightedBivar::neg).collect();
        XPoly { ring: self.ring.clone(), coeffs, parity: self.parity }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|b| b.scale(c)).collect();
        Self::new(self.ring.clone(), coeffs, self.parity)
    }

    /// Multiply the x-part by a polynomial in `s, t`.
    pub fn scale_bivar(&self, c: &WeightedBivar<R>) -> Self {
        let coeffs = self.coeffs.iter().map(|b| b.mul(c)).collect();
        Self::new(self.ring.clone(), coeffs, self.parity)
    }

    /// Divide every coefficient by a ring element; `None` if any division is
    /// inexact.
    pub fn exact_div_scalar(&self, d: &R::Elem) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for b in &self.coeffs {
            let mut terms = Vec::with_capacity(b.len());
            for (m, c) in b.terms() {
                terms.push((*m, self.ring.exact_div(c, d)?));
            }
            coeffs.push(WeightedBivar::new(self.ring.clone(), terms));
        }
        Some(Self::new(self.ring.clone(), coeffs, self.parity))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut prod = self.mul_x_parts(o);
        if self.parity && o.parity && !prod.is_zero() {
            prod = prod.mul_x_parts(&Self::curve_rhs(self.ring.clone()));
        }
        prod.parity = self.parity ^ o.parity;
        prod
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Product of x-parts, ignoring parity.
    fn mul_x_parts(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ring.clone());
        }
        match (self.weight_of(), o.weight_of()) {
            (Ok(Weight::Homogeneous(wa)), Ok(Weight::Homogeneous(wb))) => {
                self.mul_homogeneous(o, wa + wb)
            }
            _ => self.mul_generic(o),
        }
    }

    fn mul_generic(&self, o: &Self) -> Self {
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut coeffs = vec![WeightedBivar::zero(self.ring.clone()); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(self.ring.clone(), coeffs, false)
    }

    /// Product of two homogeneous polynomials of total weight `w`.
    ///
    /// The coefficient of `x^d` has weight `w - d`, so its monomials are
    /// determined by the exponent of `s` alone; accumulating into dense rows
    /// indexed by that exponent avoids any map lookups in the inner loop.
    fn mul_homogeneous(&self, o: &Self, w: u32) -> Self {
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let zero = self.ring.zero();
        let mut rows: Vec<Vec<R::Elem>> = (0..n)
            .map(|d| {
                let wd = (w as usize).saturating_sub(d);
                vec![zero.clone(); wd / 2 + 1]
            })
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let row = &mut rows[i + j];
                for (ma, ca) in a.terms() {
                    for (mb, cb) in b.terms() {
                        let s = (ma.s + mb.s) as usize;
                        self.ring.mul_acc(&mut row[s], ca, cb);
                    }
                }
            }
        }
        let coeffs = rows
            .into_iter()
            .enumerate()
            .map(|(d, row)| {
                let wd = w as usize - d.min(w as usize);
                let terms: Vec<(Mono, R::Elem)> = row
                    .into_iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !self.ring.is_zero(c))
                    .map(|(s, c)| {
                        let rest = wd - 2 * s;
                        debug_assert_eq!(rest % 3, 0);
                        (Mono::new(s as u32, (rest / 3) as u32), c)
                    })
                    .collect();
                WeightedBivar::from_sorted(self.ring.clone(), terms)
            })
            .collect();
        Self::new(self.ring.clone(), coeffs, false)
    }

    /// Weight of the x-part with `wt(x) = 1`; the `y` factor of an odd
    /// polynomial is not counted.
    pub fn weight_of(&self) -> Result<Weight> {
        let mut total = None;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let Weight::Homogeneous(w) = c.weight_of()? else {
                return Ok(Weight::Inhomogeneous);
            };
            let here = w + d as u32;
            match total {
                None => total = Some(here),
                Some(t) if t != here => return Ok(Weight::Inhomogeneous),
                _ => {}
            }
        }
        total.map(Weight::Homogeneous).ok_or(Error::ZeroPolynomial)
    }

    pub fn map<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> XPoly<S> {
        let coeffs = self.coeffs.iter().map(|b| b.map(target, &f)).collect();
        XPoly::new(target.clone(), coeffs, self.parity)
    }

    /// Substitute `s = s0`, `t = t0` in the x-part.
    pub fn specialize<F: Field>(
        &self,
        field: &F,
        lift: impl Fn(&R::Elem) -> F::Elem,
        s0: &F::Elem,
        t0: &F::Elem,
    ) -> UniPoly<F> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|b| b.eval_in(field, &lift, s0, t0))
            .collect();
        UniPoly::new(field.clone(), coeffs, "x")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::{IntegerRing, PrimeField};

    #[test]
    fn odd_times_odd_folds_y_squared() {
        let y = XPoly::one(IntegerRing).with_parity(true);
        let y2 = y.mul(&y);
        assert!(!y2.parity());
        assert_eq!(y2, XPoly::curve_rhs(IntegerRing));
    }

    #[test]
    fn dense_and_generic_products_agree() {
        let f = PrimeField::new(13).unwrap();
        // 3x^4 + 6sx^2 + 12tx - s^2, weight 4
        let psi3 = XPoly::new(
            f,
            vec![
                WeightedBivar::from_i64s(f, &[(2, 0, -1)]),
                WeightedBivar::from_i64s(f, &[(0, 1, 12)]),
                WeightedBivar::from_i64s(f, &[(1, 0, 6)]),
                WeightedBivar::zero(f),
                WeightedBivar::from_i64s(f, &[(0, 0, 3)]),
            ],
            false,
        );
        let rhs = XPoly::curve_rhs(f);
        assert_eq!(psi3.mul_homogeneous(&rhs, 7), psi3.mul_generic(&rhs));
        let sq = psi3.mul(&psi3);
        assert_eq!(sq, psi3.mul_generic(&psi3));
        assert_eq!(sq.weight_of().unwrap(), Weight::Homogeneous(8));
    }

    #[test]
    fn text_form() {
        let p = XPoly::new(
            IntegerRing,
            vec![
                WeightedBivar::from_i64s(IntegerRing, &[(2, 0, -1)]),
                WeightedBivar::from_i64s(IntegerRing, &[(0, 1, 12)]),
                WeightedBivar::from_i64s(IntegerRing, &[(1, 0, 6)]),
                WeightedBivar::zero(IntegerRing),
                WeightedBivar::from_i64s(IntegerRing, &[(0, 0, 3)]),
            ],
            false,
        );
        let text = p.to_string();
        assert_eq!(text, "3*x^4 + 6*s*x^2 + 12*t*x + -1*s^2");
        assert_eq!(super::super::parse_xpoly(&IntegerRing, &text, false).unwrap(), p);
        assert_eq!(XPoly::zero(IntegerRing).to_string(), "0");
    }
}
