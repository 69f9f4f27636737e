//! The polynomials `theta` and `eta` with `theta(x^p) = psi_p mod p` and
//! `eta(x^p) = sigma mod p`, extracted coefficient by coefficient from the
//! reduced division-polynomial data.
//!
//! Extraction is expected to succeed for every prime; when it does not, the
//! reason comes back as a [`StructureFailure`] value rather than an error so
//! callers can report it.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::division_poly::{DivPolyTable, SigmaPoly};
use crate::error::Result;
use crate::finite_field::{ExtField, Field, PrimeField, Ring, UniPoly};
use crate::weighted_poly::{Weight, WeightedBivar, XPoly};

/// Why an extraction did not produce the predicted shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFailure {
    pub reason: String,
}

impl StructureFailure {
    fn new(reason: impl Into<String>) -> Self {
        StructureFailure { reason: reason.into() }
    }
}

type Extracted<T> = std::result::Result<T, StructureFailure>;

fn half(p: u64) -> u32 {
    ((p - 1) / 2) as u32
}

/// Coefficients `a_k` of `theta(X) = sum_i a_{(p-1)/2 + p i} X^{(p-1)/2 - i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaData {
    pub p: u64,
    /// Keyed by weight `k`; middle coefficients may be zero.
    pub a: BTreeMap<u32, WeightedBivar<PrimeField>>,
}

fn weight_ok(c: &WeightedBivar<PrimeField>, k: u32) -> bool {
    c.is_zero() || c.weight_of() == Ok(Weight::Homogeneous(k))
}

/// Check that only exponents divisible by `p` occur, returning the first
/// offending exponent otherwise.
fn stray_exponent(f: &XPoly<PrimeField>, p: usize) -> Option<usize> {
    f.coeffs()
        .iter()
        .enumerate()
        .find(|(d, c)| d % p != 0 && !c.is_zero())
        .map(|(d, _)| d)
}

impl ThetaData {
    /// Read `theta` off `psi_p mod p`.
    pub fn from_psi(field: PrimeField, psi_bar: &XPoly<PrimeField>) -> Extracted<ThetaData> {
        let p = field.p();
        let pu = p as usize;
        let h = half(p);
        if psi_bar.parity() {
            return Err(StructureFailure::new("psi_p carries a factor y"));
        }
        if let Some(d) = stray_exponent(psi_bar, pu) {
            return Err(StructureFailure::new(format!(
                "stray monomial x^{d}: exponent not divisible by {p}"
            )));
        }
        let deg = psi_bar.degree().unwrap_or(0);
        if deg != pu * h as usize {
            return Err(StructureFailure::new(format!(
                "x-degree {deg}, expected {}",
                pu * h as usize
            )));
        }
        let mut a = BTreeMap::new();
        for i in 0..=h {
            let k = h + p as u32 * i;
            let c = psi_bar.coeff(pu * (h - i) as usize);
            if !weight_ok(&c, k) {
                return Err(StructureFailure::new(format!("a_{k} = {c} is not of weight {k}")));
            }
            a.insert(k, c);
        }
        Ok(ThetaData { p, a })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    pub fn lead_index(&self) -> u32 {
        half(self.p)
    }

    pub fn const_index(&self) -> u32 {
        ((self.p * self.p - 1) / 2) as u32
    }

    pub fn lead(&self) -> &WeightedBivar<PrimeField> {
        &self.a[&self.lead_index()]
    }

    pub fn constant(&self) -> &WeightedBivar<PrimeField> {
        &self.a[&self.const_index()]
    }

    /// `(k, a_k)` for the middle coefficients `k = (p-1)/2 + p i`,
    /// `1 <= i <= (p-3)/2`.
    pub fn middle(&self) -> Vec<(u32, &WeightedBivar<PrimeField>)> {
        let (lo, hi) = (self.lead_index(), self.const_index());
        self.a
            .iter()
            .filter(|(k, _)| **k != lo && **k != hi)
            .map(|(k, c)| (*k, c))
            .collect()
    }

    /// X-degree of `theta`.
    pub fn x_degree(&self) -> u32 {
        half(self.p)
    }

    /// `theta(x^p)` as a polynomial in `x`.
    pub fn at_x_pow_p(&self) -> XPoly<PrimeField> {
        let f = self.field();
        let p = self.p as usize;
        let h = self.lead_index();
        let mut coeffs = vec![WeightedBivar::zero(f); p * h as usize + 1];
        for (k, c) in &self.a {
            let i = (k - h) / self.p as u32;
            coeffs[p * (h - i) as usize] = c.clone();
        }
        XPoly::new(f, coeffs, false)
    }

    /// `theta` with `s, t` specialized, as a polynomial in `X`.
    pub fn specialize(&self, field: &ExtField, s0: &[u64], t0: &[u64]) -> UniPoly<ExtField> {
        let h = self.lead_index();
        let mut coeffs = vec![field.zero(); h as usize + 1];
        for (k, c) in &self.a {
            let i = (k - h) / self.p as u32;
            coeffs[(h - i) as usize] = eval_ext(c, field, s0, t0);
        }
        UniPoly::new(field.clone(), coeffs, "X")
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("p".into(), json!(self.p));
        for (k, c) in &self.a {
            m.insert(format!("a{k}"), json!(c.to_string()));
        }
        Value::Object(m)
    }
}

pub(crate) fn eval_ext(c: &WeightedBivar<PrimeField>, field: &ExtField, s0: &[u64], t0: &[u64]) -> Vec<u64> {
    c.eval_in(field, |&v| field.from_u64(v), &s0.to_vec(), &t0.to_vec())
}

/// Coefficients of `eta(X) = X^p + sum_i (b_{pi} + x~ c_{pi-1}) X^{p-i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaData {
    pub p: u64,
    pub b: BTreeMap<u32, WeightedBivar<PrimeField>>,
    pub c: BTreeMap<u32, WeightedBivar<PrimeField>>,
}

impl EtaData {
    /// Read `eta` off `sigma mod p`.
    pub fn from_sigma(field: PrimeField, sigma_bar: &SigmaPoly<PrimeField>) -> Extracted<EtaData> {
        let p = field.p();
        let pu = p as usize;
        for (name, part) in [("x~-free", &sigma_bar.base), ("x~-linear", &sigma_bar.xt)] {
            if let Some(d) = stray_exponent(part, pu) {
                return Err(StructureFailure::new(format!(
                    "stray monomial x^{d} in the {name} part of sigma"
                )));
            }
        }
        let top = pu * pu;
        if sigma_bar.degree() != Some(top) {
            return Err(StructureFailure::new(format!(
                "sigma has x-degree {:?}, expected {top}",
                sigma_bar.degree()
            )));
        }
        let (lb, lc) = sigma_bar.coeff(top);
        if !lb.is_one() || !lc.is_zero() {
            return Err(StructureFailure::new(format!(
                "sigma is not monic: leading coefficient {lb} + x~({lc})"
            )));
        }
        let mut b = BTreeMap::new();
        let mut c = BTreeMap::new();
        for i in 1..=p as u32 {
            let (bi, ci) = sigma_bar.coeff(pu * (pu - i as usize));
            let (kb, kc) = (p as u32 * i, p as u32 * i - 1);
            if !weight_ok(&bi, kb) {
                return Err(StructureFailure::new(format!("b_{kb} = {bi} is not of weight {kb}")));
            }
            if !weight_ok(&ci, kc) {
                return Err(StructureFailure::new(format!("c_{kc} = {ci} is not of weight {kc}")));
            }
            b.insert(kb, bi);
            c.insert(kc, ci);
        }
        Ok(EtaData { p, b, c })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    pub fn x_degree(&self) -> u32 {
        self.p as u32
    }

    /// `sum_i c_{pi-1} x^{p^2 - p i}`, the x~-linear part of `eta(x^p)`.
    pub fn c_part(&self) -> XPoly<PrimeField> {
        let f = self.field();
        let p = self.p as usize;
        let mut coeffs = vec![WeightedBivar::zero(f); p * p + 1];
        for (k, c) in &self.c {
            let i = (*k as usize + 1) / p;
            coeffs[p * (p - i)] = c.clone();
        }
        XPoly::new(f, coeffs, false)
    }

    /// `eta(x^p)` split as in [`SigmaPoly`].
    pub fn at_x_pow_p(&self) -> SigmaPoly<PrimeField> {
        let f = self.field();
        let p = self.p as usize;
        let mut coeffs = vec![WeightedBivar::zero(f); p * p + 1];
        coeffs[p * p] = WeightedBivar::one(f);
        for (k, b) in &self.b {
            let i = *k as usize / p;
            coeffs[p * (p - i)] = b.clone();
        }
        SigmaPoly { base: XPoly::new(f, coeffs, false), xt: self.c_part() }
    }

    /// `eta` with `s, t, x~` specialized, as a polynomial in `X`.
    pub fn specialize(&self, field: &ExtField, s0: &[u64], t0: &[u64], xt: &[u64]) -> UniPoly<ExtField> {
        let p = self.p as usize;
        let mut coeffs = vec![field.zero(); p + 1];
        coeffs[p] = field.one();
        for i in 1..=p {
            let bi = eval_ext(&self.b[&(p as u32 * i as u32)], field, s0, t0);
            let ci = eval_ext(&self.c[&(p as u32 * i as u32 - 1)], field, s0, t0);
            coeffs[p - i] = field.add(&bi, &field.mul(&ci, &xt.to_vec()));
        }
        UniPoly::new(field.clone(), coeffs, "X")
    }

    pub fn to_json(&self) -> Value {
        let table = |m: &BTreeMap<u32, WeightedBivar<PrimeField>>, prefix: &str| {
            let mut out = Map::new();
            for (k, c) in m {
                out.insert(format!("{prefix}{k}"), json!(c.to_string()));
            }
            Value::Object(out)
        };
        json!({ "p": self.p, "b": table(&self.b, "b"), "c": table(&self.c, "c") })
    }
}

/// Outcome of comparing the x~-linear part of `eta` with `-psi_p^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CRelation {
    pub holds: bool,
    /// `c-part + theta(x^p)^2`; zero exactly when the identity holds.
    pub residual: XPoly<PrimeField>,
    /// `c_{p^2-1} = -a_{(p^2-1)/2}^2`.
    pub constant_term_holds: bool,
    /// Whether the identity also holds with the leading coefficient of
    /// `psi_p` replaced by 1.
    pub monic_form_holds: bool,
}

pub fn check_c_relation(theta: &ThetaData, eta: &EtaData) -> CRelation {
    let psi = theta.at_x_pow_p();
    let c_part = eta.c_part();
    let residual = c_part.add(&psi.square());
    let constant_term_holds =
        eta.c[&((eta.p * eta.p - 1) as u32)] == theta.constant().square_neg();
    let mut monic = psi.coeffs().to_vec();
    if let Some(last) = monic.last_mut() {
        *last = WeightedBivar::one(theta.field());
    }
    let monic = XPoly::new(theta.field(), monic, false);
    let monic_form_holds = c_part.add(&monic.square()).is_zero();
    CRelation { holds: residual.is_zero(), residual, constant_term_holds, monic_form_holds }
}

trait SquareNeg {
    fn square_neg(&self) -> Self;
}

impl SquareNeg for WeightedBivar<PrimeField> {
    fn square_neg(&self) -> Self {
        self.mul(self).neg()
    }
}

/// `psi_p mod p` and `theta` for `p`.
pub fn extract_theta(table: &mut DivPolyTable<PrimeField>) -> Result<Extracted<ThetaData>> {
    let field = *table.ring();
    let psi = table.get(field.p() as u32)?;
    Ok(ThetaData::from_psi(field, &psi))
}

/// `sigma mod p` and `eta` for `p`.
pub fn extract_eta(table: &mut DivPolyTable<PrimeField>) -> Result<Extracted<EtaData>> {
    let field = *table.ring();
    let sigma = table.sigma(field.p() as u32)?;
    Ok(EtaData::from_sigma(field, &sigma))
}
