//! Concrete curves `y^2 = x^3 + s0 x + t0` over finite fields: point counts,
//! the ordinary/supersingular split, the Frobenius unit root mod `p^n`, and
//! the field generated by a point of order `p^n`, found by walking the
//! specialized `theta` and `eta`.

mod curve;
mod sample;
mod tower;

use std::path::Path;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::division_poly::DivPolyTable;
use crate::error::{Error, Result};
use crate::finite_field::{ExtField, Field, PrimeField, Ring, UniPoly};
use crate::frobenius_form::{extract_eta, extract_theta, eval_ext, EtaData, ThetaData};
use crate::supersingular::{e3_e4, fss_poly};

pub use curve::{Curve, Point};
pub use sample::{run_samples, LevelReport, SampleConfig, SampleEntry, SampleReport, INSEPARABILITY_NOTE};
pub use tower::{torsion_tower, TorsionWitness};

/// Default limit on the field size for naive point counting.
pub const COUNT_BUDGET: u64 = 1_000_000;

/// `y^2 = x^3 + s0 x + t0` over `field`, nonsingular by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub field: ExtField,
    pub s0: Vec<u64>,
    pub t0: Vec<u64>,
}

impl CurveSpec {
    pub fn new(field: ExtField, s0: Vec<u64>, t0: Vec<u64>) -> Result<Self> {
        let c = CurveSpec { field, s0, t0 };
        if c.field.is_zero(&c.disc()) {
            return Err(Error::Singular);
        }
        Ok(c)
    }

    /// Curve over `F_p` from integer coefficients.
    pub fn over_prime(p: u64, s0: i64, t0: i64) -> Result<Self> {
        let f = PrimeField::new(p)?;
        let field = ExtField::prime(f);
        let s = field.from_prime(f.reduce_i64(s0));
        let t = field.from_prime(f.reduce_i64(t0));
        CurveSpec::new(field, s, t)
    }

    pub fn p(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn q(&self) -> Option<u64> {
        self.field.order_u64()
    }

    /// `4 s0^3 + 27 t0^2`
    pub fn disc(&self) -> Vec<u64> {
        let f = &self.field;
        f.add(
            &f.mul(&f.from_u64(4), &f.pow(&self.s0, 3)),
            &f.mul(&f.from_u64(27), &f.mul(&self.t0, &self.t0)),
        )
    }

    /// `1728 * 4 s0^3 / (4 s0^3 + 27 t0^2)`
    pub fn j_invariant(&self) -> Vec<u64> {
        let f = &self.field;
        let num = f.mul(&f.from_u64(6912), &f.pow(&self.s0, 3));
        f.div(&num, &self.disc()).expect("nonsingular")
    }

    pub fn group(&self) -> Curve<'_, ExtField> {
        Curve { field: &self.field, a: self.s0.clone(), b: self.t0.clone() }
    }

    /// `(d^2 s0, d^3 t0)`, the quadratic twist by `d`.
    pub fn twist(&self, d: &[u64]) -> Result<CurveSpec> {
        let f = &self.field;
        let d = d.to_vec();
        if f.is_zero(&d) {
            return Err(Error::InvalidArgument("twist parameter must be nonzero".into()));
        }
        let d2 = f.mul(&d, &d);
        let d3 = f.mul(&d2, &d);
        CurveSpec::new(f.clone(), f.mul(&d2, &self.s0), f.mul(&d3, &self.t0))
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        json!({
            "q": self.q(),
            "s0": f.elem_to_string(&self.s0),
            "t0": f.elem_to_string(&self.t0),
            "j": f.elem_to_string(&self.j_invariant()),
        })
    }
}

/// `#E(F_q)` by enumerating `x` and testing `x^3 + s0 x + t0` for squares.
pub fn count_points(c: &CurveSpec, budget: u64) -> Result<u64> {
    let q = c.q().filter(|&q| q <= budget).ok_or_else(|| {
        Error::Budget(format!("field of order {} exceeds point-count budget {budget}", c.field.order()))
    })?;
    let f = &c.field;
    let e = c.group();
    let mut count = 1;
    for i in 0..q {
        let rhs = e.rhs(&f.from_index(i));
        count += if f.is_zero(&rhs) {
            1
        } else if f.is_square(&rhs) {
            2
        } else {
            0
        };
    }
    Ok(count)
}

/// The root of `T^2 - trace T + q` that is a unit mod `p`, lifted to
/// `Z/p^n` by Newton iteration.
pub fn frobenius_unit_root(trace: i64, q: u64, p: u64, n: u32) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if trace.rem_euclid(p as i64) == 0 {
        return Err(Error::Supersingular);
    }
    let m = p
        .checked_pow(n)
        .filter(|m| *m < 1 << 62)
        .ok_or_else(|| Error::InvalidArgument("p^n too large".into()))? as i128;
    let (a, q) = (trace as i128, q as i128);
    let f = |t: i128| (t * t - a * t + q).rem_euclid(m);
    // mod p the polynomial is T (T - trace)
    let mut t = a.rem_euclid(p as i128);
    while f(t) != 0 {
        let deriv = (2 * t - a).rem_euclid(m);
        let g = deriv.extended_gcd(&m);
        if g.gcd != 1 {
            return Err(Error::Internal("derivative is not a unit".into()));
        }
        t = (t - f(t) * g.x).rem_euclid(m);
    }
    Ok(t as u64)
}

/// Multiplicative order of a unit mod `m`.
pub fn multiplicative_order(u: u64, m: u64) -> u64 {
    let mut k = 1;
    let mut x = u % m;
    while x != 1 % m {
        x = ((x as u128 * u as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusData {
    pub count: u64,
    pub trace: i64,
    pub ordinary: bool,
    /// Present for ordinary curves.
    pub unit_root: Option<u64>,
    /// Order of the unit root in `(Z/p^n)^*`.
    pub predicted_degree: Option<u64>,
}

pub fn frobenius_data(c: &CurveSpec, n: u32, budget: u64) -> Result<FrobeniusData> {
    let count = count_points(c, budget)?;
    let q = c.q().expect("bounded by budget");
    let trace = q as i64 + 1 - count as i64;
    let p = c.p();
    let ordinary = trace.rem_euclid(p as i64) != 0;
    let (unit_root, predicted_degree) = if ordinary {
        let u = frobenius_unit_root(trace, q, p, n)?;
        (Some(u), Some(multiplicative_order(u, p.pow(n))))
    } else {
        (None, None)
    };
    Ok(FrobeniusData { count, trace, ordinary, unit_root, predicted_degree })
}

/// `theta`, `eta` and `f_ss` for one prime, shared by all curves.
#[derive(Clone, Debug)]
pub struct PrimeData {
    pub p: u64,
    pub theta: ThetaData,
    pub eta: EtaData,
    pub fss: UniPoly<PrimeField>,
}

impl PrimeData {
    pub fn compute(p: u64, cache_dir: Option<&Path>) -> Result<PrimeData> {
        let field = PrimeField::new(p)?;
        let mut table = match cache_dir {
            Some(dir) => DivPolyTable::with_cache(field, dir),
            None => DivPolyTable::new(field),
        };
        let structure = |reason: String| Error::Internal(format!("p = {p}: {reason}"));
        let theta = extract_theta(&mut table)?.map_err(|e| structure(e.reason))?;
        let eta = extract_eta(&mut table)?.map_err(|e| structure(e.reason))?;
        Ok(PrimeData { p, theta, eta, fss: fss_poly(p)? })
    }

    /// Whether `j` is a supersingular j-invariant, read off `f_ss`, `e3`, `e4`.
    pub fn j_supersingular(&self, field: &ExtField, j: &[u64]) -> bool {
        let (e3, e4) = e3_e4(self.p);
        if field.is_zero(&j.to_vec()) {
            return e3 == 1;
        }
        if *j == field.from_u64(1728) {
            return e4 == 1;
        }
        let lifted = self.fss.map(field, |&c| field.from_u64(c));
        field.is_zero(&lifted.eval(&j.to_vec()))
    }
}

/// Supersingularity decided three ways, which must agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub ordinary: bool,
    /// The leading theta coefficient vanishes at `(s0, t0)`.
    pub lead_vanishes: bool,
    pub j_supersingular: bool,
}

impl Classification {
    pub fn consistent(&self) -> bool {
        self.lead_vanishes == !self.ordinary && self.j_supersingular == !self.ordinary
    }
}

pub fn classify(data: &PrimeData, c: &CurveSpec, frob: &FrobeniusData) -> Classification {
    let lead = eval_ext(data.theta.lead(), &c.field, &c.s0, &c.t0);
    Classification {
        ordinary: frob.ordinary,
        lead_vanishes: c.field.is_zero(&lead),
        j_supersingular: data.j_supersingular(&c.field, &c.j_invariant()),
    }
}
