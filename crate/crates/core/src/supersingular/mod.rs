//! Supersingular j-invariants: the Hasse polynomial of the Legendre family,
//! the set of supersingular j in `F_{p^2}`, the polynomial `f_ss` over `F_p`,
//! and the comparison of the leading theta coefficient with `f_ss`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_field::{
    field_make, resultant, roots_in, squarefree_decomposition, ExtField, Field, PolyRing,
    PrimeField, Ring, UniPoly,
};
use crate::frobenius_form::ThetaData;
use crate::weighted_poly::{dehomogenize, Mono, WeightedBivar};

/// `(e3, e4)`: whether `p = 2 mod 3` and whether `p = 3 mod 4`.
pub fn e3_e4(p: u64) -> (u32, u32) {
    (u32::from(p % 3 == 2), u32::from(p % 4 == 3))
}

fn binomial_mod(n: u64, k: u64, field: &PrimeField) -> u64 {
    // n < p, so the factorials are invertible
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = field.mul(&num, &field.from_u64(n - i));
        den = field.mul(&den, &field.from_u64(i + 1));
    }
    field.div(&num, &den).expect("k < p")
}

/// `sum_k binom((p-1)/2, k)^2 lambda^k` over `F_p`.
pub fn hasse_poly(field: PrimeField) -> UniPoly<PrimeField> {
    let m = (field.p() - 1) / 2;
    let coeffs = (0..=m)
        .map(|k| {
            let b = binomial_mod(m, k, &field);
            field.mul(&b, &b)
        })
        .collect();
    UniPoly::new(field, coeffs, "λ")
}

fn check_prime(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

/// `j(lambda) = 256 (lambda^2 - lambda + 1)^3 / (lambda^2 (lambda - 1)^2)`.
fn legendre_j(f: &ExtField, lambda: &[u64]) -> Option<Vec<u64>> {
    let l = lambda.to_vec();
    let l2 = f.mul(&l, &l);
    let inner = f.add(&f.sub(&l2, &l), &f.one());
    let num = f.mul(&f.from_u64(256), &f.pow(&inner, 3));
    let lm1 = f.sub(&l, &f.one());
    let den = f.mul(&l2, &f.mul(&lm1, &lm1));
    f.div(&num, &den)
}

/// Supersingular j-invariants found from Hasse roots in `F_{p^2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct JSet {
    pub field: ExtField,
    /// Sorted by coordinates, without repetition.
    pub values: Vec<Vec<u64>>,
    /// Whether all `(p-1)/2` Hasse roots were found in `F_{p^2}`.
    pub hasse_splits: bool,
}

impl JSet {
    pub fn contains_prime(&self, v: u64) -> bool {
        let target = self.field.from_u64(v);
        self.values.contains(&target)
    }

    /// Stable under the `p`-power map.
    pub fn frobenius_stable(&self) -> bool {
        self.values.iter().all(|v| self.values.contains(&self.field.frobenius(v)))
    }

    fn json_values(&self) -> Vec<Value> {
        self.values
            .iter()
            .map(|v| match self.field.as_prime(v) {
                Some(c) => json!(c),
                None => json!(self.field.coords(v)),
            })
            .collect()
    }
}

pub fn supersingular_j_set(p: u64) -> Result<JSet> {
    let field = check_prime(p)?;
    let fq = field_make(p, 2)?;
    let lambdas = roots_in(&hasse_poly(field), &fq)?;
    let hasse_splits = lambdas.len() as u64 == (p - 1) / 2;
    let mut values: Vec<Vec<u64>> = lambdas
        .iter()
        .map(|l| legendre_j(&fq, l).ok_or_else(|| Error::Internal("Hasse root at 0 or 1".into())))
        .collect::<Result<_>>()?;
    values.sort_by_key(|v| fq.coords(v));
    values.dedup();
    Ok(JSet { field: fq, values, hasse_splits })
}

/// `f_ss` computed by enumeration and by a resultant.
#[derive(Clone, Debug, PartialEq)]
pub struct FssRoutes {
    /// Product over the enumerated set; `None` if it failed to descend to `F_p`.
    pub enumerated: Option<UniPoly<PrimeField>>,
    pub resultant: UniPoly<PrimeField>,
}

impl FssRoutes {
    pub fn agree(&self) -> bool {
        self.enumerated.as_ref() == Some(&self.resultant)
    }
}

fn fss_from_set(field: PrimeField, set: &JSet) -> Option<UniPoly<PrimeField>> {
    let fq = &set.field;
    let special = [fq.zero(), fq.from_u64(1728)];
    let roots: Vec<Vec<u64>> =
        set.values.iter().filter(|v| !special.contains(v)).cloned().collect();
    let prod = UniPoly::from_roots(fq.clone(), &roots, "j");
    let coeffs = prod
        .coeffs()
        .iter()
        .map(|c| fq.as_prime(c))
        .collect::<Option<Vec<u64>>>()?;
    Some(UniPoly::new(field, coeffs, "j"))
}

fn fss_by_resultant(field: PrimeField) -> Result<UniPoly<PrimeField>> {
    let ring = PolyRing::new(field, "j");
    let c = |v: i64| UniPoly::constant(field, field.reduce_i64(v), "j");
    let hasse: Vec<UniPoly<PrimeField>> =
        hasse_poly(field).coeffs().iter().map(|&h| UniPoly::constant(field, h, "j")).collect();
    // j * lambda^2 (lambda - 1)^2 - 256 (lambda^2 - lambda + 1)^3, coefficients
    // of lambda^0 .. lambda^6
    let j = UniPoly::x(field, "j");
    let quartic = [0, 0, 1, -2, 1];
    let sextic = [1, -3, 6, -7, 6, -3, 1];
    let rel: Vec<UniPoly<PrimeField>> = (0..7)
        .map(|k| {
            let q = quartic.get(k).copied().unwrap_or(0);
            j.scale(&field.reduce_i64(q)).sub(&c(256 * sextic[k]))
        })
        .collect();
    let res = resultant(&UniPoly::new(ring.clone(), hasse, "λ"), &UniPoly::new(ring, rel, "λ"))?;
    let mut radical = squarefree_decomposition(&res)?
        .into_iter()
        .fold(UniPoly::one(field, "j"), |acc, (g, _)| acc.mul(&g));
    for special in [0, 1728] {
        let lin = UniPoly::new(field, vec![field.reduce_i64(-special), 1], "j");
        while radical.degree().unwrap_or(0) > 0 && lin.divides(&radical)? {
            radical = radical.exact_quo(&lin)?;
        }
    }
    Ok(radical.monic())
}

pub fn fss_routes(p: u64) -> Result<FssRoutes> {
    let field = check_prime(p)?;
    let set = supersingular_j_set(p)?;
    Ok(FssRoutes { enumerated: fss_from_set(field, &set), resultant: fss_by_resultant(field)? })
}

/// `f_ss`, monic over `F_p`; fails if the two constructions disagree.
pub fn fss_poly(p: u64) -> Result<UniPoly<PrimeField>> {
    let routes = fss_routes(p)?;
    if !routes.agree() {
        return Err(Error::Internal(format!(
            "f_ss routes disagree for p = {p}: enumerated {:?}, resultant {}",
            routes.enumerated.map(|f| f.to_string()),
            routes.resultant
        )));
    }
    Ok(routes.resultant)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupersingularTable {
    pub p: u64,
    pub hasse: UniPoly<PrimeField>,
    pub j_set: JSet,
    pub routes: FssRoutes,
    pub e3: u32,
    pub e4: u32,
    pub contains_0: bool,
    pub contains_1728: bool,
}

impl SupersingularTable {
    pub fn compute(p: u64) -> Result<SupersingularTable> {
        let field = check_prime(p)?;
        let j_set = supersingular_j_set(p)?;
        let routes = FssRoutes {
            enumerated: fss_from_set(field, &j_set),
            resultant: fss_by_resultant(field)?,
        };
        let (e3, e4) = e3_e4(p);
        Ok(SupersingularTable {
            p,
            hasse: hasse_poly(field),
            contains_0: j_set.contains_prime(0),
            contains_1728: j_set.contains_prime(1728 % p),
            j_set,
            routes,
            e3,
            e4,
        })
    }

    pub fn fss(&self) -> &UniPoly<PrimeField> {
        &self.routes.resultant
    }

    pub fn expected_degree(&self) -> usize {
        ((self.p - 1) / 12) as usize
    }

    /// Every bookkeeping identity the table should satisfy, by name.
    pub fn checks(&self) -> Result<Vec<(&'static str, bool)>> {
        let fss = self.fss();
        let fq = &self.j_set.field;
        let generic = self.j_set.values.len()
            - usize::from(self.contains_0)
            - usize::from(self.contains_1728);
        Ok(vec![
            ("hasse_splits", self.j_set.hasse_splits),
            ("routes_agree", self.routes.agree()),
            ("degree", fss.degree() == Some(self.expected_degree())),
            ("squarefree", fss.is_squarefree()?),
            ("nonzero_at_0", !fss.ring().is_zero(&fss.eval(&0))),
            ("nonzero_at_1728", !fss.ring().is_zero(&fss.eval(&(1728 % self.p)))),
            ("contains_0", self.contains_0 == (self.e3 == 1)),
            ("contains_1728", self.contains_1728 == (self.e4 == 1)),
            ("generic_count", generic == self.expected_degree()),
            ("frobenius_stable", self.j_set.frobenius_stable() && fq.degree() == 2),
        ])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "hasse": self.hasse.coeffs(),
            "j_set": self.j_set.json_values(),
            "fss": self.fss().to_string(),
            "fss_coeffs": self.fss().coeffs(),
            "e3": self.e3,
            "e4": self.e4,
            "contains_0": self.contains_0,
            "contains_1728": self.contains_1728,
        })
    }
}

/// `a_{(p-1)/2} = s^e3 t^e4 B(s^3, t^2)` against `f_ss`.
#[derive(Clone, Debug, PartialEq)]
pub struct BComparison {
    pub p: u64,
    /// `B(u, 1)`, absent when the monomial division was inexact.
    pub b_dehom: Option<UniPoly<PrimeField>>,
    /// `F_ss(u, (u + 27/4) / 1728)`.
    pub g: UniPoly<PrimeField>,
    /// The scalar with `b = C g`, when there is one.
    pub scalar: Option<u64>,
}

impl BComparison {
    pub fn matched(&self) -> bool {
        self.scalar.is_some()
    }
}

/// `g(u) = sum_i f_i u^i ((u + 27/4) / 1728)^(d - i)` for `f_ss = sum_i f_i j^i`.
pub fn fss_in_u(fss: &UniPoly<PrimeField>) -> UniPoly<PrimeField> {
    let field = *fss.ring();
    let d = fss.degree().unwrap_or(0);
    let inv1728 = field.inv(&field.from_u64(1728)).expect("p >= 5");
    let shift = field.div(&field.from_u64(27), &field.from_u64(4)).expect("p >= 5");
    let z = UniPoly::new(field, vec![field.mul(&shift, &inv1728), inv1728], "u");
    let u = UniPoly::x(field, "u");
    fss.coeffs()
        .iter()
        .enumerate()
        .fold(UniPoly::zero(field, "u"), |acc, (i, c)| {
            acc.add(&u.pow(i as u64).mul(&z.pow((d - i) as u64)).scale(c))
        })
}

pub fn compare_b_with_fss(theta: &ThetaData, fss: &UniPoly<PrimeField>) -> Result<BComparison> {
    let field = theta.field();
    let (e3, e4) = e3_e4(theta.p);
    let g = fss_in_u(fss);
    let mono = WeightedBivar::monomial(field, field.one(), e3, e4);
    let none = |g| BComparison { p: theta.p, b_dehom: None, g, scalar: None };
    let quotient = match theta.lead().exact_div(&mono) {
        Ok(q) if !q.is_zero() => q,
        _ => return Ok(none(g)),
    };
    let form = dehomogenize(&quotient)?;
    if (form.exp_s, form.exp_t) != (0, 0) {
        return Ok(none(g));
    }
    let b = form.upoly;
    let scalar = match (b.lead(), g.lead(), b.degree() == g.degree()) {
        (Some(lb), Some(lg), true) => field.div(lb, lg).filter(|c| b == g.scale(c)),
        _ => None,
    };
    Ok(BComparison { p: theta.p, b_dehom: Some(b), g, scalar })
}

/// The monomial `s^e3 t^e4`.
pub fn e_monomial(p: u64) -> Mono {
    let (e3, e4) = e3_e4(p);
    Mono::new(e3, e4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hasse_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(hasse_poly(f5).to_string(), "λ^2 + 4*λ + 1");
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(hasse_poly(f7).to_string(), "λ^3 + 2*λ^2 + 2*λ + 1");
    }

    #[test]
    fn small_j_sets() {
        let j5 = supersingular_j_set(5).unwrap();
        assert_eq!(j5.json_values(), vec![json!(0)]);
        let j7 = supersingular_j_set(7).unwrap();
        assert_eq!(j7.json_values(), vec![json!(6)]);
        let j13 = supersingular_j_set(13).unwrap();
        assert_eq!(j13.json_values(), vec![json!(5)]);
    }

    #[test]
    fn fss_small_primes() {
        assert_eq!(fss_poly(5).unwrap().to_string(), "1");
        assert_eq!(fss_poly(13).unwrap().to_string(), "j + 8");
        assert_eq!(fss_poly(37).unwrap().degree(), Some(3));
        assert_eq!(fss_poly(3), Err(Error::PrimeTooSmall(3)));
    }

    #[test]
    fn e_indices() {
        assert_eq!(e3_e4(5), (1, 0));
        assert_eq!(e3_e4(7), (0, 1));
        assert_eq!(e3_e4(11), (1, 1));
    }
}
