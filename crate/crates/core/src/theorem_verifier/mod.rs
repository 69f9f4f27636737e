//! Per-prime verification of the structural facts about `theta`, `eta` and
//! `f_ss`, collected into a deterministic JSON report.

mod certificate;
mod ledger;

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::division_poly::{DivPolyTable, CACHE_FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::finite_field::{field_make, roots_in, Field, PrimeField, Ring};
use crate::frobenius_form::{check_c_relation, eval_ext, EtaData, ThetaData};
use crate::supersingular::{compare_b_with_fss, e3_e4, SupersingularTable};
use crate::weighted_poly::{dehomogenize, wb_gcd, wb_squarefree_check, WeightedBivar};

pub use certificate::{eisenstein_eta, eisenstein_theta, EisensteinCertificate, EtaCertificate};
pub use ledger::{degree_ledger, DegreeLedger, LedgerRow};

/// Identifiers of the checks in report order.
pub const CHECK_IDS: [&str; 10] = [
    "theta_structure",
    "eta_structure",
    "c_relation",
    "fss_routes",
    "b_equals_c_fss",
    "vanishing_propagation",
    "coefficient_structure",
    "eisenstein_theta",
    "eisenstein_eta",
    "degree_ledger",
];

/// Size limits on the polynomials a run may build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Budget {
    Low,
    #[default]
    Default,
    High,
}

impl Budget {
    /// Largest admissible [`coefficient_estimate`].
    pub fn limit(self) -> u64 {
        match self {
            Budget::Low => 1_000,
            Budget::Default => 50_000,
            Budget::High => 500_000,
        }
    }

    pub fn admit(self, p: u64) -> Result<()> {
        let need = coefficient_estimate(p);
        if need > self.limit() {
            return Err(Error::Budget(format!(
                "prime too large for configured budget: p = {p} needs about {need} \
                 coefficients, limit is {}",
                self.limit()
            )));
        }
        Ok(())
    }
}

impl FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" => Ok(Budget::Low),
            "default" => Ok(Budget::Default),
            "high" => Ok(Budget::High),
            other => Err(Error::InvalidArgument(format!("unknown budget {other:?}"))),
        }
    }
}

/// Number of monomials `s^a t^b x^d` of weight `(p^2 - 1)/2`, an upper bound
/// on the size of `psi_p mod p`.
pub fn coefficient_estimate(p: u64) -> u64 {
    let w = (p * p - 1) / 2;
    (0..=w / 3).map(|b| (w - 3 * b) / 2 + 1).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub n: u32,
    pub seed: u64,
    /// Points sampled per zero family in the vanishing check.
    pub vanishing_samples: usize,
    pub budget: Budget,
    /// Record wall-clock times; reports are then no longer reproducible.
    pub timings: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n: 1,
            seed: 0,
            vanishing_samples: 4,
            budget: Budget::Default,
            timings: false,
            cache_dir: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub id: &'static str,
    pub status: Status,
    pub witness: Value,
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub p: u64,
    pub n: u32,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failed_ids(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.id).collect()
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "status": c.status.as_str(),
                    "witness": c.witness,
                    "millis": c.millis,
                })
            })
            .collect();
        json!({
            "p": self.p,
            "n": self.n,
            "checks": checks,
            "versions": { "cache": CACHE_FORMAT_VERSION, "code": env!("CARGO_PKG_VERSION") },
        })
    }
}

struct Recorder {
    timings: bool,
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn run(&mut self, id: &'static str, f: impl FnOnce() -> Result<(Status, Value)>) -> Result<()> {
        let start = Instant::now();
        let (status, witness) = f()?;
        let millis = self.timings.then(|| start.elapsed().as_millis() as u64);
        self.checks.push(CheckResult { id, status, witness, millis });
        Ok(())
    }
}

fn missing(what: &str) -> Result<(Status, Value)> {
    Ok((Status::Fail, json!({ "reason": format!("{what} unavailable") })))
}

/// Maps a nonzero parameter `d` to a point `(s0, t0)`.
type PointFamily = Box<dyn Fn(&Vec<u64>) -> (Vec<u64>, Vec<u64>)>;

/// Outcome of sampling zeros of the leading theta coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct VanishingOutcome {
    pub points_tested: usize,
    /// Zero families tried: `"s=0"`, `"t=0"`, or `"u=<root>"`.
    pub families: Vec<String>,
    /// First point where the prediction failed, as coordinate lists.
    pub counterexample: Option<(Vec<u64>, Vec<u64>)>,
}

/// Evaluate every theta coefficient at sampled zeros `(s0, t0)` of the
/// leading one in `F_{p^2}`; the middle ones must vanish there and the
/// constant one must not.
pub fn check_vanishing_propagation(theta: &ThetaData, samples: usize, seed: u64) -> Result<VanishingOutcome> {
    let p = theta.p;
    let fq = field_make(p, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (e3, e4) = e3_e4(p);
    let lead = theta.lead();
    let mono = WeightedBivar::monomial(theta.field(), 1, e3, e4);
    let b = dehomogenize(&lead.exact_div(&mono)?)?.upoly;
    let mut families: Vec<(String, PointFamily)> = Vec::new();
    if e3 == 1 {
        let f = fq.clone();
        families.push(("s=0".into(), Box::new(move |d| (f.zero(), d.clone()))));
    }
    if e4 == 1 {
        let f = fq.clone();
        families.push(("t=0".into(), Box::new(move |d| (d.clone(), f.zero()))));
    }
    for u0 in roots_in(&b, &fq)? {
        let f = fq.clone();
        let label = format!("u={}", fq.elem_to_string(&u0));
        // s0^3 / t0^2 = u0 for s0 = u0 d^2, t0 = u0 d^3
        families.push((
            label,
            Box::new(move |d| {
                let d2 = f.mul(d, d);
                (f.mul(&u0, &d2), f.mul(&u0, &f.mul(&d2, d)))
            }),
        ));
    }
    let mut outcome = VanishingOutcome {
        points_tested: 0,
        families: families.iter().map(|(l, _)| l.clone()).collect(),
        counterexample: None,
    };
    let middle = theta.middle();
    for (_, point) in &families {
        let mut taken = 0;
        while taken < samples {
            let d = fq.random(&mut rng);
            if fq.is_zero(&d) {
                continue;
            }
            let (s0, t0) = point(&d);
            let disc = fq.add(
                &fq.mul(&fq.from_u64(4), &fq.pow(&s0, 3)),
                &fq.mul(&fq.from_u64(27), &fq.mul(&t0, &t0)),
            );
            if fq.is_zero(&disc) {
                continue;
            }
            taken += 1;
            outcome.points_tested += 1;
            let at = |c: &WeightedBivar<PrimeField>| eval_ext(c, &fq, &s0, &t0);
            let ok = fq.is_zero(&at(lead))
                && middle.iter().all(|(_, c)| fq.is_zero(&at(c)))
                && !fq.is_zero(&at(theta.constant()));
            if !ok && outcome.counterexample.is_none() {
                outcome.counterexample = Some((s0, t0));
            }
        }
    }
    Ok(outcome)
}

/// The three coefficient facts: the leading coefficient is squarefree,
/// divides every middle coefficient, and is coprime to the constant one.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientStructure {
    pub squarefree: bool,
    pub repeated_factor: Option<String>,
    /// `(k, quotient a_k / a_lead or remainder)`.
    pub quotients: Vec<(u32, std::result::Result<String, String>)>,
    pub coprime: bool,
}

impl CoefficientStructure {
    pub fn holds(&self) -> bool {
        self.squarefree && self.coprime && self.quotients.iter().all(|(_, q)| q.is_ok())
    }
}

pub fn check_coefficient_structure(theta: &ThetaData) -> Result<CoefficientStructure> {
    let lead = theta.lead();
    let sq = wb_squarefree_check(lead)?;
    let quotients = theta
        .middle()
        .into_iter()
        .map(|(k, c)| {
            let q = match c.div_rem(lead)? {
                (q, r) if r.is_zero() => Ok(q.to_string()),
                (_, r) => Err(r.to_string()),
            };
            Ok((k, q))
        })
        .collect::<Result<_>>()?;
    let coprime = wb_gcd(lead, theta.constant())?.is_one();
    Ok(CoefficientStructure {
        squarefree: sq.squarefree,
        repeated_factor: sq.witness.map(|w| w.to_string()),
        quotients,
        coprime,
    })
}

/// Run every check for one prime.
pub fn run_all(p: u64, config: &VerifyConfig) -> Result<VerificationReport> {
    let field = PrimeField::new(p)?;
    if config.n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    config.budget.admit(p)?;
    let mut table = match &config.cache_dir {
        Some(dir) => DivPolyTable::with_cache(field, dir),
        None => DivPolyTable::new(field),
    };
    let mut rec = Recorder { timings: config.timings, checks: Vec::new() };

    let psi = table.get(p as u32)?;
    let mut theta = None;
    rec.run("theta_structure", || {
        Ok(match ThetaData::from_psi(field, &psi) {
            Ok(t) => {
                let ok = t.at_x_pow_p() == psi;
                let mut w = t.to_json();
                w["x_degree"] = json!(t.x_degree());
                theta = Some(t);
                (Status::from_bool(ok), w)
            }
            Err(e) => (Status::Fail, json!({ "reason": e.reason })),
        })
    })?;

    let sigma = table.sigma(p as u32)?;
    let mut eta = None;
    rec.run("eta_structure", || {
        Ok(match EtaData::from_sigma(field, &sigma) {
            Ok(e) => {
                let ok = e.at_x_pow_p() == sigma;
                let mut w = e.to_json();
                w["x_degree"] = json!(e.x_degree());
                eta = Some(e);
                (Status::from_bool(ok), w)
            }
            Err(e) => (Status::Fail, json!({ "reason": e.reason })),
        })
    })?;

    rec.run("c_relation", || {
        let (Some(t), Some(e)) = (&theta, &eta) else { return missing("theta or eta") };
        let rel = check_c_relation(t, e);
        Ok((
            Status::from_bool(rel.holds && rel.constant_term_holds),
            json!({
                "holds": rel.holds,
                "residual": rel.residual.to_string(),
                "constant_term_holds": rel.constant_term_holds,
                "monic_form_holds": rel.monic_form_holds,
            }),
        ))
    })?;

    let ss = SupersingularTable::compute(p)?;
    rec.run("fss_routes", || {
        let checks = ss.checks()?;
        let ok = checks.iter().all(|(_, b)| *b);
        let mut w = ss.to_json();
        w["checks"] = checks.iter().map(|(k, b)| (k.to_string(), json!(b))).collect();
        w["enumerated"] = json!(ss.routes.enumerated.as_ref().map(|f| f.to_string()));
        Ok((Status::from_bool(ok), w))
    })?;

    rec.run("b_equals_c_fss", || {
        let Some(t) = &theta else { return missing("theta") };
        let cmp = compare_b_with_fss(t, ss.fss())?;
        let deg = ss.expected_degree();
        let ok = cmp.matched()
            && cmp.g.degree() == Some(deg)
            && cmp.b_dehom.as_ref().and_then(|b| b.degree()) == Some(deg);
        Ok((
            Status::from_bool(ok),
            json!({
                "b": cmp.b_dehom.as_ref().map(|b| b.to_string()),
                "g": cmp.g.to_string(),
                "scalar": cmp.scalar,
                "degree": deg,
            }),
        ))
    })?;

    rec.run("vanishing_propagation", || {
        let Some(t) = &theta else { return missing("theta") };
        let out = check_vanishing_propagation(t, config.vanishing_samples, config.seed)?;
        let status = match (&out.counterexample, out.points_tested) {
            (Some(_), _) => Status::Fail,
            (None, 0) => Status::Inconclusive,
            (None, _) => Status::Pass,
        };
        Ok((
            status,
            json!({
                "families": out.families,
                "points_tested": out.points_tested,
                "counterexample": out.counterexample,
            }),
        ))
    })?;

    rec.run("coefficient_structure", || {
        let Some(t) = &theta else { return missing("theta") };
        let cs = check_coefficient_structure(t)?;
        let quotients: serde_json::Map<String, Value> = cs
            .quotients
            .iter()
            .map(|(k, q)| {
                let v = match q {
                    Ok(q) => json!({ "quotient": q }),
                    Err(r) => json!({ "remainder": r }),
                };
                (format!("a{k}"), v)
            })
            .collect();
        Ok((
            Status::from_bool(cs.holds()),
            json!({
                "squarefree": cs.squarefree,
                "repeated_factor": cs.repeated_factor,
                "quotients": quotients,
                "coprime": cs.coprime,
            }),
        ))
    })?;

    let mut theta_cert = None;
    rec.run("eisenstein_theta", || {
        let Some(t) = &theta else { return missing("theta") };
        let cert = eisenstein_theta(t, config.seed)?;
        let out = (Status::from_bool(cert.holds()), cert.to_json());
        theta_cert = Some(cert);
        Ok(out)
    })?;

    let mut eta_ok = false;
    rec.run("eisenstein_eta", || {
        let (Some(e), Some(c)) = (&eta, &theta_cert) else { return missing("eta or certificate") };
        let cert = eisenstein_eta(e, &c.prime)?;
        eta_ok = cert.holds();
        Ok((Status::from_bool(eta_ok), cert.to_json()))
    })?;

    rec.run("degree_ledger", || {
        let certified = eta_ok && theta_cert.as_ref().is_some_and(|c| c.holds());
        let ledger = degree_ledger(p, config.n, certified)?;
        Ok((Status::from_bool(ledger.consistent() && certified), ledger.to_json()))
    })?;

    Ok(VerificationReport { p, n: config.n, checks: rec.checks })
}
