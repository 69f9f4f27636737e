use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{classify, frobenius_data, torsion_tower, Classification, CurveSpec, FrobeniusData, PrimeData};
use crate::error::{Error, Result};
use crate::finite_field::{field_make, Field};

pub const INSEPARABILITY_NOTE: &str = "finite fields are perfect: only separable degrees are \
    compared here; the inseparable degree p^n shows up as the x^p structure of theta and eta";

#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub p: u64,
    /// The curves live over `F_{p^k}`.
    pub k: usize,
    /// Curves drawn, ordinary or not.
    pub samples: usize,
    pub n_max: u32,
    pub seed: u64,
    pub count_budget: u64,
}

/// Prediction and observation for one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelReport {
    pub n: u32,
    pub unit_root: u64,
    pub predicted: u64,
    pub observed: usize,
    pub x_degree: usize,
    pub y_in_x_field: bool,
    pub exact_order: bool,
}

impl LevelReport {
    pub fn matches(&self) -> bool {
        self.exact_order && self.predicted == self.observed as u64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleEntry {
    pub curve: CurveSpec,
    pub frobenius: FrobeniusData,
    pub classification: Classification,
    pub levels: Vec<LevelReport>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub config: SampleConfig,
    pub entries: Vec<SampleEntry>,
}

impl SampleReport {
    pub fn ordinary(&self) -> impl Iterator<Item = &SampleEntry> {
        self.entries.iter().filter(|e| e.frobenius.ordinary)
    }

    pub fn all_match(&self) -> bool {
        self.entries.iter().flat_map(|e| &e.levels).all(LevelReport::matches)
    }

    /// Every predicted degree divides `p^{n-1}(p-1)`.
    pub fn all_divide(&self) -> bool {
        let p = self.config.p;
        self.entries
            .iter()
            .flat_map(|e| &e.levels)
            .all(|l| (p.pow(l.n - 1) * (p - 1)).is_multiple_of(l.predicted))
    }

    pub fn classification_consistent(&self) -> bool {
        self.entries.iter().all(|e| e.classification.consistent())
    }

    /// `|trace| <= 2 sqrt(q)` for every sample.
    pub fn hasse_bound(&self) -> bool {
        self.entries.iter().all(|e| {
            let q = e.curve.q().expect("counted") as i128;
            let t = e.frobenius.trace as i128;
            t * t <= 4 * q
        })
    }

    pub fn max_observed(&self, n: u32) -> Option<usize> {
        self.entries
            .iter()
            .flat_map(|e| &e.levels)
            .filter(|l| l.n == n)
            .map(|l| l.observed)
            .max()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = e.curve.to_json();
                v["count"] = json!(e.frobenius.count);
                v["trace"] = json!(e.frobenius.trace);
                v["classification"] =
                    json!(if e.frobenius.ordinary { "ordinary" } else { "supersingular" });
                v["classification_consistent"] = json!(e.classification.consistent());
                v["levels"] = e
                    .levels
                    .iter()
                    .map(|l| {
                        json!({
                            "n": l.n,
                            "unit_root": l.unit_root,
                            "predicted_degree": l.predicted,
                            "observed_degree": l.observed,
                            "x_degree": l.x_degree,
                            "y_in_x_field": l.y_in_x_field,
                            "exact_order": l.exact_order,
                        })
                    })
                    .collect();
                v
            })
            .collect();
        let c = &self.config;
        let max: Vec<Value> = (1..=c.n_max).map(|n| json!(self.max_observed(n))).collect();
        json!({
            "p": c.p,
            "q": c.p.pow(c.k as u32),
            "seed": c.seed,
            "n_max": c.n_max,
            "samples": c.samples,
            "ordinary": self.ordinary().count(),
            "summary": {
                "predicted_equals_observed": self.all_match(),
                "predicted_divides_group_order": self.all_divide(),
                "classification_consistent": self.classification_consistent(),
                "hasse_bound": self.hasse_bound(),
                "max_observed_degree": max,
                "note": INSEPARABILITY_NOTE,
            },
            "entries": entries,
        })
    }
}

/// Draw `samples` nonsingular curves over `F_{p^k}` and compare, for each
/// ordinary one and each `n <= n_max`, the unit-root order with the degree of
/// the field of a point of order `p^n`.
pub fn run_samples(data: &PrimeData, config: &SampleConfig) -> Result<SampleReport> {
    if config.p != data.p {
        return Err(Error::MismatchedFields);
    }
    if config.n_max < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let field = field_make(config.p, config.k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut curves = Vec::with_capacity(config.samples);
    while curves.len() < config.samples {
        let s0 = field.random(&mut rng);
        let t0 = field.random(&mut rng);
        if let Ok(c) = CurveSpec::new(field.clone(), s0, t0) {
            curves.push(c);
        }
    }
    let entries = curves
        .into_par_iter()
        .enumerate()
        .map(|(i, curve)| {
            let frob = frobenius_data(&curve, config.n_max, config.count_budget)?;
            let classification = classify(data, &curve, &frob);
            let mut levels = Vec::new();
            if frob.ordinary {
                let q = curve.q().expect("counted");
                for n in 1..=config.n_max {
                    let u = super::frobenius_unit_root(frob.trace, q, config.p, n)?;
                    let predicted = super::multiplicative_order(u, config.p.pow(n));
                    let w = torsion_tower(data, &curve, n, config.seed ^ ((i as u64) << 8) ^ n as u64)?;
                    levels.push(LevelReport {
                        n,
                        unit_root: u,
                        predicted,
                        observed: w.degree,
                        x_degree: *w.x_degrees.last().expect("n >= 1"),
                        y_in_x_field: w.y_in_x_field,
                        exact_order: w.exact_order,
                    });
                }
            }
            Ok(SampleEntry { curve, frobenius: frob, classification, levels })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleReport { config: config.clone(), entries })
}
