use std::fmt::Write;
use std::path::Path;

use ptorsion_core::division_poly::DivPolyTable;
use ptorsion_core::frobenius_form::{extract_eta, extract_theta};
use ptorsion_core::specializer::{run_samples, PrimeData, SampleConfig};
use ptorsion_core::theorem_verifier::{run_all, Status, VerificationReport, VerifyConfig};
use ptorsion_core::{Error, IntegerRing, PrimeField, Result, Ring, SupersingularTable};
use rayon::prelude::*;
use serde_json::Value;

use crate::config::{Cli, Command, Format, RingArg, SpecializeArgs, VerifyArgs};

pub struct Outcome {
    pub text: String,
    /// Identifiers of failed checks; empty on success.
    pub failures: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failures: Vec::new() }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn table<R: Ring>(ring: R, cache: Option<&Path>) -> DivPolyTable<R> {
    match cache {
        Some(dir) => DivPolyTable::with_cache(ring, dir),
        None => DivPolyTable::new(ring),
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cache = cli.cache_dir.as_deref();
    match &cli.command {
        Command::Divpoly { m, ring, p } => {
            if *m == 0 {
                return Err(Error::InvalidArgument("--m must be at least 1".into()));
            }
            let text = match (ring, p) {
                (_, Some(p)) => table(PrimeField::new(*p)?, cache).get(*m)?.to_string(),
                (RingArg::Prime, None) => {
                    return Err(Error::InvalidArgument("--ring Fp needs --p".into()))
                }
                (RingArg::Integers, None) => table(IntegerRing, cache).get(*m)?.to_string(),
            };
            Ok(Outcome::ok(text + "\n"))
        }
        Command::Theta { p } => {
            let mut t = table(PrimeField::new(*p)?, cache);
            match extract_theta(&mut t)? {
                Ok(theta) => Ok(Outcome::ok(render(cli.format, &theta.to_json()))),
                Err(f) => Ok(Outcome { text: f.reason + "\n", failures: vec!["theta_structure".into()] }),
            }
        }
        Command::Eta { p } => {
            let mut t = table(PrimeField::new(*p)?, cache);
            match extract_eta(&mut t)? {
                Ok(eta) => Ok(Outcome::ok(render(cli.format, &eta.to_json()))),
                Err(f) => Ok(Outcome { text: f.reason + "\n", failures: vec!["eta_structure".into()] }),
            }
        }
        Command::Ssj { p } => {
            let ss = SupersingularTable::compute(*p)?;
            let failures = ss
                .checks()?
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(id, _)| format!("p={p}:{id}"))
                .collect();
            Ok(Outcome { text: render(cli.format, &ss.to_json()), failures })
        }
        Command::Verify(args) => verify(cli, args),
        Command::Specialize(args) => specialize(cli, args),
    }
}

/// JSON as is, or `key: value` lines for flat objects.
fn render(format: Format, v: &Value) -> String {
    match format {
        Format::Json => pretty(v),
        Format::Text => {
            let mut out = String::new();
            flatten(&mut out, "", v);
            out
        }
    }
}

fn flatten(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(out, &key, v);
            }
        }
        Value::String(s) => writeln!(out, "{prefix}: {s}").expect("string write"),
        other => writeln!(out, "{prefix}: {other}").expect("string write"),
    }
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome> {
    if args.n < 1 {
        return Err(Error::InvalidArgument("--n must be at least 1".into()));
    }
    let config = VerifyConfig {
        n: args.n,
        seed: args.seed,
        vanishing_samples: args.samples,
        budget: args.budget.into(),
        timings: args.timings,
        cache_dir: cli.cache_dir.clone(),
    };
    // refuse bad input before any work starts
    for &p in &args.primes {
        PrimeField::new(p)?;
        config.budget.admit(p)?;
    }
    let reports: Vec<VerificationReport> = pool(args.jobs)?.install(|| {
        args.primes.par_iter().map(|&p| run_all(p, &config)).collect::<Result<_>>()
    })?;
    let mut text = String::new();
    let mut failures = Vec::new();
    for r in &reports {
        failures.extend(r.failed_ids().into_iter().map(|id| format!("p={}:{id}", r.p)));
        match cli.format {
            Format::Json => {
                text.push_str(&serde_json::to_string(&r.to_json()).expect("values serialize"));
                text.push('\n');
            }
            Format::Text => {
                let verdict = if r.passed() { "pass" } else { "FAIL" };
                writeln!(text, "p={} n={}: {verdict}", r.p, r.n).expect("string write");
                for c in &r.checks {
                    let mark = match c.status {
                        Status::Pass => "ok",
                        Status::Fail => "FAIL",
                        Status::Inconclusive => "inconclusive",
                    };
                    writeln!(text, "  {:<24}{mark}", c.id).expect("string write");
                }
            }
        }
    }
    Ok(Outcome { text, failures })
}

fn specialize(cli: &Cli, args: &SpecializeArgs) -> Result<Outcome> {
    let p = args.p;
    PrimeField::new(p)?;
    let q = args.q.unwrap_or(p);
    let k = power_of(q, p).ok_or_else(|| {
        Error::InvalidArgument(format!("q = {q} is not a power of p = {p}"))
    })?;
    let config = SampleConfig {
        p,
        k,
        samples: args.samples,
        n_max: args.n,
        seed: args.seed,
        count_budget: args.count_budget,
    };
    let report = pool(args.jobs)?.install(|| {
        let data = PrimeData::compute(p, cli.cache_dir.as_deref())?;
        run_samples(&data, &config)
    })?;
    let mut failures = Vec::new();
    for (ok, id) in [
        (report.all_match(), "predicted_equals_observed"),
        (report.all_divide(), "predicted_divides_group_order"),
        (report.classification_consistent(), "classification_consistent"),
        (report.hasse_bound(), "hasse_bound"),
    ] {
        if !ok {
            failures.push(id.to_string());
        }
    }
    let json = report.to_json();
    let text = match cli.format {
        Format::Json => pretty(&json),
        Format::Text => {
            let mut out = String::new();
            flatten(&mut out, "", &json["summary"]);
            writeln!(out, "samples: {}\nordinary: {}", json["samples"], json["ordinary"])
                .expect("string write");
            out
        }
    };
    Ok(Outcome { text, failures })
}

/// `k` with `p^k = q`, `k >= 1`.
fn power_of(q: u64, p: u64) -> Option<usize> {
    let mut k = 0;
    let mut v = q;
    while v > 1 && v.is_multiple_of(p) {
        v /= p;
        k += 1;
    }
    (v == 1 && k >= 1).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(power_of(25, 5), Some(2));
        assert_eq!(power_of(5, 5), Some(1));
        assert_eq!(power_of(4, 5), None);
        assert_eq!(power_of(1, 5), None);
    }
}
