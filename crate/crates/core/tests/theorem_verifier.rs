use ptorsion_core::frobenius_form::{extract_eta, extract_theta};
use ptorsion_core::theorem_verifier::{
    check_coefficient_structure, check_vanishing_propagation, coefficient_estimate, degree_ledger,
    eisenstein_eta, eisenstein_theta, run_all, Status, CHECK_IDS,
};
use ptorsion_core::weighted_poly::parse_bivar;
use ptorsion_core::{Budget, DivPolyTable, Error, PrimeField, ThetaData, VerifyConfig};
use serde_json::Value;
use tempfile::tempdir;

fn theta(p: u64) -> ThetaData {
    extract_theta(&mut DivPolyTable::new(PrimeField::new(p).unwrap())).unwrap().unwrap()
}

#[test]
fn all_checks_pass_for_small_primes() {
    let config = VerifyConfig { n: 2, ..VerifyConfig::default() };
    for p in [5, 7, 11, 13] {
        let r = run_all(p, &config).unwrap();
        let ids: Vec<&str> = r.checks.iter().map(|c| c.id).collect();
        assert_eq!(ids, CHECK_IDS);
        assert!(r.passed(), "p = {p}: {:?}", r.failed_ids());
    }
}

#[test]
fn report_json_shape() {
    let r = run_all(7, &VerifyConfig::default()).unwrap();
    let v = r.to_json();
    assert_eq!(v["p"], 7);
    assert_eq!(v["n"], 1);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), CHECK_IDS.len());
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert_eq!(c["millis"], Value::Null);
        assert!(c["witness"].is_object());
    }
    assert!(v["versions"]["cache"].is_number() || v["versions"]["cache"].is_string());
}

#[test]
fn timings_are_recorded_only_on_request() {
    let config = VerifyConfig { timings: true, ..VerifyConfig::default() };
    let r = run_all(5, &config).unwrap();
    assert!(r.checks.iter().all(|c| c.millis.is_some()));
}

#[test]
fn reports_are_deterministic_with_and_without_cache() {
    let dir = tempdir().unwrap();
    let plain = VerifyConfig { n: 2, seed: 9, ..VerifyConfig::default() };
    let cached = VerifyConfig { cache_dir: Some(dir.path().to_path_buf()), ..plain.clone() };
    let a = run_all(11, &plain).unwrap().to_json().to_string();
    let b = run_all(11, &plain).unwrap().to_json().to_string();
    let c = run_all(11, &cached).unwrap().to_json().to_string();
    let d = run_all(11, &cached).unwrap().to_json().to_string();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(c, d);
}

#[test]
fn budget_refuses_large_primes() {
    assert!(coefficient_estimate(31) > Budget::Low.limit());
    let config = VerifyConfig { budget: Budget::Low, ..VerifyConfig::default() };
    assert!(matches!(run_all(31, &config), Err(Error::Budget(_))));
    assert!(matches!(run_all(9, &VerifyConfig::default()), Err(Error::NotPrime(9))));
}

#[test]
fn coefficient_structure_catches_corruption() {
    let mut th = theta(7);
    assert!(check_coefficient_structure(&th).unwrap().holds());
    let f = th.field();
    // a_lead = c*t here; s^5 has the weight of a_10 but no factor t
    let k = th.middle()[0].0;
    assert_eq!(k, 10);
    let stray = parse_bivar(&f, "1*s^5").unwrap();
    let entry = th.a.get_mut(&k).unwrap();
    *entry = entry.add(&stray);
    let cs = check_coefficient_structure(&th).unwrap();
    assert!(!cs.holds());
    assert!(cs.quotients.iter().any(|(kk, q)| *kk == k && q.is_err()));
}

#[test]
fn repeated_factor_in_lead_is_reported() {
    let mut th = theta(13);
    let f = th.field();
    let lead = th.lead().clone();
    let idx = th.lead_index();
    th.a.insert(idx, lead.mul(&parse_bivar(&f, "1*s^3 + 1*t^2").unwrap().pow(2)));
    let cs = check_coefficient_structure(&th).unwrap();
    assert!(!cs.squarefree);
    assert!(cs.repeated_factor.is_some());
}

#[test]
fn vanishing_check_finds_counterexample() {
    let mut th = theta(13);
    let out = check_vanishing_propagation(&th, 4, 1).unwrap();
    assert!(out.counterexample.is_none());
    assert!(out.points_tested > 0);
    let f = th.field();
    let k = th.middle()[0].0;
    assert_eq!(k, 19);
    let bump = parse_bivar(&f, "1*s^8*t").unwrap();
    let entry = th.a.get_mut(&k).unwrap();
    *entry = entry.add(&bump);
    let out = check_vanishing_propagation(&th, 4, 1).unwrap();
    assert!(out.counterexample.is_some());
}

#[test]
fn eisenstein_certificates() {
    for p in [5, 7, 11, 13, 17] {
        let field = PrimeField::new(p).unwrap();
        let mut table = DivPolyTable::new(field);
        let th = extract_theta(&mut table).unwrap().unwrap();
        let et = extract_eta(&mut table).unwrap().unwrap();
        let cert = eisenstein_theta(&th, 0).unwrap();
        assert!(cert.holds(), "p = {p}");
        assert_eq!(cert.ord_lead, 1);
        assert_eq!(cert.ord_const, 0);
        assert!(cert.ord_middle.iter().all(|o| o.is_none_or(|v| v >= 1)));
        assert!(eisenstein_eta(&et, &cert.prime).unwrap().holds(), "p = {p}");
    }
}

#[test]
fn eisenstein_fails_when_constant_shares_the_prime() {
    let mut th = theta(7);
    let prime = eisenstein_theta(&th, 0).unwrap().prime;
    let idx = th.const_index();
    th.a.insert(idx, th.constant().mul(&prime));
    let cert = eisenstein_theta(&th, 0).unwrap();
    assert_eq!(cert.ord_const, 1);
    assert!(!cert.holds());
}

#[test]
fn ledger_totals() {
    let l = degree_ledger(7, 2, true).unwrap();
    assert_eq!(l.total_separable(), 7 * 6);
    assert_eq!(l.total_inseparable(), 49);
    assert!(l.consistent());
    let l = degree_ledger(11, 1, true).unwrap();
    assert_eq!(l.total_degree(), 10 * 11);
}

#[test]
fn check_status_strings() {
    assert_eq!(Status::Pass.as_str(), "pass");
    assert_eq!(Status::Fail.as_str(), "fail");
    assert_eq!(Status::Inconclusive.as_str(), "inconclusive");
}
