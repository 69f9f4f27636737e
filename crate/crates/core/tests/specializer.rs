use num_integer::Integer;
use ptorsion_core::specializer::{
    classify, count_points, frobenius_data, frobenius_unit_root, multiplicative_order, run_samples,
    torsion_tower, COUNT_BUDGET, INSEPARABILITY_NOTE,
};
use ptorsion_core::{field_make, CurveSpec, Error, Field, PrimeData, Ring, SampleConfig};

/// `#E(F_p)` by testing every pair `(x, y)`.
fn pair_count(p: u64, a: u64, b: u64) -> u64 {
    let mut n = 1;
    for x in 0..p {
        for y in 0..p {
            if (x * x % p * x + a * x + b) % p == y * y % p {
                n += 1;
            }
        }
    }
    n
}

/// Least `k` with `p^n | #E(F_{q^k})`, from the trace recurrence
/// `s_k = trace * s_{k-1} - q * s_{k-2}` mod `p^n`.
fn torsion_degree_oracle(trace: i64, q: u64, p: u64, n: u32) -> usize {
    let m = p.pow(n) as i128;
    let (a, q) = (trace as i128, q as i128);
    let (mut prev, mut cur) = (2i128, a.rem_euclid(m));
    let mut qk = q.rem_euclid(m);
    for k in 1.. {
        if (qk + 1 - cur).rem_euclid(m) == 0 {
            return k;
        }
        let next = (a * cur - q * prev).rem_euclid(m);
        (prev, cur) = (cur, next);
        qk = qk * q % m;
    }
    unreachable!()
}

#[test]
fn point_counts_match_pair_enumeration() {
    for p in [5u64, 7, 11] {
        for a in 0..p {
            for b in 0..p {
                let Ok(c) = CurveSpec::over_prime(p, a as i64, b as i64) else {
                    assert_eq!((4 * a * a * a + 27 * b * b) % p, 0);
                    continue;
                };
                assert_eq!(count_points(&c, COUNT_BUDGET).unwrap(), pair_count(p, a, b));
            }
        }
    }
}

#[test]
fn counts_over_extension_obey_trace_recurrence() {
    // #E(F_{p^2}) = p^2 + 1 - (trace^2 - 2p)
    let f25 = field_make(5, 2).unwrap();
    for (a, b) in [(1i64, 1i64), (2, 1), (0, 2), (1, 0)] {
        let c = CurveSpec::over_prime(5, a, b).unwrap();
        let trace = 6 - count_points(&c, COUNT_BUDGET).unwrap() as i64;
        let lifted = CurveSpec::new(f25.clone(), f25.embed(&c.field, &c.s0), f25.embed(&c.field, &c.t0))
            .unwrap();
        let expected = 26 - (trace * trace - 10);
        assert_eq!(count_points(&lifted, COUNT_BUDGET).unwrap() as i64, expected);
    }
}

#[test]
fn unit_root_solves_the_characteristic_polynomial() {
    for (trace, q, p) in [(2i64, 5u64, 5u64), (-3, 7, 7), (4, 11, 11), (1, 13, 13), (-6, 25, 5)] {
        for n in 1..=4 {
            let u = frobenius_unit_root(trace, q, p, n).unwrap() as i128;
            let m = p.pow(n) as i128;
            assert_eq!((u * u - trace as i128 * u + q as i128).rem_euclid(m), 0);
            assert_ne!(u % p as i128, 0);
        }
    }
    assert_eq!(frobenius_unit_root(0, 7, 7, 2), Err(Error::Supersingular));
}

#[test]
fn multiplicative_order_by_powers() {
    for m in [5u64, 25, 49, 121] {
        for u in (1..m).filter(|u| u.gcd(&m) == 1) {
            let k = multiplicative_order(u, m);
            let mut x = 1u64;
            for i in 1..=k {
                x = x * u % m;
                assert_eq!(x == 1, i == k, "u = {u}, m = {m}");
            }
        }
    }
}

#[test]
fn tower_degree_matches_group_order_oracle() {
    for p in [5u64, 7] {
        let data = PrimeData::compute(p, None).unwrap();
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                let Ok(c) = CurveSpec::over_prime(p, a, b) else { continue };
                let frob = frobenius_data(&c, 2, COUNT_BUDGET).unwrap();
                if !frob.ordinary {
                    assert!(matches!(torsion_tower(&data, &c, 1, 0), Err(Error::Supersingular)));
                    continue;
                }
                for n in 1..=2 {
                    let w = torsion_tower(&data, &c, n, 3).unwrap();
                    assert_eq!(w.degree, torsion_degree_oracle(frob.trace, p, p, n), "p = {p}, ({a}, {b}), n = {n}");
                    assert!(w.exact_order);
                    let e = w.field.clone();
                    let lifted_a = e.embed(&c.field, &c.s0);
                    let lifted_b = e.embed(&c.field, &c.t0);
                    let lhs = e.mul(&w.y, &w.y);
                    let rhs = e.add(&e.add(&e.pow(&w.x, 3), &e.mul(&lifted_a, &w.x)), &lifted_b);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn classification_agrees_with_trace() {
    let data = PrimeData::compute(13, None).unwrap();
    for a in 0..13 {
        for b in 0..13 {
            let Ok(c) = CurveSpec::over_prime(13, a, b) else { continue };
            let frob = frobenius_data(&c, 1, COUNT_BUDGET).unwrap();
            let cls = classify(&data, &c, &frob);
            assert!(cls.consistent(), "({a}, {b})");
            assert_eq!(cls.ordinary, frob.trace % 13 != 0);
        }
    }
}

#[test]
fn twisting_flips_the_trace_for_nonsquares() {
    let c = CurveSpec::over_prime(11, 1, 4).unwrap();
    let t = 12 - count_points(&c, COUNT_BUDGET).unwrap() as i64;
    for d in 1..11u64 {
        let tw = c.twist(&c.field.from_u64(d)).unwrap();
        let t2 = 12 - count_points(&tw, COUNT_BUDGET).unwrap() as i64;
        let sign = if c.field.is_square(&c.field.from_u64(d)) { 1 } else { -1 };
        assert_eq!(t2, sign * t, "d = {d}");
        assert_eq!(tw.j_invariant(), c.j_invariant());
    }
}

#[test]
fn samples_over_f25_match_oracle() {
    let data = PrimeData::compute(5, None).unwrap();
    let config = SampleConfig { p: 5, k: 2, samples: 30, n_max: 2, seed: 4, count_budget: COUNT_BUDGET };
    let report = run_samples(&data, &config).unwrap();
    assert!(report.all_match() && report.all_divide() && report.hasse_bound());
    for e in report.ordinary() {
        for l in &e.levels {
            assert_eq!(l.observed, torsion_degree_oracle(e.frobenius.trace, 25, 5, l.n));
        }
    }
    assert_eq!(report.to_json()["summary"]["note"], INSEPARABILITY_NOTE);
}

#[test]
fn budget_and_argument_errors() {
    let c = CurveSpec::over_prime(7, 1, 1).unwrap();
    assert!(matches!(count_points(&c, 5), Err(Error::Budget(_))));
    assert_eq!(CurveSpec::over_prime(7, 0, 0), Err(Error::Singular));
    let data = PrimeData::compute(7, None).unwrap();
    let bad = SampleConfig { p: 5, k: 1, samples: 1, n_max: 1, seed: 0, count_budget: COUNT_BUDGET };
    assert!(run_samples(&data, &bad).is_err());
}
