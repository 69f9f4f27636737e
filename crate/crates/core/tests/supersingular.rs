use ptorsion_core::finite_field::{is_prime, roots};
use ptorsion_core::supersingular::{fss_routes, supersingular_j_set};
use ptorsion_core::{Field, PrimeField, SupersingularTable, UniPoly};

fn primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&p| is_prime(p))
}

/// Number of points on `y^2 = x^3 + a x + b` over `F_p`, via Euler's criterion.
fn naive_count(p: u64, a: u64, b: u64) -> u64 {
    let pow = |mut base: u64, mut e: u64| {
        let mut r = 1;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r
    };
    1 + (0..p)
        .map(|x| {
            let v = (x * x % p * x + a * x + b) % p;
            match v {
                0 => 1,
                _ if pow(v, (p - 1) / 2) == 1 => 2,
                _ => 0,
            }
        })
        .sum::<u64>()
}

/// A curve over `F_p` with the given j-invariant.
fn curve_with_j(p: u64, j: u64) -> (u64, u64) {
    match j % p {
        0 => (0, 1),
        j if j == 1728 % p => (1, 0),
        j => {
            let k = (1728 % p + p - j) % p;
            (3 * j % p * k % p, 2 * j % p * k % p * k % p)
        }
    }
}

/// `floor(p/12)` plus a correction depending on `p mod 12`.
fn class_count(p: u64) -> usize {
    let extra = match p % 12 {
        1 => 0,
        5 | 7 => 1,
        11 => 2,
        _ => unreachable!(),
    };
    (p / 12) as usize + extra
}

#[test]
fn rational_supersingular_j_match_point_counts() {
    for p in primes(5, 97) {
        let set = supersingular_j_set(p).unwrap();
        for j in 0..p {
            let (a, b) = curve_with_j(p, j);
            let trace = (p + 1) as i64 - naive_count(p, a, b) as i64;
            assert_eq!(set.contains_prime(j), trace.rem_euclid(p as i64) == 0, "p = {p}, j = {j}");
        }
    }
}

#[test]
fn set_size_matches_class_count() {
    for p in primes(5, 97) {
        let set = supersingular_j_set(p).unwrap();
        assert!(set.hasse_splits, "p = {p}");
        assert_eq!(set.values.len(), class_count(p), "p = {p}");
        assert!(set.frobenius_stable(), "p = {p}");
    }
}

#[test]
fn table_invariants_up_to_97() {
    for p in primes(5, 97) {
        let t = SupersingularTable::compute(p).unwrap();
        for (id, ok) in t.checks().unwrap() {
            assert!(ok, "p = {p}: {id}");
        }
        let fss = t.fss();
        assert_eq!(fss.degree(), Some(((p - 1) / 12) as usize), "p = {p}");
        assert!(fss.is_squarefree().unwrap());
        assert_eq!(t.j_set.contains_prime(0), p % 3 == 2, "p = {p}");
        assert_eq!(t.j_set.contains_prime(1728), p % 4 == 3, "p = {p}");
        let routes = fss_routes(p).unwrap();
        assert!(routes.agree(), "p = {p}");
    }
}

#[test]
fn small_spot_values() {
    for p in [5, 7, 11] {
        assert!(SupersingularTable::compute(p).unwrap().fss().is_one());
    }
    let f13 = PrimeField::new(13).unwrap();
    let expected = UniPoly::new(f13, vec![f13.reduce_i64(-5), 1], "j");
    assert_eq!(SupersingularTable::compute(13).unwrap().fss(), &expected);
}

#[test]
fn p37_has_one_rational_and_two_conjugate_values() {
    let t = SupersingularTable::compute(37).unwrap();
    let f = PrimeField::new(37).unwrap();
    assert_eq!(roots(t.fss(), 0).unwrap(), vec![8]);
    // the remaining roots are 3 +- sqrt(15)
    let quad = UniPoly::new(f, vec![f.reduce_i64(-6), f.reduce_i64(-6), 1], "j");
    assert!(quad.divides(t.fss()).unwrap());
    assert!(!f.is_square(&15));
    let fq = &t.j_set.field;
    let irrational = t.j_set.values.iter().filter(|v| fq.as_prime(v).is_none()).count();
    assert_eq!(irrational, 2);
}

#[test]
fn rejects_small_and_composite() {
    assert!(SupersingularTable::compute(3).is_err());
    assert!(SupersingularTable::compute(15).is_err());
}
