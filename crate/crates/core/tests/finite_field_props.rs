use proptest::prelude::*;
use ptorsion_core::finite_field::{
    factor, field_make, is_irreducible, resultant, roots, ExtField, Field, PrimeField, Ring, UniPoly,
};

const P: u64 = 13;

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly<PrimeField>> {
    prop::collection::vec(0..P, 1..=max_deg + 1).prop_map(|c| UniPoly::new(fp(), c, "x"))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = UniPoly<PrimeField>> {
    poly(max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

fn f169() -> ExtField {
    field_make(P, 2).unwrap()
}

fn elem169() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..P, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_is_maximal(a in nonzero_poly(8), b in nonzero_poly(8), c in nonzero_poly(3)) {
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a).unwrap());
        prop_assert!(g.divides(&b).unwrap());
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let gc = ac.gcd(&bc).unwrap();
        prop_assert!(c.monic().divides(&gc).unwrap());
        prop_assert_eq!(gc, g.mul(&c).monic());
    }

    #[test]
    fn divrem_reconstructs(a in poly(10), b in nonzero_poly(5)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn resultant_antisymmetry(a in nonzero_poly(6), b in nonzero_poly(6)) {
        let f = fp();
        let ab = resultant(&a, &b).unwrap();
        let ba = resultant(&b, &a).unwrap();
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let sign = if da * db % 2 == 1 { f.neg(&ba) } else { ba };
        prop_assert_eq!(ab, sign);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in nonzero_poly(5), b in nonzero_poly(5)) {
        prop_assume!(a.degree() > Some(0) && b.degree() > Some(0));
        let r = resultant(&a, &b).unwrap();
        let g = a.gcd(&b).unwrap();
        prop_assert_eq!(r == 0, g.degree() > Some(0));
    }

    #[test]
    fn factorization_reassembles(a in nonzero_poly(12), seed in any::<u64>()) {
        let fac = factor(&a, seed).unwrap();
        prop_assert_eq!(fac.reassemble(&fp(), "x"), a.monic());
        for (g, _) in &fac.factors {
            prop_assert!(is_irreducible(g).unwrap());
        }
        // canonical order does not depend on the seed
        prop_assert_eq!(factor(&a, seed ^ 0x5555).unwrap().factors, fac.factors);
    }

    #[test]
    fn roots_match_brute_force(a in nonzero_poly(9)) {
        let f = fp();
        let brute: Vec<u64> = (0..P).filter(|x| f.is_zero(&a.eval(x))).collect();
        prop_assert_eq!(roots(&a, 3).unwrap(), brute);
    }

    #[test]
    fn extension_field_axioms(a in elem169(), b in elem169(), c in elem169()) {
        let f = f169();
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        prop_assert_eq!(f.pth_root(&f.frobenius(&a)), a.clone());
        // a^(q-1) = 1 for a != 0
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.pow(&a, P * P - 1)));
        }
    }
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    // number of monic irreducible quadratics over F_p is (p^2 - p) / 2
    let f = PrimeField::new(7).unwrap();
    let mut count = 0;
    for c0 in 0..7 {
        for c1 in 0..7 {
            let g = UniPoly::new(f, vec![c0, c1, 1], "x");
            if is_irreducible(&g).unwrap() {
                count += 1;
            }
        }
    }
    assert_eq!(count, (49 - 7) / 2);
}

#[test]
fn every_element_of_f125_is_a_root_of_x_q_minus_x() {
    let f = field_make(5, 3).unwrap();
    let all: Vec<Vec<u64>> = (0..125).map(|i| f.from_index(i)).collect();
    let prod = UniPoly::from_roots(f.clone(), &all, "x");
    let expected = UniPoly::monomial(f.clone(), f.one(), 125, "x")
        .sub(&UniPoly::x(f.clone(), "x"));
    assert_eq!(prod, expected);
}

#[test]
fn field_make_rejects_bad_input() {
    assert!(field_make(5, 0).is_err());
    assert!(field_make(9, 2).is_err());
    assert_eq!(field_make(5, 1).unwrap().degree(), 1);
}
