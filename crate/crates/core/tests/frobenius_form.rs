use ptorsion_core::frobenius_form::{check_c_relation, extract_eta, extract_theta};
use ptorsion_core::specializer::{Curve, Point};
use ptorsion_core::weighted_poly::{parse_bivar, Weight};
use ptorsion_core::{DivPolyTable, EtaData, ExtField, Field, PrimeField, Ring, ThetaData, XPoly};

fn theta(p: u64) -> ThetaData {
    extract_theta(&mut DivPolyTable::new(PrimeField::new(p).unwrap())).unwrap().unwrap()
}

fn eta(p: u64) -> EtaData {
    extract_eta(&mut DivPolyTable::new(PrimeField::new(p).unwrap())).unwrap().unwrap()
}

/// Every affine point over `F_p`.
fn points(field: &ExtField, a: u64, b: u64) -> Vec<Point<Vec<u64>>> {
    let c = Curve { field, a: field.from_u64(a), b: field.from_u64(b) };
    let p = field.characteristic();
    (0..p)
        .flat_map(|x| (0..p).map(move |y| (x, y)))
        .map(|(x, y)| Point::Affine(field.from_u64(x), field.from_u64(y)))
        .filter(|pt| c.contains(pt))
        .collect()
}

#[test]
fn theta_reassembles_psi() {
    for p in [5u64, 7, 11, 13, 17] {
        let field = PrimeField::new(p).unwrap();
        let psi = DivPolyTable::new(field).get(p as u32).unwrap();
        let th = ThetaData::from_psi(field, &psi).unwrap();
        assert_eq!(th.at_x_pow_p(), psi, "p = {p}");
        assert_eq!(th.x_degree() as u64, (p - 1) / 2);
        for (&k, c) in &th.a {
            assert!(c.is_zero() || c.weight_of().unwrap() == Weight::Homogeneous(k), "p = {p}, k = {k}");
        }
        assert_eq!(th.lead_index() as u64, (p - 1) / 2);
        assert_eq!(th.const_index() as u64, (p * p - 1) / 2);
    }
}

#[test]
fn theta_p5_coefficients() {
    let th = theta(5);
    let f = th.field();
    assert_eq!(th.a[&2], parse_bivar(&f, "2*s").unwrap());
    assert_eq!(th.a[&7], parse_bivar(&f, "4*s^2*t").unwrap());
    assert_eq!(th.a[&12], parse_bivar(&f, "1*s^6 + 3*s^3*t^2 + 4*t^4").unwrap());
}

#[test]
fn eta_reassembles_sigma_and_c_relation_holds() {
    for p in [5u64, 7, 11, 13] {
        let field = PrimeField::new(p).unwrap();
        let mut table = DivPolyTable::new(field);
        let sigma = table.sigma(p as u32).unwrap();
        let et = EtaData::from_sigma(field, &sigma).unwrap();
        assert_eq!(et.at_x_pow_p(), sigma, "p = {p}");
        assert_eq!(et.x_degree() as u64, p);
        let th = theta(p);
        let rel = check_c_relation(&th, &et);
        assert!(rel.holds && rel.constant_term_holds, "p = {p}");
        // c-part is -theta^2 outright
        assert_eq!(et.c_part(), th.at_x_pow_p().square().neg(), "p = {p}");
    }
}

#[test]
fn stray_exponents_are_reported() {
    let field = PrimeField::new(7).unwrap();
    let psi = DivPolyTable::new(field).get(7).unwrap();
    let bent = psi.add(&XPoly::monomial_i64(field, 1, 1, 1, 3));
    let err = ThetaData::from_psi(field, &bent).unwrap_err();
    assert!(err.reason.contains('3'), "{}", err.reason);

    let mut sigma = DivPolyTable::new(field).sigma(7).unwrap();
    sigma.base = sigma.base.add(&XPoly::monomial_i64(field, 1, 0, 0, 8));
    assert!(EtaData::from_sigma(field, &sigma).is_err());
}

#[test]
fn anomalous_points_are_theta_roots() {
    // a point of order p over F_p has x^p = x, so theta vanishes there
    for p in [7u64, 11, 13] {
        let fp = ExtField::prime(PrimeField::new(p).unwrap());
        let th = theta(p);
        let mut seen = 0;
        for a in 0..p {
            for b in 0..p {
                if (4 * a * a * a + 27 * b * b) % p == 0 {
                    continue;
                }
                let pts = points(&fp, a, b);
                if pts.len() as u64 + 1 != p {
                    continue;
                }
                seen += 1;
                let spec = th.specialize(&fp, &fp.from_u64(a), &fp.from_u64(b));
                for pt in &pts {
                    let Point::Affine(x, _) = pt else { unreachable!() };
                    assert!(fp.is_zero(&spec.eval(x)), "p = {p}, a = {a}, b = {b}");
                }
            }
        }
        assert!(seen > 0, "no anomalous curve for p = {p}");
    }
}

#[test]
fn eta_vanishes_over_p_torsion_preimages() {
    // over F_5 a curve with 10 points has S of order 10 and [5]S of order 2
    let fp = ExtField::prime(PrimeField::new(5).unwrap());
    let et = eta(5);
    let mut seen = 0;
    for a in 0..5u64 {
        for b in 0..5u64 {
            if (4 * a * a * a + 27 * b * b) % 5 == 0 {
                continue;
            }
            let pts = points(&fp, a, b);
            if pts.len() + 1 != 10 {
                continue;
            }
            let c = Curve { field: &fp, a: fp.from_u64(a), b: fp.from_u64(b) };
            for s in &pts {
                let Point::Affine(xs, _) = s else { unreachable!() };
                let Point::Affine(xt, _) = c.mul(s, 5) else { continue };
                seen += 1;
                let spec = et.specialize(&fp, &fp.from_u64(a), &fp.from_u64(b), &xt);
                assert!(fp.is_zero(&spec.eval(&fp.frobenius(xs))), "a = {a}, b = {b}");
            }
        }
    }
    assert!(seen > 0);
}
