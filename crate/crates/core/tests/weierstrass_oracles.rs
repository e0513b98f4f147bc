//! Oracle-backed tests for Weierstrass data: branching divisors, periods
//! against exact residues, immersion evaluation against closed forms, and
//! local identities against finite differences.

use num_complex::Complex64;
use spectralab::curve::poly::{q_i64, Poly};
use spectralab::curve::{HyperellipticCurve, MeromorphicFunction, RatFn};
use spectralab::spectral::IndexResult;
use spectralab::weierstrass::quad::{full_circle, polyline};
use spectralab::weierstrass::{
    branching_divisor, branching_identity_check, evaluate_immersion, identity::local_identity_check,
    identity::GridSpec, index_bound_check, period_from_residues, periods, BranchingDivisor,
    CurveData, DomainDivisor, PlanarData, WeierstrassData, WeierstrassError,
};

fn enneper() -> PlanarData {
    PlanarData::new(RatFn::x(), RatFn::one(), vec![]).unwrap()
}

fn catenoid() -> PlanarData {
    // phi = z, omega = dz / z^2
    let h = RatFn::new(Poly::one(), Poly::from_i64(&[0, 0, 1]));
    PlanarData::new(RatFn::x(), h, vec![Complex64::new(0.0, 0.0)]).unwrap()
}

fn helicoid() -> PlanarData {
    // phi = z, omega = i dz / z^2
    let h = RatFn::new(Poly::one(), Poly::from_i64(&[0, 0, 1]));
    PlanarData::with_unit(
        RatFn::x(),
        h,
        Complex64::new(0.0, 1.0),
        vec![Complex64::new(0.0, 0.0)],
    )
    .unwrap()
}

#[test]
fn enneper_branching_is_empty() {
    let b = branching_divisor(&WeierstrassData::Planar(enneper())).unwrap();
    assert_eq!(b.total_order, 0);
    match b.divisor {
        DomainDivisor::Plane(entries) => assert!(entries.is_empty()),
        _ => panic!(),
    }
}

#[test]
fn catenoid_branching_excuses_the_puncture() {
    let b = branching_divisor(&WeierstrassData::Planar(catenoid())).unwrap();
    assert_eq!(b.total_order, 0);
}

#[test]
fn undeclared_puncture_is_rejected() {
    let h = RatFn::new(Poly::one(), Poly::from_i64(&[0, 0, 1]));
    let data = PlanarData::new(RatFn::x(), h, vec![]).unwrap();
    match branching_divisor(&WeierstrassData::Planar(data)) {
        Err(WeierstrassError::NotImmersionDatum { order, .. }) => assert!(order < 0),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn branched_planar_data_counts_common_zeros() {
    // phi = z, omega = z^k dz: all three components vanish to order k at 0
    for k in 1..=3u32 {
        let mut c = vec![0i64; k as usize + 1];
        c[k as usize] = 1;
        let h = RatFn::new(Poly::from_i64(&c), Poly::one());
        let data = PlanarData::new(RatFn::x(), h, vec![]).unwrap();
        let b = branching_divisor(&WeierstrassData::Planar(data)).unwrap();
        assert_eq!(b.total_order, k as i64, "omega = z^{k} dz");
    }
}

#[test]
fn genus_three_regular_form_has_no_branching() {
    // y^2 = x^7 - 1, phi = x, omega = dx / y: K - 2 P_phi = 0, B = 0
    let curve = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let data = CurveData::new(curve.clone(), MeromorphicFunction::x(), MeromorphicFunction::one())
        .unwrap();
    let b = branching_divisor(&WeierstrassData::OnCurve(data.clone())).unwrap();
    assert_eq!(b.total_order, 0);
    match &b.divisor {
        DomainDivisor::Curve(d) => assert!(d.is_zero()),
        _ => panic!(),
    }
    assert!(branching_identity_check(&data).unwrap());
    // K - 2 P_x = 0 seen through divisor arithmetic
    let k = curve.canonical_divisor();
    let p_x = curve
        .divisor_of(&MeromorphicFunction::x())
        .unwrap()
        .negative_part();
    assert!(k.sub(&p_x.scaled(2)).is_zero());
}

#[test]
fn genus_two_degree_two_has_no_regular_form() {
    // deg(K - 2 P_phi) = 2g - 2 - 2 deg phi = -2 < 0
    let curve = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 1]).unwrap();
    match CurveData::new(curve, MeromorphicFunction::x(), MeromorphicFunction::one()) {
        Err(WeierstrassError::NoSuchForm(d)) => assert_eq!(d, -2),
        other => panic!("expected NoSuchForm, got {other:?}"),
    }
}

#[test]
fn curve_branching_identity_on_varied_pairs() {
    // genus 4 odd model leaves room for poles of phi of degree <= 3
    let curve = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let x = MeromorphicFunction::x();
    let x2 = x.mul(&x, curve.p());
    let candidates = vec![
        (x.clone(), MeromorphicFunction::one()),
        (x.clone(), x.clone()),
        (x.clone(), x2.clone()),
        (x2.clone(), MeromorphicFunction::one()),
        (x.clone(), MeromorphicFunction::y()),
    ];
    for (phi, factor) in candidates {
        let data = match CurveData::new(curve.clone(), phi, factor) {
            Ok(d) => d,
            Err(WeierstrassError::NoSuchForm(_)) => continue,
            Err(e) => panic!("unexpected: {e}"),
        };
        match branching_divisor(&WeierstrassData::OnCurve(data.clone())) {
            Ok(BranchingDivisor { total_order, .. }) => {
                assert!(total_order >= 0);
                assert!(branching_identity_check(&data).unwrap());
            }
            Err(WeierstrassError::NotEffective(_)) => {} // rejected pair, fine
            Err(e) => panic!("unexpected: {e}"),
        }
    }
}

#[test]
fn curve_data_with_polar_factor_is_rejected() {
    // omega = dx / ((x - 5) y) has poles off the branch locus
    let curve = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let factor = MeromorphicFunction::from_x_part(RatFn::new(
        Poly::one(),
        Poly::x_minus(&q_i64(5)),
    ));
    let data = CurveData::new(curve, MeromorphicFunction::x(), factor).unwrap();
    assert!(matches!(
        branching_divisor(&WeierstrassData::OnCurve(data)),
        Err(WeierstrassError::NotEffective(_))
    ));
}

#[test]
fn catenoid_loop_period_vanishes() {
    let data = catenoid();
    let loop0 = full_circle(Complex64::new(0.0, 0.0), 1.0);
    let p = periods(&WeierstrassData::Planar(data.clone()), &[loop0]).unwrap();
    for c in p.values[0] {
        assert!(c.abs() < 1e-8, "catenoid period {:?}", p.values[0]);
    }
    // residue crosscheck: exact rational residues at the puncture
    let by_res = period_from_residues(&data, &[q_i64(0)]);
    for c in by_res {
        assert!(c.abs() < 1e-12);
    }
}

#[test]
fn helicoid_vertical_period_is_minus_four_pi() {
    let data = helicoid();
    let loop0 = full_circle(Complex64::new(0.0, 0.0), 1.0);
    let p = periods(&WeierstrassData::Planar(data.clone()), &[loop0]).unwrap();
    let expected = -4.0 * std::f64::consts::PI;
    assert!(p.values[0][0].abs() < 1e-8);
    assert!(p.values[0][1].abs() < 1e-8);
    assert!((p.values[0][2] - expected).abs() < 1e-8, "{:?}", p.values[0]);
    let by_res = period_from_residues(&data, &[q_i64(0)]);
    assert!(by_res[0].abs() < 1e-12 && by_res[1].abs() < 1e-12);
    assert!((by_res[2] - expected).abs() < 1e-12);
}

#[test]
fn null_homotopic_loop_has_zero_period() {
    let data = catenoid();
    let loop0 = full_circle(Complex64::new(3.0, 0.0), 0.5);
    let p = periods(&WeierstrassData::Planar(data), &[loop0]).unwrap();
    for c in p.values[0] {
        assert!(c.abs() < 1e-10);
    }
}

#[test]
fn periods_add_under_concatenation() {
    let data = helicoid();
    let once = full_circle(Complex64::new(0.0, 0.0), 1.0);
    let mut twice = once.clone();
    twice.extend(once.clone());
    let p = periods(&WeierstrassData::Planar(data), &[once, twice]).unwrap();
    for c in 0..3 {
        assert!((2.0 * p.values[0][c] - p.values[1][c]).abs() < 1e-8);
    }
}

/// Closed-form catenoid: antiderivatives of the isotropic triple for
/// phi = z, omega = dz/z^2 are (-1/z - z, i(z - 1/z), 2 log z).
fn catenoid_closed_form(z: Complex64) -> [f64; 3] {
    let f1 = -1.0 / z - z;
    let f2 = Complex64::new(0.0, 1.0) * (z - 1.0 / z);
    let f3 = 2.0 * z.ln();
    [f1.re, f2.re, f3.re]
}

#[test]
fn catenoid_samples_lie_on_cosh_surface() {
    let data = WeierstrassData::Planar(catenoid());
    let base = Complex64::new(1.0, 0.0);
    let pts: Vec<Complex64> = vec![
        Complex64::new(1.3, 0.2),
        Complex64::new(0.8, -0.4),
        Complex64::new(2.0, 0.5),
        Complex64::new(1.0, 0.9),
    ];
    let xs = evaluate_immersion(&data, base, &pts).unwrap();
    let base_val = catenoid_closed_form(base);
    for (z, x) in pts.iter().zip(&xs) {
        let expected = catenoid_closed_form(*z);
        for c in 0..3 {
            assert!(
                (x[c] - (expected[c] - base_val[c])).abs() < 1e-9,
                "component {c}: {} vs {}",
                x[c],
                expected[c] - base_val[c]
            );
        }
        // scale c = 2: x^2 + y^2 = 4 cosh^2(x3 / 2) after undoing the
        // basepoint offset
        let p1 = x[0] + base_val[0];
        let p2 = x[1] + base_val[1];
        let p3 = x[2] + base_val[2];
        let lhs = p1 * p1 + p2 * p2;
        let rhs = 4.0 * (p3 / 2.0).cosh().powi(2);
        assert!((lhs - rhs).abs() < 1e-6, "{lhs} vs {rhs}");
    }
}

#[test]
fn homotopic_paths_agree_and_basepoint_maps_to_zero() {
    let data = WeierstrassData::Planar(catenoid());
    let base = Complex64::new(1.0, 0.0);
    let target = Complex64::new(0.5, 1.2);
    let direct = spectralab::weierstrass::evaluate_immersion_delta(
        &data,
        &polyline(&[base, target]),
    )
    .unwrap();
    let detour = spectralab::weierstrass::evaluate_immersion_delta(
        &data,
        &polyline(&[base, Complex64::new(2.0, 1.0), Complex64::new(1.2, 2.0), target]),
    )
    .unwrap();
    for c in 0..3 {
        assert!((direct[c] - detour[c]).abs() < 1e-9);
    }
    let at_base = evaluate_immersion(&data, base, &[base]).unwrap();
    for c in at_base[0] {
        assert!(c.abs() < 1e-12);
    }
}

#[test]
fn pole_on_path_is_an_error() {
    let data = WeierstrassData::Planar(catenoid());
    let res = evaluate_immersion(&data, Complex64::new(-1.0, 0.0), &[Complex64::new(1.0, 0.0)]);
    assert!(res.is_err());
}

#[test]
fn enneper_identities_pass_at_1e5() {
    let report = local_identity_check(
        &enneper(),
        GridSpec { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0, n: 50 },
        1e-5,
    )
    .unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
fn catenoid_normal_matches_stereographic_gauss_map() {
    let report = local_identity_check(
        &catenoid(),
        GridSpec { x0: 1.0, x1: 2.0, y0: -0.4, y1: 0.4, n: 41 },
        1e-4,
    )
    .unwrap();
    assert!(report.normal_ok, "normal deviation {}", report.max_normal_deviation);
    assert!(report.conformal_ok, "conformal defect {}", report.max_conformal_defect);
    assert!(
        report.max_factor_error < 1e-4,
        "factor error {}",
        report.max_factor_error
    );
}

#[test]
fn torus_record_with_constant_gauss_map() {
    // flat quotient data: phi constant, omega = dz; no branching, periods
    // along the two generators are plain translations
    let data = PlanarData::new(RatFn::constant(q_i64(0)), RatFn::one(), vec![])
        .unwrap()
        .on_torus(Complex64::new(0.0, 1.0));
    let b = branching_divisor(&WeierstrassData::Planar(data.clone())).unwrap();
    assert_eq!(b.total_order, 0);
    let gen1 = polyline(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let gen2 = polyline(&[Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)]);
    let p = periods(&WeierstrassData::Planar(data), &[gen1, gen2]).unwrap();
    // omega = dz, phi = 0: X = Re(z, i z, 0)
    assert!((p.values[0][0] - 1.0).abs() < 1e-10);
    assert!((p.values[1][1] + 1.0).abs() < 1e-10);
}

#[test]
fn curve_period_of_contractible_loop_vanishes() {
    let curve = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let data = CurveData::new(curve, MeromorphicFunction::x(), MeromorphicFunction::one()).unwrap();
    let loop0 = full_circle(Complex64::new(3.0, 0.0), 0.4);
    let p = periods(&WeierstrassData::OnCurve(data), &[loop0]).unwrap();
    for c in p.values[0] {
        assert!(c.abs() < 1e-8, "{:?}", p.values[0]);
    }
}

#[test]
fn curve_cycle_periods_are_additive() {
    // circle around exactly two branch points of y^2 = x^7 - 1 lifts to a
    // closed cycle on the curve
    let curve = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let data = CurveData::new(curve, MeromorphicFunction::x(), MeromorphicFunction::one()).unwrap();
    let angle = 2.0 * std::f64::consts::PI / 7.0;
    let center = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, angle)) / 2.0;
    let once = full_circle(center, 0.5);
    let mut twice = once.clone();
    twice.extend(once.clone());
    let p = periods(&WeierstrassData::OnCurve(data), &[once, twice]).unwrap();
    for c in 0..3 {
        assert!(
            (2.0 * p.values[0][c] - p.values[1][c]).abs() < 1e-7,
            "{:?} vs {:?}",
            p.values[0],
            p.values[1]
        );
    }
}

#[test]
fn index_bound_arithmetic() {
    // torus: h0(K) = 1, bound (2 - 3)/3 < 0, vacuous
    let idx = IndexResult { index: 0, nullity: 1, band: 0.05 };
    let r = index_bound_check(1, &idx);
    assert!(r.pass);
    assert!(r.bound < 0.0);

    // genus 3: h0(K) = 3, bound 1; index 1 passes, inflating h0 flips it
    let idx = IndexResult { index: 1, nullity: 3, band: 0.05 };
    let r = index_bound_check(3, &idx);
    assert!(r.pass);
    assert!((r.bound - 1.0).abs() < 1e-12);
    let r_mutated = index_bound_check(4, &idx);
    assert!(!r_mutated.pass, "inflated h0 must flip the verdict");
}
