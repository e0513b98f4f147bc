//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured values. Tolerances are pinned here, not configurable.

use num_complex::Complex64;
use spectralab::curve::{Divisor, HyperellipticCurve, MeromorphicFunction, Place};
use spectralab::ledger;
use spectralab::maximize::{maximize_lambda1, MaximizeConfig};
use spectralab::mesh::cover::{
    build_hyperelliptic_cover, cube_branch_points, octahedral_branch_points, square_branch_points,
};
use spectralab::mesh::density::{build_power_map_sphere, pullback_density, smooth_random_density};
use spectralab::mesh::sphere::build_sphere;
use spectralab::mesh::torus::build_flat_torus;
use spectralab::mesh::{ConformalDensity, Mesh};
use spectralab::spectral::{
    assemble, eigen_solve, index_of_map_with_density, schrodinger_index, yang_yau_check,
    PotentialField,
};
use spectralab::weierstrass::{self, WeierstrassData, WeierstrassError};
use std::time::Instant;

const PI: f64 = std::f64::consts::PI;

fn spectrum_of(mesh: &Mesh, density: &ConformalDensity, k: usize) -> spectralab::spectral::SpectrumResult {
    let (k_mat, m_mat) = assemble(mesh, density).unwrap();
    eigen_solve(&k_mat, &m_mat, k, 1e-8).unwrap()
}

fn uniform(mesh: &Mesh) -> ConformalDensity {
    ConformalDensity::uniform(mesh.num_vertices(), 1.0)
}

#[test]
fn criterion_01_hersch_value_on_the_round_sphere() {
    let start = Instant::now();
    let mesh = build_sphere(5).unwrap();
    assert!(mesh.num_vertices() >= 10_000);
    let s = spectrum_of(&mesh, &uniform(&mesh), 4);
    let target = 8.0 * PI;
    let rel = (s.normalized[1] - target).abs() / target;
    let elapsed = start.elapsed();
    assert!(rel < 0.01, "lambda1_bar {} vs {}", s.normalized[1], target);
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!(
        "criterion 01 PASS hersch: lambda1_bar = {:.6} vs 8pi = {:.6} (rel {:.2e}, {} vertices, {:?})",
        s.normalized[1], target, rel, mesh.num_vertices(), elapsed
    );
}

#[test]
fn criterion_02_nadirashvili_value_on_the_equilateral_torus() {
    let tau = Complex64::from_polar(1.0, PI / 3.0);
    let mesh = build_flat_torus(tau, 64).unwrap();
    let s = spectrum_of(&mesh, &uniform(&mesh), 8);
    let target = 8.0 * PI * PI / 3f64.sqrt();
    let rel = (s.normalized[1] - target).abs() / target;
    assert!(rel < 0.01, "lambda1_bar {} vs {}", s.normalized[1], target);
    let cluster = s
        .normalized
        .iter()
        .skip(1)
        .filter(|&&l| (l - s.normalized[1]).abs() <= 0.01 * s.normalized[1])
        .count();
    assert_eq!(cluster, 6, "cluster {:?}", &s.normalized[1..8]);
    println!(
        "criterion 02 PASS nadirashvili: lambda1_bar = {:.6} vs 8pi^2/sqrt(3) = {:.6} (rel {:.2e}), cluster of {} in 1% band",
        s.normalized[1], target, rel, cluster
    );
}

#[test]
fn criterion_03_square_flat_torus() {
    let mesh = build_flat_torus(Complex64::new(0.0, 1.0), 64).unwrap();
    let s = spectrum_of(&mesh, &uniform(&mesh), 8);
    let target = 4.0 * PI * PI;
    let rel = (s.eigenvalues[1] - target).abs() / target;
    assert!(rel < 0.01, "lambda1 {} vs {}", s.eigenvalues[1], target);
    let cluster = s
        .eigenvalues
        .iter()
        .skip(1)
        .filter(|&&l| (l - s.eigenvalues[1]).abs() <= 0.01 * s.eigenvalues[1])
        .count();
    assert_eq!(cluster, 4, "cluster {:?}", &s.eigenvalues[1..8]);
    println!(
        "criterion 03 PASS square torus: lambda1 = {:.6} vs 4pi^2 = {:.6} (rel {:.2e}), multiplicity {} in band",
        s.eigenvalues[1], target, rel, cluster
    );
}

#[test]
fn criterion_04_nayatani_shoda_value_on_the_genus_two_cover() {
    let start = Instant::now();
    let mut spec = octahedral_branch_points();
    spec.refinement = 4;
    let mesh = build_hyperelliptic_cover(&spec).unwrap();
    let density = pullback_density(&mesh).unwrap();
    let s = spectrum_of(&mesh, &density, 8);
    let target = 16.0 * PI;
    let elapsed = start.elapsed();
    assert!(
        s.normalized[1] >= target * 0.97 && s.normalized[1] <= target * 1.005,
        "lambda1_bar {} outside [{}, {}]",
        s.normalized[1],
        target * 0.97,
        target * 1.005
    );
    let near_two = s.eigenvalues.iter().filter(|&&l| (l - 2.0).abs() <= 0.06).count();
    assert!(near_two >= 3, "only {near_two} eigenvalues within 3% of 2");
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!(
        "criterion 04 PASS nayatani-shoda: lambda1_bar = {:.6} in [16pi*0.97, 16pi*1.005], {} eigenvalues within 3% of 2 ({:?})",
        s.normalized[1], near_two, elapsed
    );
}

#[test]
fn criterion_05_genus_bound_margin_across_the_catalog() {
    let mesh_tolerance = 0.02 * 8.0 * PI;
    let mut lines = vec![];
    let mut check = |label: &str, genus: i64, mesh: Mesh, density: ConformalDensity| {
        let s = spectrum_of(&mesh, &density, 3);
        let report = yang_yau_check(genus, s.normalized[1], mesh_tolerance);
        assert!(
            report.pass,
            "{label}: margin {} below -{mesh_tolerance}",
            report.margin
        );
        assert_eq!(report.strict_expected, genus != 0 && genus != 2, "{label}");
        lines.push(format!(
            "  {label}: genus {genus} lambda1_bar {:.4} bound {:.4} margin {:+.4} strict_expected {}",
            report.normalized_lambda1, report.bound, report.margin, report.strict_expected
        ));
    };
    let sphere = build_sphere(4).unwrap();
    let d = uniform(&sphere);
    check("round sphere", 0, sphere, d);

    let square = build_flat_torus(Complex64::new(0.0, 1.0), 32).unwrap();
    let d = uniform(&square);
    check("square torus", 1, square, d);

    let hex = build_flat_torus(Complex64::from_polar(1.0, PI / 3.0), 32).unwrap();
    let d = uniform(&hex);
    check("hexagonal torus", 1, hex, d);

    let mut spec = square_branch_points();
    spec.refinement = 3;
    let cover1 = build_hyperelliptic_cover(&spec).unwrap();
    let d = pullback_density(&cover1).unwrap();
    check("four-point double cover", 1, cover1, d);

    let mut spec = octahedral_branch_points();
    spec.refinement = 3;
    let cover2 = build_hyperelliptic_cover(&spec).unwrap();
    let d = pullback_density(&cover2).unwrap();
    check("octahedral double cover", 2, cover2, d);

    let mut spec = cube_branch_points();
    spec.refinement = 3;
    let cover3 = build_hyperelliptic_cover(&spec).unwrap();
    let d = pullback_density(&cover3).unwrap();
    check("cube double cover", 3, cover3, d);

    println!("criterion 05 PASS genus bound margins:\n{}", lines.join("\n"));
}

#[test]
fn criterion_06_index_suite() {
    // identity map on the round sphere
    let sphere = build_sphere(4).unwrap();
    let d = uniform(&sphere);
    let identity = index_of_map_with_density(&sphere, &d, 0.1).unwrap();
    assert_eq!(identity.index, 1);
    assert_eq!(identity.nullity, 3);

    // z^2: index at least 2 by minimal-degree arguments; the exact value 3
    // is frozen from the solver as a regression number
    let (mesh2, density2) = build_power_map_sphere(5, 2).unwrap();
    let z2 = index_of_map_with_density(&mesh2, &density2, 0.1).unwrap();
    assert!(z2.index >= 2);
    assert_eq!(z2.index, 3, "frozen regression value");
    assert_eq!(z2.nullity, 3);

    // two routes agree on every shared case: counting below 2 under the
    // pullback metric vs the potential form with V = 2
    let mut agreements = vec![];
    let mut check_routes = |label: &str, mesh: &Mesh, density: &ConformalDensity| {
        let counting = index_of_map_with_density(mesh, density, 0.1).unwrap();
        let potential = PotentialField::uniform(mesh, 2.0);
        let schrodinger = schrodinger_index(mesh, density, &potential, 0.1).unwrap();
        assert_eq!(counting.index, schrodinger.index, "{label} index routes");
        assert_eq!(counting.nullity, schrodinger.nullity, "{label} nullity routes");
        agreements.push(format!(
            "  {label}: index {} nullity {} (both routes)",
            counting.index, counting.nullity
        ));
    };
    check_routes("identity", &sphere, &d);
    check_routes("z^2", &mesh2, &density2);
    let (mesh3, density3) = build_power_map_sphere(4, 3).unwrap();
    check_routes("z^3", &mesh3, &density3);
    let mut spec = octahedral_branch_points();
    spec.refinement = 3;
    let cover = build_hyperelliptic_cover(&spec).unwrap();
    let pd = pullback_density(&cover).unwrap();
    check_routes("genus-2 hyperelliptic projection", &cover, &pd);

    println!(
        "criterion 06 PASS index suite: identity (1, 3), z^2 index {} >= 2, routes agree on {} cases:\n{}",
        z2.index,
        agreements.len(),
        agreements.join("\n")
    );
}

#[test]
fn criterion_07_exact_riemann_roch() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xacce97);
    let curves = [
        HyperellipticCurve::from_i64(&[0, -1, 0, 1]).unwrap(), // genus 1
        HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 1]).unwrap(), // genus 2
        HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap(), // genus 3
        HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap(), // genus 4
    ];
    let mut total = 0;
    for c in &curves {
        // exact special values first
        assert_eq!(c.h0(&Divisor::zero()).unwrap(), 1);
        assert_eq!(c.h0(&c.canonical_divisor()).unwrap(), c.genus());
        for _ in 0..100 {
            let d = random_divisor(c, &mut rng);
            let r = c.riemann_roch_check(&d).unwrap();
            assert!(
                r.ok,
                "genus {} divisor {:?}: {} != {}",
                c.genus(),
                d,
                r.lhs,
                r.rhs
            );
            total += 1;
        }
    }
    println!(
        "criterion 07 PASS riemann-roch: {total} fuzzed divisors exact across genus 1..4, h0(K) = genus, h0(0) = 1"
    );
}

fn random_divisor(c: &HyperellipticCurve, rng: &mut impl rand::Rng) -> Divisor {
    use spectralab::curve::poly::{q_i64, Poly};
    loop {
        let mut d = Divisor::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let mult = rng.gen_range(-2i64..=3);
            if mult == 0 {
                continue;
            }
            match rng.gen_range(0..3u8) {
                0 => d = d.add(&c.infinity_divisor().scaled(mult)),
                1 => {
                    let branches: Vec<_> = c
                        .branch_parts()
                        .iter()
                        .filter(|p| p.degree() == 1)
                        .cloned()
                        .collect();
                    if !branches.is_empty() {
                        let pi = branches[rng.gen_range(0..branches.len())].clone();
                        d.add_place(Place::Branch(pi), mult);
                    }
                }
                _ => {
                    let x0 = q_i64(rng.gen_range(-6i64..=6));
                    if c.p().eval(&x0) != q_i64(0) {
                        d.add_place(Place::SheetPair(Poly::x_minus(&x0)), mult);
                    }
                }
            }
        }
        let deg = d.degree();
        if (-3..=2 * c.genus() + 4).contains(&deg) {
            return d;
        }
    }
}

#[test]
fn criterion_08_riemann_hurwitz_equality_for_power_maps() {
    // direct counting oracle: zeros of the derivative in the affine chart
    // plus the branching at infinity seen in the flipped chart
    let direct_branching = |d: u32| -> i64 {
        // d/dz z^d = d z^(d-1): order d-1 zero at 0
        let at_zero = d as i64 - 1;
        // w = 1/z chart: the map becomes w^d, again order d-1 at w = 0
        let at_infinity = d as i64 - 1;
        at_zero + at_infinity
    };
    let mut lines = vec![];
    for d in 1..=6u32 {
        let expected = 2 * d as i64 - 2;
        assert_eq!(direct_branching(d), expected);
        let record = ledger::power_map_record(d as i64);
        let bound = ledger::bound_isotropic(&record).unwrap();
        assert!(bound.pass, "{bound:?}");
        assert!(
            (bound.lhs - bound.rhs).abs() < 1e-12,
            "m = 1 bound must be an equality: {bound:?}"
        );
        assert_eq!(record.total_branching, Some(expected));
        lines.push(format!("  z^{d}: b = {expected} (direct count = ledger bound, equality)"));
    }
    println!(
        "criterion 08 PASS riemann-hurwitz equality for z^d, d <= 6:\n{}",
        lines.join("\n")
    );
}

#[test]
fn criterion_09_energy_formula_routes() {
    let veronese = ledger::veronese_record();
    let e = ledger::energy_from_ramification(&veronese).unwrap();
    assert!((e - 12.0 * PI).abs() < 1e-12, "veronese energy {e}");
    for d in 1..=6 {
        let rec = ledger::power_map_record(d);
        let e = ledger::energy_from_ramification(&rec).unwrap();
        assert!((e - 4.0 * PI * d as f64).abs() < 1e-12, "z^{d} energy {e}");
        // three integer routes agree exactly
        let routes = ledger::energy_routes_over_two_pi(&rec);
        assert_eq!(routes.len(), 3);
        assert!(routes.iter().all(|(_, v)| *v == 2 * d), "{routes:?}");
    }
    let routes = ledger::energy_routes_over_two_pi(&veronese);
    assert_eq!(routes.len(), 3);
    assert!(routes.iter().all(|(_, v)| *v == 6), "{routes:?}");
    println!(
        "criterion 09 PASS energy formula: veronese = 12pi exactly, z^d = 4 pi d exactly, three integer routes agree"
    );
}

#[test]
fn criterion_10_periods_against_residues() {
    use spectralab::curve::poly::{q_i64, Poly};
    use spectralab::curve::RatFn;
    use spectralab::weierstrass::quad::full_circle;

    let h = RatFn::new(Poly::one(), Poly::from_i64(&[0, 0, 1]));
    let catenoid = weierstrass::PlanarData::new(
        RatFn::x(),
        h.clone(),
        vec![Complex64::new(0.0, 0.0)],
    )
    .unwrap();
    let helicoid = weierstrass::PlanarData::with_unit(
        RatFn::x(),
        h,
        Complex64::new(0.0, 1.0),
        vec![Complex64::new(0.0, 0.0)],
    )
    .unwrap();

    let loop0 = full_circle(Complex64::new(0.0, 0.0), 1.0);
    let cat = weierstrass::periods(&WeierstrassData::Planar(catenoid.clone()), &[loop0.clone()])
        .unwrap();
    for c in cat.values[0] {
        assert!(c.abs() < 1e-8, "catenoid period {:?}", cat.values[0]);
    }
    let cat_res = weierstrass::period_from_residues(&catenoid, &[q_i64(0)]);
    for (a, b) in cat.values[0].iter().zip(&cat_res) {
        assert!((a - b).abs() < 1e-8);
    }

    let hel = weierstrass::periods(&WeierstrassData::Planar(helicoid.clone()), &[loop0]).unwrap();
    let expected = -4.0 * PI;
    assert!(hel.values[0][0].abs() < 1e-8 && hel.values[0][1].abs() < 1e-8);
    assert!((hel.values[0][2] - expected).abs() < 1e-8, "{:?}", hel.values[0]);
    let hel_res = weierstrass::period_from_residues(&helicoid, &[q_i64(0)]);
    assert!((hel_res[2] - expected).abs() < 1e-12);
    for (a, b) in hel.values[0].iter().zip(&hel_res) {
        assert!((a - b).abs() < 1e-8);
    }
    println!(
        "criterion 10 PASS periods: catenoid loop = (0, 0, 0), helicoid vertical = {:.9} vs -4pi = {:.9}, both residue-checked at 1e-8",
        hel.values[0][2], expected
    );
}

#[test]
fn criterion_11_branching_divisor_identity() {
    use spectralab::curve::RatFn;
    use spectralab::curve::poly::{q_i64, Poly};

    // genus 3, phi = x, omega = dx/y: B = 0 symbolically
    let curve = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let data = weierstrass::CurveData::new(
        curve.clone(),
        MeromorphicFunction::x(),
        MeromorphicFunction::one(),
    )
    .unwrap();
    let b = weierstrass::branching_divisor(&WeierstrassData::OnCurve(data.clone())).unwrap();
    assert_eq!(b.total_order, 0);
    assert!(weierstrass::branching_identity_check(&data).unwrap());

    // fuzzed valid pairs on a genus-4 model
    let big = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let x = MeromorphicFunction::x();
    let x2 = x.mul(&x, big.p());
    let mut verified = 0;
    for (phi, factor) in [
        (x.clone(), MeromorphicFunction::one()),
        (x.clone(), x.clone()),
        (x.clone(), x2.clone()),
        (x2.clone(), MeromorphicFunction::one()),
        (x.clone(), MeromorphicFunction::y()),
        (
            x.clone(),
            MeromorphicFunction::from_x_part(RatFn::new(
                Poly::x_minus(&q_i64(2)),
                Poly::one(),
            )),
        ),
        (
            x.clone(),
            MeromorphicFunction::from_x_part(RatFn::new(
                Poly::x_minus(&q_i64(-1)),
                Poly::one(),
            )),
        ),
    ] {
        let data = match weierstrass::CurveData::new(big.clone(), phi, factor) {
            Ok(d) => d,
            Err(_) => continue,
        };
        match weierstrass::branching_divisor(&WeierstrassData::OnCurve(data.clone())) {
            Ok(_) => {
                assert!(weierstrass::branching_identity_check(&data).unwrap());
                verified += 1;
            }
            Err(WeierstrassError::NotEffective(_)) => {}
            Err(e) => panic!("unexpected {e}"),
        }
    }
    assert!(verified >= 4);

    // invalid pair: genus 2 with a degree-2 map leaves no room for omega
    let g2 = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 1]).unwrap();
    match weierstrass::CurveData::new(g2, MeromorphicFunction::x(), MeromorphicFunction::one()) {
        Err(WeierstrassError::NoSuchForm(d)) => assert_eq!(d, -2),
        other => panic!("expected rejection, got {other:?}"),
    }
    println!(
        "criterion 11 PASS branching identity: genus-3 B = 0 symbolically, {verified} fuzzed pairs verified, genus-2 degree-2 rejected"
    );
}

#[test]
fn criterion_12_index_bound_ledger() {
    // exact side: h0(K) = 3 on the genus-3 curve
    let curve = HyperellipticCurve::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
    let h0_k = curve.h0(&curve.canonical_divisor()).unwrap();
    assert_eq!(h0_k, 3);

    // numeric side: index of the degree-2 projection on the glued cover
    let mut spec = cube_branch_points();
    spec.refinement = 3;
    let mesh = build_hyperelliptic_cover(&spec).unwrap();
    let fem = spectralab::spectral::index_of_map(&mesh, 0.1).unwrap();
    assert!(fem.index >= 1, "{fem:?}");

    let report = weierstrass::index_bound_check(h0_k, &fem);
    assert!((report.bound - 1.0).abs() < 1e-12);
    assert!(report.pass, "{report:?}");

    // single-unit mutation of h0 flips the verdict exactly when the
    // arithmetic says so
    let mutated = weierstrass::index_bound_check(h0_k + 1, &fem);
    let expected_pass = 3 * fem.index >= 2 * (h0_k + 1) - 3;
    assert_eq!(mutated.pass, expected_pass, "{mutated:?}");
    assert!(!mutated.pass, "frozen: the genus-3 cover index is 1, so inflating h0 must flip");
    println!(
        "criterion 12 PASS index bound: h0(K) = {h0_k}, bound = {:.4}, FEM index = {} >= 1; h0+1 flips the verdict",
        report.bound, fem.index
    );
}

#[test]
fn criterion_13_conformal_maximization_reaches_known_targets() {
    let config = MaximizeConfig { max_iters: 400, ..Default::default() };
    let mut lines = vec![];
    let mut run = |label: &str, mesh: Mesh, init: ConformalDensity, target: f64| {
        let start = Instant::now();
        let state = maximize_lambda1(&mesh, &init, &config).unwrap();
        let got = *state.history.last().unwrap();
        let rel = (got - target).abs() / target;
        let elapsed = start.elapsed();
        assert!(rel < 0.02, "{label}: reached {got} vs {target} (rel {rel:.4})");
        assert!(elapsed.as_secs() < 600, "{label} took {elapsed:?}");
        // history is monotone up to the declared backtracking tolerance
        for w in state.history.windows(2) {
            assert!(
                w[1] >= w[0] - config.backtrack_tol * w[0].abs().max(1.0),
                "{label}: history dip {} -> {}",
                w[0],
                w[1]
            );
        }
        lines.push(format!(
            "  {label}: {got:.5} vs {target:.5} (rel {rel:.2e}) in {} iterations, {elapsed:?}",
            state.iterations
        ));
    };

    let sphere = build_sphere(3).unwrap();
    let init = smooth_random_density(&sphere, 42, 0.8, 30);
    run("sphere class", sphere, init, 8.0 * PI);

    let hex = build_flat_torus(Complex64::from_polar(1.0, PI / 3.0), 24).unwrap();
    let init = smooth_random_density(&hex, 7, 0.6, 30);
    run("equilateral torus class", hex, init, 8.0 * PI * PI / 3f64.sqrt());

    let square = build_flat_torus(Complex64::new(0.0, 1.0), 24).unwrap();
    let init = smooth_random_density(&square, 11, 0.6, 30);
    run("square torus class", square, init, 4.0 * PI * PI);

    let mut spec = octahedral_branch_points();
    spec.refinement = 3;
    let cover = build_hyperelliptic_cover(&spec).unwrap();
    let init = smooth_random_density(&cover, 5, 0.4, 30);
    run("genus-2 octahedral class", cover, init, 16.0 * PI);

    println!(
        "criterion 13 PASS conformal maximization within 2%:\n{}",
        lines.join("\n")
    );
}

#[test]
fn criterion_14_branching_bound_audit_with_mutations() {
    // the whole catalog passes
    let catalog = ledger::catalog();
    for rec in &catalog {
        let reports = ledger::audit_record(rec).unwrap();
        for r in &reports {
            assert!(r.pass, "{}: {:?}", rec.name, r);
        }
    }

    // single-unit mutations past tight bounds are flagged
    let mut flagged = 0;
    let tight: Vec<ledger::HarmonicMapRecord> = vec![
        ledger::power_map_record(1),
        ledger::power_map_record(3),
        ledger::power_map_record(6),
        ledger::veronese_record(),
        ledger::clifford_torus_record(),
        ledger::hyperelliptic_cover_record(2),
        ledger::hyperelliptic_cover_record(3),
    ];
    for rec in tight {
        let mut mutated = rec.clone();
        mutated.total_branching = Some(rec.total_branching.unwrap() + 1);
        // level arrays would contradict the mutation by construction, so
        // the mutated row carries only the headline quantities
        mutated.chern = None;
        mutated.ramification = None;
        mutated.osculating_degrees = None;
        let reports = ledger::audit_record(&mutated).unwrap();
        assert!(
            reports.iter().any(|r| !r.pass),
            "mutation of '{}' was not flagged",
            rec.name
        );
        flagged += 1;
    }

    // the branched Klein bottle is inconsistent through the reduction
    let klein = ledger::branched_klein_bottle_record();
    let reports = ledger::audit_record(&klein).unwrap();
    assert!(reports.iter().any(|r| !r.pass));

    println!(
        "criterion 14 PASS branching audit: {} catalog records pass, {flagged} tight-bound mutations flagged, Klein-bottle reduction flags b = 1",
        catalog.len()
    );
}
