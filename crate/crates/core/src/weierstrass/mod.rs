//! Weierstrass data for (multivalued, branched) minimal immersions: the
//! branching divisor, translation periods along loops, immersion evaluation
//! and the index bound fed by h^0(K - B).
//!
//! The integrand is the isotropic triple ((1 - phi^2) omega,
//! i (1 + phi^2) omega, 2 phi omega), whose squares sum to zero; X is the
//! real part of its path integral.

pub mod identity;
pub mod json;
pub mod quad;

use crate::curve::poly::{coprime_basis, q_to_f64, Poly, Q};
use crate::curve::{CurveError, Divisor, HyperellipticCurve, MeromorphicFunction, RatFn};
use crate::spectral::IndexResult;
use num_complex::Complex64;
use num_traits::Zero;
use quad::{path_integral, QuadError, Segment};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeierstrassError {
    #[error("not an immersion datum: component has a pole of order {order} at a non-puncture (cluster {cluster})")]
    NotImmersionDatum { cluster: String, order: i64 },
    #[error("no regular form exists: deg(K - 2 P_phi) = {0} < 0")]
    NoSuchForm(i64),
    #[error("branching divisor is not effective at {0}")]
    NotEffective(String),
    #[error("gauss map and form must not vanish identically")]
    DegenerateData,
    #[error("sheet tracking lost continuity near x = {0}")]
    SheetTracking(Complex64),
    #[error("curve: {0}")]
    Curve(#[from] CurveError),
    #[error("quadrature: {0}")]
    Quad(#[from] QuadError),
    #[error("unresolved sheet cluster in a component divisor; use x-line data")]
    SheetAmbiguous,
}

/// Weierstrass data on a planar domain (optionally a torus quotient).
#[derive(Clone, Debug)]
pub struct PlanarData {
    pub phi: RatFn,
    /// omega = h_unit * h(z) dz; the constant complex unit keeps data such
    /// as i dz/z^2 exactly representable over the rationals.
    pub h: RatFn,
    pub h_unit: Complex64,
    pub punctures: Vec<Complex64>,
    /// Some(tau): the domain is C / (Z + tau Z).
    pub lattice: Option<Complex64>,
}

/// Weierstrass data on a hyperelliptic curve: omega = factor * dx / y.
#[derive(Clone, Debug)]
pub struct CurveData {
    pub curve: HyperellipticCurve,
    pub phi: MeromorphicFunction,
    pub omega_factor: MeromorphicFunction,
}

#[derive(Clone, Debug)]
pub enum WeierstrassData {
    Planar(PlanarData),
    OnCurve(CurveData),
}

impl PlanarData {
    pub fn new(phi: RatFn, h: RatFn, punctures: Vec<Complex64>) -> Result<Self, WeierstrassError> {
        Self::with_unit(phi, h, Complex64::new(1.0, 0.0), punctures)
    }

    pub fn with_unit(
        phi: RatFn,
        h: RatFn,
        h_unit: Complex64,
        punctures: Vec<Complex64>,
    ) -> Result<Self, WeierstrassError> {
        if h.is_zero() || h_unit.norm() == 0.0 {
            return Err(WeierstrassError::DegenerateData);
        }
        Ok(PlanarData { phi, h, h_unit, punctures, lattice: None })
    }

    pub fn on_torus(mut self, tau: Complex64) -> Self {
        self.lattice = Some(tau);
        self
    }

    /// The three rational components (w1, w2, w3); the middle one is
    /// understood with a factor i in front.
    pub fn components(&self) -> [RatFn; 3] {
        let one = RatFn::one();
        let phi2 = &self.phi * &self.phi;
        let two_phi = &(&self.phi + &self.phi) * &self.h;
        [
            &(&one - &phi2) * &self.h,
            &(&one + &phi2) * &self.h,
            two_phi,
        ]
    }

    /// Integrand value (c1, c2, c3)(z) including the i factor on c2 and the
    /// constant unit on omega.
    pub fn integrand(&self, z: Complex64) -> [Complex64; 3] {
        let [w1, w2, w3] = self.components();
        [
            self.h_unit * w1.eval_complex(z),
            self.h_unit * Complex64::new(0.0, 1.0) * w2.eval_complex(z),
            self.h_unit * w3.eval_complex(z),
        ]
    }
}

impl CurveData {
    pub fn new(
        curve: HyperellipticCurve,
        phi: MeromorphicFunction,
        omega_factor: MeromorphicFunction,
    ) -> Result<Self, WeierstrassError> {
        if phi.is_zero() || omega_factor.is_zero() {
            return Err(WeierstrassError::DegenerateData);
        }
        let polar = curve.divisor_of(&phi)?.negative_part();
        let deg_room = 2 * curve.genus() - 2 - 2 * polar.degree();
        if deg_room < 0 {
            return Err(WeierstrassError::NoSuchForm(deg_room));
        }
        Ok(CurveData { curve, phi, omega_factor })
    }
}

/// The branching divisor B with mult_p B = min over the three integrand
/// components of their vanishing order at p.
#[derive(Clone, Debug)]
pub enum DomainDivisor {
    /// Clusters of points in the plane keyed by monic squarefree polynomials.
    Plane(Vec<(Poly, i64)>),
    Curve(Divisor),
}

#[derive(Clone, Debug)]
pub struct BranchingDivisor {
    pub divisor: DomainDivisor,
    pub total_order: i64,
}

pub fn branching_divisor(data: &WeierstrassData) -> Result<BranchingDivisor, WeierstrassError> {
    match data {
        WeierstrassData::Planar(p) => planar_branching(p),
        WeierstrassData::OnCurve(c) => curve_branching(c),
    }
}

fn planar_branching(data: &PlanarData) -> Result<BranchingDivisor, WeierstrassError> {
    let comps = data.components();
    let mut polys = vec![];
    for c in &comps {
        if !c.is_zero() {
            if !c.num().is_constant() {
                polys.push(c.num().clone());
            }
            if !c.den().is_constant() {
                polys.push(c.den().clone());
            }
        }
    }
    let basis = coprime_basis(&polys);
    let mut entries = vec![];
    let mut total = 0i64;
    for pi in &basis {
        let mut min_ord = i64::MAX;
        for c in &comps {
            if c.is_zero() {
                continue;
            }
            let ord = c.num().ord_factor(pi) as i64 - c.den().ord_factor(pi) as i64;
            min_ord = min_ord.min(ord);
        }
        if min_ord == i64::MAX || min_ord == 0 {
            continue;
        }
        if min_ord < 0 {
            if cluster_at_punctures(pi, &data.punctures) {
                continue;
            }
            return Err(WeierstrassError::NotImmersionDatum {
                cluster: format!("{:?}", pi),
                order: min_ord,
            });
        }
        total += min_ord * pi.degree();
        entries.push((pi.clone(), min_ord));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(BranchingDivisor { divisor: DomainDivisor::Plane(entries), total_order: total })
}

/// True when every root of `pi` lies at a declared puncture.
fn cluster_at_punctures(pi: &Poly, punctures: &[Complex64]) -> bool {
    let roots = complex_roots(pi);
    roots.iter().all(|r| punctures.iter().any(|p| (r - p).norm() < 1e-8))
}

/// Roots via the companion matrix.
pub fn complex_roots(p: &Poly) -> Vec<Complex64> {
    let deg = p.degree();
    if deg < 1 {
        return vec![];
    }
    let n = deg as usize;
    let lead = q_to_f64(&p.leading());
    let mut companion = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        companion[(i, n - 1)] = -q_to_f64(&p.coeff(i)) / lead;
        if i + 1 < n {
            companion[(i + 1, i)] = 1.0;
        }
    }
    companion
        .complex_eigenvalues()
        .iter()
        .map(|c| Complex64::new(c.re, c.im))
        .collect()
}

fn curve_branching(data: &CurveData) -> Result<BranchingDivisor, WeierstrassError> {
    let curve = &data.curve;
    let p = curve.p();
    let one = MeromorphicFunction::one();
    let phi2 = data.phi.mul(&data.phi, p);
    let comps = [
        one.sub(&phi2).mul(&data.omega_factor, p),
        one.add(&phi2).mul(&data.omega_factor, p),
        data.phi.add(&data.phi).mul(&data.omega_factor, p),
    ];
    let k_form = curve.canonical_divisor();
    let mut divisors = vec![];
    for c in comps.iter() {
        if c.is_zero() {
            continue;
        }
        let d = curve.divisor_of(c)?;
        if d.contains_sheet_sum() {
            return Err(WeierstrassError::SheetAmbiguous);
        }
        divisors.push(d.add(&k_form));
    }
    if divisors.is_empty() {
        return Err(WeierstrassError::DegenerateData);
    }
    let b = divisor_pointwise_min(&divisors);
    if !b.is_effective() {
        let bad = b
            .entries()
            .find(|(_, m)| *m < 0)
            .map(|(p, m)| format!("{} (order {m})", p.describe()))
            .unwrap_or_default();
        return Err(WeierstrassError::NotEffective(bad));
    }
    // cross-check against (omega) - 2 P_phi
    let omega_div = curve.divisor_of(&data.omega_factor)?.add(&k_form);
    let polar_phi = curve.divisor_of(&data.phi)?.negative_part();
    let identity = omega_div.sub(&polar_phi.scaled(2));
    debug_assert_eq!(b.clone().sub(&identity).degree(), 0);
    let total = b.degree();
    Ok(BranchingDivisor { divisor: DomainDivisor::Curve(b), total_order: total })
}

/// Place-wise minimum over divisors, computed on a common refinement.
fn divisor_pointwise_min(divisors: &[Divisor]) -> Divisor {
    let mut all = Divisor::zero();
    for d in divisors {
        all = all.add(d);
    }
    let basis: Vec<Poly> = all
        .entries()
        .filter_map(|(p, _)| p.poly_key().cloned())
        .collect();
    let refined: Vec<Divisor> = divisors.iter().map(|d| d.refine_with(&basis)).collect();
    let mut out = Divisor::zero();
    for (place, _) in all.entries() {
        let m = refined.iter().map(|d| d.mult(place)).min().unwrap_or(0);
        if m != 0 {
            out.add_place(place.clone(), m);
        }
    }
    out
}

/// Identity check B = (omega) - 2 P_phi for curve data.
pub fn branching_identity_check(data: &CurveData) -> Result<bool, WeierstrassError> {
    let b = match branching_divisor(&WeierstrassData::OnCurve(data.clone()))? {
        BranchingDivisor { divisor: DomainDivisor::Curve(d), .. } => d,
        _ => unreachable!(),
    };
    let curve = &data.curve;
    let omega_div = curve
        .divisor_of(&data.omega_factor)?
        .add(&curve.canonical_divisor());
    let polar_phi = curve.divisor_of(&data.phi)?.negative_part();
    let rhs = omega_div.sub(&polar_phi.scaled(2));
    Ok(b.sub(&rhs).is_zero())
}

/// Translation periods along the given loops.
#[derive(Clone, Debug)]
pub struct PeriodRepresentation {
    pub values: Vec<[f64; 3]>,
}

pub const PERIOD_TOL: f64 = 1e-10;

pub fn periods(
    data: &WeierstrassData,
    loops: &[Vec<Segment>],
) -> Result<PeriodRepresentation, WeierstrassError> {
    let mut values = Vec::with_capacity(loops.len());
    for path in loops {
        values.push(translation_along(data, path)?);
    }
    Ok(PeriodRepresentation { values })
}

fn translation_along(data: &WeierstrassData, path: &[Segment]) -> Result<[f64; 3], WeierstrassError> {
    match data {
        WeierstrassData::Planar(p) => {
            let [w1, w2, w3] = p.components();
            let u = p.h_unit;
            let i1 = path_integral(&mut |z| w1.eval_complex(z), path, PERIOD_TOL)?;
            let i2 = path_integral(&mut |z| w2.eval_complex(z), path, PERIOD_TOL)?;
            let i3 = path_integral(&mut |z| w3.eval_complex(z), path, PERIOD_TOL)?;
            Ok([
                (u * i1).re,
                (u * Complex64::new(0.0, 1.0) * i2).re,
                (u * i3).re,
            ])
        }
        WeierstrassData::OnCurve(c) => curve_translation(c, path),
    }
}

/// Evaluates X at points by integrating from a base point along straight
/// segments; X(basepoint) = 0.
pub fn evaluate_immersion(
    data: &WeierstrassData,
    basepoint: Complex64,
    points: &[Complex64],
) -> Result<Vec<[f64; 3]>, WeierstrassError> {
    let mut out = Vec::with_capacity(points.len());
    for pt in points {
        let path = quad::polyline(&[basepoint, *pt]);
        out.push(translation_along(data, &path)?);
    }
    Ok(out)
}

/// Increment of X along an arbitrary open path.
pub fn evaluate_immersion_delta(
    data: &WeierstrassData,
    path: &[Segment],
) -> Result<[f64; 3], WeierstrassError> {
    translation_along(data, path)
}

/// Exact residue of a rational function at a rational point.
pub fn residue_at_rational(f: &RatFn, z0: &Q) -> Q {
    let num = f.num().shift(z0);
    let den = f.den().shift(z0);
    let k = den.ord_factor(&Poly::x());
    if k == 0 {
        return Q::zero();
    }
    let den_reduced = den.div_exact(&Poly::x().pow(k));
    // residue = coefficient of t^(k-1) in num / den_reduced
    let trunc = k as usize;
    let series_num = crate::curve::poly::Series::from_poly(&num, trunc);
    let series_den = crate::curve::poly::Series::from_poly(&den_reduced, trunc);
    let quotient = series_num.mul(&series_den.inverse());
    quotient.c[k as usize - 1].clone()
}

/// Period predicted by the residue theorem for a counterclockwise loop
/// enclosing the given rational punctures exactly once: the component
/// residues are 2 pi i times the exact rational residues times the constant
/// unit (with the extra i on the middle component), and the period is the
/// real part.
pub fn period_from_residues(data: &PlanarData, enclosed: &[Q]) -> [f64; 3] {
    let [w1, w2, w3] = data.components();
    let mut sums = [Q::zero(), Q::zero(), Q::zero()];
    for z0 in enclosed {
        sums[0] += residue_at_rational(&w1, z0);
        sums[1] += residue_at_rational(&w2, z0);
        sums[2] += residue_at_rational(&w3, z0);
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let u = data.h_unit;
    let i = Complex64::new(0.0, 1.0);
    [
        (two_pi_i * u * q_to_f64(&sums[0])).re,
        (two_pi_i * u * i * q_to_f64(&sums[1])).re,
        (two_pi_i * u * q_to_f64(&sums[2])).re,
    ]
}

/// Sheet-tracked path integration on the curve y^2 = p(x), starting on the
/// sheet with y = +sqrt(p(x)) at the path start.
fn curve_translation(data: &CurveData, path: &[Segment]) -> Result<[f64; 3], WeierstrassError> {
    let p = data.curve.p();
    let eval_y = |z: Complex64| p.eval_complex(z).sqrt();
    let mut totals = [Complex64::zero(); 3];
    let start = path.first().map(|s| s.start()).unwrap_or_default();
    let mut y_ref = eval_y(start);
    for seg in path {
        // subdivide until the sheet is unambiguous on each piece
        let mut pieces = vec![(0.0f64, 1.0f64)];
        let mut stack = vec![];
        while let Some((a, b)) = pieces.pop() {
            let (za, _) = seg.at(a);
            let (zm, _) = seg.at(0.5 * (a + b));
            let (zb, _) = seg.at(b);
            let ya = eval_y(za).norm();
            let step = (eval_y(zm) - eval_y(za)).norm().min((eval_y(zm) + eval_y(za)).norm())
                + (eval_y(zb) - eval_y(zm)).norm().min((eval_y(zb) + eval_y(zm)).norm());
            if step > 0.2 * ya.max(1e-12) && b - a > 1e-6 {
                pieces.push((0.5 * (a + b), b));
                pieces.push((a, 0.5 * (a + b)));
            } else {
                stack.push((a, b));
            }
        }
        stack.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for (a, b) in stack {
            let (za, _) = seg.at(a);
            let cand = eval_y(za);
            let y_start = if (cand - y_ref).norm() <= (cand + y_ref).norm() { cand } else { -cand };
            if (y_start - y_ref).norm() > 0.5 * y_ref.norm().max(1e-9) && y_ref.norm() > 1e-9 {
                return Err(WeierstrassError::SheetTracking(za));
            }
            // pieces are short enough that choosing the sqrt branch nearest
            // the piece reference is unambiguous at every node, even when
            // the principal branch cut crosses the piece
            let integrate_comp = |which: usize, totals: &mut [Complex64; 3]| -> Result<(), WeierstrassError> {
                let mut f = |t: f64| {
                    let (z, dz) = seg.at(t);
                    let cand = eval_y(z);
                    let y = if (cand - y_start).norm() <= (cand + y_start).norm() {
                        cand
                    } else {
                        -cand
                    };
                    let val = eval_component(data, which, z, y);
                    val * dz / y
                };
                totals[which] += quad::integrate(&mut f, a, b, PERIOD_TOL)?;
                Ok(())
            };
            integrate_comp(0, &mut totals)?;
            integrate_comp(1, &mut totals)?;
            integrate_comp(2, &mut totals)?;
            let (zb, _) = seg.at(b);
            let cand_end = eval_y(zb);
            y_ref = if (cand_end - y_start).norm() <= (cand_end + y_start).norm() {
                cand_end
            } else {
                -cand_end
            };
        }
    }
    Ok([
        totals[0].re,
        (Complex64::new(0.0, 1.0) * totals[1]).re,
        totals[2].re,
    ])
}

/// Component value g_i(x, y) where omega = factor dx / y; the 1/y and dx are
/// applied by the caller.
fn eval_component(data: &CurveData, which: usize, x: Complex64, y: Complex64) -> Complex64 {
    let eval = |f: &MeromorphicFunction| f.a.eval_complex(x) + f.b.eval_complex(x) * y;
    let phi = eval(&data.phi);
    let fac = eval(&data.omega_factor);
    match which {
        0 => (1.0 - phi * phi) * fac,
        1 => (1.0 + phi * phi) * fac,
        _ => 2.0 * phi * fac,
    }
}

/// Report for ind(phi) >= (2 h^0(K - B) - 3) / 3.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ImmersionIndexReport {
    pub h0_k_minus_b: i64,
    pub bound_numerator: i64,
    pub bound: f64,
    pub index: i64,
    pub pass: bool,
}

pub fn index_bound_check(h0_k_minus_b: i64, index: &IndexResult) -> ImmersionIndexReport {
    let bound_numerator = 2 * h0_k_minus_b - 3;
    ImmersionIndexReport {
        h0_k_minus_b,
        bound_numerator,
        bound: bound_numerator as f64 / 3.0,
        index: index.index,
        pass: 3 * index.index >= bound_numerator,
    }
}
