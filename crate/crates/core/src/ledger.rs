//! Integer bookkeeping for harmonic sequences of maps to spheres: Chern and
//! ramification ledgers, the totally isotropic energy formula, and the
//! branching-order bounds, including the non-orientable reduction.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("record '{0}' invalid: {1}")]
    InvalidRecord(String, String),
    #[error("formula requires total isotropy")]
    RequiresIsotropy,
    #[error("bound requires a non-isotropic record")]
    RequiresNonIsotropy,
    #[error("proposition requires non-conformal")]
    RequiresNonConformal,
    #[error("record is missing {0}")]
    Missing(String),
    #[error("reduction requires a non-orientable record")]
    RequiresNonOrientable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Isotropy {
    /// The first nonvanishing holomorphic form sits at level q >= 1.
    NotTotallyIsotropic { q: u32 },
    /// All forms vanish; the target dimension is 2m.
    TotallyIsotropic { m: u32 },
}

/// Ledger row for a harmonic map to a sphere. Analytic data (bundles, forms)
/// is consumed as certified metadata; every numbered identity and bound is
/// checked exactly on the integers stored here.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarmonicMapRecord {
    pub name: String,
    /// Where the numbers come from: "closed-form", "glued-mesh", "synthetic".
    #[serde(default)]
    pub provenance: String,
    pub euler_char: i64,
    pub orientable: bool,
    pub target_dim: u32,
    #[serde(default)]
    pub linearly_full: bool,
    pub conformal: bool,
    pub isotropy: Isotropy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_branching: Option<i64>,
    /// c1(L_p) keyed by the level p.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chern: Option<BTreeMap<i32, i64>>,
    /// r(d_p) keyed by the level p.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ramification: Option<BTreeMap<i32, i64>>,
    /// Degrees of the osculating curves of the directrix, delta_0..delta_m.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub osculating_degrees: Option<Vec<i64>>,
}

impl HarmonicMapRecord {
    /// Genus of the orientable model (the double cover for non-orientable
    /// records), from chi = 2 - 2 genus.
    pub fn genus(&self) -> i64 {
        let chi = if self.orientable { self.euler_char } else { 2 * self.euler_char };
        (2 - chi) / 2
    }

    /// 2 genus - 2 of the record's own surface (orientable case).
    fn two_g_minus_2(&self) -> i64 {
        -self.euler_char
    }

    /// Eager validation per the stored invariants.
    pub fn validate(&self) -> Result<(), LedgerError> {
        let fail = |msg: &str| Err(LedgerError::InvalidRecord(self.name.clone(), msg.into()));
        if self.orientable && self.euler_char % 2 != 0 {
            return fail("orientable surfaces have even Euler characteristic");
        }
        if let Isotropy::TotallyIsotropic { m } = self.isotropy {
            if self.target_dim != 2 * m {
                return fail("totally isotropic records need target_dim = 2m");
            }
            if !self.conformal {
                return fail("totally isotropic maps are conformal");
            }
        }
        if let Isotropy::NotTotallyIsotropic { q } = self.isotropy {
            if q == 0 || 2 * q > self.target_dim + 1 {
                return fail("need 1 <= q and 2q <= n + 1");
            }
            if !self.conformal && q != 1 {
                return fail("non-conformal maps have their first nonvanishing form at q = 1");
            }
        }
        if let Some(e) = self.energy {
            if !(e >= 0.0) {
                return fail("energy must be nonnegative");
            }
        }
        if let Some(b) = self.total_branching {
            if b < 0 {
                return fail("total branching must be nonnegative");
            }
        }
        if let Some(r) = &self.ramification {
            if r.values().any(|&v| v < 0) {
                return fail("ramification indices must be nonnegative");
            }
            if let (Some(&r0), Some(b)) = (r.get(&0), self.total_branching) {
                if r0 != b {
                    return fail("total branching must equal r(d_0)");
                }
            }
        }
        if let Some(c) = &self.chern {
            if let Some(&c0) = c.get(&0) {
                if c0 != 0 {
                    return fail("c1(L_0) = 0 fails");
                }
            }
            for (&p, &v) in c {
                if let Some(&w) = c.get(&(-p)) {
                    if w != -v {
                        return fail("c1(L_-p) = -c1(L_p) fails");
                    }
                }
            }
            if let Isotropy::TotallyIsotropic { m } = self.isotropy {
                let full = (-(m as i32)..=m as i32).all(|p| c.contains_key(&p));
                if full {
                    let sum: i64 = c.values().sum();
                    if sum != 0 {
                        return fail("sum of c1 over the full frame must vanish");
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub record: String,
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    fn check(record: &str, name: &str, lhs: f64, rhs: f64) -> BoundReport {
        BoundReport {
            record: record.into(),
            name: name.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
            pass: lhs <= rhs + 1e-9,
            notes: vec![],
        }
    }

    fn equality(record: &str, name: &str, lhs: f64, rhs: f64) -> BoundReport {
        BoundReport {
            record: record.into(),
            name: name.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
            pass: (lhs - rhs).abs() <= 1e-9,
            notes: vec![],
        }
    }
}

/// Checks every ladder identity the stored arrays support:
/// r(d_p) = (2g - 2) + c1(L_{p+1}) - c1(L_p), the telescoped form
/// c1(L_k) + k (2g - 2) = sum_{p < k} r(d_p), and the osculating relations
/// c1(L_{k-m}) = delta_{k-1} - delta_k with E = 2 pi delta_m.
pub fn ledger_consistency(rec: &HarmonicMapRecord) -> Result<Vec<BoundReport>, LedgerError> {
    rec.validate()?;
    let mut reports = vec![];
    let two_g = rec.two_g_minus_2();
    if let (Some(chern), Some(ram)) = (&rec.chern, &rec.ramification) {
        for (&p, &r) in ram {
            if let (Some(&cp1), Some(&cp)) = (chern.get(&(p + 1)), chern.get(&p)) {
                reports.push(BoundReport::equality(
                    &rec.name,
                    &format!("ramification identity at p = {p}"),
                    r as f64,
                    (two_g + cp1 - cp) as f64,
                ));
            }
        }
        // telescoped form for k >= 1
        let max_k = chern.keys().cloned().max().unwrap_or(0);
        for k in 1..=max_k {
            let all_present = (0..k).all(|p| ram.contains_key(&p));
            if !all_present || !chern.contains_key(&k) {
                continue;
            }
            let sum: i64 = (0..k).map(|p| ram[&p]).sum();
            reports.push(BoundReport::equality(
                &rec.name,
                &format!("telescoped chern sum at k = {k}"),
                (chern[&k] + k as i64 * two_g) as f64,
                sum as f64,
            ));
        }
    }
    if let (Isotropy::TotallyIsotropic { m }, Some(delta)) = (&rec.isotropy, &rec.osculating_degrees)
    {
        let m = *m as usize;
        if delta.len() != m + 1 {
            return Err(LedgerError::InvalidRecord(
                rec.name.clone(),
                format!("need m + 1 = {} osculating degrees, got {}", m + 1, delta.len()),
            ));
        }
        if let Some(chern) = &rec.chern {
            for k in 0..=m {
                let prev = if k == 0 { 0 } else { delta[k - 1] };
                if let Some(&c) = chern.get(&(k as i32 - m as i32)) {
                    reports.push(BoundReport::equality(
                        &rec.name,
                        &format!("osculating chern relation at k = {k}"),
                        c as f64,
                        (prev - delta[k]) as f64,
                    ));
                }
            }
        }
        if let Some(e) = rec.energy {
            reports.push(BoundReport::equality(
                &rec.name,
                "energy equals 2 pi delta_m",
                e,
                TWO_PI * delta[m] as f64,
            ));
        }
    }
    Ok(reports)
}

/// Energy of a linearly full totally isotropic map from its ramification:
/// E = 2 pi (m (m + 1)(1 - genus) + sum_j (m - j) r(d_j)).
pub fn energy_from_ramification(rec: &HarmonicMapRecord) -> Result<f64, LedgerError> {
    rec.validate()?;
    let Isotropy::TotallyIsotropic { m } = rec.isotropy else {
        return Err(LedgerError::RequiresIsotropy);
    };
    let ram = rec
        .ramification
        .as_ref()
        .ok_or(LedgerError::Missing("ramification array".into()))?;
    let m = m as i64;
    let genus = rec.genus();
    let mut sum = 0i64;
    for j in 0..m {
        let r = ram
            .get(&(j as i32))
            .ok_or(LedgerError::Missing(format!("r(d_{j})")))?;
        sum += (m - j) * r;
    }
    Ok(TWO_PI * (m * (m + 1) * (1 - genus) + sum) as f64)
}

/// Exact integer routes to the energy, in units of 2 pi: the ramification
/// formula, delta_m, and the positive chern sum. Any that are computable are
/// returned; exact agreement is the caller's assertion.
pub fn energy_routes_over_two_pi(rec: &HarmonicMapRecord) -> Vec<(String, i64)> {
    let mut out = vec![];
    if let Isotropy::TotallyIsotropic { m } = rec.isotropy {
        if let Ok(e) = energy_from_ramification(rec) {
            out.push(("ramification formula".into(), (e / TWO_PI).round() as i64));
        }
        if let Some(delta) = &rec.osculating_degrees {
            if delta.len() == m as usize + 1 {
                out.push(("2 pi delta_m".into(), delta[m as usize]));
            }
        }
        if let Some(chern) = &rec.chern {
            if (1..=m as i32).all(|p| chern.contains_key(&p)) {
                let sum: i64 = (1..=m as i32).map(|p| chern[&p]).sum();
                out.push(("chern sum".into(), sum));
            }
        }
    }
    out
}

/// Case A bound: the refined form q (2g - 2) + c1(L_q) (with c1(L_q) <= 0,
/// taken as 0 when the array is absent) alongside the topological form
/// -(n + 1) chi / 2; the report's right side is the binding minimum. At
/// q = 1 for non-conformal records the refined form is exactly -chi.
pub fn bound_nonisotropic(rec: &HarmonicMapRecord) -> Result<BoundReport, LedgerError> {
    rec.validate()?;
    let Isotropy::NotTotallyIsotropic { q } = rec.isotropy else {
        return Err(LedgerError::RequiresNonIsotropy);
    };
    let b = rec.total_branching.ok_or(LedgerError::Missing("total branching".into()))?;
    let topological = nonisotropic_topological_bound(rec);
    let mut cq = 0i64;
    let mut cq_known = false;
    let mut bad_cq = false;
    if let Some(chern) = &rec.chern {
        if let Some(&v) = chern.get(&(q as i32)) {
            cq = v;
            cq_known = true;
            bad_cq = v > 0;
        }
    }
    let refined = (q as i64 * rec.two_g_minus_2() + cq) as f64;
    let mut report = BoundReport::check(
        &rec.name,
        "non-isotropic branching bound",
        b as f64,
        refined.min(topological),
    );
    report.notes.push(format!(
        "refined bound q(2g-2) + c1(L_q) = {refined}{}",
        if cq_known { "" } else { " (c1(L_q) taken as 0)" }
    ));
    report.notes.push(format!("topological bound -(n+1)chi/2 = {topological}"));
    if bad_cq {
        report.pass = false;
        report.notes.push(format!("c1(L_q) = {cq} violates c1(L_q) <= 0"));
    }
    Ok(report)
}

/// The topological side of the Case A bound, -(n + 1) chi / 2; equal to
/// (n + 1)(genus - 1) on orientable records.
pub fn nonisotropic_topological_bound(rec: &HarmonicMapRecord) -> f64 {
    -((rec.target_dim as i64 + 1) * rec.euler_char) as f64 / 2.0
}

/// Case B bound: b <= E / (2 pi m) - (m + 1) chi / 2, an equality for m = 1
/// (the Riemann-Hurwitz case).
pub fn bound_isotropic(rec: &HarmonicMapRecord) -> Result<BoundReport, LedgerError> {
    rec.validate()?;
    let Isotropy::TotallyIsotropic { m } = rec.isotropy else {
        return Err(LedgerError::RequiresIsotropy);
    };
    let e = rec.energy.ok_or(LedgerError::Missing("energy".into()))?;
    let b = rec.total_branching.ok_or(LedgerError::Missing("total branching".into()))?;
    let rhs = e / (TWO_PI * m as f64) - (m as i64 + 1) as f64 * rec.euler_char as f64 / 2.0;
    let mut report = if m == 1 {
        let mut r = BoundReport::equality(
            &rec.name,
            "isotropic branching bound (m = 1 equality)",
            b as f64,
            rhs,
        );
        r.notes.push("Riemann-Hurwitz case".into());
        r
    } else {
        BoundReport::check(&rec.name, "isotropic branching bound", b as f64, rhs)
    };
    if e == 0.0 && rec.linearly_full {
        report.pass = false;
        report
            .notes
            .push("linearly full map with zero energy is degenerate".into());
    }
    Ok(report)
}

/// Non-conformal bound b <= -chi; a negative right side flags the record as
/// inconsistent (no such map exists).
pub fn bound_nonconformal(rec: &HarmonicMapRecord) -> Result<BoundReport, LedgerError> {
    rec.validate()?;
    if rec.conformal {
        return Err(LedgerError::RequiresNonConformal);
    }
    let b = rec.total_branching.ok_or(LedgerError::Missing("total branching".into()))?;
    let rhs = -rec.euler_char as f64;
    let mut report = BoundReport::check(&rec.name, "non-conformal branching bound", b as f64, rhs);
    if rhs < 0.0 {
        report.pass = false;
        report
            .notes
            .push("bound below zero: no non-conformal harmonic map exists here".into());
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalBoundReport {
    pub genus: i64,
    pub k: i64,
    /// Headline bound C (genus + 1)(genus + k).
    pub bound: f64,
    /// Non-isotropic branch with n = multiplicity_constant * (genus + k).
    pub nonisotropic_branch: f64,
    /// Isotropic branch maximized over the half-dimension m.
    pub isotropic_branch: f64,
    pub multiplicity_constant: f64,
    pub korevaar_constant: f64,
}

/// Conical-singularity count bound for conformally extremal metrics. The two
/// constants are inputs: the eigenvalue-multiplicity constant capping the
/// target dimension as n <= C'(genus + k), and the Korevaar constant in
/// Lambda_k <= C k (genus + 1).
pub fn bound_extremal(
    genus: i64,
    k: i64,
    multiplicity_constant: Option<f64>,
    korevaar_constant: Option<f64>,
) -> Result<ExtremalBoundReport, LedgerError> {
    let mut missing = vec![];
    if multiplicity_constant.is_none() {
        missing.push("multiplicity constant");
    }
    if korevaar_constant.is_none() {
        missing.push("korevaar constant");
    }
    if !missing.is_empty() {
        return Err(LedgerError::Missing(missing.join(" and ")));
    }
    let cp = multiplicity_constant.unwrap();
    let ck = korevaar_constant.unwrap();
    assert!(genus >= 0 && k >= 1 && cp > 0.0 && ck > 0.0);
    let n = (cp * (genus + k) as f64).ceil();
    let nonisotropic = ((n + 1.0) * (genus - 1) as f64).max(0.0);
    // isotropic branch: E = Lambda_k / 2 with Lambda_k = C k (genus + 1),
    // maximized over 1 <= m <= n / 2
    let m_max = ((n / 2.0).floor() as i64).max(1);
    let mut isotropic: f64 = 0.0;
    for m in 1..=m_max {
        let value = ck * (k * (genus + 1)) as f64 / (2.0 * TWO_PI * m as f64)
            + ((m + 1) * (genus - 1)) as f64;
        isotropic = isotropic.max(value);
    }
    Ok(ExtremalBoundReport {
        genus,
        k,
        bound: ck * ((genus + 1) * (genus + k)) as f64,
        nonisotropic_branch: nonisotropic,
        isotropic_branch: isotropic.max(0.0),
        multiplicity_constant: cp,
        korevaar_constant: ck,
    })
}

/// Passes to the oriented double cover: chi, branching and energy double.
/// Detailed level arrays do not transfer and are dropped.
pub fn nonorientable_reduce(rec: &HarmonicMapRecord) -> Result<HarmonicMapRecord, LedgerError> {
    if rec.orientable {
        return Err(LedgerError::RequiresNonOrientable);
    }
    rec.validate()?;
    Ok(HarmonicMapRecord {
        name: format!("{} (oriented double cover)", rec.name),
        provenance: format!("{}+double-cover", rec.provenance),
        euler_char: 2 * rec.euler_char,
        orientable: true,
        target_dim: rec.target_dim,
        linearly_full: rec.linearly_full,
        conformal: rec.conformal,
        isotropy: rec.isotropy.clone(),
        energy: rec.energy.map(|e| 2.0 * e),
        total_branching: rec.total_branching.map(|b| 2 * b),
        chern: None,
        ramification: None,
        osculating_degrees: None,
    })
}

/// Runs every applicable identity and bound on a record (reducing
/// non-orientable records first) and returns the reports.
pub fn audit_record(rec: &HarmonicMapRecord) -> Result<Vec<BoundReport>, LedgerError> {
    let reduced;
    let (target, halved) = if rec.orientable {
        (rec, false)
    } else {
        reduced = nonorientable_reduce(rec)?;
        (&reduced, true)
    };
    let mut reports = ledger_consistency(target)?;
    match target.isotropy {
        Isotropy::TotallyIsotropic { .. } => {
            if target.energy.is_some() && target.total_branching.is_some() {
                reports.push(bound_isotropic(target)?);
            }
            // independent exact routes to the energy must agree
            let routes = energy_routes_over_two_pi(target);
            if routes.len() >= 2 {
                let first = routes[0].1;
                for (name, v) in &routes[1..] {
                    reports.push(BoundReport::equality(
                        &target.name,
                        &format!("energy route '{}' vs '{}'", routes[0].0, name),
                        first as f64,
                        *v as f64,
                    ));
                }
            }
            if let (Some(e), Some((_, v))) = (target.energy, routes.first()) {
                reports.push(BoundReport::equality(
                    &target.name,
                    "stored energy vs exact route",
                    e,
                    TWO_PI * *v as f64,
                ));
            }
        }
        Isotropy::NotTotallyIsotropic { .. } => {
            if target.total_branching.is_some() {
                reports.push(bound_nonisotropic(target)?);
            }
        }
    }
    if !target.conformal && target.total_branching.is_some() {
        reports.push(bound_nonconformal(target)?);
    }
    if halved {
        for r in &mut reports {
            r.notes
                .push("computed on the oriented double cover (quantities doubled)".into());
        }
    }
    Ok(reports)
}

/// Built-in catalog rows used across the test and acceptance suites.
pub fn catalog() -> Vec<HarmonicMapRecord> {
    let mut records = vec![];
    for d in 1..=6i64 {
        records.push(power_map_record(d));
    }
    records.push(veronese_record());
    records.push(clifford_torus_record());
    records.push(hyperelliptic_cover_record(2));
    records.push(hyperelliptic_cover_record(3));
    records.push(projective_plane_record());
    records
}

/// The degree-d holomorphic self-map of the sphere.
pub fn power_map_record(d: i64) -> HarmonicMapRecord {
    HarmonicMapRecord {
        name: format!("z^{d} on the sphere"),
        provenance: "closed-form".into(),
        euler_char: 2,
        orientable: true,
        target_dim: 2,
        linearly_full: true,
        conformal: true,
        isotropy: Isotropy::TotallyIsotropic { m: 1 },
        energy: Some(2.0 * TWO_PI * d as f64),
        total_branching: Some(2 * d - 2),
        chern: Some(BTreeMap::from([(-1, -2 * d), (0, 0), (1, 2 * d)])),
        ramification: Some(BTreeMap::from([(-1, 2 * d - 2), (0, 2 * d - 2)])),
        osculating_degrees: Some(vec![2 * d, 2 * d]),
    }
}

/// The Veronese sphere in S^4: unbranched, m = 2, energy 12 pi.
pub fn veronese_record() -> HarmonicMapRecord {
    HarmonicMapRecord {
        name: "veronese sphere in S^4".into(),
        provenance: "closed-form".into(),
        euler_char: 2,
        orientable: true,
        target_dim: 4,
        linearly_full: true,
        conformal: true,
        isotropy: Isotropy::TotallyIsotropic { m: 2 },
        energy: Some(6.0 * TWO_PI),
        total_branching: Some(0),
        chern: Some(BTreeMap::from([(-2, -4), (-1, -2), (0, 0), (1, 2), (2, 4)])),
        ramification: Some(BTreeMap::from([(-2, 0), (-1, 0), (0, 0), (1, 0)])),
        osculating_degrees: Some(vec![4, 6, 6]),
    }
}

/// The minimal Clifford torus in S^3: conformal, not totally isotropic
/// (odd-dimensional target), unbranched.
pub fn clifford_torus_record() -> HarmonicMapRecord {
    HarmonicMapRecord {
        name: "clifford torus in S^3".into(),
        provenance: "closed-form".into(),
        euler_char: 0,
        orientable: true,
        target_dim: 3,
        linearly_full: true,
        conformal: true,
        isotropy: Isotropy::NotTotallyIsotropic { q: 2 },
        energy: Some(2.0 * std::f64::consts::PI * std::f64::consts::PI),
        total_branching: Some(0),
        chern: None,
        ramification: None,
        osculating_degrees: None,
    }
}

/// The hyperelliptic projection of a genus-g double cover, seen as a
/// degree-2 holomorphic map to the sphere; 2 genus + 2 simple branch points
/// and E = 8 pi.
pub fn hyperelliptic_cover_record(genus: i64) -> HarmonicMapRecord {
    HarmonicMapRecord {
        name: format!("hyperelliptic projection, genus {genus}"),
        provenance: "glued-mesh".into(),
        euler_char: 2 - 2 * genus,
        orientable: true,
        target_dim: 2,
        linearly_full: true,
        conformal: true,
        isotropy: Isotropy::TotallyIsotropic { m: 1 },
        energy: Some(4.0 * TWO_PI),
        total_branching: Some(2 * genus + 2),
        chern: Some(BTreeMap::from([(-1, -4), (0, 0), (1, 4)])),
        ramification: Some(BTreeMap::from([(0, 2 * genus + 2)])),
        osculating_degrees: Some(vec![4, 4]),
    }
}

/// A projective-plane record exercising the non-orientable reduction.
pub fn projective_plane_record() -> HarmonicMapRecord {
    HarmonicMapRecord {
        name: "veronese projective plane".into(),
        provenance: "closed-form".into(),
        euler_char: 1,
        orientable: false,
        target_dim: 4,
        linearly_full: true,
        conformal: true,
        isotropy: Isotropy::TotallyIsotropic { m: 2 },
        energy: Some(3.0 * TWO_PI),
        total_branching: Some(0),
        chern: None,
        ramification: None,
        osculating_degrees: None,
    }
}

/// The Klein-bottle record with a branch point, which the bounds must flag.
pub fn branched_klein_bottle_record() -> HarmonicMapRecord {
    HarmonicMapRecord {
        name: "branched non-isotropic klein bottle".into(),
        provenance: "synthetic".into(),
        euler_char: 0,
        orientable: false,
        target_dim: 3,
        linearly_full: true,
        conformal: true,
        isotropy: Isotropy::NotTotallyIsotropic { q: 2 },
        energy: Some(10.0),
        total_branching: Some(1),
        chern: None,
        ramification: None,
        osculating_degrees: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_map_identities_hold() {
        for d in 1..=6 {
            let rec = power_map_record(d);
            let reports = ledger_consistency(&rec).unwrap();
            assert!(!reports.is_empty());
            for r in &reports {
                assert!(r.pass, "{d}: {r:?}");
            }
        }
    }

    #[test]
    fn veronese_energy_is_twelve_pi() {
        let rec = veronese_record();
        let e = energy_from_ramification(&rec).unwrap();
        assert!((e - 12.0 * std::f64::consts::PI).abs() < 1e-12);
        let routes = energy_routes_over_two_pi(&rec);
        assert_eq!(routes.len(), 3);
        assert!(routes.iter().all(|(_, v)| *v == 6));
    }

    #[test]
    fn power_map_energy_is_4_pi_d() {
        for d in 1..=6 {
            let rec = power_map_record(d);
            let e = energy_from_ramification(&rec).unwrap();
            assert!((e - 4.0 * std::f64::consts::PI * d as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_energy_full_map_flagged() {
        let mut rec = power_map_record(1);
        rec.energy = Some(0.0);
        rec.total_branching = Some(0);
        rec.chern = None;
        rec.ramification = None;
        rec.osculating_degrees = None;
        let r = bound_isotropic(&rec).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn riemann_hurwitz_equality_for_m_one() {
        for d in 1..=6 {
            let rec = power_map_record(d);
            let r = bound_isotropic(&rec).unwrap();
            assert!(r.pass, "{r:?}");
            assert!((r.lhs - r.rhs).abs() < 1e-12, "m = 1 must be an equality");
        }
    }

    #[test]
    fn nonisotropic_bound_on_tori_is_zero() {
        let rec = clifford_torus_record();
        let r = bound_nonisotropic(&rec).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, 0.0);
    }

    #[test]
    fn nonconformal_bounds() {
        let mut rec = clifford_torus_record();
        rec.conformal = false;
        rec.isotropy = Isotropy::NotTotallyIsotropic { q: 1 };
        rec.name = "synthetic non-conformal torus".into();
        let r = bound_nonconformal(&rec).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, 0.0);

        // genus 2: b <= 2
        rec.euler_char = -2;
        rec.total_branching = Some(2);
        assert!(bound_nonconformal(&rec).unwrap().pass);
        rec.total_branching = Some(3);
        assert!(!bound_nonconformal(&rec).unwrap().pass);

        // sphere: bound is negative, always inconsistent
        rec.euler_char = 2;
        rec.total_branching = Some(0);
        assert!(!bound_nonconformal(&rec).unwrap().pass);

        // conformal records are rejected
        rec.conformal = true;
        assert!(bound_nonconformal(&rec).is_err());
    }

    #[test]
    fn extremal_bound_instantiation() {
        let r = bound_extremal(0, 1, Some(1.0), Some(1.0)).unwrap();
        assert!((r.bound - 1.0).abs() < 1e-12);
        // genus 3, C'(genus + k) = 8 with k = 5: branch (n+1)(genus-1) = 18
        let r = bound_extremal(3, 5, Some(1.0), Some(1.0)).unwrap();
        assert!((r.nonisotropic_branch - 18.0).abs() < 1e-12);
        assert!(bound_extremal(1, 1, None, Some(1.0)).is_err());
    }

    #[test]
    fn extremal_branches_scale_like_the_headline() {
        // with unit constants both branches stay within a fixed multiple of
        // (genus + 1)(genus + k)
        for genus in 0..=10i64 {
            for k in 1..=10i64 {
                let r = bound_extremal(genus, k, Some(1.0), Some(1.0)).unwrap();
                let shape = ((genus + 1) * (genus + k)) as f64;
                assert!(r.nonisotropic_branch <= 3.0 * shape, "{genus} {k}");
                assert!(r.isotropic_branch <= 3.0 * shape, "{genus} {k}");
            }
        }
    }

    #[test]
    fn klein_bottle_reduction_flags_branching() {
        let rec = branched_klein_bottle_record();
        let reduced = nonorientable_reduce(&rec).unwrap();
        assert_eq!(reduced.euler_char, 0);
        assert_eq!(reduced.total_branching, Some(2));
        assert_eq!(reduced.energy, Some(20.0));
        let reports = audit_record(&rec).unwrap();
        assert!(reports.iter().any(|r| !r.pass), "branched Klein bottle must fail");
    }

    #[test]
    fn projective_plane_doubles_to_sphere() {
        let rec = projective_plane_record();
        let reduced = nonorientable_reduce(&rec).unwrap();
        assert_eq!(reduced.euler_char, 2);
        assert_eq!(reduced.energy, Some(6.0 * TWO_PI));
        assert!(audit_record(&rec).unwrap().iter().all(|r| r.pass));
    }

    #[test]
    fn full_catalog_passes_audit() {
        for rec in catalog() {
            let reports = audit_record(&rec).unwrap();
            for r in &reports {
                assert!(r.pass, "{}: {:?}", rec.name, r);
            }
        }
    }

    #[test]
    fn nonisotropic_bound_matches_genus_form_for_orientable() {
        // -(n+1) chi / 2 = (n+1)(genus-1) on orientable records
        for genus in 0..5i64 {
            for n in 2..=7u32 {
                let rec = HarmonicMapRecord {
                    name: "shape check".into(),
                    provenance: "synthetic".into(),
                    euler_char: 2 - 2 * genus,
                    orientable: true,
                    target_dim: n,
                    linearly_full: true,
                    conformal: true,
                    isotropy: Isotropy::NotTotallyIsotropic { q: 2 },
                    energy: None,
                    total_branching: Some(0),
                    chern: None,
                    ramification: None,
                    osculating_degrees: None,
                };
                assert_eq!(
                    nonisotropic_topological_bound(&rec),
                    ((n as i64 + 1) * (genus - 1)) as f64
                );
            }
        }
    }

    #[test]
    fn nonisotropic_at_q_one_coincides_with_nonconformal() {
        for genus in 1..=4i64 {
            for n in 2..=6u32 {
                let rec = HarmonicMapRecord {
                    name: "q1 coincidence".into(),
                    provenance: "synthetic".into(),
                    euler_char: 2 - 2 * genus,
                    orientable: true,
                    target_dim: n,
                    linearly_full: true,
                    conformal: false,
                    isotropy: Isotropy::NotTotallyIsotropic { q: 1 },
                    energy: None,
                    total_branching: Some(0),
                    chern: None,
                    ramification: None,
                    osculating_degrees: None,
                };
                let a = bound_nonisotropic(&rec).unwrap();
                let b = bound_nonconformal(&rec).unwrap();
                assert_eq!(a.rhs, b.rhs, "genus {genus}, n {n}");
                assert_eq!(a.rhs, (2 * genus - 2) as f64);
            }
        }
    }

    #[test]
    fn validation_rejects_bad_invariants() {
        let mut rec = power_map_record(2);
        rec.target_dim = 3;
        assert!(rec.validate().is_err());

        let mut rec = power_map_record(2);
        rec.chern.as_mut().unwrap().insert(0, 1);
        assert!(rec.validate().is_err());

        let mut rec = power_map_record(2);
        rec.total_branching = Some(1);
        assert!(rec.validate().is_err(), "b must equal r(d_0)");
    }
}
