//! Per-vertex conformal densities with isolated zeros.

use super::sphere::{build_sphere, resnap_lengths, snap_vertex_to};
use super::{ConePoint, Mesh, MeshError};
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct ConformalDensity {
    pub values: Vec<f64>,
    pub zero_set: Vec<usize>,
}

impl ConformalDensity {
    pub fn uniform(n: usize, value: f64) -> ConformalDensity {
        assert!(value > 0.0);
        ConformalDensity { values: vec![value; n], zero_set: vec![] }
    }

    /// Validates nonnegativity and isolation of zeros against the mesh.
    pub fn new(values: Vec<f64>, mesh: &Mesh) -> Result<ConformalDensity, MeshError> {
        if values.len() != mesh.num_vertices() {
            return Err(MeshError::InvalidSpec("density length mismatch".into()));
        }
        if values.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(MeshError::InvalidSpec("density must be finite and nonnegative".into()));
        }
        let zero_set: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 0.0)
            .map(|(i, _)| i)
            .collect();
        let zero_lookup: std::collections::HashSet<usize> = zero_set.iter().copied().collect();
        for (a, b) in mesh.edges() {
            if zero_lookup.contains(&a) && zero_lookup.contains(&b) {
                return Err(MeshError::InvalidSpec(format!(
                    "density zeros at adjacent vertices {a} and {b} are not isolated"
                )));
            }
        }
        Ok(ConformalDensity { values, zero_set })
    }

    pub fn scaled(&self, t: f64) -> ConformalDensity {
        assert!(t > 0.0);
        ConformalDensity {
            values: self.values.iter().map(|v| v * t).collect(),
            zero_set: self.zero_set.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Strictly positive random density with the roughness smoothed away:
/// per-vertex log-noise followed by neighbor averaging, so the field varies
/// on coarse scales that the mesh resolves.
pub fn smooth_random_density(
    mesh: &Mesh,
    seed: u64,
    amplitude: f64,
    smoothing_rounds: usize,
) -> ConformalDensity {
    use rand::{Rng, SeedableRng};
    let n = mesh.num_vertices();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut logf: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0f64)).collect();
    let nbrs = mesh.vertex_neighbors();
    for _ in 0..smoothing_rounds {
        let prev = logf.clone();
        for (v, l) in logf.iter_mut().enumerate() {
            let mut acc = prev[v];
            for &w in &nbrs[v] {
                acc += prev[w];
            }
            *l = acc / (nbrs[v].len() as f64 + 1.0);
        }
    }
    // rescale to the requested amplitude
    let max = logf.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = logf.iter().cloned().fold(f64::INFINITY, f64::min);
    let span = (max - min).max(1e-12);
    let values = logf
        .iter()
        .map(|l| (amplitude * (2.0 * (l - min) / span - 1.0)).exp())
        .collect();
    ConformalDensity { values, zero_set: vec![] }
}

/// Density of the metric pulled back through the recorded sheet projection.
///
/// The glued mesh already carries the pulled-back polyhedral geometry, so the
/// factor is 1 away from the branch set and vanishes exactly at the cone
/// points, where the differential of the projection degenerates.
pub fn pullback_density(mesh: &Mesh) -> Result<ConformalDensity, MeshError> {
    if mesh.projection.is_none() {
        return Err(MeshError::NoProjection);
    }
    let mut values = vec![1.0; mesh.num_vertices()];
    for c in &mesh.cone_points {
        values[c.vertex] = 0.0;
    }
    ConformalDensity::new(values, mesh)
}

/// Sphere mesh with the poles snapped to vertices, carrying the metric pulled
/// back through z -> z^d in the stereographic chart. The poles become cone
/// points of angle 2 pi d and the z^d image is recorded as the projection.
pub fn build_power_map_sphere(refinement: u32, d: u32) -> Result<(Mesh, ConformalDensity), MeshError> {
    assert!(d >= 1);
    let mut mesh = build_sphere(refinement)?;
    let (south, _) = snap_vertex_to(&mut mesh, [0.0, 0.0, -1.0])?;
    let (north, _) = snap_vertex_to(&mut mesh, [0.0, 0.0, 1.0])?;
    if south == north {
        return Err(MeshError::BranchTooClose(north));
    }
    resnap_lengths(&mut mesh)?;

    let positions = mesh.positions.clone().unwrap();
    let mut values = Vec::with_capacity(positions.len());
    let mut projection = Vec::with_capacity(positions.len());
    for (i, p) in positions.iter().enumerate() {
        if i == north {
            values.push(if d == 1 { 1.0 } else { 0.0 });
            projection.push([0.0, 0.0, 1.0]);
            continue;
        }
        if i == south {
            values.push(if d == 1 { 1.0 } else { 0.0 });
            projection.push([0.0, 0.0, -1.0]);
            continue;
        }
        let z = stereographic(p);
        values.push(power_map_factor(z.norm(), d));
        projection.push(inverse_stereographic(z.powu(d)));
    }
    if d >= 2 {
        mesh.cone_points = vec![
            ConePoint { vertex: south.min(north), angle_over_2pi: d },
            ConePoint { vertex: south.max(north), angle_over_2pi: d },
        ];
    }
    mesh.projection = Some(projection);
    mesh.projection_degree = Some(d);
    let density = ConformalDensity::new(values, &mesh)?;
    Ok((mesh, density))
}

/// |d w/d z| ratio of round conformal factors for w = z^d, as a function of
/// r = |z|. Symmetric under r -> 1/r.
fn power_map_factor(r: f64, d: u32) -> f64 {
    let d = d as f64;
    let m = if r > 1.0 { 1.0 / r } else { r };
    d * m.powf(d - 1.0) * (1.0 + m * m) / (1.0 + m.powf(2.0 * d))
}

/// Stereographic chart from the north pole: z = (x + i y) / (1 - z3).
pub fn stereographic(p: &[f64; 3]) -> Complex64 {
    Complex64::new(p[0], p[1]) / (1.0 - p[2])
}

pub fn inverse_stereographic(z: Complex64) -> [f64; 3] {
    let n2 = z.norm_sqr();
    if n2 > 1.0 {
        let v = 1.0 / z;
        let m2 = v.norm_sqr();
        [2.0 * v.re / (1.0 + m2), -2.0 * v.im / (1.0 + m2), (1.0 - m2) / (1.0 + m2)]
    } else {
        [2.0 * z.re / (1.0 + n2), 2.0 * z.im / (1.0 + n2), (n2 - 1.0) / (1.0 + n2)]
    }
}
