//! Laplace-Beltrami spectra under conformal densities: assembly, eigenvalue
//! solves, normalized eigenvalues, counting function, the genus bound on the
//! first eigenvalue, and index/nullity of maps to the sphere.

pub mod skyline;
pub mod solver;
pub mod sparse;

pub use solver::SolverDiagnostics;
pub use sparse::Csr;

use crate::mesh::{ConformalDensity, Mesh, MeshError};
use crate::mesh::density::pullback_density;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("mesh: {0}")]
    Mesh(#[from] MeshError),
    #[error("density vanishes on whole triangle {0}: non-isolated zero")]
    NonIsolatedZero(usize),
    #[error("degenerate triangle {0}")]
    DegenerateTriangle(usize),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("eigensolver did not converge (reached {} iterations, residual {:.3e})", .diagnostics.iterations, .diagnostics.max_residual)]
    NonConvergence { diagnostics: SolverDiagnostics },
    #[error("insufficient spectrum: lambda = {lambda} beyond converged range {max}")]
    InsufficientSpectrum { lambda: f64, max: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Ordered spectrum with the area and scale-invariant normalized values.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub area: f64,
    pub normalized: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub diagnostics: SolverDiagnostics,
}

impl SpectrumResult {
    /// Weyl counting function N(lambda) = #{ i : lambda_i < lambda }.
    ///
    /// Errors when `lambda` exceeds the converged range, since eigenvalues
    /// beyond the last computed one are unknown.
    pub fn counting_function(&self, lambda: f64) -> Result<usize, SpectralError> {
        let max = *self.eigenvalues.last().unwrap_or(&f64::NEG_INFINITY);
        if lambda > max {
            return Err(SpectralError::InsufficientSpectrum { lambda, max });
        }
        Ok(self.eigenvalues.iter().filter(|&&l| l < lambda).count())
    }
}

/// Per-triangle nonnegative potential, e.g. |grad phi|^2 or -2K.
#[derive(Clone, Debug)]
pub struct PotentialField {
    pub per_triangle: Vec<f64>,
}

impl PotentialField {
    pub fn uniform(mesh: &Mesh, value: f64) -> PotentialField {
        PotentialField { per_triangle: vec![value; mesh.num_triangles()] }
    }

    /// 2 f^2 evaluated at triangle centroids: the potential of a conformal
    /// map to the round sphere whose pullback factor is `f`.
    pub fn from_conformal_factor(mesh: &Mesh, factor: &ConformalDensity) -> PotentialField {
        let per_triangle = mesh
            .tris
            .iter()
            .map(|t| {
                let fc = (factor.values[t[0]] + factor.values[t[1]] + factor.values[t[2]]) / 3.0;
                2.0 * fc * fc
            })
            .collect();
        PotentialField { per_triangle }
    }

    pub fn max_value(&self) -> f64 {
        self.per_triangle.iter().cloned().fold(0.0, f64::max)
    }
}

/// Index/nullity counts around a spectral threshold.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IndexResult {
    /// Eigenvalues strictly below threshold - band.
    pub index: i64,
    /// Eigenvalues within [threshold - band, threshold + band].
    pub nullity: i64,
    pub band: f64,
}

/// Cotangent stiffness and density-squared mass matrices.
///
/// The stiffness uses the cotangent weights of the base triangle shapes,
/// which is conformally invariant in two dimensions; the conformal density
/// enters only through the mass, by a one-point centroid quadrature of f^2.
pub fn assemble(mesh: &Mesh, density: &ConformalDensity) -> Result<(Csr, Csr), SpectralError> {
    assemble_with_quadrature(mesh, density, MassQuadrature::Centroid)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MassQuadrature {
    /// One-point rule: f^2 at the corner average.
    Centroid,
    /// Three-point midpoint rule, second order on smooth densities.
    ThreePoint,
}

pub fn assemble_with_quadrature(
    mesh: &Mesh,
    density: &ConformalDensity,
    quadrature: MassQuadrature,
) -> Result<(Csr, Csr), SpectralError> {
    if density.len() != mesh.num_vertices() {
        return Err(SpectralError::Invalid("density length mismatch".into()));
    }
    let n = mesh.num_vertices();
    let mut k_triplets = Vec::with_capacity(mesh.num_triangles() * 12);
    let mut m_triplets = Vec::with_capacity(mesh.num_triangles() * 9);
    for (ti, t) in mesh.tris.iter().enumerate() {
        let area = mesh.triangle_area(ti);
        if !(area.is_finite() && area > 0.0) {
            return Err(SpectralError::DegenerateTriangle(ti));
        }
        let cot = mesh.corner_cotangents(ti);
        // edge (i, j) opposite corner c gets weight cot(c)/2
        for c in 0..3 {
            let i = t[(c + 1) % 3];
            let j = t[(c + 2) % 3];
            let w = 0.5 * cot[c];
            k_triplets.push((i, i, w));
            k_triplets.push((j, j, w));
            k_triplets.push((i, j, -w));
            k_triplets.push((j, i, -w));
        }
        let f = [density.values[t[0]], density.values[t[1]], density.values[t[2]]];
        let weight = match quadrature {
            MassQuadrature::Centroid => {
                let fc = (f[0] + f[1] + f[2]) / 3.0;
                fc * fc
            }
            MassQuadrature::ThreePoint => {
                let m01 = 0.5 * (f[0] + f[1]);
                let m12 = 0.5 * (f[1] + f[2]);
                let m20 = 0.5 * (f[2] + f[0]);
                (m01 * m01 + m12 * m12 + m20 * m20) / 3.0
            }
        };
        if weight == 0.0 {
            return Err(SpectralError::NonIsolatedZero(ti));
        }
        let scale = weight * area / 12.0;
        for a in 0..3 {
            for b in 0..3 {
                let v = if a == b { 2.0 } else { 1.0 } * scale;
                m_triplets.push((t[a], t[b], v));
            }
        }
    }
    Ok((
        Csr::from_triplets(n, &k_triplets),
        Csr::from_triplets(n, &m_triplets),
    ))
}

/// Mass matrix weighted by a per-triangle potential under the same density
/// metric, for Schroedinger pencils.
pub fn assemble_potential_mass(
    mesh: &Mesh,
    density: &ConformalDensity,
    potential: &PotentialField,
) -> Result<Csr, SpectralError> {
    if potential.per_triangle.len() != mesh.num_triangles() {
        return Err(SpectralError::Invalid("potential length mismatch".into()));
    }
    let n = mesh.num_vertices();
    let mut triplets = Vec::with_capacity(mesh.num_triangles() * 9);
    for (ti, t) in mesh.tris.iter().enumerate() {
        let v = potential.per_triangle[ti];
        if !v.is_finite() {
            return Err(SpectralError::Invalid(format!("potential not finite on triangle {ti}")));
        }
        let f = [density.values[t[0]], density.values[t[1]], density.values[t[2]]];
        let fc = (f[0] + f[1] + f[2]) / 3.0;
        let scale = v * fc * fc * mesh.triangle_area(ti) / 12.0;
        for a in 0..3 {
            for b in 0..3 {
                let w = if a == b { 2.0 } else { 1.0 } * scale;
                triplets.push((t[a], t[b], w));
            }
        }
    }
    Ok(Csr::from_triplets(n, &triplets))
}

/// Solves for the k+1 smallest eigenvalues of the pencil (stiffness, mass).
pub fn eigen_solve(
    stiffness: &Csr,
    mass: &Csr,
    k: usize,
    tol: f64,
) -> Result<SpectrumResult, SpectralError> {
    eigen_solve_seeded(stiffness, mass, k, tol, 0x5eed)
}

pub fn eigen_solve_seeded(
    stiffness: &Csr,
    mass: &Csr,
    k: usize,
    tol: f64,
    seed: u64,
) -> Result<SpectrumResult, SpectralError> {
    eigen_solve_warm(stiffness, mass, k, tol, seed, None)
}

pub fn eigen_solve_warm(
    stiffness: &Csr,
    mass: &Csr,
    k: usize,
    tol: f64,
    seed: u64,
    warm: Option<&[Vec<f64>]>,
) -> Result<SpectrumResult, SpectralError> {
    assert!(k >= 1);
    let scale = stiffness.trace() / mass.trace().max(f64::MIN_POSITIVE);
    let shift = -0.01 * scale.max(1e-12);
    let mut pairs = solver::smallest_eigenpairs_warm(stiffness, mass, k + 1, tol, shift, seed, warm)?;
    // the pencil is positive semidefinite; tiny negative values are noise
    for l in pairs.eigenvalues.iter_mut() {
        if *l < 0.0 && *l > -1e-9 * scale.max(1.0) {
            *l = 0.0;
        }
    }
    let area = mass.total_sum();
    let normalized = pairs.eigenvalues.iter().map(|l| l * area).collect();
    Ok(SpectrumResult {
        eigenvalues: pairs.eigenvalues,
        area,
        normalized,
        eigenvectors: pairs.eigenvectors,
        diagnostics: pairs.diagnostics,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct YangYauReport {
    pub genus: i64,
    pub bound: f64,
    pub normalized_lambda1: f64,
    pub margin: f64,
    pub strict_expected: bool,
    pub pass: bool,
}

/// Checks the genus bound lambda1 * area <= 8 pi floor((genus+3)/2).
///
/// Equality is attainable only in genus 0 and 2, so the strictness flag is
/// raised for every other genus; it is informational, not a numeric claim.
pub fn yang_yau_check(genus: i64, normalized_lambda1: f64, mesh_tolerance: f64) -> YangYauReport {
    assert!(genus >= 0);
    let bound = 8.0 * std::f64::consts::PI * ((genus + 3) / 2) as f64;
    let margin = bound - normalized_lambda1;
    YangYauReport {
        genus,
        bound,
        normalized_lambda1,
        margin,
        strict_expected: genus != 0 && genus != 2,
        pass: margin >= -mesh_tolerance,
    }
}

/// Index and nullity of the Schroedinger pencil
/// (stiffness - potential mass) u = mu * mass u around mu = 0:
/// index counts mu < -band, nullity counts |mu| <= band.
pub fn schrodinger_index(
    mesh: &Mesh,
    density: &ConformalDensity,
    potential: &PotentialField,
    band: f64,
) -> Result<IndexResult, SpectralError> {
    assert!(band > 0.0);
    let (k_mat, m_mat) = assemble(mesh, density)?;
    let p_mat = assemble_potential_mass(mesh, density, potential)?;
    let op = k_mat.linear_combination(1.0, &p_mat, -1.0);
    // mu >= -max potential, so shift safely below the ground state
    let floor = -potential.max_value() - 1.0;
    let spectrum = solve_below(&op, &m_mat, band, floor)?;
    Ok(count_band(&spectrum, 0.0, band))
}

/// Index of a sphere-valued map recorded on the mesh: the number of Laplace
/// eigenvalues of the pullback metric below 2, with the nullity counted in
/// the band [2 - band, 2 + band]. Eigenvalues inside the band belong to the
/// nullity, not the index, so that the threshold count is band-stable.
pub fn index_of_map(mesh: &Mesh, band: f64) -> Result<IndexResult, SpectralError> {
    index_of_map_with_density(mesh, &pullback_density(mesh)?, band)
}

pub fn index_of_map_with_density(
    mesh: &Mesh,
    density: &ConformalDensity,
    band: f64,
) -> Result<IndexResult, SpectralError> {
    assert!(band > 0.0);
    if mesh.projection.is_none() {
        return Err(SpectralError::Mesh(MeshError::NoProjection));
    }
    let (k_mat, m_mat) = assemble(mesh, density)?;
    let eigenvalues = solve_past(&k_mat, &m_mat, 2.0 + 2.0 * band)?;
    let fake = SpectrumResult {
        eigenvalues,
        area: m_mat.total_sum(),
        normalized: vec![],
        eigenvectors: vec![],
        diagnostics: SolverDiagnostics::default(),
    };
    Ok(count_band(&fake.eigenvalues, 2.0, band))
}

fn count_band(eigenvalues: &[f64], threshold: f64, band: f64) -> IndexResult {
    let index = eigenvalues.iter().filter(|&&l| l < threshold - band).count() as i64;
    let nullity = eigenvalues
        .iter()
        .filter(|&&l| (l - threshold).abs() <= band)
        .count() as i64;
    IndexResult { index, nullity, band }
}

/// Eigenvalues of (op, mass) until the top converged value clears `target`,
/// with the factorization shift pinned at `floor` below the whole spectrum.
fn solve_below(op: &Csr, mass: &Csr, band: f64, floor: f64) -> Result<Vec<f64>, SpectralError> {
    let mut k = 8usize;
    loop {
        let pairs = solver::smallest_eigenpairs(op, mass, k + 1, 1e-8, floor, 0x5eed)?;
        let vals = pairs.eigenvalues;
        if *vals.last().unwrap() > band * 2.0 + 0.5 || k + 1 >= op.n {
            return Ok(vals);
        }
        k *= 2;
        if k > op.n {
            k = op.n;
        }
    }
}

fn solve_past(k_mat: &Csr, m_mat: &Csr, target: f64) -> Result<Vec<f64>, SpectralError> {
    let mut k = 8usize;
    loop {
        let s = eigen_solve(k_mat, m_mat, k, 1e-8)?;
        if *s.eigenvalues.last().unwrap() > target || k + 1 >= k_mat.n {
            return Ok(s.eigenvalues);
        }
        k *= 2;
        if k > k_mat.n {
            k = k_mat.n;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeBoundReport {
    pub degree: u32,
    pub bound: f64,
    pub normalized_lambda1: f64,
    pub margin: f64,
    pub pass: bool,
}

/// Checks lambda1 * area <= 8 pi deg under the given conformal density on a
/// mesh carrying a projection of known degree.
pub fn lambda1_degree_bound_check(
    mesh: &Mesh,
    density: &ConformalDensity,
    tolerance: f64,
) -> Result<DegreeBoundReport, SpectralError> {
    let degree = mesh
        .projection_degree
        .ok_or(SpectralError::Mesh(MeshError::NoProjection))?;
    let (k_mat, m_mat) = assemble(mesh, density)?;
    let s = eigen_solve(&k_mat, &m_mat, 2, 1e-8)?;
    let bound = 8.0 * std::f64::consts::PI * degree as f64;
    let margin = bound - s.normalized[1];
    Ok(DegreeBoundReport {
        degree,
        bound,
        normalized_lambda1: s.normalized[1],
        margin,
        pass: margin >= -tolerance,
    })
}
