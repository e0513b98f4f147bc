//! Maximization of the first normalized eigenvalue over conformal densities
//! on a fixed mesh by a damped cluster-Gram fixed point.
//!
//! At a conformally maximal metric the first eigenvalue cluster spans a
//! sphere-valued map with constant pointwise norm, so the squared cluster
//! sum G(x) is flat. Each step solves the eigenvalue cluster, then moves
//! log-density against log G (mass flows toward small G, which raises the
//! normalized eigenvalue) and renormalizes the area; steps that decrease the
//! objective beyond the backtracking tolerance are retried with a halved
//! step. Outputs are locally maximal candidates, never global claims.

use crate::mesh::{ConformalDensity, Mesh};
use crate::spectral::{assemble, eigen_solve_warm, SpectralError, SpectrumResult};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MaximizeError {
    #[error("mesh is disconnected")]
    Disconnected,
    #[error("initial density must be strictly positive")]
    NonPositiveInitial,
    #[error("first eigenvalue cluster collapsed toward zero")]
    ClusterCollapse,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximizeConfig {
    pub max_iters: usize,
    /// Damping factor on the log-density update.
    pub step: f64,
    /// Relative width of the first eigenvalue cluster.
    pub band: f64,
    /// Stationarity tolerance on the flatness of the cluster Gram field.
    pub tol: f64,
    pub eigen_tol: f64,
    /// Allowed decrease of the objective before a step is rejected.
    pub backtrack_tol: f64,
    pub eigenpairs: usize,
    pub seed: u64,
}

impl Default for MaximizeConfig {
    fn default() -> Self {
        MaximizeConfig {
            max_iters: 250,
            step: 0.5,
            band: 0.05,
            tol: 0.015,
            eigen_tol: 1e-8,
            backtrack_tol: 1e-7,
            eigenpairs: 8,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceRow {
    pub iter: usize,
    pub lambda1_bar: f64,
    pub cluster_size: usize,
    pub cluster_width: f64,
    pub residual: f64,
    pub step: f64,
}

#[derive(Clone, Debug)]
pub struct OptimizationState {
    pub density: ConformalDensity,
    pub spectrum: SpectrumResult,
    pub iterations: usize,
    pub step: f64,
    /// Normalized first eigenvalue per accepted iteration.
    pub history: Vec<f64>,
    pub residual: f64,
    pub cluster_size: usize,
    pub cluster_width: f64,
    pub converged: bool,
    pub trace: Vec<TraceRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StationarityReport {
    pub residual: f64,
    pub cluster_size: usize,
    pub cluster_width: f64,
    /// Target dimension of the harmonic map implied by the cluster.
    pub implied_target_dim: usize,
    pub lambda1_bar: f64,
    pub converged: bool,
    pub label: String,
}

pub fn stationarity_report(state: &OptimizationState) -> StationarityReport {
    StationarityReport {
        residual: state.residual,
        cluster_size: state.cluster_size,
        cluster_width: state.cluster_width,
        implied_target_dim: state.cluster_size,
        lambda1_bar: *state.history.last().unwrap_or(&f64::NAN),
        converged: state.converged,
        label: "locally maximal candidate".into(),
    }
}

pub fn maximize_lambda1(
    mesh: &Mesh,
    initial: &ConformalDensity,
    config: &MaximizeConfig,
) -> Result<OptimizationState, MaximizeError> {
    if !is_connected(mesh) {
        return Err(MaximizeError::Disconnected);
    }
    if initial.values.iter().any(|&v| v <= 0.0) {
        return Err(MaximizeError::NonPositiveInitial);
    }
    let n = mesh.num_vertices();
    let mut logf: Vec<f64> = initial.values.iter().map(|v| v.ln()).collect();
    normalize_area(mesh, &mut logf)?;

    let mut history: Vec<f64> = vec![];
    let mut trace: Vec<TraceRow> = vec![];
    let mut step = config.step;
    let mut warm: Option<Vec<Vec<f64>>> = None;
    let mut converged = false;
    let mut iterations = 0usize;

    let solve = |logf: &[f64], warm: &mut Option<Vec<Vec<f64>>>| -> Result<(ConformalDensity, SpectrumResult), MaximizeError> {
        let density = density_from_log(mesh, logf)?;
        let (k_mat, m_mat) = assemble(mesh, &density)?;
        let spectrum = eigen_solve_warm(
            &k_mat,
            &m_mat,
            config.eigenpairs,
            config.eigen_tol,
            config.seed,
            warm.as_deref(),
        )?;
        *warm = Some(spectrum.eigenvectors.clone());
        Ok((density, spectrum))
    };

    let (mut density, mut spectrum) = solve(&logf, &mut warm)?;
    let (mut cluster_size, mut cluster_width, mut residual, mut direction);
    loop {
        iterations += 1;
        let lambda1 = spectrum.eigenvalues[1];
        if lambda1 <= 1e-10 {
            return Err(MaximizeError::ClusterCollapse);
        }
        let objective = spectrum.normalized[1];
        history.push(objective);

        // first eigenvalue cluster and its Gram field
        let cluster: Vec<usize> = (1..spectrum.eigenvalues.len())
            .filter(|&i| spectrum.eigenvalues[i] <= lambda1 * (1.0 + config.band))
            .collect();
        cluster_size = cluster.len();
        cluster_width = cluster
            .iter()
            .map(|&i| spectrum.eigenvalues[i])
            .fold(f64::NEG_INFINITY, f64::max)
            / lambda1
            - 1.0;
        let mut gram = vec![0.0f64; n];
        for &i in &cluster {
            for (v, g) in gram.iter_mut().enumerate() {
                let u = spectrum.eigenvectors[i][v];
                *g += u * u;
            }
        }
        let weights = lumped_masses(mesh, &density);
        let total_w: f64 = weights.iter().sum();
        let mean: f64 = gram.iter().zip(&weights).map(|(g, w)| g * w).sum::<f64>() / total_w;
        residual = gram
            .iter()
            .map(|g| (g / mean - 1.0).abs())
            .fold(0.0f64, f64::max);
        trace.push(TraceRow {
            iter: iterations,
            lambda1_bar: objective,
            cluster_size,
            cluster_width,
            residual,
            step,
        });
        if residual <= config.tol {
            converged = true;
            break;
        }
        if iterations >= config.max_iters {
            break;
        }

        // two ascent directions: flattening the full cluster Gram keeps the
        // cluster together, flattening the bottom mode alone lifts the
        // minimum when the cluster update stalls
        let full: Vec<f64> = gram
            .iter()
            .map(|g| (-0.5 * ((g / mean).max(1e-10)).ln()).clamp(-0.5, 0.5))
            .collect();
        let mut bottom_raw = vec![0.0f64; n];
        for (v, g) in bottom_raw.iter_mut().enumerate() {
            let u = spectrum.eigenvectors[1][v];
            *g = u * u;
        }
        let bottom_mean: f64 =
            bottom_raw.iter().zip(&weights).map(|(g, w)| g * w).sum::<f64>() / total_w;
        let bottom: Vec<f64> = bottom_raw
            .iter()
            .map(|g| (-0.5 * ((g / bottom_mean).max(1e-10)).ln()).clamp(-0.5, 0.5))
            .collect();
        let mut accepted = false;
        'directions: for (which, dir) in [(0usize, &full), (1, &bottom)] {
            direction = dir.clone();
            let mut trial_step = if which == 0 { step } else { step.min(0.25) };
            for attempt in 0..10 {
                let mut trial = logf.clone();
                for (l, d) in trial.iter_mut().zip(&direction) {
                    *l += trial_step * d;
                }
                clamp_range(&mut trial);
                normalize_area(mesh, &mut trial)?;
                let (trial_density, trial_spectrum) = solve(&trial, &mut warm)?;
                let trial_objective = trial_spectrum.normalized[1];
                let improved = trial_objective > objective + 1e-12 * objective.abs().max(1.0);
                let tolerated = trial_objective
                    >= objective - config.backtrack_tol * objective.abs().max(1.0);
                // the cluster direction may tread water within tolerance;
                // the bottom direction must strictly improve
                if (which == 0 && tolerated && (improved || attempt == 0)) || (which == 1 && improved)
                {
                    logf = trial;
                    density = trial_density;
                    spectrum = trial_spectrum;
                    if which == 0 {
                        step = if attempt == 0 { (trial_step * 1.25).min(2.0) } else { trial_step };
                    }
                    accepted = true;
                    break 'directions;
                }
                trial_step *= 0.5;
            }
        }
        if !accepted {
            // stationary at this resolution
            break;
        }
        // stagnation: no measurable gain over a long stretch
        if history.len() > 40 {
            let past = history[history.len() - 40];
            if history.last().unwrap() - past < 1e-10 * past.abs().max(1.0) {
                break;
            }
        }
    }

    Ok(OptimizationState {
        density,
        spectrum,
        iterations,
        step,
        history,
        residual,
        cluster_size,
        cluster_width,
        converged,
        trace,
    })
}

fn density_from_log(mesh: &Mesh, logf: &[f64]) -> Result<ConformalDensity, MaximizeError> {
    let values: Vec<f64> = logf.iter().map(|l| l.exp()).collect();
    Ok(ConformalDensity::new(values, mesh).map_err(SpectralError::Mesh)?)
}

fn normalize_area(mesh: &Mesh, logf: &mut [f64]) -> Result<(), MaximizeError> {
    let density = density_from_log(mesh, logf)?;
    let area: f64 = (0..mesh.num_triangles())
        .map(|t| {
            let tri = mesh.tris[t];
            let f = (density.values[tri[0]] + density.values[tri[1]] + density.values[tri[2]]) / 3.0;
            f * f * mesh.triangle_area(t)
        })
        .sum();
    let shift = -0.5 * area.ln();
    for l in logf.iter_mut() {
        *l += shift;
    }
    Ok(())
}

fn clamp_range(logf: &mut [f64]) {
    let max = logf.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for l in logf.iter_mut() {
        *l = l.max(max - 18.0);
    }
}

fn lumped_masses(mesh: &Mesh, density: &ConformalDensity) -> Vec<f64> {
    let mut w = vec![0.0; mesh.num_vertices()];
    for (t, tri) in mesh.tris.iter().enumerate() {
        let f = (density.values[tri[0]] + density.values[tri[1]] + density.values[tri[2]]) / 3.0;
        let share = f * f * mesh.triangle_area(t) / 3.0;
        for &v in tri {
            w[v] += share;
        }
    }
    w
}

fn is_connected(mesh: &Mesh) -> bool {
    let n = mesh.num_vertices();
    if n == 0 {
        return false;
    }
    let nbrs = mesh.vertex_neighbors();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &nbrs[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Writes the per-iteration trace as CSV.
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("iter,lambda1_bar,cluster_size,cluster_width,residual,step\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.12},{},{:.6e},{:.6e},{:.4}\n",
            r.iter, r.lambda1_bar, r.cluster_size, r.cluster_width, r.residual, r.step
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::sphere::build_sphere;

    #[test]
    fn rejects_nonpositive_initial() {
        let mesh = build_sphere(1).unwrap();
        let mut vals = vec![1.0; mesh.num_vertices()];
        vals[0] = 0.0;
        let density = ConformalDensity { values: vals, zero_set: vec![0] };
        assert!(matches!(
            maximize_lambda1(&mesh, &density, &MaximizeConfig::default()),
            Err(MaximizeError::NonPositiveInitial)
        ));
    }

    #[test]
    fn round_sphere_is_already_stationary() {
        let mesh = build_sphere(2).unwrap();
        let density = ConformalDensity::uniform(mesh.num_vertices(), 1.0);
        let cfg = MaximizeConfig { max_iters: 30, ..Default::default() };
        let state = maximize_lambda1(&mesh, &density, &cfg).unwrap();
        assert!(state.converged, "residual {}", state.residual);
        assert!(state.iterations <= 3);
        assert_eq!(state.cluster_size, 3);
        let target = 8.0 * std::f64::consts::PI;
        let lam = *state.history.last().unwrap();
        assert!((lam - target).abs() / target < 0.01, "{lam}");
    }
}
