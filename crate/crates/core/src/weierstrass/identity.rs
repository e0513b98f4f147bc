//! Pointwise identities of the planar Weierstrass map on a sample grid:
//! harmonicity of the components, conformality of the first fundamental
//! form, the unit normal against the stereographic image of the Gauss map,
//! and the conformal factor against ((1 + |phi|^2) |h|)^2, the scale of the
//! unhalved isotropic triple.

use super::quad::polyline;
use super::{PlanarData, WeierstrassData, WeierstrassError};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridSpec {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub samples: usize,
    pub max_laplacian: f64,
    pub max_conformal_defect: f64,
    pub max_normal_deviation: f64,
    pub max_factor_error: f64,
    pub tolerance: f64,
    pub harmonic_ok: bool,
    pub conformal_ok: bool,
    pub normal_ok: bool,
    pub factor_ok: bool,
    pub pass: bool,
}

/// Evaluates X on the grid by cumulative integration (bottom row first, then
/// up each column) and checks the identities with fourth-order differences.
pub fn local_identity_check(
    data: &PlanarData,
    grid: GridSpec,
    tolerance: f64,
) -> Result<IdentityReport, WeierstrassError> {
    assert!(grid.n >= 7, "grid too small for fourth-order stencils");
    let n = grid.n;
    let hx = (grid.x1 - grid.x0) / (n - 1) as f64;
    let hy = (grid.y1 - grid.y0) / (n - 1) as f64;
    let at = |i: usize, j: usize| Complex64::new(grid.x0 + i as f64 * hx, grid.y0 + j as f64 * hy);
    let wdata = WeierstrassData::Planar(data.clone());

    // cumulative immersion values
    let mut x_grid = vec![[0.0f64; 3]; n * n];
    let idx = |i: usize, j: usize| j * n + i;
    for i in 1..n {
        let step = super::evaluate_immersion_delta(&wdata, &polyline(&[at(i - 1, 0), at(i, 0)]))?;
        for c in 0..3 {
            x_grid[idx(i, 0)][c] = x_grid[idx(i - 1, 0)][c] + step[c];
        }
    }
    for i in 0..n {
        for j in 1..n {
            let step = super::evaluate_immersion_delta(&wdata, &polyline(&[at(i, j - 1), at(i, j)]))?;
            for c in 0..3 {
                x_grid[idx(i, j)][c] = x_grid[idx(i, j - 1)][c] + step[c];
            }
        }
    }

    let get = |i: usize, j: usize| x_grid[idx(i, j)];
    let mut max_laplacian = 0.0f64;
    let mut max_conformal = 0.0f64;
    let mut max_normal = 0.0f64;
    let mut max_factor = 0.0f64;
    let mut samples = 0usize;
    for i in 2..n - 2 {
        for j in 2..n - 2 {
            samples += 1;
            let z = at(i, j);
            // fourth-order first derivatives
            let du = stencil4(get(i - 2, j), get(i - 1, j), get(i + 1, j), get(i + 2, j), hx);
            let dv = stencil4(get(i, j - 2), get(i, j - 1), get(i, j + 1), get(i, j + 2), hy);
            let e = dot3(&du, &du);
            let g = dot3(&dv, &dv);
            let f = dot3(&du, &dv);
            let scale = e.max(g).max(1e-30);
            max_conformal = max_conformal.max(((e - g).abs() / scale).max(f.abs() / scale));

            // five-point Laplacian per component, relative to the metric scale
            let c = get(i, j);
            for k in 0..3 {
                let lap = (get(i + 1, j)[k] + get(i - 1, j)[k] - 2.0 * c[k]) / (hx * hx)
                    + (get(i, j + 1)[k] + get(i, j - 1)[k] - 2.0 * c[k]) / (hy * hy);
                max_laplacian = max_laplacian.max(lap.abs() / scale.sqrt().max(1e-15));
            }

            // normal from the differential vs the stereographic Gauss map
            let mut nrm = cross3(&du, &dv);
            let nn = dot3(&nrm, &nrm).sqrt();
            if nn > 1e-14 {
                for v in &mut nrm {
                    *v /= nn;
                }
                let phi = data.phi.eval_complex(z);
                let denom = 1.0 + phi.norm_sqr();
                let stereo = [
                    2.0 * phi.re / denom,
                    2.0 * phi.im / denom,
                    (phi.norm_sqr() - 1.0) / denom,
                ];
                let dev = (0..3).map(|k| (nrm[k] - stereo[k]).powi(2)).sum::<f64>().sqrt();
                max_normal = max_normal.max(dev);
            }

            // conformal factor against ((1 + |phi|^2) |h|)^2
            let hval = (data.h_unit * data.h.eval_complex(z)).norm();
            let lam = (1.0 + data.phi.eval_complex(z).norm_sqr()) * hval;
            let predicted = lam * lam;
            max_factor = max_factor.max((e - predicted).abs() / predicted.max(1e-30));
        }
    }
    let harmonic_ok = max_laplacian <= tolerance;
    let conformal_ok = max_conformal <= tolerance;
    let normal_ok = max_normal <= tolerance;
    let factor_ok = max_factor <= tolerance;
    Ok(IdentityReport {
        samples,
        max_laplacian,
        max_conformal_defect: max_conformal,
        max_normal_deviation: max_normal,
        max_factor_error: max_factor,
        tolerance,
        harmonic_ok,
        conformal_ok,
        normal_ok,
        factor_ok,
        pass: harmonic_ok && conformal_ok && normal_ok && factor_ok,
    })
}

fn stencil4(m2: [f64; 3], m1: [f64; 3], p1: [f64; 3], p2: [f64; 3], h: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for k in 0..3 {
        out[k] = (m2[k] - 8.0 * m1[k] + 8.0 * p1[k] - p2[k]) / (12.0 * h);
    }
    out
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
