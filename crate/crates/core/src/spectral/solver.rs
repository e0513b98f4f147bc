//! Shift-invert subspace iteration for the symmetric-definite pencil
//! K x = lambda M x, converging the smallest eigenpairs.

use super::sparse::{dot, norm, Csr};
use super::skyline::SkylineFactor;
use super::SpectralError;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct SolverDiagnostics {
    pub iterations: usize,
    pub max_residual: f64,
    pub residuals: Vec<f64>,
    pub shift: f64,
    pub subspace: usize,
}

pub struct EigenPairs {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub diagnostics: SolverDiagnostics,
}

/// Computes the `count` smallest eigenpairs of (stiffness, mass).
///
/// `shift` must stay strictly below the smallest eigenvalue so that
/// stiffness - shift * mass is positive definite; for Laplacians a small
/// negative value works, for Schroedinger pencils pass a bound below the
/// ground state.
pub fn smallest_eigenpairs(
    stiffness: &Csr,
    mass: &Csr,
    count: usize,
    tol: f64,
    shift: f64,
    seed: u64,
) -> Result<EigenPairs, SpectralError> {
    smallest_eigenpairs_warm(stiffness, mass, count, tol, shift, seed, None)
}

/// Variant seeding the subspace from previous eigenvectors, which cuts the
/// iteration count drastically across nearby solves.
pub fn smallest_eigenpairs_warm(
    stiffness: &Csr,
    mass: &Csr,
    count: usize,
    tol: f64,
    shift: f64,
    seed: u64,
    warm: Option<&[Vec<f64>]>,
) -> Result<EigenPairs, SpectralError> {
    let n = stiffness.n;
    assert_eq!(mass.n, n);
    let count = count.min(n);
    let m = (count + (count / 2 + 4).max(8)).min(n);
    let shifted = stiffness.linear_combination(1.0, mass, -shift);
    let factor = SkylineFactor::factor(&shifted)
        .map_err(|e| SpectralError::Factorization(format!("{e} (shift {shift})")))?;
    if factor.negative_pivots > 0 {
        return Err(SpectralError::Factorization(format!(
            "shift {shift} is not below the spectrum ({} negative pivots)",
            factor.negative_pivots
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            if let Some(w) = warm {
                if j < w.len() && w[j].len() == n {
                    return w[j].clone();
                }
            }
            (0..n)
                .map(|_| if j == 0 { 1.0 } else { rng.gen_range(-1.0..1.0) })
                .collect()
        })
        .collect();

    let max_iterations = 400;
    let mut diagnostics = SolverDiagnostics {
        shift,
        subspace: m,
        ..Default::default()
    };
    let mut eigenvalues = vec![0.0; m];
    for it in 0..max_iterations {
        // inverse iteration step: Y = (K - shift M)^{-1} M X
        let mut next: Vec<Vec<f64>> = basis
            .iter()
            .map(|x| factor.solve(&mass.apply(x)))
            .collect();
        m_orthonormalize(&mut next, mass);

        // Rayleigh-Ritz in the M-orthonormal basis
        let kx: Vec<Vec<f64>> = next.iter().map(|x| stiffness.apply(x)).collect();
        let mut proj = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = dot(&next[i], &kx[j]);
                proj[(i, j)] = v;
                proj[(j, i)] = v;
            }
        }
        let eig = nalgebra::SymmetricEigen::new(proj);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());

        let mut rotated: Vec<Vec<f64>> = Vec::with_capacity(m);
        for &col in &order {
            let mut v = vec![0.0; n];
            for row in 0..m {
                let w = eig.eigenvectors[(row, col)];
                if w != 0.0 {
                    for i in 0..n {
                        v[i] += w * next[row][i];
                    }
                }
            }
            rotated.push(v);
        }
        for (slot, &col) in order.iter().enumerate() {
            eigenvalues[slot] = eig.eigenvalues[col];
        }
        basis = rotated;

        // convergence on the requested pairs
        let mut residuals = Vec::with_capacity(count);
        for j in 0..count {
            let kx = stiffness.apply(&basis[j]);
            let mx = mass.apply(&basis[j]);
            let lam = eigenvalues[j];
            let r: Vec<f64> = kx.iter().zip(&mx).map(|(a, b)| a - lam * b).collect();
            // the shift magnitude acts as the spectrum scale floor so the
            // zero mode can converge
            let denom = norm(&kx) + (lam.abs() + shift.abs()) * norm(&mx);
            residuals.push(if denom > 0.0 { norm(&r) / denom } else { norm(&r) });
        }
        let max_res = residuals.iter().cloned().fold(0.0f64, f64::max);
        diagnostics.iterations = it + 1;
        diagnostics.residuals = residuals;
        diagnostics.max_residual = max_res;
        if max_res <= tol {
            basis.truncate(count);
            eigenvalues.truncate(count);
            return Ok(EigenPairs { eigenvalues, eigenvectors: basis, diagnostics });
        }
    }
    Err(SpectralError::NonConvergence { diagnostics })
}

/// Modified Gram-Schmidt in the M-inner product.
fn m_orthonormalize(basis: &mut [Vec<f64>], mass: &Csr) {
    let m = basis.len();
    for j in 0..m {
        for _pass in 0..2 {
            let mx = mass.apply(&basis[j]);
            let prior: Vec<f64> = (0..j).map(|i| dot(&basis[i], &mx)).collect();
            for (i, c) in prior.iter().enumerate() {
                if *c != 0.0 {
                    let (head, tail) = basis.split_at_mut(j);
                    let bi = &head[i];
                    let bj = &mut tail[0];
                    for k in 0..bj.len() {
                        bj[k] -= c * bi[k];
                    }
                }
            }
        }
        let mx = mass.apply(&basis[j]);
        let nn = dot(&basis[j], &mx).sqrt();
        if nn > 0.0 {
            for v in basis[j].iter_mut() {
                *v /= nn;
            }
        }
    }
}
