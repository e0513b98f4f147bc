//! Flat tori on the lattice Z + tau Z.

use super::{AngleGeometry, Mesh, MeshError};
use num_complex::Complex64;

/// n x n grid on the lattice Z + tau Z with opposite sides identified; each
/// cell is split along the (e2 - e1) diagonal, which keeps the triangles
/// equilateral for the hexagonal modulus. Area = Im(tau).
pub fn build_flat_torus(tau: Complex64, n: usize) -> Result<Mesh, MeshError> {
    if tau.im <= 0.0 {
        return Err(MeshError::InvalidSpec("Im(tau) must be positive".into()));
    }
    if n < 3 {
        return Err(MeshError::InvalidSpec("grid must be at least 3 x 3".into()));
    }
    let e1 = Complex64::new(1.0 / n as f64, 0.0);
    let e2 = tau / n as f64;
    let idx = |i: usize, j: usize| (i % n) * n + (j % n);
    let mut tris = Vec::with_capacity(2 * n * n);
    let mut lengths = Vec::with_capacity(2 * n * n);
    let l1 = e1.norm();
    let l2 = e2.norm();
    let ld = (e2 - e1).norm();
    for i in 0..n {
        for j in 0..n {
            // lower triangle (z, z+e1, z+e2): edges e1, e2-e1, -e2
            tris.push([idx(i, j), idx(i + 1, j), idx(i, j + 1)]);
            lengths.push([l1, ld, l2]);
            // upper triangle (z+e1, z+e1+e2, z+e2): edges e2, -e1, e1-e2...
            tris.push([idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]);
            lengths.push([l2, l1, ld]);
        }
    }
    Mesh::build(None, tris, lengths, AngleGeometry::Euclidean)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_torus_area_and_euler() {
        let m = build_flat_torus(Complex64::new(0.0, 1.0), 8).unwrap();
        assert_eq!(m.euler_characteristic(), 0);
        assert!((m.total_area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hexagonal_torus_area() {
        let tau = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let m = build_flat_torus(tau, 6).unwrap();
        assert!((m.total_area() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        // all triangles equilateral
        for l in &m.tri_lengths {
            assert!((l[0] - l[1]).abs() < 1e-12 && (l[1] - l[2]).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_angle_sums_are_two_pi() {
        let tau = Complex64::new(0.3, 1.2);
        let m = build_flat_torus(tau, 5).unwrap();
        for s in m.vertex_angle_sums() {
            assert!((s - 2.0 * std::f64::consts::PI).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(build_flat_torus(Complex64::new(1.0, -1.0), 8).is_err());
        assert!(build_flat_torus(Complex64::new(0.0, 1.0), 2).is_err());
    }
}
