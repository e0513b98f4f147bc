//! Icosahedral sphere meshes.

use super::{AngleGeometry, Mesh, MeshError};
use std::collections::HashMap;

/// Icosahedron subdivided `refinement` times, vertices projected to the unit
/// sphere; F = 20 * 4^refinement.
pub fn build_sphere(refinement: u32) -> Result<Mesh, MeshError> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut positions: Vec<[f64; 3]> = vec![
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    for p in &mut positions {
        normalize(p);
    }
    let mut tris: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..refinement {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(tris.len() * 4);
        for t in &tris {
            let m01 = midpoint_index(&mut positions, &mut midpoint, t[0], t[1]);
            let m12 = midpoint_index(&mut positions, &mut midpoint, t[1], t[2]);
            let m20 = midpoint_index(&mut positions, &mut midpoint, t[2], t[0]);
            next.push([t[0], m01, m20]);
            next.push([t[1], m12, m01]);
            next.push([t[2], m20, m12]);
            next.push([m01, m12, m20]);
        }
        tris = next;
    }
    let mut mesh = Mesh::from_positions(positions, tris, AngleGeometry::SphericalBase)?;
    mesh.projection = mesh.positions.clone();
    mesh.projection_degree = Some(1);
    Ok(mesh)
}

fn midpoint_index(
    positions: &mut Vec<[f64; 3]>,
    cache: &mut HashMap<(usize, usize), usize>,
    a: usize,
    b: usize,
) -> usize {
    let key = (a.min(b), a.max(b));
    if let Some(&i) = cache.get(&key) {
        return i;
    }
    let pa = positions[a];
    let pb = positions[b];
    let mut m = [
        0.5 * (pa[0] + pb[0]),
        0.5 * (pa[1] + pb[1]),
        0.5 * (pa[2] + pb[2]),
    ];
    normalize(&mut m);
    positions.push(m);
    let i = positions.len() - 1;
    cache.insert(key, i);
    i
}

pub fn normalize(p: &mut [f64; 3]) {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    p[0] /= n;
    p[1] /= n;
    p[2] /= n;
}

/// Moves the nearest mesh vertex exactly onto `target` (unit vector) and
/// returns (vertex index, snap distance). Re-deriving the edge lengths is the
/// caller's job via `resnap_lengths`.
pub fn snap_vertex_to(mesh: &mut Mesh, target: [f64; 3]) -> Result<(usize, f64), MeshError> {
    let positions = mesh.positions.as_mut().ok_or(MeshError::NoPositions)?;
    let mut best = (0usize, f64::INFINITY);
    for (i, p) in positions.iter().enumerate() {
        let d = super::dist(p, &target);
        if d < best.1 {
            best = (i, d);
        }
    }
    positions[best.0] = target;
    Ok(best)
}

/// Recomputes chordal edge lengths from positions (after vertex snapping) and
/// refreshes the recorded projection when it mirrored the positions.
pub fn resnap_lengths(mesh: &mut Mesh) -> Result<(), MeshError> {
    let positions = mesh.positions.clone().ok_or(MeshError::NoPositions)?;
    for (ti, t) in mesh.tris.iter().enumerate() {
        mesh.tri_lengths[ti] = [
            super::dist(&positions[t[0]], &positions[t[1]]),
            super::dist(&positions[t[1]], &positions[t[2]]),
            super::dist(&positions[t[2]], &positions[t[0]]),
        ];
    }
    if mesh.projection.is_some() {
        mesh.projection = Some(positions);
    }
    mesh.validate()
}
