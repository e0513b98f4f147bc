//! Glued branched double covers of the sphere.
//!
//! Two copies of a refined sphere mesh are cut along edge paths joining
//! paired branch points and cross-glued: crossing a slit edge switches
//! sheets. Branch vertices become cone points of total angle 4 pi, and the
//! sheet projection to the base sphere is recorded on every vertex.

use super::sphere::{build_sphere, normalize, resnap_lengths, snap_vertex_to};
use super::{AngleGeometry, ConePoint, Mesh, MeshError};
use serde::{Deserialize, Serialize};
use std::collections::{BinaryHeap, HashMap, HashSet};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchedCoverSpec {
    /// Distinct points on the unit sphere; the count is 2 genus + 2.
    pub branch_points: Vec<[f64; 3]>,
    /// Disjoint arcs pairing the branch points, as index pairs.
    pub pairing: Vec<(usize, usize)>,
    /// Refinement level of the base sphere mesh.
    pub refinement: u32,
}

impl BranchedCoverSpec {
    pub fn genus(&self) -> i64 {
        (self.branch_points.len() as i64 - 2) / 2
    }

    pub fn validate(&self) -> Result<(), MeshError> {
        let n = self.branch_points.len();
        if n < 4 || !n.is_multiple_of(2) {
            return Err(MeshError::InvalidSpec(format!(
                "need an even number >= 4 of branch points, got {n}"
            )));
        }
        if self.pairing.len() != n / 2 {
            return Err(MeshError::InvalidSpec("pairing must cover all branch points".into()));
        }
        let mut seen = vec![false; n];
        for &(a, b) in &self.pairing {
            if a >= n || b >= n || a == b || seen[a] || seen[b] {
                return Err(MeshError::InvalidSpec("pairing must use each point once".into()));
            }
            seen[a] = true;
            seen[b] = true;
        }
        Ok(())
    }
}

pub struct CoverBuildInfo {
    pub snap_distances: Vec<f64>,
    pub slit_edge_counts: Vec<usize>,
}

pub fn build_hyperelliptic_cover(spec: &BranchedCoverSpec) -> Result<Mesh, MeshError> {
    build_hyperelliptic_cover_with_info(spec).map(|(m, _)| m)
}

pub fn build_hyperelliptic_cover_with_info(
    spec: &BranchedCoverSpec,
) -> Result<(Mesh, CoverBuildInfo), MeshError> {
    spec.validate()?;
    let mut base = build_sphere(spec.refinement)?;

    // Snap one mesh vertex exactly onto each branch point.
    let mut branch_vertices = Vec::with_capacity(spec.branch_points.len());
    let mut snap_distances = Vec::with_capacity(spec.branch_points.len());
    for bp in &spec.branch_points {
        let mut target = *bp;
        normalize(&mut target);
        let (v, d) = snap_vertex_to(&mut base, target)?;
        if branch_vertices.contains(&v) {
            return Err(MeshError::BranchTooClose(v));
        }
        branch_vertices.push(v);
        snap_distances.push(d);
    }
    resnap_lengths(&mut base)?;

    // Slit paths along mesh edges, vertex-disjoint across pairs.
    let nbrs = base.vertex_neighbors();
    let positions = base.positions.clone().unwrap();
    let mut used: HashSet<usize> = branch_vertices.iter().copied().collect();
    let mut slit_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut slit_edge_counts = vec![];
    for &(ai, bi) in &spec.pairing {
        let (va, vb) = (branch_vertices[ai], branch_vertices[bi]);
        let forbidden: HashSet<usize> = used.iter().copied().filter(|&v| v != va && v != vb).collect();
        let path = arc_path(&positions, &nbrs, va, vb, &forbidden)
            .ok_or_else(|| MeshError::InvalidSpec("no disjoint slit path found".into()))?;
        slit_edge_counts.push(path.len() - 1);
        for w in path.windows(2) {
            let key = (w[0].min(w[1]), w[0].max(w[1]));
            slit_edges.insert(key);
        }
        for &v in &path {
            if used.contains(&v) && v != va && v != vb {
                return Err(MeshError::SlitsIntersect(v));
            }
            used.insert(v);
        }
    }

    let mesh = glue_double_cover(&base, &slit_edges, &branch_vertices)?;
    let expected_chi = 2 - 2 * spec.genus();
    debug_assert_eq!(mesh.euler_characteristic(), expected_chi);
    Ok((mesh, CoverBuildInfo { snap_distances, slit_edge_counts }))
}

/// Double cover of `base` cut along `slit_edges` and cross-glued.
fn glue_double_cover(
    base: &Mesh,
    slit_edges: &HashSet<(usize, usize)>,
    branch_vertices: &[usize],
) -> Result<Mesh, MeshError> {
    let nf = base.num_triangles();
    // Corner slots: (sheet * nf + tri) * 3 + corner.
    let slot = |sheet: usize, tri: usize, corner: usize| (sheet * nf + tri) * 3 + corner;
    let mut uf = UnionFind::new(2 * nf * 3);

    // Map each undirected edge to its two (triangle, edge-slot) incidences.
    let mut edge_tris: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (ti, t) in base.tris.iter().enumerate() {
        for e in 0..3 {
            let a = t[e];
            let b = t[(e + 1) % 3];
            edge_tris.entry((a.min(b), a.max(b))).or_default().push((ti, e));
        }
    }
    for (key, incidences) in &edge_tris {
        let [(t1, e1), (t2, e2)] = [incidences[0], incidences[1]];
        let crossing = slit_edges.contains(key);
        for s in 0..2usize {
            let s2 = if crossing { 1 - s } else { s };
            // corners at the tail and head of the shared edge
            let (u1, v1) = (e1, (e1 + 1) % 3);
            let (u2, v2) = (e2, (e2 + 1) % 3);
            // t1's directed edge (a, b) appears in t2 as (b, a)
            if base.tris[t1][u1] == base.tris[t2][v2] {
                uf.union(slot(s, t1, u1), slot(s2, t2, v2));
                uf.union(slot(s, t1, v1), slot(s2, t2, u2));
            } else {
                uf.union(slot(s, t1, u1), slot(s2, t2, u2));
                uf.union(slot(s, t1, v1), slot(s2, t2, v2));
            }
        }
    }

    // Assign vertex ids to corner classes.
    let mut id_of_root: HashMap<usize, usize> = HashMap::new();
    let mut positions: Vec<[f64; 3]> = vec![];
    let base_pos = base.positions.as_ref().ok_or(MeshError::NoPositions)?;
    let mut vertex_of_slot = vec![usize::MAX; 2 * nf * 3];
    for s in 0..2usize {
        for t in 0..nf {
            for c in 0..3 {
                let root = uf.find(slot(s, t, c));
                let next_id = positions.len();
                let id = *id_of_root.entry(root).or_insert_with(|| {
                    positions.push(base_pos[base.tris[t][c]]);
                    next_id
                });
                vertex_of_slot[slot(s, t, c)] = id;
            }
        }
    }

    let mut tris = Vec::with_capacity(2 * nf);
    let mut tri_lengths = Vec::with_capacity(2 * nf);
    for s in 0..2usize {
        for t in 0..nf {
            tris.push([
                vertex_of_slot[slot(s, t, 0)],
                vertex_of_slot[slot(s, t, 1)],
                vertex_of_slot[slot(s, t, 2)],
            ]);
            tri_lengths.push(base.tri_lengths[t]);
        }
    }

    // Deck transformation: swap the sheets.
    let mut deck = vec![usize::MAX; positions.len()];
    for s in 0..2usize {
        for t in 0..nf {
            for c in 0..3 {
                deck[vertex_of_slot[slot(s, t, c)]] = vertex_of_slot[slot(1 - s, t, c)];
            }
        }
    }

    // Cone points: branch vertices carry both umbrellas.
    let mut cone_points = vec![];
    let branch_set: HashSet<usize> = branch_vertices.iter().copied().collect();
    let mut seen = HashSet::new();
    for (ti, t) in base.tris.iter().enumerate() {
        for c in 0..3 {
            if branch_set.contains(&t[c]) {
                let id = vertex_of_slot[slot(0, ti, c)];
                let id1 = vertex_of_slot[slot(1, ti, c)];
                if id != id1 {
                    return Err(MeshError::InvalidSpec(
                        "branch vertex does not merge across sheets; slits are broken".into(),
                    ));
                }
                if seen.insert(id) {
                    cone_points.push(ConePoint { vertex: id, angle_over_2pi: 2 });
                }
            }
        }
    }
    cone_points.sort_by_key(|c| c.vertex);

    let projection = Some(positions.clone());
    let mut mesh = Mesh::build(Some(positions), tris, tri_lengths, AngleGeometry::SphericalBase)?;
    mesh.cone_points = cone_points;
    mesh.projection = projection;
    mesh.projection_degree = Some(2);
    mesh.deck = Some(deck);
    Ok(mesh)
}

/// Shortest edge path from `from` to `to` biased toward the great-circle arc
/// between their positions, avoiding `forbidden` vertices.
fn arc_path(
    positions: &[[f64; 3]],
    nbrs: &[Vec<usize>],
    from: usize,
    to: usize,
    forbidden: &HashSet<usize>,
) -> Option<Vec<usize>> {
    let a = positions[from];
    let b = positions[to];
    let mut dist = vec![f64::INFINITY; positions.len()];
    let mut prev = vec![usize::MAX; positions.len()];
    let mut heap: BinaryHeap<HeapItem> = BinaryHeap::new();
    dist[from] = 0.0;
    heap.push(HeapItem { cost: 0.0, vertex: from });
    while let Some(HeapItem { cost, vertex }) = heap.pop() {
        if vertex == to {
            break;
        }
        if cost > dist[vertex] {
            continue;
        }
        for &w in &nbrs[vertex] {
            if forbidden.contains(&w) {
                continue;
            }
            let step = super::dist(&positions[vertex], &positions[w])
                * (1.0 + 6.0 * arc_deviation(&positions[w], &a, &b));
            let nd = cost + step;
            if nd < dist[w] {
                dist[w] = nd;
                prev[w] = vertex;
                heap.push(HeapItem { cost: nd, vertex: w });
            }
        }
    }
    if !dist[to].is_finite() {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Angular distance from p to the great-circle arc from a to b.
fn arc_deviation(p: &[f64; 3], a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let cn = (cross[0].powi(2) + cross[1].powi(2) + cross[2].powi(2)).sqrt();
    if cn < 1e-12 {
        // antipodal or identical endpoints: any meridian works
        return 0.0;
    }
    let n = [cross[0] / cn, cross[1] / cn, cross[2] / cn];
    let along = p[0] * n[0] + p[1] * n[1] + p[2] * n[2];
    let off_plane = along.clamp(-1.0, 1.0).asin().abs();
    // penalize leaving the segment's lune
    let pa = p[0] * a[0] + p[1] * a[1] + p[2] * a[2];
    let pb = p[0] * b[0] + p[1] * b[1] + p[2] * b[2];
    let ab = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let outside = if pa < ab && pb < ab { 0.5 } else { 0.0 };
    off_plane + outside
}

struct HeapItem {
    cost: f64,
    vertex: usize,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cost == other.cost
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // min-heap by cost
        other.cost.partial_cmp(&self.cost).unwrap_or(std::cmp::Ordering::Equal)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Octahedron vertices: the genus-2 configuration.
pub fn octahedral_branch_points() -> BranchedCoverSpec {
    BranchedCoverSpec {
        branch_points: vec![
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ],
        pairing: vec![(0, 1), (2, 3), (4, 5)],
        refinement: 5,
    }
}

/// Cube vertices: a genus-3 configuration.
pub fn cube_branch_points() -> BranchedCoverSpec {
    let s = 1.0 / 3f64.sqrt();
    BranchedCoverSpec {
        branch_points: vec![
            [s, s, s],
            [s, s, -s],
            [s, -s, s],
            [s, -s, -s],
            [-s, s, s],
            [-s, s, -s],
            [-s, -s, s],
            [-s, -s, -s],
        ],
        pairing: vec![(0, 1), (2, 3), (4, 5), (6, 7)],
        refinement: 5,
    }
}

/// Four points: the torus configuration.
pub fn square_branch_points() -> BranchedCoverSpec {
    BranchedCoverSpec {
        branch_points: vec![
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
        ],
        pairing: vec![(0, 1), (2, 3)],
        refinement: 4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_branch_points_give_a_torus() {
        let mut spec = square_branch_points();
        spec.refinement = 3;
        let m = build_hyperelliptic_cover(&spec).unwrap();
        assert_eq!(m.euler_characteristic(), 0);
        assert_eq!(m.genus(), 1);
        assert_eq!(m.cone_points.len(), 4);
    }

    #[test]
    fn octahedral_cover_is_genus_two() {
        let mut spec = octahedral_branch_points();
        spec.refinement = 3;
        let (m, info) = build_hyperelliptic_cover_with_info(&spec).unwrap();
        assert_eq!(m.euler_characteristic(), -2);
        assert_eq!(m.genus(), 2);
        assert_eq!(m.cone_points.len(), 6);
        for c in &m.cone_points {
            assert_eq!(c.angle_over_2pi, 2);
        }
        // snapped octahedron vertices sit close to icosphere vertices
        for d in info.snap_distances {
            assert!(d < 0.2);
        }
        // total area is twice the base sphere
        let base = build_sphere(3).unwrap();
        assert!((m.total_area() - 2.0 * base.total_area()).abs() < 1e-9);
    }

    #[test]
    fn cube_cover_is_genus_three() {
        let mut spec = cube_branch_points();
        spec.refinement = 3;
        let m = build_hyperelliptic_cover(&spec).unwrap();
        assert_eq!(m.euler_characteristic(), -4);
        assert_eq!(m.genus(), 3);
        assert_eq!(m.cone_points.len(), 8);
    }

    #[test]
    fn deck_involution_is_projection_preserving_isometry() {
        let mut spec = octahedral_branch_points();
        spec.refinement = 2;
        let m = build_hyperelliptic_cover(&spec).unwrap();
        let deck = m.deck.as_ref().unwrap();
        let proj = m.projection.as_ref().unwrap();
        // involution
        for v in 0..m.num_vertices() {
            assert_eq!(deck[deck[v]], v);
        }
        // commutes with the projection
        for v in 0..m.num_vertices() {
            assert_eq!(proj[deck[v]], proj[v]);
        }
        // fixes exactly the cone points
        let fixed: Vec<usize> = (0..m.num_vertices()).filter(|&v| deck[v] == v).collect();
        let cones: Vec<usize> = m.cone_points.iter().map(|c| c.vertex).collect();
        assert_eq!(fixed, cones);
    }

    #[test]
    fn cone_angles_double_the_sphere_tiling() {
        let mut spec = octahedral_branch_points();
        spec.refinement = 2;
        let m = build_hyperelliptic_cover(&spec).unwrap();
        let sums = m.vertex_angle_sums();
        let two_pi = 2.0 * std::f64::consts::PI;
        for v in 0..m.num_vertices() {
            let expected = m.cone_multiple(v) as f64 * two_pi;
            assert!(
                (sums[v] - expected).abs() < 1e-6,
                "vertex {v}: angle {} vs {}",
                sums[v],
                expected
            );
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut spec = octahedral_branch_points();
        spec.pairing = vec![(0, 1), (2, 3), (4, 4)];
        assert!(build_hyperelliptic_cover(&spec).is_err());
        let mut spec = octahedral_branch_points();
        spec.branch_points.pop();
        spec.pairing.pop();
        assert!(build_hyperelliptic_cover(&spec).is_err());
        // branch points closer than resolution
        let spec = BranchedCoverSpec {
            branch_points: vec![
                [1.0, 0.0, 0.0],
                [1.0, 1e-9, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, -1.0, 0.0],
            ],
            pairing: vec![(0, 1), (2, 3)],
            refinement: 2,
        };
        assert!(matches!(
            build_hyperelliptic_cover(&spec),
            Err(MeshError::BranchTooClose(_))
        ));
    }
}
