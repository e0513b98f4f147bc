//! Triangulated closed surfaces: spheres, flat tori and glued branched
//! double covers, with conformal densities carrying conical singularities.

pub mod cover;
pub mod density;
pub mod io;
pub mod sphere;
pub mod torus;

pub use cover::BranchedCoverSpec;
pub use density::ConformalDensity;

use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("mesh is not a closed surface: edge ({0}, {1}) borders {2} triangles")]
    NotClosed(usize, usize, usize),
    #[error("inconsistent triangle orientation across edge ({0}, {1})")]
    Orientation(usize, usize),
    #[error("degenerate triangle {0}")]
    DegenerateTriangle(usize),
    #[error("mesh carries no vertex positions")]
    NoPositions,
    #[error("mesh carries no recorded projection")]
    NoProjection,
    #[error("branch points closer than mesh resolution (snapped to shared vertex {0})")]
    BranchTooClose(usize),
    #[error("slit paths intersect at vertex {0}")]
    SlitsIntersect(usize),
    #[error("invalid cover spec: {0}")]
    InvalidSpec(String),
    #[error("io: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ConePoint {
    pub vertex: usize,
    pub angle_over_2pi: u32,
}

/// How corner angles are measured for the angle audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleGeometry {
    /// Flat triangles described by their edge lengths.
    Euclidean,
    /// Vertices on the unit sphere; angles between great-circle arcs.
    SphericalBase,
}

/// A closed oriented triangulated surface. Triangle shapes (edge lengths) are
/// the geometric source of truth; positions are kept when the construction
/// provides them.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub positions: Option<Vec<[f64; 3]>>,
    pub tris: Vec<[usize; 3]>,
    /// Per-triangle edge lengths (l01, l12, l20).
    pub tri_lengths: Vec<[f64; 3]>,
    pub cone_points: Vec<ConePoint>,
    /// Recorded sphere-valued projection per vertex, when the mesh arises
    /// from a map to the unit sphere.
    pub projection: Option<Vec<[f64; 3]>>,
    pub projection_degree: Option<u32>,
    pub angle_geometry: AngleGeometry,
    /// Deck transformation of a glued double cover (vertex permutation).
    pub deck: Option<Vec<usize>>,
    num_vertices: usize,
    num_edges: usize,
}

impl Mesh {
    /// Builds from positions; edge lengths are chordal distances.
    pub fn from_positions(
        positions: Vec<[f64; 3]>,
        tris: Vec<[usize; 3]>,
        angle_geometry: AngleGeometry,
    ) -> Result<Mesh, MeshError> {
        let tri_lengths = tris
            .iter()
            .map(|t| {
                [
                    dist(&positions[t[0]], &positions[t[1]]),
                    dist(&positions[t[1]], &positions[t[2]]),
                    dist(&positions[t[2]], &positions[t[0]]),
                ]
            })
            .collect();
        Mesh::build(Some(positions), tris, tri_lengths, angle_geometry)
    }

    pub fn build(
        positions: Option<Vec<[f64; 3]>>,
        tris: Vec<[usize; 3]>,
        tri_lengths: Vec<[f64; 3]>,
        angle_geometry: AngleGeometry,
    ) -> Result<Mesh, MeshError> {
        let num_vertices = match &positions {
            Some(p) => p.len(),
            None => tris.iter().flatten().copied().max().map_or(0, |m| m + 1),
        };
        let mut mesh = Mesh {
            positions,
            tris,
            tri_lengths,
            cone_points: vec![],
            projection: None,
            projection_degree: None,
            angle_geometry,
            deck: None,
            num_vertices,
            num_edges: 0,
        };
        mesh.validate()?;
        Ok(mesh)
    }

    /// Checks the closed-surface and orientation invariants and caches the
    /// edge count.
    pub fn validate(&mut self) -> Result<(), MeshError> {
        let mut edges: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for t in &self.tris {
            for e in 0..3 {
                let a = t[e];
                let b = t[(e + 1) % 3];
                let key = (a.min(b), a.max(b));
                let entry = edges.entry(key).or_insert((0, 0));
                entry.0 += 1;
                // count of "forward" traversals a < b for orientation check
                if a < b {
                    entry.1 += 1;
                }
            }
        }
        for (&(a, b), &(count, forward)) in &edges {
            if count != 2 {
                return Err(MeshError::NotClosed(a, b, count));
            }
            if forward != 1 {
                return Err(MeshError::Orientation(a, b));
            }
        }
        for (i, l) in self.tri_lengths.iter().enumerate() {
            if !(triangle_area(l).is_finite() && triangle_area(l) > 0.0) {
                return Err(MeshError::DegenerateTriangle(i));
            }
        }
        self.num_edges = edges.len();
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_triangles(&self) -> usize {
        self.tris.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.num_edges as i64 + self.tris.len() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        triangle_area(&self.tri_lengths[t])
    }

    pub fn total_area(&self) -> f64 {
        (0..self.tris.len()).map(|t| self.triangle_area(t)).sum()
    }

    /// Cotangents of the three corner angles (at vertices 0, 1, 2 of the
    /// triangle), from the edge lengths.
    pub fn corner_cotangents(&self, t: usize) -> [f64; 3] {
        let [l01, l12, l20] = self.tri_lengths[t];
        let area = self.triangle_area(t);
        let sq = |x: f64| x * x;
        // angle at corner 0 is between edges 01 and 20, opposite edge 12
        [
            (sq(l01) + sq(l20) - sq(l12)) / (4.0 * area),
            (sq(l12) + sq(l01) - sq(l20)) / (4.0 * area),
            (sq(l20) + sq(l12) - sq(l01)) / (4.0 * area),
        ]
    }

    /// Corner angle sums per vertex in the declared angle geometry.
    pub fn vertex_angle_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.num_vertices];
        match self.angle_geometry {
            AngleGeometry::Euclidean => {
                for (ti, t) in self.tris.iter().enumerate() {
                    let [l01, l12, l20] = self.tri_lengths[ti];
                    let angles = euclidean_angles(l01, l12, l20);
                    for c in 0..3 {
                        sums[t[c]] += angles[c];
                    }
                }
            }
            AngleGeometry::SphericalBase => {
                let pos = self.positions.as_ref().expect("spherical audit needs positions");
                for t in &self.tris {
                    for c in 0..3 {
                        let a = pos[t[c]];
                        let b = pos[t[(c + 1) % 3]];
                        let d = pos[t[(c + 2) % 3]];
                        sums[t[c]] += spherical_angle(&a, &b, &d);
                    }
                }
            }
        }
        sums
    }

    pub fn cone_multiple(&self, vertex: usize) -> u32 {
        self.cone_points
            .iter()
            .find(|c| c.vertex == vertex)
            .map_or(1, |c| c.angle_over_2pi)
    }

    /// Unordered edge list.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set: Vec<(usize, usize)> = self
            .tris
            .iter()
            .flat_map(|t| {
                (0..3).map(move |e| {
                    let a = t[e];
                    let b = t[(e + 1) % 3];
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// Vertex adjacency lists.
    pub fn vertex_neighbors(&self) -> Vec<Vec<usize>> {
        let mut nbrs = vec![vec![]; self.num_vertices];
        for (a, b) in self.edges() {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        nbrs
    }
}

pub fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

pub fn triangle_area(l: &[f64; 3]) -> f64 {
    // numerically stable Heron (Kahan ordering)
    let mut s = *l;
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let [a, b, c] = s;
    let t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * t.max(0.0).sqrt()
}

fn euclidean_angles(l01: f64, l12: f64, l20: f64) -> [f64; 3] {
    let clamp = |x: f64| x.clamp(-1.0, 1.0);
    let a0 = clamp((l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01 * l20)).acos();
    let a1 = clamp((l12 * l12 + l01 * l01 - l20 * l20) / (2.0 * l12 * l01)).acos();
    let a2 = std::f64::consts::PI - a0 - a1;
    [a0, a1, a2]
}

/// Angle at `a` of the spherical triangle (a, b, c) on the unit sphere.
fn spherical_angle(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let u = tangent_toward(a, b);
    let v = tangent_toward(a, c);
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let cn = (cross[0].powi(2) + cross[1].powi(2) + cross[2].powi(2)).sqrt();
    cn.atan2(dot)
}

fn tangent_toward(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    let ab = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let mut t = [b[0] - ab * a[0], b[1] - ab * a[1], b[2] - ab * a[2]];
    let n = (t[0].powi(2) + t[1].powi(2) + t[2].powi(2)).sqrt();
    for x in &mut t {
        *x /= n;
    }
    t
}
