//! ASCII OFF meshes with a JSON sidecar for cone points and projections.

use super::{AngleGeometry, ConePoint, Mesh, MeshError};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MeshSidecar {
    #[serde(default)]
    pub cone_points: Vec<ConePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection_degree: Option<u32>,
    /// "spherical" meshes audit corner angles with great-circle arcs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_geometry: Option<String>,
}

pub fn write_off(mesh: &Mesh, path: &Path) -> Result<(), MeshError> {
    let positions = mesh.positions.as_ref().ok_or(MeshError::NoPositions)?;
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str(&format!(
        "{} {} {}\n",
        positions.len(),
        mesh.tris.len(),
        mesh.num_edges()
    ));
    for p in positions {
        out.push_str(&format!("{:.17} {:.17} {:.17}\n", p[0], p[1], p[2]));
    }
    for t in &mesh.tris {
        out.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    std::fs::write(path, out).map_err(|e| MeshError::Io(e.to_string()))?;

    let sidecar = MeshSidecar {
        cone_points: mesh.cone_points.clone(),
        projection: mesh.projection.clone(),
        projection_degree: mesh.projection_degree,
        angle_geometry: Some(match mesh.angle_geometry {
            AngleGeometry::Euclidean => "euclidean".into(),
            AngleGeometry::SphericalBase => "spherical".into(),
        }),
    };
    let sidecar_path = sidecar_path(path);
    std::fs::write(
        sidecar_path,
        serde_json::to_string_pretty(&sidecar).expect("sidecar serializes"),
    )
    .map_err(|e| MeshError::Io(e.to_string()))
}

pub fn read_off(path: &Path) -> Result<Mesh, MeshError> {
    let text = std::fs::read_to_string(path).map_err(|e| MeshError::Io(e.to_string()))?;
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .peekable();
    let header = tokens.next().ok_or_else(|| MeshError::Parse("empty OFF".into()))?;
    if header != "OFF" {
        return Err(MeshError::Parse("missing OFF header".into()));
    }
    let mut next_usize = |what: &str| -> Result<usize, MeshError> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| MeshError::Parse(format!("bad {what}")))
    };
    let nv = next_usize("vertex count")?;
    let nf = next_usize("face count")?;
    let _ne = next_usize("edge count")?;
    let mut rest: Vec<&str> = tokens.collect();
    rest.reverse();
    let mut next_f64 = |what: &str| -> Result<f64, MeshError> {
        rest.pop()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| MeshError::Parse(format!("bad {what}")))
    };
    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        positions.push([next_f64("x")?, next_f64("y")?, next_f64("z")?]);
    }
    let mut tris = Vec::with_capacity(nf);
    for _ in 0..nf {
        let k = next_f64("face arity")? as usize;
        if k != 3 {
            return Err(MeshError::Parse("only triangle faces supported".into()));
        }
        tris.push([
            next_f64("i")? as usize,
            next_f64("j")? as usize,
            next_f64("k")? as usize,
        ]);
    }

    let sidecar: MeshSidecar = match std::fs::read_to_string(sidecar_path(path)) {
        Ok(s) => serde_json::from_str(&s).map_err(|e| MeshError::Parse(e.to_string()))?,
        Err(_) => MeshSidecar::default(),
    };
    let geometry = match sidecar.angle_geometry.as_deref() {
        Some("spherical") => AngleGeometry::SphericalBase,
        _ => AngleGeometry::Euclidean,
    };
    let mut mesh = Mesh::from_positions(positions, tris, geometry)?;
    mesh.cone_points = sidecar.cone_points;
    mesh.projection = sidecar.projection;
    mesh.projection_degree = sidecar.projection_degree;
    Ok(mesh)
}

pub fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".json");
    std::path::PathBuf::from(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::sphere::build_sphere;

    #[test]
    fn off_roundtrip() {
        let dir = std::env::temp_dir().join("spectralab-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sphere.off");
        let mesh = build_sphere(2).unwrap();
        write_off(&mesh, &path).unwrap();
        let back = read_off(&path).unwrap();
        assert_eq!(back.num_vertices(), mesh.num_vertices());
        assert_eq!(back.num_triangles(), mesh.num_triangles());
        assert_eq!(back.euler_characteristic(), 2);
        assert_eq!(back.projection_degree, Some(1));
        assert!((back.total_area() - mesh.total_area()).abs() < 1e-12);
    }
}
