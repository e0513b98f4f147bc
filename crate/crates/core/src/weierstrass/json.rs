//! JSON wire format for Weierstrass data and integration loops.

use super::quad::Segment;
use super::{CurveData, PlanarData, WeierstrassData, WeierstrassError};
use crate::curve::json::{CurveSpec, FunctionSpec, RatFnSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainSpec {
    Named(String),
    Torus { torus: TorusSpec },
    Curve { curve: CurveSpec },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusSpec {
    pub tau: [f64; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeierstrassSpec {
    pub domain: DomainSpec,
    /// Rational function of z (planar domains) or a + b y (curve domains).
    pub phi: FunctionSpec,
    /// h(z) for omega = unit * h dz, or the factor f for omega = f dx / y.
    pub omega: FunctionSpec,
    /// Constant complex unit multiplying omega on planar domains.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<[f64; 2]>,
    #[serde(default)]
    pub punctures: Vec<[f64; 2]>,
}

impl WeierstrassSpec {
    pub fn build(&self) -> Result<WeierstrassData, WeierstrassError> {
        match &self.domain {
            DomainSpec::Named(name) if name == "plane" => {
                Ok(WeierstrassData::Planar(self.planar()?))
            }
            DomainSpec::Named(other) => Err(WeierstrassError::Curve(
                crate::curve::CurveError::Invalid(format!("unknown domain '{other}'")),
            )),
            DomainSpec::Torus { torus } => {
                let tau = Complex64::new(torus.tau[0], torus.tau[1]);
                Ok(WeierstrassData::Planar(self.planar()?.on_torus(tau)))
            }
            DomainSpec::Curve { curve } => {
                let c = curve.build()?;
                let phi = self.phi.build()?;
                let omega = self.omega.build()?;
                Ok(WeierstrassData::OnCurve(CurveData::new(c, phi, omega)?))
            }
        }
    }

    fn planar(&self) -> Result<PlanarData, WeierstrassError> {
        let reject_y = |f: &FunctionSpec, what: &str| -> Result<RatFnSpec, WeierstrassError> {
            if f.b.is_some() {
                return Err(WeierstrassError::Curve(crate::curve::CurveError::Invalid(
                    format!("{what} must be a rational function of z on planar domains"),
                )));
            }
            Ok(f.a.clone())
        };
        let phi = reject_y(&self.phi, "phi")?.build()?;
        let h = reject_y(&self.omega, "omega")?.build()?;
        let unit = self
            .unit
            .map(|u| Complex64::new(u[0], u[1]))
            .unwrap_or(Complex64::new(1.0, 0.0));
        let punctures = self
            .punctures
            .iter()
            .map(|p| Complex64::new(p[0], p[1]))
            .collect();
        PlanarData::with_unit(phi, h, unit, punctures)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LoopSpec {
    Circle { center: [f64; 2], radius: f64 },
    Polyline { points: Vec<[f64; 2]> },
}

impl LoopSpec {
    pub fn build(&self) -> Vec<Segment> {
        match self {
            LoopSpec::Circle { center, radius } => {
                super::quad::full_circle(Complex64::new(center[0], center[1]), *radius)
            }
            LoopSpec::Polyline { points } => {
                let pts: Vec<Complex64> =
                    points.iter().map(|p| Complex64::new(p[0], p[1])).collect();
                super::quad::polyline(&pts)
            }
        }
    }
}
