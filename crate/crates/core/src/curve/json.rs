//! JSON wire formats for curves, divisors and meromorphic functions.

use super::divisor::Divisor;
use super::function::MeromorphicFunction;
use super::place::Place;
use super::poly::{fmt_q, parse_q, rational_sqrt, Poly};
use super::ratfn::RatFn;
use super::{CurveError, HyperellipticCurve, Model};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveSpec {
    pub model: String,
    /// Rational coefficients as strings, ascending degree.
    pub coeffs: Vec<String>,
}

impl CurveSpec {
    pub fn build(&self) -> Result<HyperellipticCurve, CurveError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_q(s).ok_or_else(|| CurveError::Invalid(format!("bad rational '{s}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        let curve = HyperellipticCurve::new(Poly::new(coeffs))?;
        let expected = match curve.model() {
            Model::Odd => "hyperelliptic-odd",
            Model::Even => "hyperelliptic-even",
        };
        if self.model != expected {
            return Err(CurveError::Invalid(format!(
                "model '{}' does not match polynomial parity (expected '{expected}')",
                self.model
            )));
        }
        Ok(curve)
    }

    pub fn of(curve: &HyperellipticCurve) -> CurveSpec {
        CurveSpec {
            model: match curve.model() {
                Model::Odd => "hyperelliptic-odd".into(),
                Model::Even => "hyperelliptic-even".into(),
            },
            coeffs: curve.p().coeffs().iter().map(fmt_q).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlaceSpec {
    /// A rational x-value, or "inf0" / "inf1".
    pub x: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sheet: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorEntrySpec {
    pub place: PlaceSpec,
    pub mult: i64,
}

pub fn parse_divisor(
    entries: &[DivisorEntrySpec],
    curve: &HyperellipticCurve,
) -> Result<Divisor, CurveError> {
    let mut d = Divisor::zero();
    for e in entries {
        let place = parse_place(&e.place, curve)?;
        d.add_place(place, e.mult);
    }
    curve.normalize_divisor(&d)
}

fn parse_place(spec: &PlaceSpec, curve: &HyperellipticCurve) -> Result<Place, CurveError> {
    if spec.x == "inf0" || spec.x == "inf1" {
        let idx = if spec.x == "inf0" { 0 } else { 1 };
        return match curve.model() {
            Model::Odd if idx == 0 => Ok(Place::Infinity(0)),
            Model::Odd => Err(CurveError::InvalidPlace(
                "odd models have a single infinite place inf0".into(),
            )),
            Model::Even => {
                if curve.lc_sqrt_ref().is_some() {
                    Ok(Place::Infinity(idx))
                } else if idx == 0 {
                    Ok(Place::InfinitePair)
                } else {
                    Err(CurveError::InvalidPlace(
                        "infinite sheets are conjugate here; use inf0 for the pair".into(),
                    ))
                }
            }
        };
    }
    let x0 = parse_q(&spec.x)
        .ok_or_else(|| CurveError::InvalidPlace(format!("bad x-value '{}'", spec.x)))?;
    let sheet = spec.sheet.clone().unwrap_or(serde_json::Value::from(1));
    if sheet == "branch" {
        if !curve.p().eval(&x0).is_zero() {
            return Err(CurveError::InvalidPlace(format!(
                "x = {} is not a branch point",
                fmt_q(&x0)
            )));
        }
        return Ok(Place::Branch(Poly::x_minus(&x0)));
    }
    if sheet == "pair" {
        if curve.p().eval(&x0).is_zero() {
            return Err(CurveError::InvalidPlace("branch points have one sheet".into()));
        }
        return Ok(Place::SheetPair(Poly::x_minus(&x0)));
    }
    let sign = match sheet.as_i64() {
        Some(1) => 1i8,
        Some(-1) => -1i8,
        _ => {
            return Err(CurveError::InvalidPlace(
                "sheet must be 1, -1, \"branch\" or \"pair\"".into(),
            ))
        }
    };
    let val = curve.p().eval(&x0);
    if val.is_zero() {
        return Err(CurveError::InvalidPlace(format!(
            "x = {} is a branch point; use sheet \"branch\"",
            fmt_q(&x0)
        )));
    }
    match rational_sqrt(&val) {
        Some(s) if !s.is_zero() => Ok(Place::RationalSheet { x0, sign }),
        _ => Err(CurveError::InvalidPlace(format!(
            "p({}) is not a positive rational square; use sheet \"pair\"",
            fmt_q(&x0)
        ))),
    }
}

pub fn divisor_to_spec(d: &Divisor) -> Vec<serde_json::Value> {
    d.entries()
        .map(|(p, m)| {
            let place = match p {
                Place::Infinity(i) => serde_json::json!({"x": format!("inf{i}")}),
                Place::InfinitePair => serde_json::json!({"x": "inf0", "sheet": "pair"}),
                Place::RationalSheet { x0, sign } => {
                    serde_json::json!({"x": fmt_q(x0), "sheet": *sign as i64})
                }
                Place::Branch(pi) if pi.degree() == 1 => {
                    serde_json::json!({"x": fmt_q(&(-pi.coeff(0))), "sheet": "branch"})
                }
                Place::Branch(pi) => {
                    serde_json::json!({"cluster": format!("{:?}", pi), "sheet": "branch"})
                }
                Place::SheetPair(pi) if pi.degree() == 1 => {
                    serde_json::json!({"x": fmt_q(&(-pi.coeff(0))), "sheet": "pair"})
                }
                Place::SheetPair(pi) => {
                    serde_json::json!({"cluster": format!("{:?}", pi), "sheet": "pair"})
                }
                Place::SheetSum(pi) => {
                    serde_json::json!({"cluster": format!("{:?}", pi), "sheet": "sum"})
                }
            };
            serde_json::json!({"place": place, "mult": m, "degree": p.degree() * m})
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatFnSpec {
    /// Numerator coefficients, ascending degree, rational strings.
    pub num: Vec<String>,
    #[serde(default)]
    pub den: Vec<String>,
}

impl RatFnSpec {
    pub fn build(&self) -> Result<RatFn, CurveError> {
        let parse = |v: &[String]| -> Result<Poly, CurveError> {
            let coeffs = v
                .iter()
                .map(|s| parse_q(s).ok_or_else(|| CurveError::Invalid(format!("bad rational '{s}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Poly::new(coeffs))
        };
        let num = parse(&self.num)?;
        let den = if self.den.is_empty() {
            Poly::one()
        } else {
            parse(&self.den)?
        };
        if den.is_zero() {
            return Err(CurveError::Invalid("zero denominator".into()));
        }
        Ok(RatFn::new(num, den))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub a: RatFnSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<RatFnSpec>,
}

impl FunctionSpec {
    pub fn build(&self) -> Result<MeromorphicFunction, CurveError> {
        let a = self.a.build()?;
        let b = match &self.b {
            Some(s) => s.build()?,
            None => RatFn::zero(),
        };
        Ok(MeromorphicFunction::new(a, b))
    }
}
