//! Common JSON report emitted by every CLI scenario.

use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub scenario: String,
    pub version: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub input_hashes: Vec<InputHash>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counting: Option<Counting>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nullity: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counting {
    pub lambda: f64,
    #[serde(rename = "N")]
    pub n: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub fnv1a: String,
}

impl Report {
    pub fn new(scenario: &str) -> Report {
        Report { scenario: scenario.into(), version: VERSION.into(), ..Default::default() }
    }

    pub fn hash_input(&mut self, path: &str, bytes: &[u8]) {
        self.input_hashes.push(InputHash {
            path: path.into(),
            fnv1a: format!("{:016x}", fnv1a64(bytes)),
        });
    }
}

/// FNV-1a, enough to fingerprint inputs in reports.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
