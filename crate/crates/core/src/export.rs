//! Machine-readable curve document.
//!
//! ```json
//! {
//!   "metric": "time",
//!   "baselines": ["Car A", "Car B", "Car C"],
//!   "max_ratio": 12.0,
//!   "denominator": 6,
//!   "excluded_no_baseline": 0,
//!   "kept_instances": 6,
//!   "instances": [0, 1, 2, 3, 4, 5],
//!   "curves": { "Car A": { "tau": [1.0, ...], "F": [0.333.., ...] } }
//! }
//! ```
//!
//! `max_ratio` is `null` when no instance survives the filters.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::engine::ProfileSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub metric: String,
    pub baselines: Vec<String>,
    pub max_ratio: Option<f64>,
    pub denominator: usize,
    pub excluded_no_baseline: usize,
    pub kept_instances: usize,
    pub instances: Vec<usize>,
    pub curves: IndexMap<String, CurvePoints>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoints {
    pub tau: Vec<f64>,
    #[serde(rename = "F")]
    pub f: Vec<f64>,
}

impl CurveDocument {
    pub fn from_profiles<T: Scalar>(profiles: &ProfileSet<T>) -> Self {
        let curves = profiles
            .curves()
            .iter()
            .map(|(name, curve)| {
                let tau = curve
                    .breakpoints()
                    .iter()
                    .map(|t| t.to_f64_lossy())
                    .collect();
                let f = curve
                    .counts()
                    .iter()
                    .map(|&c| f64::fraction(c, curve.denominator()))
                    .collect();
                (name.clone(), CurvePoints { tau, f })
            })
            .collect();
        Self {
            metric: profiles.metric_name().to_owned(),
            baselines: profiles.baselines().to_vec(),
            max_ratio: profiles.max_ratio().map(Scalar::to_f64_lossy),
            denominator: profiles.denominator(),
            excluded_no_baseline: profiles.excluded_no_baseline(),
            kept_instances: profiles.kept_instances(),
            instances: profiles.instances().to_vec(),
            curves,
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("curve document serializes");
        s.push('\n');
        s
    }
}
