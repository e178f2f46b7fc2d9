//! Generalized performance profiles for solver benchmarking.
//!
//! A benchmark results file lists, for each solver, one or more additive
//! metric *components* per instance. The profile of a solver `s` is the
//! cumulative fraction of instances whose ratio
//!
//! ```text
//! metric(s, i) / min_{b in B} metric(b, i)
//! ```
//!
//! is at most `τ`, where `B` is a chosen non-empty set of baseline solvers.
//! `B = all solvers` gives the classical Dolan–Moré profile; a single
//! baseline compares every solver against one reference.
//!
//! What-if analysis multiplies individual components by a scale factor
//! before the totals are formed, so the effect of (say) a propagator that
//! costs nothing can be read off the profiles before anyone builds it.
//!
//! ```
//! use perfprof::{parse_dataset, analyze, AnalysisConfig};
//!
//! let doc = br#"{
//!   "metric": "time", "labels": [], "instances": [[], []],
//!   "data": { "A": { "total": [1, 4] }, "B": { "total": [2, 2] } }
//! }"#;
//! let dataset = parse_dataset(doc).unwrap();
//! let config = AnalysisConfig::<f64>::new(&dataset);
//! let profiles = analyze(&dataset, &config).unwrap();
//! assert_eq!(profiles.max_ratio(), Some(2.0));
//! assert_eq!(profiles.curve("A").unwrap().evaluate(1.0), 0.5);
//! ```
//!
//! The engine is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the common `f64` instantiation.

pub mod config;
pub mod curve;
pub mod engine;
pub mod export;
mod json;
pub mod model;
pub mod parse;
pub mod render;
pub mod scalar;
pub mod schema;

pub use config::{AnalysisConfig, ConfigError, ConfigRequest, XScale};
pub use curve::StepCurve;
pub use engine::{
    analyze, build_effective_matrix, compute_profiles, filter_by_labels, total_metric,
    EffectiveMatrix, ProfileSet,
};
pub use export::CurveDocument;
pub use model::{Dataset, Issue, ValidationReport};
pub use parse::{parse_dataset, parse_dataset_value, parse_dataset_with_report};
pub use render::{render_html, render_svg, PlotSpec, RenderError};
pub use scalar::Scalar;
pub use schema::emit_schema;

pub type DatasetF64 = Dataset<f64>;
pub type DatasetF32 = Dataset<f32>;
pub type AnalysisConfigF64 = AnalysisConfig<f64>;
pub type AnalysisConfigF32 = AnalysisConfig<f32>;
pub type EffectiveMatrixF64 = EffectiveMatrix<f64>;
pub type EffectiveMatrixF32 = EffectiveMatrix<f32>;
pub type ProfileSetF64 = ProfileSet<f64>;
pub type ProfileSetF32 = ProfileSet<f32>;
pub type StepCurveF64 = StepCurve<f64>;
pub type StepCurveF32 = StepCurve<f32>;
