//! Experiment harness for indicator-driven evolutionary diversity
//! optimization: run configuration, repeated seeded runs with artifact
//! emission, cross-indicator evaluation, and summary statistics.

pub mod config;
pub mod crosseval;
pub mod experiment;
pub mod stats;

pub use config::{DomainKind, Experiment, RunConfig};
pub use crosseval::{cross_evaluate, read_features_csv, CrossEvaluator, CrossScores};
pub use experiment::{run_experiment, RunRecord, Summary};
pub use stats::{load_summaries, stats_aggregate, write_stats_csv};
