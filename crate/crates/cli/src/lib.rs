//! Experiment harness around `rls-core`: repeated seeded runs over DIMACS
//! instances, aggregate statistics, variant comparisons, and the JSON/CSV
//! artifacts they produce.

pub mod experiment;
pub mod records;

pub use experiment::{
    compare_variants, load_instance, run_experiment, AggregateStats, ExperimentSpec, HarnessError,
    Mode,
};
pub use records::{RunRecord, PROFILE_HEADER, SCHEMA_VERSION};
