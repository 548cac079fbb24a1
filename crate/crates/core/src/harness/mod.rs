//! Instance files, random generation, experiment runs and invariant suites.

pub mod checks;
pub mod experiment;
pub mod generate;
pub mod instance;

pub use experiment::{
    instance_bound, instance_opt, instance_opt_solution, run_experiment, Algo, CheckResult,
    RunConfig, TrialReport,
};
pub use generate::{generate_random_instance, FatKind, GenSpec};
pub use instance::{Header, InstanceFile, ObjectClass, ObjectRecord, Variant};
