//! Generalized evolutionary metaheuristic (GEM).
//!
//! A single population optimizer whose update is controlled by eight
//! coefficients. Fixing those coefficients, or giving them schedules and
//! random laws, recovers the moves of many nature-inspired algorithms; the
//! [`presets`] module registers 22 of them.
//!
//! The crate also ships the problems used to exercise the optimizer:
//! ten analytic [`benchmarks`], four constrained design problems in
//! [`engineering`] and a step-response parameter fit in [`ode`]. The
//! [`experiment`] module repeats seeded runs and writes summary files.
//!
//! ```
//! use gem_core::{run_gem, BenchmarkFunction, BenchmarkId, EngineConfig, PresetSpec, RngStream};
//!
//! let sphere = BenchmarkFunction::new(BenchmarkId::Sphere, 3).unwrap();
//! let mut rng = RngStream::new(7);
//! let out = run_gem(&sphere, &PresetSpec::standard(), &EngineConfig::new(10, 200), &mut rng).unwrap();
//! assert!(out.best_value < 1e-6);
//! ```

pub mod benchmarks;
pub mod engine;
pub mod engineering;
pub mod error;
pub mod experiment;
pub mod ode;
pub mod presets;
pub mod problem;
pub mod problems;
pub mod rng;

pub use benchmarks::{evaluate_benchmark, known_optimum, BenchmarkFunction, BenchmarkId};
pub use engine::{
    centroid_top_m, clamp_to_bounds, greedy_select, initialize_population, position_update,
    run_gem, run_gem_observed, update_global_best, velocity_update, Agent, EngineConfig,
    GemParams, HMode, RunOutcome, SwarmState, ZetaLaw,
};
pub use engineering::{engineering_problem, ConstrainedProblem, LatticeConstraint};
pub use error::{GemError, Result};
pub use experiment::{
    export_results, reproduce_tables, run_experiment, summarize, ExperimentConfig,
    ExperimentReport, RunRecord, SummaryStats,
};
pub use ode::{analytic_step_response, simulate_step_response, sse_objective, OdeFit, OdeParams, VibrationData};
pub use presets::{find_preset, list_presets, registry, resolve_params, Fidelity, ParamValue, PresetSpec};
pub use problem::{Bounds, Problem};
pub use problems::{build_problem, list_problems, NamedProblem};
pub use rng::{derive_seed, LevySampler, RngStream};
