//! Alternating Ascent: a metaheuristic for binary maximization that
//! alternates improving climbs with guided Post-Ascent exploration, steered by
//! an exponential-extrapolation memory of recent local optima.
//!
//! Indices are 0-based throughout the API; the instance file format and CSV
//! traces use 1-based indices.

pub mod choice;
pub mod double_pass;
pub mod engine;
pub mod generate;
pub mod io;
pub mod memory;
pub mod myopic;
pub mod oracle;
pub mod qubo;
pub mod replay;
pub mod report;
pub mod scaling;
pub mod tabu;

pub use choice::{ChoiceConfig, ChoiceRule};
pub use double_pass::{run_double_pass, CutoffVersion};
pub use engine::{run, AAConfig, Engine, McConfig, Selection, TabuRelease};
pub use memory::{Arithmetic, EEConfig, EEMemory};
pub use myopic::McSchedule;
pub use qubo::{EvaluationProvider, QuboInstance, QuboProvider};
pub use report::RunResult;
pub use tabu::{run_tabu, TabuConfig};
