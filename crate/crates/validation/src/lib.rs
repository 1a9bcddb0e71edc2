//! Independent oracles and run audits for the alternating-ascent solver, and
//! the acceptance checks built from them.

pub mod audit;
pub mod criteria;
pub mod oracle;

pub use audit::{audit, audit_tabu_rows, Audit};
pub use criteria::Outcome;
