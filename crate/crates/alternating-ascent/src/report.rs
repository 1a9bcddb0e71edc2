//! Run results and per-iteration trace rows shared by all algorithms.

use std::io::Write;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    Ascent,
    PostAscent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseEvent {
    None,
    AscentLaunched,
    ConditionalLocalOpt,
    TrueLocalOpt,
    TabuFreeSolution,
}

impl PhaseEvent {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseEvent::None => "none",
            PhaseEvent::AscentLaunched => "ascent-launched",
            PhaseEvent::ConditionalLocalOpt => "conditional-local-opt",
            PhaseEvent::TrueLocalOpt => "true-local-opt",
            PhaseEvent::TabuFreeSolution => "tabu-free-solution",
        }
    }
}

/// Why a variable was flipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MovePath {
    Aspiration,
    S1,
    Condition1,
    Condition2,
    /// Scheduled reversal by a Myopic Correction drop step.
    Drop,
    /// Flip made while tabu restrictions are suspended (tabu-free ascent).
    Suspended,
    /// Plain best-move choice of the tabu baseline.
    Best,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iter: u64,
    pub phase: Phase,
    /// Flipped variable, `None` when the iteration made no flip.
    pub k: Option<usize>,
    pub eval_k: Option<i64>,
    pub xo: i64,
    pub xo_star: i64,
    pub event: PhaseEvent,
    pub trigger_fired: bool,
    pub path: Option<MovePath>,
    pub was_tabu: bool,
}

pub const TRACE_HEADER: &str = "iter,phase,k,eval_k,xo,xo_star,status_event,trigger_fired";

/// Writes trace rows as CSV with 1-based `k` (0 = no flip).
pub fn write_trace_csv<W: Write>(mut w: W, rows: &[TraceRow]) -> std::io::Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for r in rows {
        let phase = match r.phase {
            Phase::Ascent => "ascent",
            Phase::PostAscent => "post-ascent",
        };
        let event = match (r.event, r.path) {
            (PhaseEvent::None, Some(MovePath::Drop)) => "mc-drop",
            (e, _) => e.as_str(),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.iter,
            phase,
            r.k.map_or(0, |k| k + 1),
            r.eval_k.unwrap_or(0),
            r.xo,
            r.xo_star,
            event,
            r.trigger_fired
        )?;
    }
    Ok(())
}

/// Double-Pass per-iteration statistics for the governing candidate class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassRecord {
    pub iter: u64,
    pub count: usize,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    pub cutoff: f64,
    pub list_len: usize,
}

pub const PASS_HEADER: &str = "iter,count,min,mean,max,cutoff,list_len";

pub fn write_pass_csv<W: Write>(mut w: W, rows: &[PassRecord]) -> std::io::Result<()> {
    writeln!(w, "{PASS_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.iter, r.count, r.min, r.mean, r.max, r.cutoff, r.list_len
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub algorithm: String,
    pub best_objective: i64,
    pub best_assignment: Vec<u8>,
    pub iterations: u64,
    pub local_optima_count: u64,
    pub ascents_launched: u64,
    pub trigger_firings: u64,
    pub wall_time_ms: f64,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_optimum: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum_found: Option<bool>,
    #[serde(skip)]
    pub trace: Vec<TraceRow>,
    #[serde(skip)]
    pub pass_records: Vec<PassRecord>,
}

impl RunResult {
    pub fn best_bits(&self) -> Vec<bool> {
        self.best_assignment.iter().map(|&b| b == 1).collect()
    }

    /// Records a known optimum and whether the run reached it.
    pub fn attach_optimum(&mut self, optimum: i64) {
        self.brute_force_optimum = Some(optimum);
        self.optimum_found = Some(self.best_objective == optimum);
    }
}

pub(crate) fn to_bytes(bits: &[bool]) -> Vec<u8> {
    bits.iter().map(|&b| b as u8).collect()
}
