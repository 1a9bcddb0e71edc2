//! Single-Pass Alternating Ascent engine.
//!
//! The search alternates between an Ascent Phase (improving flips up to a
//! local optimum) and a Post-Ascent Phase that moves away from it under tabu
//! restrictions and the EE memory. A new ascent is launched once enough
//! variables carry S1/S2 status (the trigger threshold) or no admissible move
//! remains.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::choice::{CandidateTracker, ChoiceConfig};
use crate::double_pass::{self, CutoffVersion, PassStats};
use crate::memory::{EEConfig, EEMemory, MemoryError};
use crate::myopic::{self, McSchedule, McState};
use crate::qubo::EvaluationProvider;
use crate::report::{to_bytes, MovePath, PassRecord, Phase, PhaseEvent, RunResult, TraceRow};

/// Tabu tenure used for Post-Ascent moves and held variables.
pub const TENURE: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error(transparent)]
    Memory(#[from] MemoryError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusKind {
    None,
    SPlus,
    S1,
    S2,
}

/// Which variables stay tabu when a new ascent is launched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TabuRelease {
    /// Hold only the last variable identified with S1/S2 status.
    #[default]
    LastVbl,
    /// Free every variable.
    ReleaseAll,
    /// Hold every locked-in S1 choice and every current S2 variable.
    HoldStatusVariables,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub schedule: McSchedule,
    /// Slot capacity; `None` selects `max(16, ceil(n/12))`.
    pub capacity: Option<usize>,
    /// Skip queueing moves made under Condition 1.
    pub skip_condition1: bool,
}

impl McConfig {
    pub fn new(schedule: McSchedule) -> Self {
        Self {
            schedule,
            capacity: None,
            skip_condition1: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    SinglePass,
    DoublePass { version: CutoffVersion, use_list: bool },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AAConfig {
    pub ee: EEConfig,
    pub choice: ChoiceConfig,
    pub trigger: usize,
    pub max_iter: u64,
    pub seed: u64,
    pub mc: Option<McConfig>,
    pub tabu_release: TabuRelease,
    /// Tenure given to variables reversed by a drop step (0 to 2).
    pub small: u64,
    pub selection: Selection,
    /// Keep a per-iteration trace in the result.
    pub trace: bool,
}

impl Default for AAConfig {
    fn default() -> Self {
        Self {
            ee: EEConfig::default(),
            choice: ChoiceConfig::default(),
            trigger: 5,
            max_iter: 10_000,
            seed: 0,
            mc: None,
            tabu_release: TabuRelease::LastVbl,
            small: 0,
            selection: Selection::SinglePass,
            trace: false,
        }
    }
}

impl AAConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.ee.validate()?;
        if !self.ee.is_geometric() {
            return Err(ConfigError::Invalid("the engine needs beta = gamma = 0".into()));
        }
        self.choice.validate().map_err(ConfigError::Invalid)?;
        if self.trigger < 1 {
            return Err(ConfigError::Invalid("trigger must be at least 1".into()));
        }
        if self.small > 2 {
            return Err(ConfigError::Invalid("small tenure must lie in 0..=2".into()));
        }
        Ok(())
    }

    pub fn algorithm_name(&self) -> &'static str {
        match self.selection {
            Selection::SinglePass => "single",
            Selection::DoublePass {
                version: CutoffVersion::Eval,
                ..
            } => "double-v1",
            Selection::DoublePass {
                version: CutoffVersion::Ee,
                ..
            } => "double-v2",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchState {
    pub xo_star: i64,
    pub x_star: Vec<bool>,
    /// Variable `j` is tabu while `tabu_iter[j] >= iter`.
    pub tabu_iter: Vec<u64>,
    pub iter: u64,
    pub ascent: bool,
    pub recent: [Option<usize>; 3],
    pub last_vbl: Option<usize>,
    /// Variables held tabu through the current ascent.
    pub held: Vec<usize>,
    pub status_count1: usize,
    pub status_count2: usize,
    /// Variables already counted in `status_count1` this phase.
    pub locked: Vec<bool>,
    pub ee: EEMemory,
    ee_cache: Vec<f64>,
}

impl SearchState {
    pub fn new(ee: EEMemory, bits: &[bool], objective: i64) -> Self {
        let n = bits.len();
        let ee_cache = (0..n).map(|j| ee.ee_value(j, bits[j])).collect();
        Self {
            xo_star: objective,
            x_star: bits.to_vec(),
            tabu_iter: vec![0; n],
            iter: 1,
            ascent: true,
            recent: [None; 3],
            last_vbl: None,
            held: Vec::new(),
            status_count1: 0,
            status_count2: 0,
            locked: vec![false; n],
            ee,
            ee_cache,
        }
    }

    pub fn is_tabu(&self, j: usize) -> bool {
        self.tabu_iter[j] >= self.iter
    }

    pub fn ee_view(&self, j: usize) -> f64 {
        self.ee_cache[j]
    }

    fn refresh_ee_cache(&mut self, bits: &[bool]) {
        for (j, &b) in bits.iter().enumerate() {
            self.ee_cache[j] = self.ee.ee_value(j, b);
        }
    }

    fn flip_ee_cache(&mut self, k: usize) {
        self.ee_cache[k] = self.ee.eebase() - self.ee_cache[k];
    }

    fn debug_check_cache(&self, bits: &[bool]) {
        if cfg!(debug_assertions) {
            for (j, &b) in bits.iter().enumerate() {
                let derived = self.ee.ee_value(j, b);
                let cached = self.ee_cache[j];
                assert!(
                    (derived - cached).abs() <= 1e-9 * derived.abs().max(1.0),
                    "EE cache drift at {j}: {cached} vs {derived}"
                );
            }
        }
    }
}

/// Status of variable `j` under the current memory.
pub fn classify_status(state: &SearchState, bits: &[bool], evals: &[i64], j: usize) -> StatusKind {
    if state.ee.s() == 0 {
        return StatusKind::None;
    }
    let bit = bits[j];
    let same = match state.ee.same_as_last_optimum(j, bit) {
        Ok(v) => v,
        Err(_) => state.ee.last_optimum().is_some_and(|x| x[j] == bit),
    };
    let eval = evals[j];
    if same && eval > 0 {
        if state.ee.meets_recency_threshold(j, bit) {
            return StatusKind::S1;
        }
        if !state.is_tabu(j) {
            return StatusKind::SPlus;
        }
    }
    if !state.ascent && eval <= 0 && !same && state.ee.meets_complement_threshold(j, bit) {
        return StatusKind::S2;
    }
    StatusKind::None
}

/// Outcome of one scan over all variables.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScanFlags {
    pub k: Option<usize>,
    pub aspiration: bool,
    pub condition1: bool,
    pub condition2: bool,
    pub s1: bool,
    /// S2 variables counted in this scan, in scan order.
    pub s2_vars: Vec<usize>,
    /// Variables meeting the S1 conditions during the scan, chosen or not.
    pub s1_seen: usize,
}

/// Receives candidates from the shared scan.
pub(crate) trait CandidateSink {
    /// Condition 1 begins, or S1 begins, at `j`; earlier candidates are dropped.
    fn restart(&mut self, j: usize, eval: f64, ee: f64, s1: bool);
    fn condition1(&mut self, j: usize, eval: f64, ee: f64, s1_active: bool);
    fn condition2(&mut self, j: usize, eval: f64, ee: f64);
}

struct SingleSink<'a> {
    tracker: CandidateTracker,
    cfg: &'a ChoiceConfig,
    threshold_r: f64,
    eebase: f64,
}

impl CandidateSink for SingleSink<'_> {
    fn restart(&mut self, j: usize, eval: f64, ee: f64, _s1: bool) {
        self.tracker.reset_to(j, eval, ee, self.cfg.w1, self.eebase);
    }

    fn condition1(&mut self, j: usize, eval: f64, ee: f64, s1_active: bool) {
        self.tracker
            .offer_condition1(j, eval, ee, self.cfg, s1_active, self.threshold_r, self.eebase);
    }

    fn condition2(&mut self, j: usize, eval: f64, ee: f64) {
        self.tracker.offer_condition2(j, eval, ee, self.cfg, self.eebase);
    }
}

/// The scan shared by the Single-Pass iteration and the Double-Pass first
/// pass. Updates `status_count2` and `last_vbl` on `state`.
pub(crate) fn scan<S: CandidateSink>(
    state: &mut SearchState,
    bits: &[bool],
    evals: &[i64],
    xo: i64,
    sink: &mut S,
) -> ScanFlags {
    state.debug_check_cache(bits);
    let mut f = ScanFlags::default();
    let mut asp_best = state.xo_star;
    let mut asp_k = None;
    let mut sink_k = false;
    state.status_count2 = 0;
    for j in 0..bits.len() {
        let eval = evals[j];
        let bit = bits[j];
        let ee = state.ee_cache[j];
        let meets = state.ee.s() > 0 && state.ee.meets_recency_threshold(j, bit);
        if !state.ascent && eval > 0 && meets {
            f.s1_seen += 1;
        }
        if xo + eval > asp_best {
            f.aspiration = true;
            asp_best = xo + eval;
            asp_k = Some(j);
        }
        if f.aspiration {
            continue;
        }
        let tabu = state.is_tabu(j);
        let (fe, admissible) = (eval as f64, !tabu || meets);
        if f.condition1 {
            if eval > 0 && admissible {
                if !f.s1 && meets {
                    f.s1 = true;
                    sink.restart(j, fe, ee, true);
                } else if !f.s1 || meets {
                    sink.condition1(j, fe, ee, f.s1);
                }
            }
        } else if eval > 0 {
            if admissible {
                f.condition1 = true;
                f.s1 = meets;
                sink.restart(j, fe, ee, meets);
                sink_k = true;
            }
        } else if !state.ascent {
            if state.ee.meets_complement_threshold(j, bit) && !state.locked[j] {
                state.status_count2 += 1;
                state.last_vbl = Some(j);
                f.s2_vars.push(j);
            } else if !tabu {
                f.condition2 = true;
                sink.condition2(j, fe, ee);
                sink_k = true;
            }
        }
    }
    f.k = if f.aspiration {
        asp_k
    } else if sink_k {
        Some(usize::MAX)
    } else {
        None
    };
    f
}

/// Per-iteration summary returned by [`Engine::step`].
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub iter: u64,
    pub phase: Phase,
    pub flags: ScanFlags,
    pub k: Option<usize>,
    pub eval_k: Option<i64>,
    pub event: PhaseEvent,
    pub trigger_fired: bool,
    /// `status_count1 + status_count2` seen by the trigger test.
    pub trigger_count: usize,
    /// Variables carrying S1 or S2 status at scan time, counting an S1
    /// variable before it is chosen.
    pub status_count_observed: usize,
    /// Variables freed at a conditional local optimum.
    pub released: Vec<usize>,
    /// Variables reversed by a drop step after the move.
    pub dropped: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineCounters {
    pub local_optima: u64,
    pub ascents_launched: u64,
    pub trigger_firings: u64,
    pub list_scan_mismatches: u64,
}

pub struct Engine<P: EvaluationProvider> {
    provider: P,
    cfg: AAConfig,
    state: SearchState,
    mc: Option<McState>,
    pub counters: EngineCounters,
    trace: Vec<TraceRow>,
    passes: Vec<PassRecord>,
    verify_list: bool,
}

impl<P: EvaluationProvider> Engine<P> {
    pub fn new(provider: P, cfg: AAConfig) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let n = provider.n();
        let ee = EEMemory::new(cfg.ee.clone(), n)?;
        let state = SearchState::new(ee, provider.bits(), provider.objective());
        Self::with_state(provider, cfg, state)
    }

    /// Starts from an explicit state, e.g. a Post-Ascent Phase with a
    /// pre-filled memory.
    pub fn with_state(provider: P, cfg: AAConfig, state: SearchState) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let n = provider.n();
        if state.tabu_iter.len() != n || state.ee.n() != n {
            return Err(ConfigError::Invalid("state dimension differs from provider".into()));
        }
        let mc = cfg.mc.as_ref().map(|m| {
            McState::new(
                n,
                m.capacity.unwrap_or_else(|| myopic::default_capacity(n)),
                m.schedule.clone(),
            )
        });
        Ok(Self {
            provider,
            cfg,
            state,
            mc,
            counters: EngineCounters::default(),
            trace: Vec::new(),
            passes: Vec::new(),
            verify_list: false,
        })
    }

    /// Runs the Double-Pass second pass both with and without the candidate
    /// list every iteration and counts disagreements.
    pub fn verify_list_equivalence(&mut self, on: bool) {
        self.verify_list = on;
    }

    pub fn provider(&self) -> &P {
        &self.provider
    }

    pub(crate) fn provider_mut(&mut self) -> &mut P {
        &mut self.provider
    }

    pub fn state(&self) -> &SearchState {
        &self.state
    }

    pub fn state_mut(&mut self) -> &mut SearchState {
        &mut self.state
    }

    /// Trace rows collected so far (when tracing is enabled).
    pub fn trace(&self) -> &[TraceRow] {
        &self.trace
    }

    pub fn pass_records(&self) -> &[PassRecord] {
        &self.passes
    }

    pub fn mc(&self) -> Option<&McState> {
        self.mc.as_ref()
    }

    pub fn config(&self) -> &AAConfig {
        &self.cfg
    }

    pub fn classify(&self, j: usize) -> StatusKind {
        classify_status(&self.state, self.provider.bits(), self.provider.evals(), j)
    }

    fn select(&mut self) -> ScanFlags {
        let bits = self.provider.bits();
        let evals = self.provider.evals();
        let xo = self.provider.objective();
        match self.cfg.selection {
            Selection::SinglePass => {
                let mut sink = SingleSink {
                    tracker: CandidateTracker::default(),
                    cfg: &self.cfg.choice,
                    threshold_r: self.state.ee.threshold_r(),
                    eebase: self.state.ee.eebase(),
                };
                let mut f = scan(&mut self.state, bits, evals, xo, &mut sink);
                if f.k == Some(usize::MAX) {
                    f.k = sink.tracker.k;
                }
                f
            }
            Selection::DoublePass { version, use_list } => {
                let mut stats = PassStats::new(bits.len());
                let mut f = scan(&mut self.state, bits, evals, xo, &mut stats);
                if f.k == Some(usize::MAX) {
                    let ctx = double_pass::ClassContext::new(&self.state, bits, evals, &f);
                    let (k, record) = double_pass::second_pass(&stats, &ctx, version, self.cfg.choice.f, use_list);
                    if self.verify_list {
                        let (alt, _) = double_pass::second_pass(&stats, &ctx, version, self.cfg.choice.f, !use_list);
                        if alt != k {
                            self.counters.list_scan_mismatches += 1;
                        }
                    }
                    self.passes.push(PassRecord {
                        iter: self.state.iter,
                        ..record
                    });
                    f.k = k;
                }
                f
            }
        }
    }

    fn phase(&self) -> Phase {
        if self.state.ascent {
            Phase::Ascent
        } else {
            Phase::PostAscent
        }
    }

    /// One iteration: scan, then post-iteration update.
    pub fn step(&mut self) -> StepReport {
        let flags = self.select();
        self.finish_step(flags)
    }

    /// One iteration with the move forced to `k`. The scan still runs so that
    /// status counts and `last_vbl` are updated; the move's flags are derived
    /// from `k` itself.
    pub fn step_forced(&mut self, k: usize) -> StepReport {
        let mut flags = self.select();
        let bits = self.provider.bits();
        let eval = self.provider.evals()[k];
        let meets = self.state.ee.s() > 0 && self.state.ee.meets_recency_threshold(k, bits[k]);
        flags.aspiration = self.provider.objective() + eval > self.state.xo_star;
        flags.condition1 = eval > 0 && (!self.state.is_tabu(k) || meets);
        flags.s1 = flags.condition1 && meets;
        flags.k = Some(k);
        self.finish_step(flags)
    }

    fn finish_step(&mut self, flags: ScanFlags) -> StepReport {
        let phase = self.phase();
        let iter = self.state.iter;
        let trigger_count = self.state.status_count1 + self.state.status_count2;
        let mut report = StepReport {
            iter,
            phase,
            k: None,
            eval_k: None,
            event: PhaseEvent::None,
            trigger_fired: false,
            trigger_count,
            status_count_observed: trigger_count + flags.s1_seen,
            released: Vec::new(),
            dropped: Vec::new(),
            flags: flags.clone(),
        };
        match flags.k {
            Some(k) => self.apply_move(k, &flags, &mut report),
            None => self.no_move(&mut report),
        }
        if report.k.is_none() && self.cfg.trace {
            self.push_trace(&report, None, None, false);
        }
        self.state.iter += 1;
        report
    }

    fn apply_move(&mut self, k: usize, flags: &ScanFlags, report: &mut StepReport) {
        let st = &self.state;
        if !flags.condition1
            && !flags.aspiration
            && !st.ascent
            && st.status_count1 + st.status_count2 >= self.cfg.trigger
        {
            self.launch(true, &flags.s2_vars);
            report.event = PhaseEvent::AscentLaunched;
            report.trigger_fired = true;
            return;
        }
        let s1_move = flags.s1 && !flags.aspiration;
        let path = if flags.aspiration {
            MovePath::Aspiration
        } else if s1_move {
            MovePath::S1
        } else if flags.condition1 {
            MovePath::Condition1
        } else {
            MovePath::Condition2
        };
        let was_tabu = self.state.is_tabu(k);
        let eval_k = self.flip(k);
        report.k = Some(k);
        report.eval_k = Some(eval_k);
        if self.state.ascent {
            self.state.recent = [Some(k), self.state.recent[0], self.state.recent[1]];
        } else {
            self.state.tabu_iter[k] = self.state.iter + TENURE;
            if eval_k > 0 {
                self.state.last_vbl = Some(k);
                self.state.status_count2 = 0;
            }
            if flags.aspiration || flags.s1 {
                self.state.status_count1 += 1;
                self.state.locked[k] = true;
            }
            if self.state.status_count1 + self.state.status_count2 >= self.cfg.trigger {
                self.launch(true, &[]);
                report.event = PhaseEvent::AscentLaunched;
                report.trigger_fired = true;
            }
        }
        if self.cfg.trace {
            self.push_trace(report, Some(path), Some(eval_k), was_tabu);
        }
        self.myopic_add(k, s1_move || (flags.condition1 && self.skip_condition1()), report);
    }

    fn skip_condition1(&self) -> bool {
        self.cfg.mc.as_ref().is_some_and(|m| m.skip_condition1)
    }

    fn myopic_add(&mut self, k: usize, skip: bool, report: &mut StepReport) {
        let Some(mc) = self.mc.as_mut() else { return };
        if !mc.add(k, skip) {
            return;
        }
        for j in mc.drop_step() {
            let was_tabu = self.state.is_tabu(j);
            let eval = self.flip(j);
            self.state.tabu_iter[j] = self.cfg.small + self.state.iter;
            report.dropped.push(j);
            if self.cfg.trace {
                let row = TraceRow {
                    iter: self.state.iter,
                    phase: self.phase(),
                    k: Some(j),
                    eval_k: Some(eval),
                    xo: self.provider.objective(),
                    xo_star: self.state.xo_star,
                    event: PhaseEvent::None,
                    trigger_fired: false,
                    path: Some(MovePath::Drop),
                    was_tabu,
                };
                self.trace.push(row);
            }
        }
    }

    /// Flips `k` through the provider and keeps the cache, holds and best
    /// solution in step. Returns the pre-flip evaluation.
    fn flip(&mut self, k: usize) -> i64 {
        let eval = self.provider.evals()[k];
        self.provider.flip(k);
        self.state.flip_ee_cache(k);
        self.state.held.retain(|&h| h != k);
        self.state.locked[k] = false;
        if self.provider.objective() > self.state.xo_star {
            self.state.xo_star = self.provider.objective();
            self.state.x_star.copy_from_slice(self.provider.bits());
        }
        eval
    }

    fn no_move(&mut self, report: &mut StepReport) {
        if !self.state.ascent {
            self.launch(false, &[]);
            report.event = PhaseEvent::AscentLaunched;
            return;
        }
        if !self.state.held.is_empty() {
            for &h in &self.state.held {
                self.state.tabu_iter[h] = 0;
            }
            report.released = std::mem::take(&mut self.state.held);
            report.event = PhaseEvent::ConditionalLocalOpt;
            return;
        }
        if self.provider.evals().iter().any(|&e| e > 0) {
            // only short drop-step tenures can block an improving move here
            self.state.tabu_iter.iter_mut().for_each(|t| *t = 0);
            return;
        }
        let bits = self.provider.bits().to_vec();
        self.state
            .ee
            .record_local_optimum(&bits)
            .expect("dimensions fixed at construction");
        self.state.refresh_ee_cache(&bits);
        self.state.ascent = false;
        self.state.status_count1 = 0;
        self.state.status_count2 = 0;
        self.state.locked.iter_mut().for_each(|l| *l = false);
        self.state.last_vbl = None;
        for j in self.state.recent.into_iter().flatten() {
            self.state.tabu_iter[j] = self.state.iter + TENURE;
        }
        if let Some(mc) = self.mc.as_mut() {
            mc.reset();
        }
        self.counters.local_optima += 1;
        report.event = PhaseEvent::TrueLocalOpt;
    }

    /// Starts a new Ascent Phase. Held variables must still differ from the
    /// recent optima; an uncertified candidate is not held.
    fn launch(&mut self, trigger: bool, s2_vars: &[usize]) {
        let bits = self.provider.bits();
        let st = &mut self.state;
        let certified = |j: usize| st.ee.meets_complement_threshold(j, bits[j]);
        let mut held: Vec<usize> = match self.cfg.tabu_release {
            TabuRelease::LastVbl => st.last_vbl.into_iter().filter(|&j| certified(j)).collect(),
            TabuRelease::ReleaseAll => Vec::new(),
            TabuRelease::HoldStatusVariables => (0..bits.len())
                .filter(|&j| st.locked[j] || s2_vars.contains(&j) || st.last_vbl == Some(j))
                .filter(|&j| certified(j))
                .collect(),
        };
        held.sort_unstable();
        held.dedup();
        st.tabu_iter.iter_mut().for_each(|t| *t = 0);
        for &h in &held {
            st.tabu_iter[h] = st.iter + TENURE;
        }
        st.held = held;
        st.ascent = true;
        st.last_vbl = None;
        st.status_count1 = 0;
        st.status_count2 = 0;
        st.locked.iter_mut().for_each(|l| *l = false);
        st.recent = [None; 3];
        if let Some(mc) = self.mc.as_mut() {
            mc.reset();
        }
        self.counters.ascents_launched += 1;
        if trigger {
            self.counters.trigger_firings += 1;
        }
    }

    fn push_trace(&mut self, report: &StepReport, path: Option<MovePath>, eval_k: Option<i64>, was_tabu: bool) {
        self.trace.push(TraceRow {
            iter: report.iter,
            phase: report.phase,
            k: report.k,
            eval_k,
            xo: self.provider.objective(),
            xo_star: self.state.xo_star,
            event: report.event,
            trigger_fired: report.trigger_fired,
            path,
            was_tabu,
        });
    }

    /// Runs until `max_iter` iterations have been executed.
    pub fn run(&mut self) -> RunResult {
        let start = Instant::now();
        let first = self.state.iter;
        while self.state.iter < first + self.cfg.max_iter {
            self.step();
        }
        self.result(start, self.state.iter - first)
    }

    fn result(&mut self, start: Instant, iterations: u64) -> RunResult {
        RunResult {
            algorithm: self.cfg.algorithm_name().to_string(),
            best_objective: self.state.xo_star,
            best_assignment: to_bytes(&self.state.x_star),
            iterations,
            local_optima_count: self.counters.local_optima,
            ascents_launched: self.counters.ascents_launched,
            trigger_firings: self.counters.trigger_firings,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            config: serde_json::to_value(&self.cfg).expect("config serializes"),
            brute_force_optimum: None,
            optimum_found: None,
            trace: std::mem::take(&mut self.trace),
            pass_records: std::mem::take(&mut self.passes),
        }
    }

    pub fn into_provider(self) -> P {
        self.provider
    }
}

/// Single-Pass run from the provider's current assignment.
pub fn run<P: EvaluationProvider>(provider: P, cfg: AAConfig) -> Result<RunResult, ConfigError> {
    Ok(Engine::new(provider, cfg)?.run())
}
