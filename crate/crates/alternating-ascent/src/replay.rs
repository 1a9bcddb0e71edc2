//! Scripted replay of the worked Post-Ascent example with `Q = 4`, `r = 3`
//! and `Trigger = 3`.
//!
//! The example fixes which variable moves and how evaluation signs change,
//! but not an underlying instance, so [`ScriptedProvider`] supplies the
//! evaluations. Magnitudes are arbitrary; only signs matter.

use std::collections::VecDeque;

use crate::engine::{AAConfig, Engine, SearchState, StatusKind, StepReport, TENURE};
use crate::memory::{EEConfig, EEMemory};
use crate::qubo::EvaluationProvider;
use crate::report::PhaseEvent;

/// Evaluations driven by a script: a flip negates the flipped variable's
/// evaluation, adds it to the objective, then applies the next queued set of
/// overrides.
#[derive(Debug, Clone)]
pub struct ScriptedProvider {
    bits: Vec<bool>,
    evals: Vec<i64>,
    objective: i64,
    overrides: VecDeque<Vec<(usize, i64)>>,
}

impl ScriptedProvider {
    pub fn new(bits: Vec<bool>, evals: Vec<i64>) -> Self {
        assert_eq!(bits.len(), evals.len(), "script lengths must match");
        Self {
            bits,
            evals,
            objective: 0,
            overrides: VecDeque::new(),
        }
    }

    /// Queues the evaluation overrides applied after the next flip.
    pub fn queue(&mut self, overrides: Vec<(usize, i64)>) {
        assert!(
            overrides.iter().all(|&(j, _)| j < self.bits.len()),
            "override index out of range"
        );
        self.overrides.push_back(overrides);
    }
}

impl EvaluationProvider for ScriptedProvider {
    fn n(&self) -> usize {
        self.bits.len()
    }

    fn bits(&self) -> &[bool] {
        &self.bits
    }

    fn evals(&self) -> &[i64] {
        &self.evals
    }

    fn objective(&self) -> i64 {
        self.objective
    }

    fn flip(&mut self, k: usize) {
        self.objective += self.evals[k];
        self.bits[k] = !self.bits[k];
        self.evals[k] = -self.evals[k];
        for (j, v) in self.overrides.pop_front().unwrap_or_default() {
            self.evals[j] = v;
        }
    }
}

fn row(v: [u8; 10]) -> Vec<bool> {
    v.iter().map(|&b| b == 1).collect()
}

/// The four recorded optima, oldest first.
pub fn history() -> [Vec<bool>; 4] {
    [
        row([1, 1, 1, 1, 0, 0, 0, 1, 1, 1]),
        row([0, 1, 0, 1, 1, 0, 1, 1, 0, 1]),
        row([0, 1, 0, 0, 0, 0, 1, 1, 1, 0]),
        row([1, 1, 0, 0, 0, 0, 1, 1, 1, 0]),
    ]
}

pub const EXPECTED_EE_BEFORE: [u64; 10] = [9, 15, 14, 12, 13, 15, 14, 15, 13, 13];
pub const EXPECTED_EE_AFTER: [u64; 10] = [12, 8, 8, 14, 14, 8, 15, 15, 14, 8];
pub const EXPECTED_NEW_OPTIMUM: [u8; 10] = [1, 0, 1, 0, 0, 1, 1, 1, 1, 1];
/// Variables at or above the threshold before the first move (0-based).
pub const EXPECTED_STARRED: [usize; 5] = [1, 2, 5, 6, 7];
/// StatusCount after Moves 4 to 8.
pub const EXPECTED_STATUS_COUNTS: [usize; 5] = [1, 2, 1, 2, 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct ReplayReport {
    pub checks: Vec<Check>,
    pub ee_before: Vec<u64>,
    pub ee_after: Vec<u64>,
    pub threshold: u64,
    /// Table-style StatusCount after Moves 4 to 8.
    pub status_counts: Vec<usize>,
    /// `status_count1 + status_count2` seen by the trigger test after Moves 4 to 8.
    pub trigger_counts: Vec<usize>,
    pub launch_step: Option<StepReport>,
}

impl ReplayReport {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, want: T) {
        let passed = got == want;
        self.check(name, passed, format!("got {got:?}, expected {want:?}"));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn ee_row(mem: &EEMemory, bits: &[bool]) -> Vec<u64> {
    (0..bits.len())
        .map(|j| mem.ee_value_int(j, bits[j]).expect("integer memory"))
        .collect()
}

/// Post-Ascent engine positioned at the last recorded optimum.
pub fn fixture_engine() -> Engine<ScriptedProvider> {
    let mut mem = EEMemory::new(EEConfig::new(4, 3), 10).expect("valid config");
    for x in history() {
        mem.record_local_optimum(&x).expect("dimension 10");
    }
    let start = history()[3].clone();
    let provider = ScriptedProvider::new(start.clone(), vec![-2; 10]);
    let mut state = SearchState::new(mem, &start, 0);
    state.ascent = false;
    state.tabu_iter[6] = TENURE;
    state.tabu_iter[8] = TENURE;
    let cfg = AAConfig {
        ee: EEConfig::new(4, 3),
        trigger: 3,
        ..AAConfig::default()
    };
    Engine::with_state(provider, cfg, state).expect("fixture is consistent")
}

/// Runs the worked example and compares every narrated quantity.
pub fn replay_working_table() -> ReplayReport {
    let mut rep = ReplayReport::default();
    let mut eng = fixture_engine();

    let bits = eng.provider().bits().to_vec();
    rep.ee_before = ee_row(&eng.state().ee, &bits);
    rep.threshold = eng.state().ee.threshold_r() as u64;
    rep.eq("threshold(3)", rep.threshold, 14);
    for (j, (got, want)) in rep.ee_before.clone().into_iter().zip(EXPECTED_EE_BEFORE).enumerate() {
        rep.eq(&format!("EE before x{}", j + 1), got, want);
    }
    let starred: Vec<usize> = (0..10)
        .filter(|&j| eng.state().ee.meets_recency_threshold(j, bits[j]))
        .collect();
    rep.eq("starred set", starred, EXPECTED_STARRED.to_vec());

    // (forced k, overrides applied after the flip), 0-based
    let moves: [(usize, Vec<(usize, i64)>); 8] = [
        (0, vec![]),
        (1, vec![]),
        (2, vec![]),
        (3, vec![(1, -1)]),
        (4, vec![(6, 1), (9, 1)]),
        (6, vec![(1, 1), (9, -1)]),
        (5, vec![(1, -1), (9, 1)]),
        (9, vec![(2, -1)]),
    ];
    let mut statuses = Vec::new();
    let mut moves_made = Vec::new();
    for (k, ov) in moves {
        let natural = eng.step_checked_choice();
        eng.provider_mut().queue(ov);
        let r = eng.step_forced(k);
        if moves_made.len() >= 4 {
            rep.status_counts.push(r.status_count_observed);
            rep.trigger_counts.push(r.trigger_count);
        }
        moves_made.push((r.k, natural, r.event));
        statuses.push((0..10).map(|j| eng.classify(j)).collect::<Vec<_>>());
    }
    rep.eq(
        "moves executed",
        moves_made.iter().map(|m| m.0).collect::<Vec<_>>(),
        [0, 1, 2, 3, 4, 6, 5, 9].map(Some).to_vec(),
    );
    rep.eq(
        "no launch during Moves 1-8",
        moves_made.iter().all(|m| m.2 == PhaseEvent::None),
        true,
    );
    rep.eq("Move 6 is the scan's own choice", moves_made[5].1, Some(6));
    rep.eq("Move 8 is the scan's own choice", moves_made[7].1, Some(9));
    rep.eq("Move 4: x2 S2", statuses[3][1], StatusKind::S2);
    rep.eq("Move 5: x7 S1", statuses[4][6], StatusKind::S1);
    rep.eq("Move 5: x10 S+", statuses[4][9], StatusKind::SPlus);
    rep.eq("Move 6: x2 cancelled", statuses[5][1], StatusKind::None);
    rep.eq("Move 6: x10 cancelled", statuses[5][9], StatusKind::None);
    rep.eq("Move 7: x2 S2", statuses[6][1], StatusKind::S2);
    rep.eq("Move 7: x10 S+", statuses[6][9], StatusKind::SPlus);
    rep.eq("Move 8: x3 S2", statuses[7][2], StatusKind::S2);

    // the scan after Move 8 sees the full count and launches without a flip
    let launch = eng.step();
    rep.status_counts.push(launch.status_count_observed);
    rep.trigger_counts.push(launch.trigger_count);
    rep.eq(
        "StatusCount after Moves 4-8",
        rep.status_counts.clone(),
        EXPECTED_STATUS_COUNTS.to_vec(),
    );
    rep.eq(
        "trigger fires after Move 8",
        (launch.event, launch.trigger_fired, launch.k),
        (PhaseEvent::AscentLaunched, true, None),
    );
    rep.eq("x3 held tabu", eng.state().held.clone(), vec![2]);
    let free: Vec<usize> = (0..10).filter(|&j| j != 2 && eng.state().is_tabu(j)).collect();
    rep.eq("all others free", free, vec![]);
    rep.launch_step = Some(launch);

    let ascent: [(usize, Vec<(usize, i64)>); 4] = [(0, vec![(5, -1), (6, 1)]), (3, vec![]), (4, vec![]), (6, vec![])];
    for (k, ov) in ascent {
        eng.provider_mut().queue(ov);
        eng.step_forced(k);
    }
    let cond = eng.step();
    rep.eq(
        "conditional local optimum frees x3",
        (cond.event, cond.released.clone()),
        (PhaseEvent::ConditionalLocalOpt, vec![2]),
    );
    let opt = eng.step();
    rep.eq("true local optimum recorded", opt.event, PhaseEvent::TrueLocalOpt);
    let new_opt: Vec<u8> = eng.provider().bits().iter().map(|&b| b as u8).collect();
    rep.eq("new local optimum", new_opt, EXPECTED_NEW_OPTIMUM.to_vec());

    let bits = eng.provider().bits().to_vec();
    rep.ee_after = ee_row(&eng.state().ee, &bits);
    for (j, (got, want)) in rep.ee_after.clone().into_iter().zip(EXPECTED_EE_AFTER).enumerate() {
        rep.eq(&format!("EE after x{}", j + 1), got, want);
    }
    rep
}

impl Engine<ScriptedProvider> {
    /// The variable the scan would pick, without side effects on the run.
    fn step_checked_choice(&self) -> Option<usize> {
        let mut probe = Engine::with_state(self.provider().clone(), self.config().clone(), self.state().clone())
            .expect("clone is consistent");
        probe.step().k
    }
}
