//! Stepping audits of run invariants against a stored history of optima.

use alternating_ascent::engine::{Engine, StepReport};
use alternating_ascent::qubo::{EvaluationProvider, QuboInstance};
use alternating_ascent::report::{MovePath, Phase, PhaseEvent, TraceRow};

/// Findings of an audited Alternating Ascent run.
#[derive(Debug, Default)]
pub struct Audit {
    pub violations: Vec<String>,
    pub optima: Vec<Vec<bool>>,
    pub conditional_checks: usize,
    pub trigger_firings: usize,
    pub steps: usize,
}

impl Audit {
    pub fn distinct_optima(&self) -> usize {
        let mut v = self.optima.clone();
        v.sort();
        v.dedup();
        v.len()
    }
}

/// Steps the engine `iters` times and checks the run invariants against a
/// stored history of local optima. `r` is the recency depth. The held-variable
/// check needs binary weights, where the threshold is exact.
pub fn audit<P: EvaluationProvider>(eng: &mut Engine<P>, iters: usize, r: usize, inst: Option<&QuboInstance>) -> Audit {
    let mut a = Audit::default();
    let exact = eng.config().ee.alpha == 2.0;
    let mut trace_seen = eng.trace().len();
    for _ in 0..iters {
        let best_before = eng.state().xo_star;
        let rep: StepReport = eng.step();
        a.steps += 1;
        let st = eng.state();
        if st.xo_star < best_before {
            a.violations.push(format!("iter {}: best decreased", rep.iter));
        }
        if rep.trigger_fired {
            a.trigger_firings += 1;
        }
        match rep.event {
            PhaseEvent::TrueLocalOpt => {
                if eng.provider().evals().iter().any(|&e| e > 0) {
                    a.violations
                        .push(format!("iter {}: improving move at recorded optimum", rep.iter));
                }
                a.optima.push(eng.provider().bits().to_vec());
            }
            PhaseEvent::ConditionalLocalOpt if exact => {
                let x = eng.provider().bits();
                let k = r.min(a.optima.len());
                for &h in &rep.released {
                    a.conditional_checks += 1;
                    for opt in &a.optima[a.optima.len() - k..] {
                        if opt[h] == x[h] {
                            a.violations
                                .push(format!("iter {}: held x{} matches a recent optimum", rep.iter, h + 1));
                        }
                    }
                }
            }
            _ => {}
        }
        for row in &eng.trace()[trace_seen..] {
            audit_row(row, &mut a.violations);
        }
        trace_seen = eng.trace().len();
    }
    if let Some(inst) = inst {
        let st = eng.state();
        if inst.objective(&st.x_star).ok() != Some(st.xo_star) {
            a.violations
                .push("best assignment does not reproduce best objective".into());
        }
    }
    a
}

fn audit_row(row: &TraceRow, out: &mut Vec<String>) {
    if row.was_tabu && !matches!(row.path, Some(MovePath::Aspiration | MovePath::S1 | MovePath::Drop)) {
        out.push(format!("iter {}: tabu variable flipped via {:?}", row.iter, row.path));
    }
    let ascent_move = row.phase == Phase::Ascent
        && matches!(
            row.path,
            Some(MovePath::Aspiration | MovePath::S1 | MovePath::Condition1)
        );
    if ascent_move && row.eval_k.is_some_and(|e| e <= 0) {
        out.push(format!("iter {}: non-improving ascent flip", row.iter));
    }
    if row.phase == Phase::Ascent && row.path == Some(MovePath::Condition2) {
        out.push(format!("iter {}: Condition 2 move during ascent", row.iter));
    }
}

/// Tabu-rule audit for baseline traces.
pub fn audit_tabu_rows(rows: &[TraceRow]) -> Vec<String> {
    rows.iter()
        .filter(|r| r.was_tabu && !matches!(r.path, Some(MovePath::Aspiration | MovePath::Suspended)))
        .map(|r| format!("iter {}: tabu variable flipped via {:?}", r.iter, r.path))
        .collect()
}
