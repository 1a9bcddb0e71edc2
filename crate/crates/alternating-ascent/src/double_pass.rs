//! Double-Pass selection: a first pass gathers Min/Mean/Max statistics and a
//! candidate list for the governing class; a second pass picks by an
//! interpolated cutoff on Eval (Version 1) or on EE (Version 2).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{AAConfig, CandidateSink, ConfigError, Engine, ScanFlags, SearchState, Selection};
use crate::qubo::EvaluationProvider;
use crate::report::{PassRecord, RunResult};

/// End-of-list marker for [`PassStats::link`].
pub const LAST_LINK: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutoffVersion {
    /// Version 1: cutoff on Eval, maximize EE.
    Eval,
    /// Version 2: cutoff on EE, maximize Eval.
    Ee,
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("cutoff needs min <= mean <= max, got {min}, {mean}, {max}")]
pub struct CutoffError {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

/// Piecewise-linear percentile proxy: `F = 0` gives `min`, `.5` gives `mean`,
/// `1` gives `max`.
pub fn interpolate_cutoff(f: f64, min: f64, mean: f64, max: f64) -> Result<f64, CutoffError> {
    if !(min <= mean && mean <= max) {
        return Err(CutoffError { min, mean, max });
    }
    Ok(if f >= 0.5 {
        mean + 2.0 * (f - 0.5) * (max - mean)
    } else {
        min + 2.0 * f * (mean - min)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub min: f64,
    pub max: f64,
    pub sum: f64,
    pub count: usize,
}

impl Summary {
    fn empty() -> Self {
        Self {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            sum: 0.0,
            count: 0,
        }
    }

    fn add(&mut self, v: f64) {
        self.min = self.min.min(v);
        self.max = self.max.max(v);
        self.sum += v;
        self.count += 1;
    }

    /// Mean, kept inside `[min, max]` against rounding.
    pub fn mean(&self) -> f64 {
        (self.sum / self.count as f64).clamp(self.min, self.max)
    }
}

/// First-pass statistics and the candidate list. The list is threaded
/// through `link` from `first_link`, newest candidate first.
#[derive(Debug, Clone)]
pub struct PassStats {
    pub eval: Summary,
    pub ee: Summary,
    pub j_first: usize,
    pub j_last: usize,
    pub first_link: usize,
    pub link: Vec<usize>,
}

impl PassStats {
    pub fn new(n: usize) -> Self {
        Self {
            eval: Summary::empty(),
            ee: Summary::empty(),
            j_first: 0,
            j_last: 0,
            first_link: LAST_LINK,
            link: vec![LAST_LINK; n],
        }
    }

    fn record(&mut self, j: usize, eval: f64, ee: f64) {
        self.eval.add(eval);
        self.ee.add(ee);
        self.j_last = j;
        self.link[j] = self.first_link;
        self.first_link = j;
    }

    /// Candidates in list order (reverse insertion order).
    pub fn list(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut j = self.first_link;
        while j != LAST_LINK {
            out.push(j);
            j = self.link[j];
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.first_link == LAST_LINK
    }
}

impl CandidateSink for PassStats {
    fn restart(&mut self, j: usize, eval: f64, ee: f64, _s1: bool) {
        self.eval = Summary::empty();
        self.ee = Summary::empty();
        self.first_link = LAST_LINK;
        self.j_first = j;
        self.record(j, eval, ee);
    }

    fn condition1(&mut self, j: usize, eval: f64, ee: f64, _s1_active: bool) {
        self.record(j, eval, ee);
    }

    fn condition2(&mut self, j: usize, eval: f64, ee: f64) {
        if self.is_empty() {
            self.j_first = j;
        }
        self.record(j, eval, ee);
    }
}

/// Membership test for the governing candidate class, used when the second
/// pass walks the index range instead of the list.
pub struct ClassContext<'a> {
    state: &'a SearchState,
    bits: &'a [bool],
    evals: &'a [i64],
    s1: bool,
    condition1: bool,
}

impl<'a> ClassContext<'a> {
    pub fn new(state: &'a SearchState, bits: &'a [bool], evals: &'a [i64], flags: &ScanFlags) -> Self {
        Self {
            state,
            bits,
            evals,
            s1: flags.s1,
            condition1: flags.condition1,
        }
    }

    fn meets(&self, j: usize) -> bool {
        self.state.ee.s() > 0 && self.state.ee.meets_recency_threshold(j, self.bits[j])
    }

    pub fn member(&self, j: usize) -> bool {
        let eval = self.evals[j];
        let tabu = self.state.is_tabu(j);
        if self.s1 {
            eval > 0 && self.meets(j)
        } else if self.condition1 {
            eval > 0 && (!tabu || self.meets(j))
        } else {
            let s2 = !self.state.ascent
                && self.state.ee.meets_complement_threshold(j, self.bits[j])
                && !self.state.locked[j];
            eval <= 0 && !tabu && !s2 && !self.state.ascent
        }
    }

    fn values(&self, j: usize) -> (f64, f64) {
        (self.evals[j] as f64, self.state.ee_view(j))
    }
}

/// Picks the candidate maximizing the free metric among those meeting the
/// cutoff on the other. Ties go to the highest index.
pub fn second_pass(
    stats: &PassStats,
    ctx: &ClassContext<'_>,
    version: CutoffVersion,
    f: f64,
    use_list: bool,
) -> (Option<usize>, PassRecord) {
    let governed = match version {
        CutoffVersion::Eval => &stats.eval,
        CutoffVersion::Ee => &stats.ee,
    };
    let mean = governed.mean();
    let cutoff = interpolate_cutoff(f, governed.min, mean, governed.max)
        .expect("summary keeps mean inside its range")
        .min(governed.max);
    let split = |j: usize| {
        let (eval, ee) = ctx.values(j);
        match version {
            CutoffVersion::Eval => (eval, ee),
            CutoffVersion::Ee => (ee, eval),
        }
    };
    let mut best: Option<(usize, f64)> = None;
    let mut consider = |j: usize| {
        let (gated, free) = split(j);
        if gated < cutoff {
            return;
        }
        let better = match best {
            None => true,
            Some((k, v)) => free > v || (free == v && j > k),
        };
        if better {
            best = Some((j, free));
        }
    };
    if use_list {
        stats.list().into_iter().for_each(&mut consider);
    } else if !stats.is_empty() {
        (stats.j_first..=stats.j_last)
            .filter(|&j| ctx.member(j))
            .for_each(&mut consider);
    }
    let record = PassRecord {
        iter: 0,
        count: governed.count,
        min: governed.min,
        mean,
        max: governed.max,
        cutoff,
        list_len: stats.list().len(),
    };
    (best.map(|(j, _)| j), record)
}

/// Double-Pass run; the post-iteration update is shared with the Single-Pass
/// engine.
pub fn run_double_pass<P: EvaluationProvider>(
    provider: P,
    mut cfg: AAConfig,
    version: CutoffVersion,
) -> Result<RunResult, ConfigError> {
    cfg.selection = Selection::DoublePass {
        version,
        use_list: true,
    };
    Ok(Engine::new(provider, cfg)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_anchor_points() {
        assert_eq!(interpolate_cutoff(0.5, 1.0, 4.0, 9.0).unwrap(), 4.0);
        assert_eq!(interpolate_cutoff(1.0, 1.0, 4.0, 9.0).unwrap(), 9.0);
        assert_eq!(interpolate_cutoff(0.0, 1.0, 4.0, 9.0).unwrap(), 1.0);
        assert_eq!(interpolate_cutoff(0.75, 0.0, 10.0, 20.0).unwrap(), 15.0);
        assert!(interpolate_cutoff(0.5, 3.0, 1.0, 9.0).is_err());
    }

    #[test]
    fn list_is_reverse_insertion_and_restart_clears() {
        let mut s = PassStats::new(6);
        s.condition2(1, -1.0, 2.0);
        s.condition2(3, -2.0, 1.0);
        assert_eq!(s.list(), vec![3, 1]);
        s.restart(4, 5.0, 3.0, false);
        s.condition1(5, 2.0, 7.0, false);
        assert_eq!(s.list(), vec![5, 4]);
        assert_eq!((s.j_first, s.j_last), (4, 5));
        assert_eq!(s.eval.count, 2);
        assert_eq!(s.eval.mean(), 3.5);
    }
}
