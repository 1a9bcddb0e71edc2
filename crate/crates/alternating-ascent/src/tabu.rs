//! Rudimentary tabu search baseline with an optional tabu-free aspiration.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::ConfigError;
use crate::qubo::EvaluationProvider;
use crate::report::{to_bytes, MovePath, Phase, PhaseEvent, RunResult, TraceRow};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabuFree {
    /// Iterations after the last tabu-free solution before the relaxed
    /// aspiration may apply.
    pub tabu_range: u64,
    /// Restrictions are suspended while `xo > xo_star - xo_tolerance`.
    pub xo_tolerance: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabuConfig {
    pub low_tenure: u64,
    pub high_tenure: u64,
    pub max_iter: u64,
    pub seed: u64,
    pub tabu_free: Option<TabuFree>,
    /// Break Eval ties at random instead of by lowest index.
    pub random_ties: bool,
    pub trace: bool,
}

impl Default for TabuConfig {
    fn default() -> Self {
        Self {
            low_tenure: 5,
            high_tenure: 12,
            max_iter: 10_000,
            seed: 0,
            tabu_free: None,
            random_ties: false,
            trace: false,
        }
    }
}

impl TabuConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.low_tenure < 1 || self.low_tenure > self.high_tenure {
            return Err(ConfigError::Invalid("need 1 <= low_tenure <= high_tenure".into()));
        }
        if let Some(tf) = &self.tabu_free {
            if tf.tabu_range <= self.high_tenure {
                return Err(ConfigError::Invalid("tabu_range must exceed high_tenure".into()));
            }
            if tf.xo_tolerance < 0 {
                return Err(ConfigError::Invalid("xo_tolerance must be nonnegative".into()));
            }
        }
        Ok(())
    }
}

pub struct TabuSearch<P: EvaluationProvider> {
    provider: P,
    cfg: TabuConfig,
    rng: ChaCha8Rng,
    pub tabu_iter: Vec<u64>,
    pub iter: u64,
    pub xo_star: i64,
    pub x_star: Vec<bool>,
    /// Tabu restrictions are currently disregarded.
    pub suspended: bool,
    pub tabu_free_iter: u64,
    pub tabu_free_solutions: u64,
    pub local_optima: u64,
    trace: Vec<TraceRow>,
}

impl<P: EvaluationProvider> TabuSearch<P> {
    pub fn new(provider: P, cfg: TabuConfig) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let n = provider.n();
        Ok(Self {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            tabu_iter: vec![0; n],
            iter: 1,
            xo_star: provider.objective(),
            x_star: provider.bits().to_vec(),
            // the opening climb has no restrictions yet
            suspended: cfg.tabu_free.is_some(),
            tabu_free_iter: 0,
            tabu_free_solutions: 0,
            local_optima: 0,
            trace: Vec::new(),
            provider,
            cfg,
        })
    }

    pub fn provider(&self) -> &P {
        &self.provider
    }

    pub fn trace(&self) -> &[TraceRow] {
        &self.trace
    }

    pub fn is_tabu(&self, j: usize) -> bool {
        self.tabu_iter[j] >= self.iter
    }

    fn argmax(&mut self, admissible: impl Fn(&Self, usize, i64) -> bool) -> Option<usize> {
        let evals = self.provider.evals();
        let mut best: Option<i64> = None;
        let mut ties = Vec::new();
        for (j, &e) in evals.iter().enumerate() {
            if !admissible(self, j, e) {
                continue;
            }
            match best {
                Some(b) if e < b => {}
                Some(b) if e == b => ties.push(j),
                _ => {
                    best = Some(e);
                    ties.clear();
                    ties.push(j);
                }
            }
        }
        match ties.len() {
            0 => None,
            1 => Some(ties[0]),
            len if self.cfg.random_ties => Some(ties[self.rng.gen_range(0..len)]),
            _ => Some(ties[0]),
        }
    }

    /// One iteration. Returns the event raised, if any.
    pub fn step(&mut self) -> PhaseEvent {
        let mut event = PhaseEvent::None;
        let at_local_opt = self.provider.evals().iter().all(|&e| e <= 0);
        if at_local_opt {
            self.local_optima += 1;
        }
        if self.suspended && at_local_opt {
            self.suspended = false;
            self.tabu_free_iter = self.iter;
            self.tabu_free_solutions += 1;
            event = PhaseEvent::TabuFreeSolution;
        } else if let Some(tf) = &self.cfg.tabu_free {
            if !self.suspended
                && self.iter >= self.tabu_free_iter + tf.tabu_range
                && self.provider.objective() > self.xo_star - tf.xo_tolerance
                && !at_local_opt
            {
                self.suspended = true;
            }
        }
        let (k, path) = if self.suspended {
            (self.argmax(|_, _, e| e > 0), MovePath::Suspended)
        } else {
            let xo = self.provider.objective();
            let k = self.argmax(|s, j, e| !s.is_tabu(j) || xo + e > s.xo_star);
            let path = match k {
                Some(j) if self.is_tabu(j) => MovePath::Aspiration,
                _ => MovePath::Best,
            };
            (k, path)
        };
        if let Some(k) = k {
            let was_tabu = self.is_tabu(k);
            let eval = self.provider.evals()[k];
            self.provider.flip(k);
            let tenure = self.rng.gen_range(self.cfg.low_tenure..=self.cfg.high_tenure);
            self.tabu_iter[k] = self.iter + tenure;
            if self.provider.objective() > self.xo_star {
                self.xo_star = self.provider.objective();
                self.x_star.copy_from_slice(self.provider.bits());
            }
            if self.cfg.trace {
                self.trace.push(TraceRow {
                    iter: self.iter,
                    phase: Phase::Ascent,
                    k: Some(k),
                    eval_k: Some(eval),
                    xo: self.provider.objective(),
                    xo_star: self.xo_star,
                    event,
                    trigger_fired: false,
                    path: Some(path),
                    was_tabu,
                });
            }
        } else if self.cfg.trace {
            self.trace.push(TraceRow {
                iter: self.iter,
                phase: Phase::Ascent,
                k: None,
                eval_k: None,
                xo: self.provider.objective(),
                xo_star: self.xo_star,
                event,
                trigger_fired: false,
                path: None,
                was_tabu: false,
            });
        }
        self.iter += 1;
        event
    }

    pub fn run(&mut self) -> RunResult {
        let start = Instant::now();
        for _ in 0..self.cfg.max_iter {
            self.step();
        }
        RunResult {
            algorithm: "tabu".into(),
            best_objective: self.xo_star,
            best_assignment: to_bytes(&self.x_star),
            iterations: self.cfg.max_iter,
            local_optima_count: self.local_optima,
            ascents_launched: 0,
            trigger_firings: 0,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            config: serde_json::to_value(&self.cfg).expect("config serializes"),
            brute_force_optimum: None,
            optimum_found: None,
            trace: std::mem::take(&mut self.trace),
            pass_records: Vec::new(),
        }
    }
}

pub fn run_tabu<P: EvaluationProvider>(provider: P, cfg: TabuConfig) -> Result<RunResult, ConfigError> {
    Ok(TabuSearch::new(provider, cfg)?.run())
}
