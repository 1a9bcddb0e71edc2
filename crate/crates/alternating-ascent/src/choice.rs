//! Candidate selection within one scan: dominance checks, the Weighted Sum,
//! Simple Cutoff and Advanced Cutoff rules, and the tradeoff-dominance test.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChoiceRule {
    WeightedSum,
    SimpleCutoff,
    AdvancedCutoff,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiceConfig {
    pub rule: ChoiceRule,
    #[serde(rename = "W1")]
    pub w1: f64,
    #[serde(rename = "W2")]
    pub w2: f64,
    #[serde(rename = "F")]
    pub f: f64,
    /// Advanced Cutoff under Condition 1 ignores ThresholdR in the cutoff.
    pub advanced_without_threshold: bool,
}

impl Default for ChoiceConfig {
    fn default() -> Self {
        Self {
            rule: ChoiceRule::WeightedSum,
            w1: 0.1,
            w2: 10.0,
            f: 0.8,
            advanced_without_threshold: false,
        }
    }
}

impl ChoiceConfig {
    pub fn with_rule(rule: ChoiceRule) -> Self {
        Self {
            rule,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.f > 0.0 && self.f < 1.0) {
            return Err(format!("F must lie in (0, 1), got {}", self.f));
        }
        if !(self.w1 >= 0.0 && self.w2 >= 0.0) {
            return Err("W1 and W2 must be nonnegative".into());
        }
        Ok(())
    }
}

/// Running bests for one scan. Fields start at `-inf`; `k` is `None` until a
/// candidate is admitted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateTracker {
    pub best_eval_w: f64,
    pub best_eval: f64,
    pub best_ee: f64,
    pub max_ee: f64,
    pub k: Option<usize>,
}

impl Default for CandidateTracker {
    fn default() -> Self {
        Self {
            best_eval_w: f64::NEG_INFINITY,
            best_eval: f64::NEG_INFINITY,
            best_ee: f64::NEG_INFINITY,
            max_ee: f64::NEG_INFINITY,
            k: None,
        }
    }
}

fn weighted(eval: f64, ee: f64, w: f64, eebase: f64) -> f64 {
    eval + w * (ee / eebase)
}

impl CandidateTracker {
    /// Overwrites every field with candidate `j`, as when a scan restarts or
    /// the primary dominance check succeeds.
    pub fn reset_to(&mut self, j: usize, eval: f64, ee: f64, w: f64, eebase: f64) {
        self.best_eval_w = weighted(eval, ee, w, eebase);
        self.best_eval = eval;
        self.best_ee = ee;
        self.max_ee = ee;
        self.k = Some(j);
    }

    pub fn primary_dominates(&self, eval: f64, ee: f64) -> bool {
        eval >= self.best_eval && ee >= self.max_ee
    }

    /// Secondary dominance; an exact tie keeps the earlier candidate.
    pub fn secondary_dominates(&self, eval: f64, ee: f64) -> bool {
        ee >= self.best_ee && eval >= self.best_eval && !(ee == self.best_ee && eval == self.best_eval)
    }

    pub fn ties_bests(&self, eval: f64, ee: f64) -> bool {
        eval == self.best_eval && ee == self.max_ee
    }

    fn admit_cutoff(&mut self, j: usize, eval: f64, ee: f64) {
        self.best_eval = eval;
        self.best_ee = ee;
        self.max_ee = self.max_ee.max(self.best_ee);
        self.k = Some(j);
    }

    fn weighted_rule(&mut self, j: usize, eval: f64, ee: f64, w: f64, eebase: f64) {
        let v = weighted(eval, ee, w, eebase);
        if v > self.best_eval_w {
            self.best_eval_w = v;
            self.best_eval = self.best_eval.max(eval);
            self.max_ee = self.max_ee.max(ee);
            self.k = Some(j);
        }
    }

    /// Condition 1 rule for an improving candidate that failed primary
    /// dominance.
    #[allow(clippy::too_many_arguments)]
    pub fn condition1_choice(
        &mut self,
        j: usize,
        eval: f64,
        ee: f64,
        cfg: &ChoiceConfig,
        s1_active: bool,
        threshold_r: f64,
        eebase: f64,
    ) {
        if cfg.rule == ChoiceRule::WeightedSum {
            self.weighted_rule(j, eval, ee, cfg.w1, eebase);
            return;
        }
        if self.secondary_dominates(eval, ee) {
            self.admit_cutoff(j, eval, ee);
            return;
        }
        let mut cutoff = cfg.f * self.max_ee;
        let skip_thr = cfg.rule == ChoiceRule::AdvancedCutoff && cfg.advanced_without_threshold;
        if s1_active && !skip_thr {
            cutoff = cutoff.max(threshold_r);
        }
        let ok = ee >= cutoff
            && match cfg.rule {
                ChoiceRule::SimpleCutoff => eval > self.best_eval,
                _ => ee * eval > self.best_ee * self.best_eval,
            };
        if ok {
            self.admit_cutoff(j, eval, ee);
        }
    }

    /// Condition 2 rule for a non-improving candidate that failed primary
    /// dominance.
    pub fn condition2_choice(&mut self, j: usize, eval: f64, ee: f64, cfg: &ChoiceConfig, eebase: f64) {
        if cfg.rule == ChoiceRule::WeightedSum {
            self.weighted_rule(j, eval, ee, cfg.w2, eebase);
            return;
        }
        if self.secondary_dominates(eval, ee) {
            self.admit_cutoff(j, eval, ee);
            return;
        }
        let cutoff = self.max_ee / cfg.f;
        let ok = ee >= cutoff
            && match cfg.rule {
                ChoiceRule::SimpleCutoff => eval > self.best_eval,
                _ => eval * self.best_ee > self.best_eval * ee,
            };
        if ok {
            self.admit_cutoff(j, eval, ee);
        }
    }

    /// Offers a candidate under Condition 1: primary dominance first, then the
    /// configured rule.
    #[allow(clippy::too_many_arguments)]
    pub fn offer_condition1(
        &mut self,
        j: usize,
        eval: f64,
        ee: f64,
        cfg: &ChoiceConfig,
        s1_active: bool,
        threshold_r: f64,
        eebase: f64,
    ) {
        if self.ties_bests(eval, ee) {
            return;
        }
        if self.primary_dominates(eval, ee) {
            self.reset_to(j, eval, ee, cfg.w1, eebase);
        } else {
            self.condition1_choice(j, eval, ee, cfg, s1_active, threshold_r, eebase);
        }
    }

    pub fn offer_condition2(&mut self, j: usize, eval: f64, ee: f64, cfg: &ChoiceConfig, eebase: f64) {
        if self.ties_bests(eval, ee) {
            return;
        }
        if self.primary_dominates(eval, ee) {
            self.reset_to(j, eval, ee, cfg.w2, eebase);
        } else {
            self.condition2_choice(j, eval, ee, cfg, eebase);
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TradeoffError {
    #[error("condition must be 1 or 2")]
    BadCondition,
    #[error("sign precondition violated for condition {0}")]
    Sign(u8),
}

/// Strict tradeoff dominance of `(a1, a2)` over `(b1, b2)`, where the first
/// coordinate is an evaluation and the second an EE value.
///
/// Condition 1 (evaluations nonnegative): `a1 * a2 > b1 * b2`.
/// Condition 2 (evaluations nonpositive): `a1 * b2 > a2 * b1`.
pub fn tradeoff_dominates(a1: i64, a2: i64, b1: i64, b2: i64, condition: u8) -> Result<bool, TradeoffError> {
    let (a1, a2, b1, b2) = (a1 as i128, a2 as i128, b1 as i128, b2 as i128);
    if a2 < 0 || b2 < 0 {
        return Err(TradeoffError::Sign(condition));
    }
    match condition {
        1 if a1 >= 0 && b1 >= 0 => Ok(a1 * a2 > b1 * b2),
        2 if a1 <= 0 && b1 <= 0 => Ok(a1 * b2 > a2 * b1),
        1 | 2 => Err(TradeoffError::Sign(condition)),
        _ => Err(TradeoffError::BadCondition),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tracker(best_eval: f64, best_ee: f64, max_ee: f64) -> CandidateTracker {
        CandidateTracker {
            best_eval_w: f64::NEG_INFINITY,
            best_eval,
            best_ee,
            max_ee,
            k: Some(0),
        }
    }

    #[test]
    fn primary_dominance() {
        assert!(CandidateTracker::default().primary_dominates(-1e9, 0.0));
        assert!(tracker(5.0, 10.0, 10.0).primary_dominates(5.0, 10.0));
        assert!(!tracker(5.0, 10.0, 10.0).primary_dominates(6.0, 9.0));
    }

    #[test]
    fn simple_cutoff_boundary() {
        let cfg = ChoiceConfig::with_rule(ChoiceRule::SimpleCutoff);
        let mut t = tracker(5.0, 12.0, 10.0);
        t.condition1_choice(3, 7.0, 8.0, &cfg, false, 100.0, 100.0);
        assert_eq!(t.k, Some(3));
        assert_eq!((t.best_eval, t.best_ee, t.max_ee), (7.0, 8.0, 10.0));
    }

    #[test]
    fn simple_cutoff_respects_threshold_under_s1() {
        let cfg = ChoiceConfig::with_rule(ChoiceRule::SimpleCutoff);
        let mut t = tracker(5.0, 12.0, 10.0);
        t.condition1_choice(3, 7.0, 8.0, &cfg, true, 9.0, 100.0);
        assert_eq!(t.k, Some(0));
    }

    #[test]
    fn advanced_cutoff_tradeoff() {
        let cfg = ChoiceConfig::with_rule(ChoiceRule::AdvancedCutoff);
        let mut t = tracker(2.0, 5.0, 5.0);
        t.condition1_choice(4, 3.0, 4.0, &cfg, false, 100.0, 100.0);
        assert_eq!(t.k, Some(4));
    }

    #[test]
    fn condition2_advanced() {
        let cfg = ChoiceConfig {
            f: 0.5,
            ..ChoiceConfig::with_rule(ChoiceRule::AdvancedCutoff)
        };
        // best (-2, 3); candidate (-3, 6): no dominance, tradeoff -9 > -12
        let mut t = tracker(-2.0, 3.0, 3.0);
        t.condition2_choice(9, -3.0, 6.0, &cfg, 16.0);
        assert_eq!(t.k, Some(9));
        let mut t = tracker(-2.0, 3.0, 3.0);
        t.condition2_choice(9, -2.0, 3.0, &cfg, 16.0);
        assert_eq!(t.k, Some(0));
        let mut t = tracker(-2.0, 3.0, 3.0);
        t.condition2_choice(9, -5.0, 6.0, &cfg, 16.0);
        assert_eq!(t.k, Some(0));
    }

    #[test]
    fn weighted_sum_zero_weight_keeps_first() {
        let cfg = ChoiceConfig {
            w1: 0.0,
            ..ChoiceConfig::default()
        };
        let mut t = CandidateTracker::default();
        t.offer_condition1(0, 4.0, 1.0, &cfg, false, 8.0, 8.0);
        t.offer_condition1(1, 4.0, 0.0, &cfg, false, 8.0, 8.0);
        t.offer_condition1(2, 3.0, 8.0, &cfg, false, 8.0, 8.0);
        t.offer_condition1(3, 5.0, 0.0, &cfg, false, 8.0, 8.0);
        assert_eq!(t.k, Some(3));
        let mut t = CandidateTracker::default();
        t.offer_condition1(0, 4.0, 1.0, &cfg, false, 8.0, 8.0);
        t.offer_condition1(1, 4.0, 0.0, &cfg, false, 8.0, 8.0);
        assert_eq!(t.k, Some(0));
    }

    #[test]
    fn exact_tie_keeps_earlier() {
        for rule in [
            ChoiceRule::WeightedSum,
            ChoiceRule::SimpleCutoff,
            ChoiceRule::AdvancedCutoff,
        ] {
            let cfg = ChoiceConfig::with_rule(rule);
            let mut t = CandidateTracker::default();
            t.offer_condition1(2, 3.0, 5.0, &cfg, false, 8.0, 8.0);
            t.offer_condition1(6, 3.0, 5.0, &cfg, false, 8.0, 8.0);
            assert_eq!(t.k, Some(2));
            t.offer_condition2(7, 3.0, 5.0, &cfg, 8.0);
            assert_eq!(t.k, Some(2));
        }
    }

    #[test]
    fn weighted_sum_large_w2_prefers_ee() {
        let cfg = ChoiceConfig {
            w2: 1e6,
            ..ChoiceConfig::default()
        };
        let mut t = CandidateTracker::default();
        t.offer_condition2(0, -1.0, 2.0, &cfg, 16.0);
        t.offer_condition2(1, -50.0, 3.0, &cfg, 16.0);
        assert_eq!(t.k, Some(1));
    }

    #[test]
    fn tradeoff_examples() {
        assert_eq!(tradeoff_dominates(3, 4, 2, 5, 1), Ok(true));
        assert_eq!(tradeoff_dominates(-1, 6, -2, 3, 2), Ok(true));
        assert_eq!(tradeoff_dominates(3, 4, 3, 4, 1), Ok(false));
        assert_eq!(tradeoff_dominates(-3, 4, -3, 4, 2), Ok(false));
        assert!(tradeoff_dominates(-1, 4, 2, 5, 1).is_err());
        assert!(tradeoff_dominates(1, 4, -2, 5, 2).is_err());
        assert!(tradeoff_dominates(1, 4, 2, 5, 3).is_err());
    }
}
