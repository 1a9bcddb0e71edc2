use alternating_ascent::choice::{tradeoff_dominates, CandidateTracker, ChoiceConfig, ChoiceRule, TradeoffError};
use proptest::prelude::*;
use validation::oracle::tradeoff_oracle;

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
fn primary_dominance_examples() {
    assert!(CandidateTracker::default().primary_dominates(-5.0, 0.0));
    assert!(tracker(5.0, 10.0, 10.0).primary_dominates(5.0, 10.0));
    assert!(!tracker(5.0, 10.0, 10.0).primary_dominates(6.0, 9.0));
}

#[test]
fn simple_cutoff_boundary_admits() {
    let cfg = ChoiceConfig::with_rule(ChoiceRule::SimpleCutoff);
    let mut t = tracker(5.0, 10.0, 10.0);
    t.condition1_choice(3, 7.0, 8.0, &cfg, false, 0.0, 16.0);
    assert_eq!(t.k, Some(3));
    assert_eq!((t.best_eval, t.best_ee, t.max_ee), (7.0, 8.0, 10.0));
}

#[test]
fn s1_raises_condition1_cutoff() {
    let cfg = ChoiceConfig::with_rule(ChoiceRule::SimpleCutoff);
    let mut t = tracker(5.0, 10.0, 10.0);
    t.condition1_choice(3, 7.0, 8.0, &cfg, true, 9.0, 16.0);
    assert_eq!(t.k, Some(0));
}

#[test]
fn advanced_cutoff_tradeoff() {
    let cfg = ChoiceConfig::with_rule(ChoiceRule::AdvancedCutoff);
    let mut t = tracker(2.0, 5.0, 5.0);
    t.condition1_choice(4, 3.0, 4.0, &cfg, false, 0.0, 16.0);
    assert_eq!(t.k, Some(4));
    assert!(tradeoff_dominates(3, 4, 2, 5, 1).unwrap());
}

#[test]
fn condition2_product_rule_distinguishes_options() {
    // only the product tradeoff admits (-3, 7) over (-1, 2)
    let mut adv = tracker(-1.0, 2.0, 2.0);
    adv.condition2_choice(6, -3.0, 7.0, &ChoiceConfig::with_rule(ChoiceRule::AdvancedCutoff), 16.0);
    assert_eq!(adv.k, Some(6));
    let mut simple = tracker(-1.0, 2.0, 2.0);
    simple.condition2_choice(6, -3.0, 7.0, &ChoiceConfig::with_rule(ChoiceRule::SimpleCutoff), 16.0);
    assert_eq!(simple.k, Some(0));
    let mut t = tracker(-2.0, 3.0, 3.0);
    t.condition2_choice(1, -1.0, 6.0, &ChoiceConfig::with_rule(ChoiceRule::AdvancedCutoff), 16.0);
    assert_eq!(t.k, Some(1));
    assert!(tradeoff_dominates(-1, 6, -2, 3, 2).unwrap());
}

#[test]
fn equal_pairs_are_not_admitted() {
    for rule in [
        ChoiceRule::SimpleCutoff,
        ChoiceRule::AdvancedCutoff,
        ChoiceRule::WeightedSum,
    ] {
        let cfg = ChoiceConfig::with_rule(rule);
        let mut t = CandidateTracker::default();
        t.offer_condition2(1, -2.0, 3.0, &cfg, 8.0);
        t.offer_condition2(2, -2.0, 3.0, &cfg, 8.0);
        assert_eq!(t.k, Some(1), "{rule:?}");
        let mut t = CandidateTracker::default();
        t.offer_condition1(1, 2.0, 3.0, &cfg, false, 8.0, 8.0);
        t.offer_condition1(2, 2.0, 3.0, &cfg, false, 8.0, 8.0);
        assert_eq!(t.k, Some(1), "{rule:?}");
    }
    assert!(!tradeoff_dominates(3, 4, 3, 4, 1).unwrap());
}

#[test]
fn weighted_sum_without_weight_is_best_eval() {
    let cfg = ChoiceConfig {
        w1: 0.0,
        ..ChoiceConfig::default()
    };
    let cands = [(0, 3.0, 1.0), (1, 5.0, 0.0), (2, 5.0, 9.0), (3, 4.0, 20.0)];
    let mut t = CandidateTracker::default();
    for (j, e, ee) in cands {
        if t.k.is_none() {
            t.reset_to(j, e, ee, cfg.w1, 32.0);
        } else {
            t.condition1_choice(j, e, ee, &cfg, false, 0.0, 32.0);
        }
    }
    assert_eq!(t.k, Some(1));
}

#[test]
fn heavy_w2_prefers_ee() {
    let cfg = ChoiceConfig {
        w2: 1e6,
        ..ChoiceConfig::default()
    };
    let mut t = CandidateTracker::default();
    t.reset_to(0, -1.0, 2.0, cfg.w2, 16.0);
    t.condition2_choice(1, -50.0, 3.0, &cfg, 16.0);
    assert_eq!(t.k, Some(1));
}

#[test]
fn tradeoff_contract_errors() {
    assert_eq!(tradeoff_dominates(-1, 2, 1, 2, 1), Err(TradeoffError::Sign(1)));
    assert_eq!(tradeoff_dominates(1, 2, -1, 2, 2), Err(TradeoffError::Sign(2)));
    assert_eq!(tradeoff_dominates(1, -2, 1, 2, 1), Err(TradeoffError::Sign(1)));
    assert_eq!(tradeoff_dominates(1, 2, 1, 2, 3), Err(TradeoffError::BadCondition));
}

fn select(rule: ChoiceRule, cands: &[(f64, f64)], scale: f64, cond1: bool) -> Option<usize> {
    let cfg = ChoiceConfig {
        w1: 0.1 * scale,
        w2: 10.0 * scale,
        ..ChoiceConfig::with_rule(rule)
    };
    let mut t = CandidateTracker::default();
    for (j, &(e, ee)) in cands.iter().enumerate() {
        if cond1 {
            t.offer_condition1(j, e * scale, ee, &cfg, false, 0.0, 64.0);
        } else {
            t.offer_condition2(j, e * scale, ee, &cfg, 64.0);
        }
    }
    t.k
}

proptest! {
    #[test]
    fn tradeoff_matches_multiplier_oracle(a1 in 1i64..500, a2 in 1i64..500, b1 in 1i64..500, b2 in 1i64..500) {
        prop_assert_eq!(tradeoff_dominates(a1, a2, b1, b2, 1).unwrap(), tradeoff_oracle(a1, a2, b1, b2, 1));
        prop_assert_eq!(tradeoff_dominates(-a1, a2, -b1, b2, 2).unwrap(), tradeoff_oracle(-a1, a2, -b1, b2, 2));
    }

    #[test]
    fn selection_is_scale_invariant(
        cands in prop::collection::vec((1i64..50, 0i64..64), 1..25),
        scale in 1i64..10,
        rule in prop::sample::select(vec![ChoiceRule::SimpleCutoff, ChoiceRule::AdvancedCutoff, ChoiceRule::WeightedSum]),
        cond1 in any::<bool>(),
    ) {
        let c: Vec<(f64, f64)> = cands.iter().map(|&(e, ee)| (if cond1 { e } else { -e } as f64, ee as f64)).collect();
        prop_assert_eq!(select(rule, &c, 1.0, cond1), select(rule, &c, scale as f64, cond1));
    }

    #[test]
    fn primary_implies_secondary(be in -20i64..20, bee in 0i64..20, extra in 0i64..5, e in -20i64..20, ee in 0i64..30) {
        let t = tracker(be as f64, bee as f64, (bee + extra) as f64);
        let (e, ee) = (e as f64, ee as f64);
        if t.primary_dominates(e, ee) && !(e == t.best_eval && ee == t.best_ee) {
            prop_assert!(t.secondary_dominates(e, ee));
        }
    }
}
