//! One check per acceptance criterion. Each returns whether it held and a
//! short account of what was measured.

use std::collections::HashSet;
use std::time::Instant;

use alternating_ascent::choice::tradeoff_dominates;
use alternating_ascent::double_pass::CutoffVersion;
use alternating_ascent::engine::{AAConfig, Engine, McConfig, Selection, TabuRelease};
use alternating_ascent::generate::generate_instance;
use alternating_ascent::memory::{acceptable_vectors, EEConfig, EEMemory};
use alternating_ascent::myopic::{McSchedule, McState};
use alternating_ascent::oracle::brute_force;
use alternating_ascent::qubo::{EvaluationProvider, QuboInstance, QuboProvider};
use alternating_ascent::replay::replay_working_table;
use alternating_ascent::report::PhaseEvent;
use alternating_ascent::tabu::{TabuConfig, TabuFree, TabuSearch};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::audit::{audit, audit_tabu_rows};
use crate::oracle::{base_after, tradeoff_oracle, weighted_history, weighted_history_int};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen()).collect()
}

/// Plain enumeration of every assignment; small n only.
fn enumerate_optimum(inst: &QuboInstance) -> i64 {
    let n = inst.n();
    (0u32..1 << n)
        .map(|c| {
            let x: Vec<bool> = (0..n).map(|i| c >> i & 1 == 1).collect();
            inst.entries()
                .iter()
                .filter(|((i, j), _)| x[*i] && x[*j])
                .map(|(_, v)| v)
                .sum::<i64>()
        })
        .max()
        .expect("n >= 1")
}

pub fn working_table() -> Outcome {
    let rep = replay_working_table();
    let failures: Vec<String> = rep
        .failures()
        .iter()
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    let detail = if failures.is_empty() {
        format!("{} checks matched", rep.checks.len())
    } else {
        format!(
            "{}/{} checks matched; mismatched: {}; EE before {:?}, after {:?}",
            rep.checks.len() - failures.len(),
            rep.checks.len(),
            failures.join(", "),
            rep.ee_before,
            rep.ee_after
        )
    };
    Outcome::new(failures.is_empty(), detail)
}

/// EE1 of a single variable whose history, most recent first, is `v`.
fn ee1_of(v: &[u8]) -> u64 {
    let q = v.len();
    let mut mem = EEMemory::new(EEConfig::new(q, 3.min(q)), 1).expect("valid config");
    for &b in v.iter().rev() {
        mem.record_local_optimum(&[b == 1]).expect("n = 1");
    }
    mem.ee1_int(0).expect("integer memory")
}

pub fn lexicographic() -> Outcome {
    let cases: [(&[u8], u64); 5] = [
        (&[1, 1, 1, 1, 1, 1], 63),
        (&[1, 0, 0, 0, 0, 0], 32),
        (&[0, 1, 1, 1, 1, 1], 31),
        (&[1, 0, 1, 0, 0, 0], 40),
        (&[1, 0, 0, 1, 1, 1], 39),
    ];
    let mut bad = Vec::new();
    for (v, want) in cases {
        let got = ee1_of(v);
        if got != want {
            bad.push(format!("{v:?} gave {got}, expected {want}"));
        }
    }
    for (q, want) in [(6, 56.0), (7, 112.0)] {
        let got = EEConfig::new(q, 3).threshold_o();
        if got != want {
            bad.push(format!("Threshold(3) for Q={q} gave {got}, expected {want}"));
        }
    }
    let passed = bad.is_empty();
    Outcome::new(
        passed,
        if passed {
            "5 EE1 values and 2 thresholds exact".into()
        } else {
            bad.join("; ")
        },
    )
}

pub fn appendix_weights() -> Outcome {
    // printed to 4 decimals, positions q = 7 down to 1
    let table: [(f64, [f64; 7], f64, usize); 3] = [
        (2.0, [64.0, 32.0, 16.0, 8.0, 4.0, 2.0, 1.0], 112.0, 16),
        (1.7, [24.1376, 14.1986, 8.3521, 4.913, 2.89, 1.7, 1.0], 46.6883, 19),
        (1.5, [11.3906, 7.5937, 5.0625, 3.375, 2.25, 1.5, 1.0], 24.0468, 22),
    ];
    let tol = 1e-4;
    let mut bad = Vec::new();
    for (alpha, row, threshold, count) in table {
        let cfg = EEConfig::real(7, 3, alpha);
        for (i, &want) in row.iter().enumerate() {
            let q = 7 - i;
            let got = cfg.weight(q).expect("q in 1..=7");
            if (got - want).abs() > tol {
                bad.push(format!("alpha {alpha} w({q}) = {got:.6}, table {want}"));
            }
        }
        let got = cfg.threshold_o();
        if (got - threshold).abs() > tol {
            bad.push(format!("alpha {alpha} Threshold(3) = {got:.6}, table {threshold}"));
        }
        let n = acceptable_vectors(&cfg).expect("valid config").len();
        if n != count {
            bad.push(format!("alpha {alpha}: {n} acceptable vectors, expected {count}"));
        }
    }
    let passed = bad.is_empty();
    let detail = if passed {
        "weights and thresholds within 1e-4 of the printed table; 16/19/22 acceptable vectors".to_string()
    } else {
        bad.join("; ")
    };
    Outcome::new(passed, detail)
}

pub fn inductive_update(sequences: usize) -> Outcome {
    let mut r = rng(4);
    let mut bad = Vec::new();
    let mut worst_rel = 0.0f64;
    for t in 0..sequences {
        let q = r.gen_range(1..=8);
        let n = r.gen_range(1..=16);
        let s = r.gen_range(0..=3 * q);
        let integer = t % 2 == 0;
        let alpha = if integer { 2.0 } else { r.gen_range(1.05..3.0) };
        let cfg = if integer {
            EEConfig::new(q, 1)
        } else {
            EEConfig::real(q, 1, alpha)
        };
        let mut mem = EEMemory::new(cfg, n).expect("valid config");
        let mut history = Vec::new();
        for _ in 0..s {
            let x = random_bits(&mut r, n);
            mem.record_local_optimum(&x).expect("dimension n");
            history.push(x);
        }
        if integer {
            for j in 0..n {
                let want = weighted_history_int(&history, j, q);
                if mem.ee1_int(j) != Some(want) {
                    bad.push(format!("seq {t}: ee1({j}) = {:?}, direct {want}", mem.ee1_int(j)));
                }
            }
            let base = base_after(s, q, 2.0, q);
            if mem.eebase() != base {
                bad.push(format!("seq {t}: eebase {} vs {base}", mem.eebase()));
            }
        } else {
            let rel = |a: f64, b: f64| if b == 0.0 { a.abs() } else { (a - b).abs() / b.abs() };
            for j in 0..n {
                let e = rel(mem.ee1(j), weighted_history(&history, j, q, alpha, usize::MAX));
                worst_rel = worst_rel.max(e);
            }
            worst_rel = worst_rel.max(rel(mem.eebase(), base_after(s, q, alpha, usize::MAX)));
        }
    }
    if worst_rel > 1e-9 {
        bad.push(format!("real mode relative error {worst_rel:e}"));
    }
    let passed = bad.is_empty();
    let detail = if passed {
        format!("{sequences} sequences; integer exact, worst real relative error {worst_rel:.1e}")
    } else {
        format!("{} mismatches, first: {}", bad.len(), bad[0])
    };
    Outcome::new(passed, detail)
}

pub fn recency_guarantee(runs: usize) -> Outcome {
    let mut r = rng(5);
    let mut violations = Vec::new();
    let mut checks = 0;
    let mut optima = 0;
    for run in 0..runs {
        let n = r.gen_range(5..=30);
        let inst = generate_instance(n, r.gen_range(0.2..0.9), 50, r.gen()).expect("valid parameters");
        let q = r.gen_range(4..=16);
        let depth = r.gen_range(1..=q / 2);
        let release = [
            TabuRelease::LastVbl,
            TabuRelease::ReleaseAll,
            TabuRelease::HoldStatusVariables,
        ][run % 3];
        let selection = match run % 4 {
            0 | 1 => Selection::SinglePass,
            2 => Selection::DoublePass {
                version: CutoffVersion::Eval,
                use_list: true,
            },
            _ => Selection::DoublePass {
                version: CutoffVersion::Ee,
                use_list: true,
            },
        };
        let cfg = AAConfig {
            ee: EEConfig::new(q, depth),
            trigger: r.gen_range(1..=6),
            tabu_release: release,
            selection,
            mc: (run % 5 == 4).then(|| McConfig::new(McSchedule::b())),
            seed: run as u64,
            ..AAConfig::default()
        };
        let mut eng = Engine::new(QuboProvider::new(&inst), cfg).expect("valid config");
        let a = audit(&mut eng, 1500, depth, Some(&inst));
        checks += a.conditional_checks;
        optima += a.optima.len();
        violations.extend(
            a.violations
                .into_iter()
                .filter(|v| v.contains("held"))
                .map(|v| format!("run {run}: {v}")),
        );
    }
    let passed = violations.is_empty() && checks > 0;
    let detail = format!(
        "{runs} runs, {optima} local optima, {checks} held-coordinate checks, {} violations{}",
        violations.len(),
        violations.first().map(|v| format!(" (first: {v})")).unwrap_or_default()
    );
    Outcome::new(passed, detail)
}

pub fn tradeoff_equivalence(tuples: usize) -> Outcome {
    let mut r = rng(6);
    let mut disagreements = 0;
    let mut dominated = 0;
    for t in 0..tuples {
        let condition = if t % 2 == 0 { 1 } else { 2 };
        let sign = if condition == 1 { 1 } else { -1 };
        let a1 = sign * r.gen_range(1..=1000i64);
        let b1 = sign * r.gen_range(1..=1000i64);
        let a2 = r.gen_range(1..=1000i64);
        let b2 = r.gen_range(1..=1000i64);
        let got = tradeoff_dominates(a1, a2, b1, b2, condition).expect("sign-conformant tuple");
        dominated += usize::from(got);
        if got != tradeoff_oracle(a1, a2, b1, b2, condition) {
            disagreements += 1;
        }
    }
    Outcome::new(
        disagreements == 0,
        format!("{tuples} tuples, {dominated} dominating, {disagreements} disagreements"),
    )
}

pub fn list_scan_equivalence(iterations_per_version: usize) -> Outcome {
    let mut r = rng(7);
    let mut mismatches = 0;
    let mut total = 0;
    for version in [CutoffVersion::Eval, CutoffVersion::Ee] {
        let mut done = 0;
        while done < iterations_per_version {
            let n = r.gen_range(5..=40);
            let inst = generate_instance(n, r.gen_range(0.2..0.9), 40, r.gen()).expect("valid parameters");
            let mut cfg = AAConfig {
                ee: EEConfig::new(r.gen_range(4..=16), 2),
                selection: Selection::DoublePass {
                    version,
                    use_list: true,
                },
                ..AAConfig::default()
            };
            cfg.choice.f = r.gen_range(0.0..=1.0);
            let mut eng = Engine::new(QuboProvider::new(&inst), cfg).expect("valid config");
            eng.verify_list_equivalence(true);
            for _ in 0..500 {
                eng.step();
            }
            mismatches += eng.counters.list_scan_mismatches;
            done += 500;
        }
        total += done;
    }
    Outcome::new(
        mismatches == 0,
        format!("{total} iterations over both versions, {mismatches} differing picks"),
    )
}

fn aa_variants() -> Vec<(&'static str, AAConfig)> {
    let base = AAConfig {
        ee: EEConfig::new(12, 5),
        trace: true,
        ..AAConfig::default()
    };
    let double = |version| AAConfig {
        selection: Selection::DoublePass {
            version,
            use_list: true,
        },
        ..base.clone()
    };
    vec![
        ("single", base.clone()),
        ("double-v1", double(CutoffVersion::Eval)),
        ("double-v2", double(CutoffVersion::Ee)),
        (
            "single+mc",
            AAConfig {
                mc: Some(McConfig::new(McSchedule::a())),
                small: 1,
                ..base.clone()
            },
        ),
        (
            "single-real",
            AAConfig {
                ee: EEConfig::real(12, 5, 1.7),
                ..base
            },
        ),
    ]
}

pub fn run_invariants() -> Outcome {
    let mut r = rng(8);
    let mut bad = Vec::new();
    let mut runs = 0;
    for i in 0..8 {
        let n = r.gen_range(10..=40);
        let inst = generate_instance(n, r.gen_range(0.2..0.9), 50, r.gen()).expect("valid parameters");
        for (name, cfg) in aa_variants() {
            let mut eng = Engine::new(QuboProvider::new(&inst), cfg).expect("valid config");
            let a = audit(&mut eng, 2000, 5, Some(&inst));
            bad.extend(a.violations.into_iter().map(|v| format!("{name} #{i}: {v}")));
            runs += 1;
        }
        for tf in [
            None,
            Some(TabuFree {
                tabu_range: 25,
                xo_tolerance: 3,
            }),
        ] {
            let name = if tf.is_some() { "tabu-free" } else { "tabu" };
            let cfg = TabuConfig {
                tabu_free: tf,
                trace: true,
                seed: i,
                ..TabuConfig::default()
            };
            let mut ts = TabuSearch::new(QuboProvider::new(&inst), cfg).expect("valid config");
            let mut best = ts.xo_star;
            for _ in 0..2000 {
                let at_opt = ts.provider().evals().iter().all(|&e| e <= 0);
                let ev = ts.step();
                if ev == PhaseEvent::TabuFreeSolution && !at_opt {
                    bad.push(format!("{name} #{i}: tabu-free solution is not a local optimum"));
                }
                if ts.xo_star < best {
                    bad.push(format!("{name} #{i}: best decreased"));
                }
                best = ts.xo_star;
            }
            if inst.objective(&ts.x_star).ok() != Some(ts.xo_star) {
                bad.push(format!(
                    "{name} #{i}: best assignment does not reproduce best objective"
                ));
            }
            bad.extend(
                audit_tabu_rows(ts.trace())
                    .into_iter()
                    .map(|v| format!("{name} #{i}: {v}")),
            );
            runs += 1;
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{runs} runs over 7 algorithm variants, {} violations{}",
            bad.len(),
            bad.first().map(|v| format!(" (first: {v})")).unwrap_or_default()
        ),
    )
}

pub fn escape_smoke() -> Outcome {
    let inst = generate_instance(50, 0.5, 100, 2024).expect("valid parameters");
    let start = Instant::now();
    let mut eng = Engine::new(QuboProvider::new(&inst), AAConfig::default()).expect("valid config");
    let mut optima = HashSet::new();
    let mut triggers = 0;
    for _ in 0..10_000 {
        let rep = eng.step();
        triggers += usize::from(rep.trigger_fired);
        if rep.event == PhaseEvent::TrueLocalOpt {
            optima.insert(eng.provider().bits().to_vec());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let passed = optima.len() >= 10 && triggers >= 1 && secs < 5.0;
    Outcome::new(
        passed,
        format!(
            "{} distinct true local optima, {triggers} trigger firings, {secs:.2} s, best {}",
            optima.len(),
            eng.state().xo_star
        ),
    )
}

pub fn oracle_sanity(instances: u64, iterations: u64) -> Outcome {
    let mut invalid = Vec::new();
    let (mut aa_hits, mut tabu_hits) = (0, 0);
    for seed in 0..instances {
        let inst = generate_instance(12, 0.5, 100, seed).expect("valid parameters");
        let opt = enumerate_optimum(&inst);
        if brute_force(&inst).map(|b| b.0) != Ok(opt) {
            invalid.push(format!("instance {seed}: brute force disagrees with enumeration"));
        }
        let aa = Engine::new(
            QuboProvider::new(&inst),
            AAConfig {
                max_iter: iterations,
                seed,
                ..AAConfig::default()
            },
        )
        .expect("valid config")
        .run();
        let tabu = TabuSearch::new(
            QuboProvider::new(&inst),
            TabuConfig {
                max_iter: iterations,
                seed,
                ..TabuConfig::default()
            },
        )
        .expect("valid config")
        .run();
        for (name, mut res) in [("aa", aa), ("tabu", tabu)] {
            res.attach_optimum(opt);
            let valid = res.best_objective <= opt
                && inst.objective(&res.best_bits()) == Ok(res.best_objective)
                && res.optimum_found == Some(res.best_objective == opt);
            if !valid {
                invalid.push(format!(
                    "{name} on instance {seed}: best {} vs optimum {opt}",
                    res.best_objective
                ));
            }
            let hit = usize::from(res.best_objective == opt);
            if name == "aa" {
                aa_hits += hit;
            } else {
                tabu_hits += hit;
            }
        }
    }
    Outcome::new(
        invalid.is_empty(),
        format!(
            "{instances} instances x {iterations} iterations; optimum reached by AA {aa_hits}/{instances}, tabu {tabu_hits}/{instances}; {} invalid results",
            invalid.len()
        ),
    )
}

pub fn myopic_correction() -> Outcome {
    let mut bad = Vec::new();
    let mut r = rng(11);
    for t in 0..1000 {
        let cap = r.gen_range(1..=12);
        let mut mc = McState::new(16, cap, McSchedule::a());
        for _ in 0..100 {
            match r.gen_range(0..10) {
                0..=6 => {
                    mc.add(r.gen_range(0..16), r.gen_bool(0.1));
                }
                7 | 8 => {
                    mc.drop_step();
                }
                _ => mc.reset(),
            }
            if mc.pool_len() + mc.list().len() != cap {
                bad.push(format!("sequence {t}: pool and list do not account for all slots"));
                break;
            }
        }
    }

    let mut mc = McState::new(6, 8, McSchedule::constant(3, 2));
    mc.add(0, false);
    mc.add(1, false);
    mc.add(0, false);
    let reversed = mc.drop_step();
    if reversed != vec![1] || mc.stats.stale_drops != 1 {
        bad.push(format!(
            "re-add script reversed {reversed:?} with {} stale entries",
            mc.stats.stale_drops
        ));
    }

    let mut unrecorded_max = 0;
    for n in 1usize..=600 {
        let cap = n.div_ceil(6);
        for (add, drop) in [(5, 1), (6, 1), (8, 1)] {
            let mut mc = McState::new(n, cap, McSchedule::constant(add, drop));
            for k in 0..n {
                if mc.add(k, false) {
                    mc.drop_step();
                }
            }
            if mc.stats.missed_drops > 0 {
                bad.push(format!(
                    "n={n} {add}:{drop}: {} drops missed a move",
                    mc.stats.missed_drops
                ));
            }
            unrecorded_max = unrecorded_max.max(mc.stats.unrecorded_adds);
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "pool conserved over 1000 random sequences; stale entry skipped; n<=600 with ceil(n/6) slots: {} missed drops (moves beyond capacity that no drop reached: up to {unrecorded_max})",
            bad.len()
        ),
    )
}
