//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;

use validation::criteria::{self, Outcome};

type Check = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let checks: [Check; 11] = [
        ("working table replay", criteria::working_table),
        ("lexicographic goldens", criteria::lexicographic),
        ("general-alpha weight table", criteria::appendix_weights),
        ("inductive update vs stored history", || {
            criteria::inductive_update(10_000)
        }),
        ("recency guarantee at conditional optima", || {
            criteria::recency_guarantee(120)
        }),
        ("tradeoff rule vs multiplier oracle", || {
            criteria::tradeoff_equivalence(100_000)
        }),
        ("double-pass list/scan equivalence", || {
            criteria::list_scan_equivalence(2_000)
        }),
        ("run invariants, all algorithms", criteria::run_invariants),
        ("escape smoke test", criteria::escape_smoke),
        ("brute-force sanity report", || criteria::oracle_sanity(50, 50_000)),
        ("myopic correction", criteria::myopic_correction),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let out = check();
        let tag = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name}: {}", i + 1, out.detail);
        failed += usize::from(!out.passed);
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
