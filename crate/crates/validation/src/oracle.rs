//! Reference computations that share no code with the solver.

use num_rational::Ratio;

type Q = Ratio<i128>;

/// Strict tradeoff dominance of `a` over `b` by the multiplier argument: a
/// multiplier `x >= 0` must satisfy both inequalities of the applicable case,
/// and strictness means the feasible interval has interior. Magnitudes must
/// be nonzero.
pub fn tradeoff_oracle(a1: i64, a2: i64, b1: i64, b2: i64, condition: u8) -> bool {
    let r = |n: i64, d: i64| Q::new(n as i128, d as i128);
    if a1 >= b1 && a2 >= b2 {
        return (a1, a2) != (b1, b2);
    }
    if a1 <= b1 && a2 <= b2 {
        return false;
    }
    let case1 = a1 > b1;
    let (lo, hi) = match (condition, case1) {
        // a1 x >= b1, a2 >= b2 x
        (1, true) => (r(b1, a1), r(a2, b2)),
        // a1 >= b1 x, a2 x >= b2
        (1, false) => (r(b2, a2), r(a1, b1)),
        // a1 >= b1 x with b1 < 0, a2 >= b2 x
        (2, true) => (r(a1, b1), r(a2, b2)),
        // a1 x >= b1 with a1 < 0, a2 x >= b2
        (2, false) => (r(b2, a2), r(b1, a1)),
        _ => panic!("condition must be 1 or 2"),
    };
    lo < hi
}

/// Weighted count over a stored history (oldest first): the most recent
/// optimum weighs `alpha^(q-1)` and each older one a further factor `1/alpha`.
/// `window` limits how many optima contribute.
pub fn weighted_history(history: &[Vec<bool>], j: usize, q: usize, alpha: f64, window: usize) -> f64 {
    history
        .iter()
        .rev()
        .take(window)
        .enumerate()
        .filter(|(_, x)| x[j])
        .map(|(i, _)| alpha.powi(q as i32 - 1 - i as i32))
        .sum()
}

/// Integer form of [`weighted_history`] with `alpha = 2` over the last `q`
/// optima.
pub fn weighted_history_int(history: &[Vec<bool>], j: usize, q: usize) -> u64 {
    history
        .iter()
        .rev()
        .take(q)
        .enumerate()
        .filter(|(_, x)| x[j])
        .map(|(i, _)| 1u64 << (q - 1 - i))
        .sum()
}

/// Base value after `s` recordings: the weight total of the optima seen.
pub fn base_after(s: usize, q: usize, alpha: f64, window: usize) -> f64 {
    if s == 0 {
        return alpha.powi(q as i32 - 1);
    }
    (0..s.min(window)).map(|i| alpha.powi(q as i32 - 1 - i as i32)).sum()
}
