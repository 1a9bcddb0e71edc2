//! Exhaustive optimum for small instances.

use thiserror::Error;

use crate::qubo::QuboInstance;

pub const BRUTE_FORCE_MAX_N: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("brute force supports n <= {BRUTE_FORCE_MAX_N}, got {0}")]
pub struct TooLarge(pub usize);

/// Walks all `2^n` assignments in Gray-code order, one flip per step, and
/// returns the maximum with the first assignment reaching it.
pub fn brute_force(inst: &QuboInstance) -> Result<(i64, Vec<bool>), TooLarge> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(TooLarge(n));
    }
    // own flip delta, independent of the incremental eval machinery
    let mut adj = vec![Vec::new(); n];
    for (&(i, j), &v) in inst.entries() {
        if i != j && v != 0 {
            adj[i].push((j, v));
            adj[j].push((i, v));
        }
    }
    let mut x = vec![false; n];
    let mut value = 0i64;
    let mut best = (0i64, x.clone());
    for step in 1u64..(1u64 << n) {
        let k = step.trailing_zeros() as usize;
        let linear = inst.coeff(k, k) + adj[k].iter().filter(|(i, _)| x[*i]).map(|(_, v)| v).sum::<i64>();
        value += if x[k] { -linear } else { linear };
        x[k] = !x[k];
        if value > best.0 {
            best = (value, x.clone());
        }
    }
    Ok(best)
}
