//! QUBO maximization instances with exact objectives and incremental flip
//! evaluations.
//!
//! Indices are 0-based in the API. The text file format (see [`crate::io`])
//! uses 1-based indices.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuboError {
    #[error("instance must have at least one variable")]
    Empty,
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("assignment has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Symmetric integer QUBO: maximize `sum_j q(j,j) x_j + sum_{i<j} q(i,j) x_i x_j`.
///
/// Each unordered pair is stored once; the pair term is counted once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuboInstance {
    n: usize,
    entries: BTreeMap<(usize, usize), i64>,
    diag: Vec<i64>,
    neighbors: Vec<Vec<(usize, i64)>>,
}

impl QuboInstance {
    /// Builds an instance from `(i, j, value)` triples. Order of `i`, `j` is
    /// irrelevant and duplicate pairs are summed.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self, QuboError> {
        if n == 0 {
            return Err(QuboError::Empty);
        }
        let mut entries = BTreeMap::new();
        for (i, j, v) in terms {
            for idx in [i, j] {
                if idx >= n {
                    return Err(QuboError::IndexOutOfRange { index: idx, n });
                }
            }
            *entries.entry((i.min(j), i.max(j))).or_insert(0) += v;
        }
        let mut diag = vec![0; n];
        let mut neighbors = vec![Vec::new(); n];
        for (&(i, j), &v) in &entries {
            if i == j {
                diag[i] = v;
            } else if v != 0 {
                neighbors[i].push((j, v));
                neighbors[j].push((i, v));
            }
        }
        Ok(Self {
            n,
            entries,
            diag,
            neighbors,
        })
    }

    pub fn zero(n: usize) -> Result<Self, QuboError> {
        Self::new(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Stored entries keyed by `(i, j)` with `i <= j`, including explicit zeros.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.entries
    }

    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        self.entries.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    pub fn neighbors(&self, j: usize) -> &[(usize, i64)] {
        &self.neighbors[j]
    }

    fn check_len(&self, x: &[bool]) -> Result<(), QuboError> {
        if x.len() != self.n {
            return Err(QuboError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn objective(&self, x: &[bool]) -> Result<i64, QuboError> {
        self.check_len(x)?;
        let mut total = 0;
        for (&(i, j), &v) in &self.entries {
            if x[i] && x[j] {
                total += v;
            }
        }
        Ok(total)
    }

    /// Change in objective from flipping `x[j]`.
    pub fn eval_flip(&self, x: &[bool], j: usize) -> Result<i64, QuboError> {
        self.check_len(x)?;
        if j >= self.n {
            return Err(QuboError::IndexOutOfRange { index: j, n: self.n });
        }
        Ok(self.eval_unchecked(x, j))
    }

    fn eval_unchecked(&self, x: &[bool], j: usize) -> i64 {
        let mut field = self.diag[j];
        for &(i, q) in &self.neighbors[j] {
            if x[i] {
                field += q;
            }
        }
        if x[j] {
            -field
        } else {
            field
        }
    }

    pub fn all_evals(&self, x: &[bool]) -> Result<Vec<i64>, QuboError> {
        self.check_len(x)?;
        Ok((0..self.n).map(|j| self.eval_unchecked(x, j)).collect())
    }

    /// Refreshes `evals` after `x[k]` has been flipped. `x` must already hold
    /// the new value of `x[k]`; `evals` must be exact for the pre-flip
    /// assignment.
    pub fn update_all_evals(&self, x: &[bool], evals: &mut [i64], k: usize) -> Result<(), QuboError> {
        self.check_len(x)?;
        self.check_len_evals(evals)?;
        if k >= self.n {
            return Err(QuboError::IndexOutOfRange { index: k, n: self.n });
        }
        evals[k] = -evals[k];
        // after - before is +1 when x_k went 0 -> 1
        let dk = if x[k] { 1 } else { -1 };
        for &(j, q) in &self.neighbors[k] {
            let sign = if x[j] { -1 } else { 1 };
            evals[j] += sign * q * dk;
        }
        Ok(())
    }

    fn check_len_evals(&self, evals: &[i64]) -> Result<(), QuboError> {
        if evals.len() != self.n {
            return Err(QuboError::DimensionMismatch {
                expected: self.n,
                got: evals.len(),
            });
        }
        Ok(())
    }

    /// Substitutes `x_j = 1 - y_j` for every `j` with `mask[j]` set. Returns the
    /// instance over `y` and the constant so that
    /// `objective(x) = complemented.objective(y) + offset`.
    pub fn complemented(&self, mask: &[bool]) -> Result<(QuboInstance, i64), QuboError> {
        self.check_len(mask)?;
        let mut offset = 0;
        let mut terms = Vec::with_capacity(self.entries.len() * 2);
        for (&(i, j), &v) in &self.entries {
            if i == j {
                if mask[i] {
                    offset += v;
                    terms.push((i, i, -v));
                } else {
                    terms.push((i, i, v));
                }
                continue;
            }
            match (mask[i], mask[j]) {
                (false, false) => terms.push((i, j, v)),
                (true, false) => {
                    terms.push((j, j, v));
                    terms.push((i, j, -v));
                }
                (false, true) => {
                    terms.push((i, i, v));
                    terms.push((i, j, -v));
                }
                (true, true) => {
                    offset += v;
                    terms.push((i, i, -v));
                    terms.push((j, j, -v));
                    terms.push((i, j, v));
                }
            }
        }
        Ok((QuboInstance::new(self.n, terms)?, offset))
    }
}

/// Source of current flip evaluations for the search engines.
pub trait EvaluationProvider {
    fn n(&self) -> usize;
    fn bits(&self) -> &[bool];
    fn evals(&self) -> &[i64];
    fn objective(&self) -> i64;
    /// Flips variable `k` and refreshes all evaluations and the objective.
    fn flip(&mut self, k: usize);
}

/// [`EvaluationProvider`] over a QUBO instance.
#[derive(Debug, Clone)]
pub struct QuboProvider<'a> {
    inst: &'a QuboInstance,
    x: Vec<bool>,
    evals: Vec<i64>,
    value: i64,
}

impl<'a> QuboProvider<'a> {
    /// Starts from the all-zero assignment.
    pub fn new(inst: &'a QuboInstance) -> Self {
        let x = vec![false; inst.n()];
        Self::with_assignment(inst, x).expect("length matches by construction")
    }

    pub fn with_assignment(inst: &'a QuboInstance, x: Vec<bool>) -> Result<Self, QuboError> {
        let evals = inst.all_evals(&x)?;
        let value = inst.objective(&x)?;
        Ok(Self { inst, x, evals, value })
    }

    pub fn instance(&self) -> &QuboInstance {
        self.inst
    }
}

impl EvaluationProvider for QuboProvider<'_> {
    fn n(&self) -> usize {
        self.x.len()
    }

    fn bits(&self) -> &[bool] {
        &self.x
    }

    fn evals(&self) -> &[i64] {
        &self.evals
    }

    fn objective(&self) -> i64 {
        self.value
    }

    fn flip(&mut self, k: usize) {
        self.value += self.evals[k];
        self.x[k] = !self.x[k];
        self.inst
            .update_all_evals(&self.x, &mut self.evals, k)
            .expect("provider keeps dimensions consistent");
    }
}
