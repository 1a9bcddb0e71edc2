//! Exponential-extrapolation (EE) memory over recent local optima.
//!
//! For each variable the memory keeps `ee1(j)`, a weighted count of the
//! optima in which `x_j = 1`, with weights `w(q) = alpha^(q-1)` growing
//! toward the most recent optimum. `EE0(j) = eebase - ee1(j)` is derived.
//! With `alpha = 2` the weighting orders bit histories lexicographically, so
//! `EE(j) >= Threshold(r)` certifies that `x_j` kept its current value in each
//! of the `r` most recent optima.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MemoryError {
    #[error("invalid EE configuration: {0}")]
    InvalidConfig(String),
    #[error("weight position {q} outside 1..={max}")]
    PositionOutOfRange { q: usize, max: usize },
    #[error("assignment has length {got}, memory tracks {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inductive update requires beta = gamma = 0")]
    InductiveUnsupported,
    #[error("prefix accumulation is only defined while s < Q")]
    PrefixFull,
    #[error("operation requires alpha = 2 and at least one recorded optimum")]
    NeedsBinaryHistory,
    #[error("enumeration limited to Q <= 20, got {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[serde(rename = "int")]
    Integer,
    Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EEConfig {
    #[serde(rename = "Q")]
    pub q: usize,
    pub r: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub arithmetic: Arithmetic,
}

impl Default for EEConfig {
    fn default() -> Self {
        Self {
            q: 20,
            r: 10,
            alpha: 2.0,
            beta: 0.0,
            gamma: 0.0,
            arithmetic: Arithmetic::Integer,
        }
    }
}

impl EEConfig {
    pub fn new(q: usize, r: usize) -> Self {
        Self {
            q,
            r,
            ..Self::default()
        }
    }

    pub fn real(q: usize, r: usize, alpha: f64) -> Self {
        Self {
            q,
            r,
            alpha,
            arithmetic: Arithmetic::Real,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), MemoryError> {
        let bad = |m: &str| Err(MemoryError::InvalidConfig(m.to_string()));
        if self.r < 1 || self.r > self.q {
            return bad("need 1 <= r <= Q");
        }
        if !self.alpha.is_finite() || self.alpha < 1.0 {
            return bad("alpha must be finite and >= 1");
        }
        if self.beta < 0.0 || self.gamma < 0.0 {
            return bad("beta and gamma must be nonnegative");
        }
        if self.alpha == 1.0 && self.beta == 0.0 && self.gamma == 0.0 {
            return bad("weights must grow: alpha > 1 or beta/gamma > 0");
        }
        if self.arithmetic == Arithmetic::Integer {
            if self.alpha != 2.0 || self.beta != 0.0 || self.gamma != 0.0 {
                return bad("integer arithmetic requires alpha = 2, beta = gamma = 0");
            }
            if self.q > 62 {
                return bad("integer arithmetic requires Q <= 62");
            }
        }
        Ok(())
    }

    pub fn is_geometric(&self) -> bool {
        self.beta == 0.0 && self.gamma == 0.0
    }

    /// Weight of position `q` (1 = oldest, Q = most recent).
    pub fn weight(&self, q: usize) -> Result<f64, MemoryError> {
        if q < 1 || q > self.q {
            return Err(MemoryError::PositionOutOfRange { q, max: self.q });
        }
        Ok(self.weight_unchecked(q))
    }

    fn weight_unchecked(&self, q: usize) -> f64 {
        if self.is_geometric() {
            return self.alpha.powi(q as i32 - 1);
        }
        let mut w = 1.0;
        for p in 1..q {
            w = self.alpha * w + self.beta * p as f64 + self.gamma;
        }
        w
    }

    /// `Threshold(r)`: sum of the `r` largest weights.
    pub fn threshold_o(&self) -> f64 {
        (self.q - self.r + 1..=self.q).map(|q| self.weight_unchecked(q)).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Store {
    Int {
        ee1: Vec<u64>,
        base: u64,
        thr_o: u64,
        top: u64,
    },
    Real {
        ee1: Vec<f64>,
        base: f64,
        thr_o: f64,
        top: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EEMemory {
    config: EEConfig,
    store: Store,
    s: usize,
    last: Option<Vec<bool>>,
}

impl EEMemory {
    /// Fresh memory: `s = 0`, `eebase = alpha^(Q-1)`, `ee1 = 0`, so the EE view
    /// of an all-zero assignment equals `eebase`.
    pub fn new(config: EEConfig, n: usize) -> Result<Self, MemoryError> {
        config.validate()?;
        let store = match config.arithmetic {
            Arithmetic::Integer => {
                let top = 1u64 << (config.q - 1);
                let thr_o = (0..config.r).map(|t| top >> t).sum();
                Store::Int {
                    ee1: vec![0; n],
                    base: top,
                    thr_o,
                    top,
                }
            }
            Arithmetic::Real => {
                let top = config.weight_unchecked(config.q);
                Store::Real {
                    ee1: vec![0.0; n],
                    base: top,
                    thr_o: config.threshold_o(),
                    top,
                }
            }
        };
        Ok(Self {
            config,
            store,
            s: 0,
            last: None,
        })
    }

    pub fn config(&self) -> &EEConfig {
        &self.config
    }

    pub fn n(&self) -> usize {
        match &self.store {
            Store::Int { ee1, .. } => ee1.len(),
            Store::Real { ee1, .. } => ee1.len(),
        }
    }

    /// Number of local optima recorded so far.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn last_optimum(&self) -> Option<&[bool]> {
        self.last.as_deref()
    }

    fn check_len(&self, x: &[bool]) -> Result<(), MemoryError> {
        if x.len() != self.n() {
            return Err(MemoryError::DimensionMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Inductive update on reaching a new true local optimum:
    /// `ee1 := top * x_j + ee1 / alpha` (floored in integer mode).
    ///
    /// The first recording sets `eebase` to the top weight alone, so that
    /// after `s` recordings `eebase` is the sum of the `s` largest weights.
    pub fn record_local_optimum(&mut self, x: &[bool]) -> Result<(), MemoryError> {
        self.check_len(x)?;
        if !self.config.is_geometric() {
            return Err(MemoryError::InductiveUnsupported);
        }
        let first = self.s == 0;
        match &mut self.store {
            Store::Int { ee1, base, top, .. } => {
                for (e, &b) in ee1.iter_mut().zip(x) {
                    *e = if b { *top } else { 0 } + *e / 2;
                }
                *base = if first { *top } else { *top + *base / 2 };
            }
            Store::Real { ee1, base, top, .. } => {
                let a = self.config.alpha;
                for (e, &b) in ee1.iter_mut().zip(x) {
                    *e = if b { *top } else { 0.0 } + *e / a;
                }
                *base = if first { *top } else { *top + *base / a };
            }
        }
        self.s += 1;
        self.last = Some(x.to_vec());
        Ok(())
    }

    /// Warm-up update for general weights while `s < Q`: the new optimum gets
    /// weight `w(s+1)` and nothing is divided.
    pub fn accumulate_prefix(&mut self, x: &[bool]) -> Result<(), MemoryError> {
        self.check_len(x)?;
        if self.s >= self.config.q {
            return Err(MemoryError::PrefixFull);
        }
        let pos = self.s + 1;
        let first = self.s == 0;
        match &mut self.store {
            Store::Int { ee1, base, .. } => {
                let w = 1u64 << (pos - 1);
                for (e, &b) in ee1.iter_mut().zip(x) {
                    if b {
                        *e += w;
                    }
                }
                *base = if first { w } else { *base + w };
            }
            Store::Real { ee1, base, .. } => {
                let w = self.config.weight_unchecked(pos);
                for (e, &b) in ee1.iter_mut().zip(x) {
                    if b {
                        *e += w;
                    }
                }
                *base = if first { w } else { *base + w };
            }
        }
        self.s = pos;
        self.last = Some(x.to_vec());
        Ok(())
    }

    pub fn ee1(&self, j: usize) -> f64 {
        match &self.store {
            Store::Int { ee1, .. } => ee1[j] as f64,
            Store::Real { ee1, .. } => ee1[j],
        }
    }

    /// Exact integer `ee1(j)` in integer mode.
    pub fn ee1_int(&self, j: usize) -> Option<u64> {
        match &self.store {
            Store::Int { ee1, .. } => Some(ee1[j]),
            Store::Real { .. } => None,
        }
    }

    pub fn eebase(&self) -> f64 {
        match &self.store {
            Store::Int { base, .. } => *base as f64,
            Store::Real { base, .. } => *base,
        }
    }

    pub fn threshold_o(&self) -> f64 {
        match &self.store {
            Store::Int { thr_o, .. } => *thr_o as f64,
            Store::Real { thr_o, .. } => *thr_o,
        }
    }

    /// `ThresholdR = min(eebase, Threshold(r))`.
    pub fn threshold_r(&self) -> f64 {
        self.eebase().min(self.threshold_o())
    }

    /// EE value of variable `j` relative to its current bit.
    pub fn ee_value(&self, j: usize, bit: bool) -> f64 {
        match &self.store {
            Store::Int { ee1, base, .. } => (if bit { ee1[j] } else { base - ee1[j] }) as f64,
            Store::Real { ee1, base, .. } => {
                if bit {
                    ee1[j]
                } else {
                    base - ee1[j]
                }
            }
        }
    }

    pub fn ee_value_int(&self, j: usize, bit: bool) -> Option<u64> {
        match &self.store {
            Store::Int { ee1, base, .. } => Some(if bit { ee1[j] } else { base - ee1[j] }),
            Store::Real { .. } => None,
        }
    }

    /// `EE(j) >= ThresholdR`, compared exactly in integer mode.
    pub fn meets_recency_threshold(&self, j: usize, bit: bool) -> bool {
        match &self.store {
            Store::Int { ee1, base, thr_o, .. } => {
                let ee = if bit { ee1[j] } else { base - ee1[j] };
                ee >= (*base).min(*thr_o)
            }
            Store::Real { .. } => self.ee_value(j, bit) >= self.threshold_r(),
        }
    }

    /// `EE(j) <= eebase - ThresholdR`: the current value of `x_j` differs from
    /// the value it held in each of the `min(r, s)` most recent optima.
    pub fn meets_complement_threshold(&self, j: usize, bit: bool) -> bool {
        match &self.store {
            Store::Int { ee1, base, thr_o, .. } => {
                let ee = if bit { ee1[j] } else { base - ee1[j] };
                ee <= base - (*base).min(*thr_o)
            }
            Store::Real { .. } => self.ee_value(j, bit) <= self.complement_threshold(),
        }
    }

    pub fn complement_ee(&self, ee: f64) -> f64 {
        self.eebase() - ee
    }

    pub fn complement_threshold(&self) -> f64 {
        self.eebase() - self.threshold_r()
    }

    /// Whether `x_j` currently equals its value in the most recent optimum,
    /// read from the EE value alone (`EE(j) >= 2^(Q-1)`).
    pub fn same_as_last_optimum(&self, j: usize, bit: bool) -> Result<bool, MemoryError> {
        if self.s == 0 || self.config.alpha != 2.0 || !self.config.is_geometric() {
            return Err(MemoryError::NeedsBinaryHistory);
        }
        Ok(match &self.store {
            Store::Int { top, .. } => self.ee_value_int(j, bit).unwrap() >= *top,
            Store::Real { top, .. } => self.ee_value(j, bit) >= *top,
        })
    }
}

/// All length-`Q` bit vectors (most recent optimum first) whose weighted sum
/// reaches `Threshold(r)`, in decreasing order of that sum.
pub fn acceptable_vectors(config: &EEConfig) -> Result<Vec<Vec<bool>>, MemoryError> {
    config.validate()?;
    if config.q > 20 {
        return Err(MemoryError::TooLarge(config.q));
    }
    let q = config.q;
    let weights: Vec<f64> = (0..q).map(|i| config.weight_unchecked(q - i)).collect();
    let thr = config.threshold_o();
    let mut found: Vec<(f64, Vec<bool>)> = Vec::new();
    for mask in 0u32..(1 << q) {
        let v: Vec<bool> = (0..q).map(|i| mask >> (q - 1 - i) & 1 == 1).collect();
        let sum: f64 = v.iter().zip(&weights).filter(|(b, _)| **b).map(|(_, w)| w).sum();
        if sum >= thr {
            found.push((sum, v));
        }
    }
    found.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| b.1.cmp(&a.1)));
    Ok(found.into_iter().map(|(_, v)| v).collect())
}
