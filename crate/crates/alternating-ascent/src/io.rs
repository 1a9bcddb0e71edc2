//! QUBO text format.
//!
//! ```text
//! # comment
//! n m
//! i j v      (m lines, 1 <= i <= j <= n, integer v)
//! ```
//!
//! Duplicate pairs are summed. Each pair term is counted once in the objective.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::qubo::{QuboError, QuboInstance};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("file has no header line")]
    Empty,
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error(transparent)]
    Instance(#[from] QuboError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn bad(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line { line, msg: msg.into() }
}

fn fields<const N: usize>(line: usize, text: &str) -> Result<[&str; N], ParseError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    parts
        .try_into()
        .map_err(|p: Vec<&str>| bad(line, format!("expected {N} fields, found {}", p.len())))
}

pub fn parse_qubo(text: &str) -> Result<QuboInstance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(ParseError::Empty)?;
    let [n, m] = fields::<2>(hl, header)?;
    let n: usize = n.parse().map_err(|_| bad(hl, format!("bad variable count {n:?}")))?;
    let m: usize = m.parse().map_err(|_| bad(hl, format!("bad entry count {m:?}")))?;
    if n == 0 {
        return Err(bad(hl, "n must be at least 1"));
    }
    let mut terms = Vec::with_capacity(m);
    for (ln, l) in lines {
        let [i, j, v] = fields::<3>(ln, l)?;
        let idx = |s: &str| -> Result<usize, ParseError> {
            let k: usize = s.parse().map_err(|_| bad(ln, format!("bad index {s:?}")))?;
            if k < 1 || k > n {
                return Err(bad(ln, format!("index {k} outside 1..={n}")));
            }
            Ok(k - 1)
        };
        let (i, j) = (idx(i)?, idx(j)?);
        if i > j {
            return Err(bad(ln, "entries must satisfy i <= j"));
        }
        let v: i64 = v.parse().map_err(|_| bad(ln, format!("bad coefficient {v:?}")))?;
        terms.push((i, j, v));
    }
    if terms.len() != m {
        return Err(ParseError::EntryCount {
            expected: m,
            found: terms.len(),
        });
    }
    Ok(QuboInstance::new(n, terms)?)
}

pub fn load_qubo(path: impl AsRef<Path>) -> Result<QuboInstance, ParseError> {
    parse_qubo(&std::fs::read_to_string(path)?)
}

pub fn write_qubo(inst: &QuboInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", inst.n(), inst.entries().len());
    for (&(i, j), &v) in inst.entries() {
        let _ = writeln!(out, "{} {} {}", i + 1, j + 1, v);
    }
    out
}
