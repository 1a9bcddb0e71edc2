//! Myopic Correction: scheduled reversal of the oldest moves of a phase.
//!
//! Moves are queued on a singly linked list of pooled slots. Slot `h` holds
//! variable `id[h]`; `rev_id[k]` points at the newest slot for `k`, so an older
//! slot for the same variable is recognised as stale and skipped without
//! disturbing the rest of the queue.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

const BEGIN: usize = 0;

/// Ordered `(add_num, drop_num)` pairs; the last pair repeats forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McSchedule {
    steps: Vec<(usize, usize)>,
}

impl McSchedule {
    pub fn new(steps: Vec<(usize, usize)>) -> Result<Self, String> {
        if steps.is_empty() {
            return Err("schedule needs at least one step".into());
        }
        if steps.iter().any(|&(a, _)| a == 0) {
            return Err("add_num must be at least 1".into());
        }
        Ok(Self { steps })
    }

    /// (3,1), (4,2), (5,2) x3, then (5,1) repeating.
    pub fn a() -> Self {
        Self {
            steps: vec![(3, 1), (4, 2), (5, 2), (5, 2), (5, 2), (5, 1)],
        }
    }

    /// (3,1), (4,1), (5,1) x3, then (6,1) repeating.
    pub fn b() -> Self {
        Self {
            steps: vec![(3, 1), (4, 1), (5, 1), (5, 1), (5, 1), (6, 1)],
        }
    }

    pub fn constant(add: usize, drop: usize) -> Self {
        Self {
            steps: vec![(add.max(1), drop)],
        }
    }

    pub fn step(&self, pos: usize) -> (usize, usize) {
        self.steps[pos.min(self.steps.len() - 1)]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct McStats {
    pub recorded_adds: u64,
    pub unrecorded_adds: u64,
    pub fresh_drops: u64,
    pub stale_drops: u64,
    /// Drop steps whose oldest pending move had never been recorded.
    pub missed_drops: u64,
}

#[derive(Debug, Clone)]
pub struct McState {
    after: Vec<usize>,
    id: Vec<usize>,
    seq: Vec<u64>,
    rev_id: Vec<usize>,
    pool: Vec<usize>,
    h_last: usize,
    end_link: usize,
    moves_added: usize,
    h_cap: usize,
    pos: usize,
    schedule: McSchedule,
    adds_since_reset: u64,
    unrecorded: VecDeque<u64>,
    pub stats: McStats,
}

pub fn default_capacity(n: usize) -> usize {
    16.max(n.div_ceil(12))
}

impl McState {
    pub fn new(n: usize, h_cap: usize, schedule: McSchedule) -> Self {
        let mut mc = Self {
            after: vec![0; h_cap + 1],
            id: vec![0; h_cap + 1],
            seq: vec![0; h_cap + 1],
            rev_id: vec![0; n],
            pool: vec![0; h_cap + 1],
            h_last: 0,
            end_link: BEGIN,
            moves_added: 0,
            h_cap,
            pos: 0,
            schedule,
            adds_since_reset: 0,
            unrecorded: VecDeque::new(),
            stats: McStats::default(),
        };
        mc.reset();
        mc
    }

    /// Empties the list, refills the pool and restarts the schedule.
    pub fn reset(&mut self) {
        for h in 1..=self.h_cap {
            self.pool[h] = h;
        }
        self.h_last = self.h_cap;
        self.end_link = BEGIN;
        self.after[BEGIN] = BEGIN;
        self.moves_added = 0;
        self.pos = 0;
        self.adds_since_reset = 0;
        self.unrecorded.clear();
    }

    pub fn capacity(&self) -> usize {
        self.h_cap
    }

    pub fn pool_len(&self) -> usize {
        self.h_last
    }

    pub fn moves_added(&self) -> usize {
        self.moves_added
    }

    /// Live slots from oldest to newest as `(slot, variable)`.
    pub fn list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut h = BEGIN;
        while h != self.end_link {
            h = self.after[h];
            out.push((h, self.id[h]));
        }
        out
    }

    pub fn is_fresh(&self, h: usize) -> bool {
        self.rev_id[self.id[h]] == h
    }

    pub fn current_step(&self) -> (usize, usize) {
        self.schedule.step(self.pos)
    }

    /// Queues flip `k`. S1 choices are never queued. Returns true when a drop
    /// step is now due.
    pub fn add(&mut self, k: usize, s1_active: bool) -> bool {
        if s1_active {
            return false;
        }
        self.moves_added += 1;
        self.adds_since_reset += 1;
        if self.h_last > 0 {
            let h = self.pool[self.h_last];
            self.h_last -= 1;
            self.id[h] = k;
            self.seq[h] = self.adds_since_reset;
            self.after[self.end_link] = h;
            self.end_link = h;
            self.rev_id[k] = h;
            self.stats.recorded_adds += 1;
        } else {
            self.unrecorded.push_back(self.adds_since_reset);
            self.stats.unrecorded_adds += 1;
        }
        self.moves_added >= self.current_step().0
    }

    /// Pops `drop_num` entries and returns the fresh variables to reverse,
    /// oldest first. Advances the schedule.
    pub fn drop_step(&mut self) -> Vec<usize> {
        let (_, drop_num) = self.current_step();
        let mut reversed = Vec::new();
        for _ in 0..drop_num {
            if self.end_link == BEGIN {
                self.stats.missed_drops += self.unrecorded.len() as u64;
                self.unrecorded.clear();
                break;
            }
            let h = self.after[BEGIN];
            while self.unrecorded.front().is_some_and(|&u| u < self.seq[h]) {
                self.unrecorded.pop_front();
                self.stats.missed_drops += 1;
            }
            let k = self.id[h];
            if self.rev_id[k] == h {
                reversed.push(k);
                self.stats.fresh_drops += 1;
            } else {
                self.stats.stale_drops += 1;
            }
            self.after[BEGIN] = self.after[h];
            if h == self.end_link {
                self.end_link = BEGIN;
            }
            self.h_last += 1;
            self.pool[self.h_last] = h;
        }
        self.moves_added = 0;
        self.pos += 1;
        reversed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_default() {
        assert_eq!(default_capacity(10), 16);
        assert_eq!(default_capacity(600), 50);
    }

    #[test]
    fn third_add_unrecorded_with_two_slots() {
        let mut mc = McState::new(5, 2, McSchedule::constant(10, 1));
        mc.add(0, false);
        mc.add(1, false);
        mc.add(2, false);
        assert_eq!(mc.list().len(), 2);
        assert_eq!(mc.stats.unrecorded_adds, 1);
        assert_eq!(mc.moves_added(), 3);
    }

    #[test]
    fn s1_add_is_ignored() {
        let mut mc = McState::new(5, 4, McSchedule::b());
        assert!(!mc.add(3, true));
        assert_eq!(mc.moves_added(), 0);
        assert!(mc.list().is_empty());
    }

    #[test]
    fn drop_on_empty_is_noop() {
        let mut mc = McState::new(5, 4, McSchedule::a());
        assert!(mc.drop_step().is_empty());
        assert_eq!(mc.pool_len(), 4);
    }

    #[test]
    fn reset_is_idempotent() {
        let mut mc = McState::new(5, 4, McSchedule::a());
        mc.add(1, false);
        mc.reset();
        let snapshot = (mc.list(), mc.pool_len(), mc.moves_added());
        mc.reset();
        assert_eq!(snapshot, (mc.list(), mc.pool_len(), mc.moves_added()));
        assert!(mc.list().is_empty());
    }

    #[test]
    fn schedule_b_drop_points() {
        let mut mc = McState::new(20, 16, McSchedule::b());
        let mut due_after = Vec::new();
        let mut count = 0;
        for k in 0..12 {
            count += 1;
            if mc.add(k, false) {
                due_after.push(count);
                count = 0;
                mc.drop_step();
            }
        }
        assert_eq!(due_after, vec![3, 4, 5]);
    }

    #[test]
    fn emptied_list_accepts_new_adds() {
        let mut mc = McState::new(5, 3, McSchedule::constant(1, 1));
        assert!(mc.add(0, false));
        assert_eq!(mc.drop_step(), vec![0]);
        assert!(mc.list().is_empty());
        mc.add(1, false);
        assert_eq!(mc.list().iter().map(|&(_, k)| k).collect::<Vec<_>>(), vec![1]);
    }
}
