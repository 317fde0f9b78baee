//! Depth-first enumeration of shift tuples over packed bit states.
//!
//! Level `i` picks one candidate shift for coefficient `i`, which toggles a
//! fixed set of state bits. After the last level a leaf test inspects the
//! running sum and either rejects it or returns the final coefficient's
//! shift. Candidates are tried in ascending order, so the first hit is the
//! lexicographically least tuple.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

pub(crate) struct Level {
    pub values: Vec<i64>,
    /// Bit indices toggled by each candidate, parallel to `values`.
    pub masks: Vec<Vec<u32>>,
    /// Bits toggled by any single candidate.
    pub weight: usize,
}

pub(crate) struct Search<'a, F> {
    pub bits: usize,
    pub levels: Vec<Level>,
    /// Bits the leaf test can still absorb.
    pub leaf_weight: usize,
    pub leaf: &'a F,
    pub memo_cap: usize,
}

pub(crate) struct Found {
    pub shifts: Vec<i64>,
}

struct Branch {
    memo: HashSet<(u32, Box<[u64]>)>,
    count: u64,
}

fn toggle(state: &mut [u64], mask: &[u32]) {
    for &b in mask {
        state[(b / 64) as usize] ^= 1u64 << (b % 64);
    }
}

fn popcount(state: &[u64]) -> usize {
    state.iter().map(|w| w.count_ones() as usize).sum()
}

impl<'a, F> Search<'a, F>
where
    F: Fn(&[u64]) -> Option<i64> + Sync,
{
    fn remaining(&self, depth: usize) -> usize {
        self.levels[depth..].iter().map(|l| l.weight).sum::<usize>() + self.leaf_weight
    }

    fn dfs(
        &self,
        depth: usize,
        state: &mut [u64],
        chosen: &mut Vec<i64>,
        branch: &mut Branch,
        remaining: &[usize],
    ) -> Option<i64> {
        if depth == self.levels.len() {
            branch.count += 1;
            return (self.leaf)(state);
        }
        if popcount(state) > remaining[depth] {
            return None;
        }
        let key = (depth as u32, Box::<[u64]>::from(&*state));
        if branch.memo.contains(&key) {
            return None;
        }
        let level = &self.levels[depth];
        for (v, mask) in level.values.iter().zip(&level.masks) {
            toggle(state, mask);
            chosen.push(*v);
            if let Some(last) = self.dfs(depth + 1, state, chosen, branch, remaining) {
                return Some(last);
            }
            chosen.pop();
            toggle(state, mask);
        }
        if branch.memo.len() < self.memo_cap {
            branch.memo.insert(key);
        }
        None
    }

    fn run_branch(&self, first: usize, remaining: &[usize]) -> (Option<Found>, u64) {
        let words = self.bits.div_ceil(64).max(1);
        let mut state = vec![0u64; words];
        let mut chosen = Vec::with_capacity(self.levels.len() + 1);
        let mut branch = Branch {
            memo: HashSet::new(),
            count: 0,
        };
        let level = &self.levels[0];
        toggle(&mut state, &level.masks[first]);
        chosen.push(level.values[first]);
        let hit = self.dfs(1, &mut state, &mut chosen, &mut branch, remaining);
        let found = hit.map(|last| {
            chosen.push(last);
            Found { shifts: chosen }
        });
        (found, branch.count)
    }

    /// Runs the search with `threads` workers. The answer and the reported
    /// count do not depend on the worker count: branches are ordered by the
    /// first coordinate and only branches up to the winning one are counted.
    pub fn run(&self, threads: usize) -> (Option<Found>, u64) {
        let remaining: Vec<usize> = (0..=self.levels.len()).map(|d| self.remaining(d)).collect();
        if self.levels.is_empty() {
            let words = self.bits.div_ceil(64).max(1);
            let state = vec![0u64; words];
            let found = (self.leaf)(&state).map(|last| Found { shifts: vec![last] });
            return (found, 1);
        }
        let n = self.levels[0].values.len();
        if threads <= 1 || n < 2 {
            let mut total = 0;
            for i in 0..n {
                let (found, count) = self.run_branch(i, &remaining);
                total += count;
                if found.is_some() {
                    return (found, total);
                }
            }
            return (None, total);
        }
        let counts: Vec<AtomicU64> = (0..n).map(|_| AtomicU64::new(0)).collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let winner = pool.install(|| {
            (0..n).into_par_iter().find_map_first(|i| {
                let (found, count) = self.run_branch(i, &remaining);
                counts[i].store(count, Ordering::Relaxed);
                found.map(|f| (i, f))
            })
        });
        let upto = winner.as_ref().map_or(n, |(i, _)| i + 1);
        let total = counts[..upto].iter().map(|c| c.load(Ordering::Relaxed)).sum();
        (winner.map(|(_, f)| f), total)
    }
}
