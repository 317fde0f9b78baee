//! Left-to-right placement search for `sum x^{delta_i} f_i = 0` over `Z`.
//!
//! Placements are processed in order of their leftmost lamp. At each
//! position the bits already committed to the left are final, so the
//! patterns starting there must cancel the pending bit. Two copies of the
//! same pattern at the same position cancel each other, so each pattern type
//! starts at most once per position and whatever is left over at the end has
//! to come in pairs. Failed `(remaining counts, pending tail)` states are
//! remembered; the state is translation invariant so the position is not
//! part of the key.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::LampConfig;

struct PatternType {
    bits: Vec<bool>,
    weight: usize,
    members: Vec<usize>,
}

struct Sweep {
    types: Vec<PatternType>,
    budget: u64,
    nodes: u64,
    memo: HashSet<(Vec<u32>, Vec<u64>)>,
    memo_cap: usize,
    placed: Vec<(usize, i64)>,
}

fn pack(tail: &VecDeque<bool>) -> Vec<u64> {
    let mut out = vec![0u64; tail.len().div_ceil(64)];
    for (i, &b) in tail.iter().enumerate() {
        if b {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

impl Sweep {
    fn step(&mut self, rem: &mut Vec<u32>, tail: &mut VecDeque<bool>, pos: i64) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        if tail.is_empty() && rem.iter().all(|r| r % 2 == 0) {
            return Ok(true);
        }
        let absorb: usize = rem
            .iter()
            .zip(&self.types)
            .map(|(r, t)| *r as usize * t.weight)
            .sum();
        if tail.iter().filter(|b| **b).count() > absorb {
            return Ok(false);
        }
        let key = (rem.clone(), pack(tail));
        if self.memo.contains(&key) {
            return Ok(false);
        }

        let pending = tail.front().copied().unwrap_or(false);
        let avail: Vec<usize> = (0..rem.len()).filter(|&j| rem[j] > 0).collect();
        if avail.len() > 24 {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        for mask in 0u32..(1u32 << avail.len()) {
            let size = mask.count_ones() as usize;
            if (size % 2 == 1) != pending || (tail.is_empty() && size == 0) {
                continue;
            }
            let chosen: Vec<usize> = (0..avail.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| avail[b])
                .collect();
            let saved = tail.clone();
            for &j in &chosen {
                let bits = &self.types[j].bits;
                if tail.len() < bits.len() {
                    tail.resize(bits.len(), false);
                }
                for (i, &b) in bits.iter().enumerate() {
                    if b {
                        tail[i] ^= true;
                    }
                }
                rem[j] -= 1;
                self.placed.push((j, pos));
            }
            debug_assert!(!tail.front().copied().unwrap_or(false));
            tail.pop_front();
            while tail.back() == Some(&false) {
                tail.pop_back();
            }
            let ok = self.step(rem, tail, pos + 1)?;
            if ok {
                return Ok(true);
            }
            for &j in &chosen {
                rem[j] += 1;
                self.placed.pop();
            }
            *tail = saved;
        }
        if self.memo.len() < self.memo_cap {
            self.memo.insert(key);
        }
        Ok(false)
    }
}

/// Searches for shifts with `sum x^{delta_i} f_i = 0`. Returns the shifts
/// (zero for empty configurations) and the number of states visited.
pub(crate) fn sweep(
    lamps: &[LampConfig],
    budget: u64,
    memo_cap: usize,
) -> Result<(Option<Vec<i64>>, u64)> {
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut types: Vec<PatternType> = Vec::new();
    for (i, f) in lamps.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let bits: Vec<bool> = f.window().collect();
        let j = *index.entry(bits.clone()).or_insert_with(|| {
            types.push(PatternType {
                weight: f.weight(),
                bits,
                members: Vec::new(),
            });
            types.len() - 1
        });
        types[j].members.push(i);
    }
    let mut rem: Vec<u32> = types.iter().map(|t| t.members.len() as u32).collect();
    let mut search = Sweep {
        types,
        budget,
        nodes: 0,
        memo: HashSet::new(),
        memo_cap,
        placed: Vec::new(),
    };
    let mut tail = VecDeque::new();
    if !search.step(&mut rem, &mut tail, 0)? {
        return Ok((None, search.nodes));
    }

    let mut shifts = vec![0i64; lamps.len()];
    let mut next: Vec<usize> = vec![0; search.types.len()];
    let mut starts = search.placed.clone();
    // Leftover copies cancel in pairs.
    for (j, t) in search.types.iter().enumerate() {
        let used = starts.iter().filter(|(tj, _)| *tj == j).count();
        starts.extend(std::iter::repeat_n((j, 0), t.members.len() - used));
    }
    for (j, pos) in starts {
        let i = search.types[j].members[next[j]];
        next[j] += 1;
        shifts[i] = pos - lamps[i].min().expect("nonempty pattern");
    }
    Ok((Some(shifts), search.nodes))
}

/// Groups shifted supports into clusters that overlap and moves each
/// cluster so its span is centred on 0. The shifted sum stays zero because
/// every cluster cancels on its own.
pub(crate) fn center_clusters(lamps: &[LampConfig], shifts: &mut [i64]) {
    let n = lamps.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut owner: HashMap<i64, usize> = HashMap::new();
    for i in 0..n {
        for p in lamps[i].iter_support() {
            match owner.entry(p + shifts[i]) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    let (a, b) = (find(&mut parent, *e.get()), find(&mut parent, i));
                    parent[a] = b;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(i);
                }
            }
        }
    }
    let mut span: HashMap<usize, (i64, i64)> = HashMap::new();
    for i in 0..n {
        let (Some(m), Some(mm)) = (lamps[i].min(), lamps[i].max()) else {
            shifts[i] = 0;
            continue;
        };
        let r = find(&mut parent, i);
        let e = span.entry(r).or_insert((i64::MAX, i64::MIN));
        e.0 = e.0.min(m + shifts[i]);
        e.1 = e.1.max(mm + shifts[i]);
    }
    for i in 0..n {
        if lamps[i].is_zero() {
            continue;
        }
        let r = find(&mut parent, i);
        let (lo, hi) = span[&r];
        shifts[i] -= (lo + hi).div_euclid(2);
    }
}
