//! 3-partition as spherical equations with coefficients in `Y`.
//!
//! A value `y` becomes `c_y = prod_{i<y} t^i a t^{-i}`, a run of `y` lit
//! lamps, and the target becomes `k` runs of `T` lamps separated by single
//! gaps. The equation `prod z_i^{-1} c_{s_i} z_i c^{-1} = 1` is solvable iff
//! the runs `s_i` can be slid to tile the target, i.e. iff the instance has
//! a partition into triples.

use rand::Rng;

use crate::equations::{QuadEquation, ShiftCertificate};
use crate::error::{Error, Result};
use crate::group::{GroupWord, LampElement, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPartInstance {
    values: Vec<u64>,
    k: usize,
    target: u64,
}

/// Indices into the instance, three per block.
pub type Partition = Vec<[usize; 3]>;

impl TPartInstance {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    /// Parses `k=<int>` followed by comma-separated values; `#` lines are
    /// comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut k = None;
        let mut values = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("k=") {
                k = Some(rest.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidInstance(format!("bad k {:?}", rest))
                })?);
                continue;
            }
            for item in line.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                values.push(item.parse::<u64>().map_err(|_| {
                    Error::InvalidInstance(format!("bad value {:?}", item))
                })?);
            }
        }
        let k = k.ok_or_else(|| Error::InvalidInstance("missing k= line".into()))?;
        validate(values, k)
    }
}

impl std::fmt::Display for TPartInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "k={}", self.k)?;
        let items: Vec<String> = self.values.iter().map(u64::to_string).collect();
        writeln!(f, "{}", items.join(","))
    }
}

/// Checks `|S| = 3k`, `k | sum S` and `T/4 < s < T/2` for every value.
pub fn validate(values: Vec<u64>, k: usize) -> Result<TPartInstance> {
    if k == 0 {
        return Err(Error::InvalidInstance("k must be positive".into()));
    }
    if values.len() != 3 * k {
        return Err(Error::InvalidInstance(format!(
            "expected {} values, got {}",
            3 * k,
            values.len()
        )));
    }
    let sum: u64 = values.iter().sum();
    if !sum.is_multiple_of(k as u64) {
        return Err(Error::InvalidInstance(format!(
            "sum {} is not divisible by k = {}",
            sum, k
        )));
    }
    let target = sum / k as u64;
    if let Some(s) = values.iter().find(|&&s| 4 * s <= target || 2 * s >= target) {
        return Err(Error::InvalidInstance(format!(
            "value {} outside ({}/4, {}/2)",
            s, target, target
        )));
    }
    Ok(TPartInstance { values, k, target })
}

/// `c_y = prod_{i<y} t^i a t^{-i}`, freely reduced to `(a t)^{y-1} a t^{-(y-1)}`.
pub fn run_word(y: u64) -> GroupWord {
    let mut w = GroupWord::identity();
    for i in 0..y {
        if i > 0 {
            w.push(Letter::T);
        }
        w.push(Letter::A);
    }
    w.extend_from(&GroupWord::t_pow(-(y.saturating_sub(1) as i64)));
    w
}

/// `k` runs of `T` lamps with single gaps.
pub fn target_word(k: usize, target: u64) -> GroupWord {
    let mut w = GroupWord::identity();
    for b in 0..k {
        let shift = ((target + 1) * b as u64) as i64;
        w.extend_from(&GroupWord::t_pow(shift));
        w.extend_from(&run_word(target));
        w.extend_from(&GroupWord::t_pow(-shift));
    }
    w.reduced()
}

/// Coefficients `c_{s_1}, ..., c_{s_{3k}}, c^{-1}`.
pub fn encode(inst: &TPartInstance) -> QuadEquation {
    let mut coeffs: Vec<GroupWord> = inst.values.iter().map(|&s| run_word(s)).collect();
    coeffs.push(target_word(inst.k, inst.target).inverse());
    QuadEquation::spherical(coeffs).expect("at least one coefficient")
}

/// Reads the partition off a certificate for `encode(inst)`: every shifted
/// run must sit inside one block of the shifted target, without overlaps.
pub fn decode(inst: &TPartInstance, cert: &ShiftCertificate) -> Result<Partition> {
    let n = inst.values.len();
    if cert.shifts.len() != n + 1 || cert.modulus != 0 {
        return Err(Error::Tiling("certificate has the wrong shape".into()));
    }
    let eq = encode(inst);
    let lamps: Vec<_> = eq.coefficient_elements().into_iter().map(|c| c.lamps().clone()).collect();
    if !cert.holds(&lamps) {
        return Err(Error::Tiling("shifted sum does not vanish".into()));
    }
    let t = inst.target as i64;
    let origin = lamps[n].min().unwrap_or(0) + cert.shifts[n];
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); inst.k];
    let mut intervals: Vec<(i64, i64, usize)> = Vec::with_capacity(n);
    for (i, f) in lamps[..n].iter().enumerate() {
        let lo = f.min().unwrap_or(0) + cert.shifts[i];
        let hi = lo + inst.values[i] as i64 - 1;
        let rel = lo - origin;
        let b = rel.div_euclid(t + 1);
        if rel < 0 || b >= inst.k as i64 || hi - origin > b * (t + 1) + t - 1 {
            return Err(Error::Tiling(format!("run {} leaves every block", i)));
        }
        blocks[b as usize].push(i);
        intervals.push((lo, hi, i));
    }
    intervals.sort();
    for pair in intervals.windows(2) {
        if pair[1].0 <= pair[0].1 {
            return Err(Error::Tiling(format!(
                "runs {} and {} overlap",
                pair[0].2, pair[1].2
            )));
        }
    }
    blocks
        .into_iter()
        .map(|b| {
            let sum: u64 = b.iter().map(|&i| inst.values[i]).sum();
            if b.len() != 3 || sum != inst.target {
                return Err(Error::Tiling(format!("block {:?} does not sum to T", b)));
            }
            Ok([b[0], b[1], b[2]])
        })
        .collect()
}

/// Exhaustive search for a partition into triples summing to `T`.
pub fn brute_force_3part(inst: &TPartInstance, budget: u64) -> Result<Option<Partition>> {
    let mut order: Vec<usize> = (0..inst.values.len()).collect();
    order.sort_by_key(|&i| inst.values[i]);
    let vals: Vec<u64> = order.iter().map(|&i| inst.values[i]).collect();
    let mut used = vec![false; vals.len()];
    let mut out = Vec::new();
    let mut nodes = 0u64;

    fn go(
        vals: &[u64],
        target: u64,
        used: &mut [bool],
        out: &mut Vec<[usize; 3]>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let Some(a) = used.iter().position(|u| !u) else {
            return Ok(true);
        };
        used[a] = true;
        let n = vals.len();
        let mut last_b = None;
        for b in a + 1..n {
            if used[b] || last_b == Some(vals[b]) {
                continue;
            }
            last_b = Some(vals[b]);
            used[b] = true;
            let mut last_c = None;
            for c in b + 1..n {
                if used[c] || last_c == Some(vals[c]) || vals[a] + vals[b] + vals[c] != target {
                    continue;
                }
                last_c = Some(vals[c]);
                used[c] = true;
                out.push([a, b, c]);
                if go(vals, target, used, out, nodes, budget)? {
                    return Ok(true);
                }
                out.pop();
                used[c] = false;
            }
            used[b] = false;
        }
        used[a] = false;
        Ok(false)
    }

    if !go(&vals, inst.target, &mut used, &mut out, &mut nodes, budget)? {
        return Ok(None);
    }
    Ok(Some(
        out.into_iter()
            .map(|[a, b, c]| {
                let mut t = [order[a], order[b], order[c]];
                t.sort();
                t
            })
            .collect(),
    ))
}

fn window(target: u64) -> Option<(u64, u64)> {
    let lo = target / 4 + 1;
    let hi = (target - 1) / 2;
    (target >= 3 && lo <= hi).then_some((lo, hi))
}

/// Values drawn uniformly from `(T/4, T/2)` and nudged until they sum to
/// `kT`. Returns `None` when `T` admits no values.
pub fn random_instance<R: Rng>(rng: &mut R, k: usize, target: u64) -> Option<TPartInstance> {
    let (lo, hi) = window(target)?;
    if 3 * lo > target || 3 * hi < target || k == 0 {
        return None;
    }
    let mut values: Vec<u64> = (0..3 * k).map(|_| rng.gen_range(lo..=hi)).collect();
    let want = k as u64 * target;
    loop {
        let sum: u64 = values.iter().sum();
        if sum == want {
            break;
        }
        let i = rng.gen_range(0..values.len());
        if sum < want && values[i] < hi {
            values[i] += 1;
        } else if sum > want && values[i] > lo {
            values[i] -= 1;
        }
    }
    validate(values, k).ok()
}

/// A positive instance: `k` random triples that each sum to `T`, shuffled.
pub fn planted_instance<R: Rng>(rng: &mut R, k: usize, target: u64) -> Option<TPartInstance> {
    let (lo, hi) = window(target)?;
    let triples: Vec<(u64, u64, u64)> = (lo..=hi)
        .flat_map(|a| (a..=hi).map(move |b| (a, b)))
        .filter_map(|(a, b)| {
            let c = target.checked_sub(a + b)?;
            (c >= b && c <= hi).then_some((a, b, c))
        })
        .collect();
    if triples.is_empty() || k == 0 {
        return None;
    }
    let mut values = Vec::with_capacity(3 * k);
    for _ in 0..k {
        let (a, b, c) = triples[rng.gen_range(0..triples.len())];
        values.extend([a, b, c]);
    }
    for i in (1..values.len()).rev() {
        values.swap(i, rng.gen_range(0..=i));
    }
    validate(values, k).ok()
}

/// Every valid instance with `sum S <= max_sum`, values sorted ascending.
pub fn all_instances(max_sum: u64) -> Vec<TPartInstance> {
    fn multisets(lo: u64, hi: u64, len: usize, sum: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if len == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if sum < lo * len as u64 || sum > hi * len as u64 {
            return;
        }
        for v in lo..=hi.min(sum) {
            cur.push(v);
            multisets(v, hi, len - 1, sum - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=max_sum as usize {
        for target in 1..=max_sum / k as u64 {
            let Some((lo, hi)) = window(target) else {
                continue;
            };
            let mut found = Vec::new();
            multisets(lo, hi, 3 * k, k as u64 * target, &mut Vec::new(), &mut found);
            out.extend(found.into_iter().filter_map(|v| validate(v, k).ok()));
        }
    }
    out
}

/// The element `c` of the target, for checks against its lamp picture.
pub fn target_element(k: usize, target: u64) -> LampElement {
    target_word(k, target).eval()
}
