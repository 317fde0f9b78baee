//! Bounded brute force: every assignment whose variables have
//! `|delta| <= B` and lamps inside `[-B, B]`.
//!
//! Once all the `t`-exponents are fixed, the lamp part of the left-hand side
//! is affine in the unknown lamp configurations,
//! `sum_v P_v f_v + C = 0`, so the `2^{(2B+1) n}` lamp choices are covered
//! exactly by Gaussian elimination over GF(2) on the columns `x^j P_v`,
//! `|j| <= B`. The `z`-columns depend only on the coefficients, and the
//! constant splits into one term per `z_j`, so each term is reduced once
//! and tuples are checked by xor-ing reduced vectors.

use crate::error::{Error, Result};
use crate::group::{GroupWord, LampConfig, LampElement};

use super::{verify, Form, QuadEquation, Witness};

/// Default cap on `(t-exponent tuples) x (reductions)` for one call.
pub const DEFAULT_ORACLE_BUDGET: u64 = 2_000_000_000;

#[derive(Clone, Copy)]
enum Atom {
    Var { var: usize, inv: bool },
}

/// Packed vectors over the positions `[-offset, offset]`.
#[derive(Clone)]
struct Space {
    offset: i64,
    words: usize,
}

impl Space {
    fn zero(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn pack(&self, f: &LampConfig) -> Vec<u64> {
        let mut v = self.zero();
        for p in f.iter_support() {
            let i = (p + self.offset) as usize;
            v[i / 64] ^= 1 << (i % 64);
        }
        v
    }
}

fn xor_into(acc: &mut [u64], v: &[u64]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a ^= b;
    }
}

fn lowest_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn bit(v: &[u64], i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

/// A normal form paired with the combination of input columns it used.
type Reduced = (Vec<u64>, Vec<u64>);

/// Echelon basis with the combination of input columns behind each row.
struct Basis {
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
    combo_words: usize,
}

impl Basis {
    fn new(columns: usize) -> Self {
        Basis {
            rows: Vec::new(),
            combo_words: columns.div_ceil(64).max(1),
        }
    }

    /// Reduces `v` to its normal form modulo the span, returning the
    /// combination of columns that was subtracted.
    fn reduce(&self, v: &mut [u64]) -> Vec<u64> {
        let mut combo = vec![0; self.combo_words];
        for (pivot, row, row_combo) in &self.rows {
            if bit(v, *pivot) {
                xor_into(v, row);
                xor_into(&mut combo, row_combo);
            }
        }
        combo
    }

    fn insert(&mut self, column: usize, mut v: Vec<u64>) {
        let mut combo = self.reduce(&mut v);
        combo[column / 64] ^= 1 << (column % 64);
        if let Some(pivot) = lowest_bit(&v) {
            self.rows.push((pivot, v, combo));
        }
    }
}

struct Problem<'a> {
    eq: &'a QuadEquation,
    bound: i64,
    coeffs: Vec<LampElement>,
    /// Handle variables and the order they occur in, left to right.
    handle_atoms: Vec<Atom>,
    handles: usize,
    space: Space,
}

impl<'a> Problem<'a> {
    fn new(eq: &'a QuadEquation, bound: i64) -> Self {
        let coeffs = eq.coefficient_elements();
        let g = eq.genus() as usize;
        let mut handle_atoms = Vec::new();
        let handles = match eq.form() {
            Form::Spherical => 0,
            Form::Orientable => {
                for i in 0..g {
                    let (x, y) = (2 * i, 2 * i + 1);
                    handle_atoms.push(Atom::Var { var: x, inv: false });
                    handle_atoms.push(Atom::Var { var: y, inv: false });
                    handle_atoms.push(Atom::Var { var: x, inv: true });
                    handle_atoms.push(Atom::Var { var: y, inv: true });
                }
                2 * g
            }
            Form::NonOrientable => {
                for i in 0..g {
                    handle_atoms.push(Atom::Var { var: i, inv: false });
                    handle_atoms.push(Atom::Var { var: i, inv: false });
                }
                g
            }
        };
        // Every exponent below is bounded by the sum of all |t|-moves,
        // plus one variable shift and one column shift.
        let total: i64 = coeffs.iter().map(|c| c.delta().abs()).sum();
        let reach = coeffs
            .iter()
            .filter_map(|c| Some(c.lamps().min()?.abs().max(c.lamps().max()?.abs())))
            .max()
            .unwrap_or(0);
        let forced = total / 2 + (handles as i64) * bound;
        let vars = (handles + coeffs.len()) as i64;
        let s = 2 * vars * (bound + forced) + total;
        let offset = s + bound + forced + bound.max(reach) + 1;
        let space = Space {
            offset,
            words: (2 * offset as usize + 1).div_ceil(64),
        };
        Problem {
            eq,
            bound,
            coeffs,
            handle_atoms,
            handles,
            space,
        }
    }

    fn width(&self) -> usize {
        (2 * self.bound + 1) as usize
    }

    /// `sum_v P_v f_v` for the handle variables, as the list of their
    /// coefficient polynomials.
    fn handle_coefficients(&self, deltas: &[i64]) -> Vec<LampConfig> {
        let mut coeff = vec![LampConfig::zero(); self.handles];
        let mut s: i64 = self.coeffs.iter().map(LampElement::delta).sum();
        for atom in self.handle_atoms.iter().rev() {
            let Atom::Var { var, inv } = *atom;
            let dv = deltas[var];
            if inv {
                coeff[var].toggle(dv - s);
                s -= dv;
            } else {
                coeff[var].toggle(-s);
                s += dv;
            }
        }
        coeff
    }

    fn suffix(&self) -> Vec<i64> {
        let k = self.coeffs.len();
        let mut suffix = vec![0i64; k + 1];
        for j in (0..k).rev() {
            suffix[j] = suffix[j + 1] + self.coeffs[j].delta();
        }
        suffix
    }

    fn basis(&self, handle_coeffs: &[LampConfig]) -> Basis {
        let k = self.coeffs.len();
        let w = self.width();
        let suffix = self.suffix();
        let mut basis = Basis::new((self.handles + k) * w);
        let add = |var: usize, p: &LampConfig, basis: &mut Basis| {
            if p.is_zero() {
                return;
            }
            for j in -self.bound..=self.bound {
                let col = var * w + (j + self.bound) as usize;
                basis.insert(col, self.space.pack(&p.times_monomial(j)));
            }
        };
        for (v, p) in handle_coeffs.iter().enumerate() {
            add(v, p, &mut basis);
        }
        for j in 0..k {
            let p = LampConfig::from_toggles([-suffix[j + 1], -suffix[j]]);
            add(self.handles + j, &p, &mut basis);
        }
        basis
    }

    /// Searches the `z` exponents for a fixed handle part. `reduced[j][i]`
    /// is the normal form of the constant term of `z_j` at exponent
    /// `i - B`.
    fn search_z(
        reduced: &[Vec<(Vec<u64>, Vec<u64>)>],
        j: usize,
        acc: &mut Vec<u64>,
        picks: &mut Vec<usize>,
    ) -> bool {
        if j == reduced.len() {
            return acc.iter().all(|w| *w == 0);
        }
        for (i, (v, _)) in reduced[j].iter().enumerate() {
            xor_into(acc, v);
            picks.push(i);
            if Self::search_z(reduced, j + 1, acc, picks) {
                return true;
            }
            picks.pop();
            xor_into(acc, v);
        }
        false
    }

    fn handle_tuples(&self) -> Vec<Vec<i64>> {
        let b = self.bound;
        let h = self.handles;
        let free = match self.eq.form() {
            Form::NonOrientable => h - 1,
            _ => h,
        };
        let total: i64 = self.coeffs.iter().map(LampElement::delta).sum();
        let mut out = Vec::new();
        let mut cur = vec![-b; free];
        loop {
            let mut t = cur.clone();
            if self.eq.form() == Form::NonOrientable {
                let rest = total + 2 * t.iter().sum::<i64>();
                if rest % 2 == 0 {
                    t.push(-rest / 2);
                    out.push(t);
                }
            } else {
                out.push(t);
            }
            let mut i = 0;
            loop {
                if i == free {
                    return out;
                }
                if cur[i] < b {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -b;
                i += 1;
            }
        }
    }

    fn solve(&self, budget: u64) -> Result<Option<Witness>> {
        let k = self.coeffs.len();
        let total: i64 = self.coeffs.iter().map(LampElement::delta).sum();
        if self.eq.form() != Form::NonOrientable && total != 0 {
            return Ok(None);
        }
        let w = self.width();
        let tuples = self.handle_tuples();
        let per_tuple = (w as u64).saturating_pow(k as u32);
        let cost = (tuples.len() as u64).saturating_mul(per_tuple.max(1));
        if cost > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let suffix = self.suffix();
        let mut cached: Option<(Vec<LampConfig>, Basis, Vec<Vec<Reduced>>)> = None;
        for deltas in tuples {
            let hc = self.handle_coefficients(&deltas);
            if cached.as_ref().is_none_or(|(key, _, _)| *key != hc) {
                let basis = self.basis(&hc);
                let reduced: Vec<Vec<Reduced>> = (0..k)
                    .map(|j| {
                        (-self.bound..=self.bound)
                            .map(|dz| {
                                let piece = self.coeffs[j].lamps().times_monomial(-suffix[j + 1] - dz);
                                let mut v = self.space.pack(&piece);
                                let combo = basis.reduce(&mut v);
                                (v, combo)
                            })
                            .collect()
                    })
                    .collect();
                cached = Some((hc, basis, reduced));
            }
            let (_, basis, reduced) = cached.as_ref().unwrap();
            let mut acc = self.space.zero();
            let mut picks = Vec::with_capacity(k);
            if !Self::search_z(reduced, 0, &mut acc, &mut picks) {
                continue;
            }
            // The constant equals the xor of the subtracted combinations.
            let mut combo = vec![0u64; basis.combo_words];
            for (j, &i) in picks.iter().enumerate() {
                xor_into(&mut combo, &reduced[j][i].1);
            }
            let nvars = self.handles + k;
            let mut lamps = vec![LampConfig::zero(); nvars];
            for (v, lamp) in lamps.iter_mut().enumerate() {
                for c in 0..w {
                    if bit(&combo, v * w + c) {
                        lamp.toggle(c as i64 - self.bound);
                    }
                }
            }
            let mut exps = deltas.clone();
            exps.extend(picks.iter().map(|&i| i as i64 - self.bound));
            let names = self.eq.variables();
            let mut witness = Witness::new();
            for (v, name) in names.iter().enumerate() {
                let value = LampElement::new(exps[v], lamps[v].clone());
                witness.set(name, GroupWord::from_element(&value));
            }
            witness.verified = verify(self.eq, &witness)?;
            if !witness.verified {
                return Err(Error::WitnessCheck("oracle assignment".into()));
            }
            return Ok(Some(witness));
        }
        Ok(None)
    }
}

/// Some assignment inside the box, verified by substitution.
pub fn oracle_search(eq: &QuadEquation, bound: u64, budget: u64) -> Result<Option<Witness>> {
    Problem::new(eq, bound as i64).solve(budget)
}

/// True iff some assignment with `|delta| <= B` and lamps in `[-B, B]`
/// (the forced `x_g` exponent for square handles) satisfies the equation.
pub fn oracle_solve(eq: &QuadEquation, bound: u64) -> Result<bool> {
    Ok(oracle_search(eq, bound, DEFAULT_ORACLE_BUDGET)?.is_some())
}
