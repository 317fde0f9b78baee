//! Seeded random and exhaustive inputs for tests and benchmarks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equations::QuadEquation;
use crate::group::{GroupWord, LampConfig, LampElement, Letter};
use crate::hardness::{encode, planted_instance, TPartInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const LETTERS: [Letter; 4] = [Letter::A, Letter::AInv, Letter::T, Letter::TInv];

/// A uniformly random word of exactly `len` letters.
pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> GroupWord {
    GroupWord::from_letters((0..len).map(|_| LETTERS[rng.gen_range(0..4)]).collect())
}

/// A random element with `|delta| <= spread` and lamps in `[-spread, spread]`.
pub fn random_element<R: Rng>(rng: &mut R, spread: i64) -> LampElement {
    let delta = rng.gen_range(-spread..=spread);
    let lamps = LampConfig::from_support((-spread..=spread).filter(|_| rng.gen_bool(0.5)));
    LampElement::new(delta, lamps)
}

/// A random element of `Y` with even lamp parity.
pub fn random_derived<R: Rng>(rng: &mut R, spread: i64) -> LampElement {
    let mut g = random_element(rng, spread);
    let mut f = g.lamps().clone();
    if f.parity() {
        f.toggle(spread + 1);
    }
    g = LampElement::new(0, f);
    g
}

/// A random element with even `delta` and even lamp parity.
pub fn random_v<R: Rng>(rng: &mut R, spread: i64) -> LampElement {
    let g = random_element(rng, spread);
    let mut f = g.lamps().clone();
    if f.parity() {
        f.toggle(spread + 1);
    }
    LampElement::new(2 * (g.delta() / 2), f)
}

/// Every word of length at most `max_len`, shortest first.
pub fn all_words(max_len: usize) -> Vec<GroupWord> {
    let mut out = vec![GroupWord::identity()];
    let mut layer = vec![GroupWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 4);
        for w in &layer {
            for l in LETTERS {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// One shortest representative per element among words of length at most
/// `max_len`, in order of first appearance.
pub fn distinct_short_words(max_len: usize) -> Vec<GroupWord> {
    let mut seen = HashSet::new();
    all_words(max_len)
        .into_iter()
        .filter(|w| seen.insert(w.eval()))
        .collect()
}

/// All multisets of `size` indices into `0..n`, as non-decreasing tuples.
pub fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Words `c1` and `c2 = z^{-1} c1 z` of about `n` letters in total.
pub fn conjugacy_fixture(n: usize, seed: u64) -> (GroupWord, GroupWord) {
    let mut r = rng(seed);
    let g = random_word(&mut r, n / 2);
    let z = random_word(&mut r, n / 4);
    (g.clone(), z.inverse().concat(&g).concat(&z))
}

/// A solvable genus-1 orientable equation with two random coefficients of
/// `n / 2` letters each.
pub fn orientable_fixture(n: usize, seed: u64) -> QuadEquation {
    let mut r = rng(seed);
    let c1 = random_word(&mut r, n / 2);
    let mut c2 = random_word(&mut r, (n / 2).saturating_sub(2));
    c2.extend_from(&GroupWord::t_pow(-(c1.sigma_t() + c2.sigma_t())));
    if c1.sigma_a() != c2.sigma_a() {
        c2.push(Letter::A);
    }
    QuadEquation::orientable(1, vec![c1, c2]).expect("genus 1")
}

/// A spherical equation: `k - 1` random words of `len` letters, closed by
/// a power of `t` so the displacements balance.
pub fn spherical_fixture(k: usize, len: usize, seed: u64) -> QuadEquation {
    let mut r = rng(seed);
    let mut coeffs: Vec<GroupWord> = (0..k.max(1) - 1).map(|_| random_word(&mut r, len)).collect();
    let total: i64 = coeffs.iter().map(GroupWord::sigma_t).sum();
    coeffs.push(GroupWord::t_pow(-total));
    QuadEquation::spherical(coeffs).expect("k >= 1")
}

/// A planted positive 3-partition instance and its encoding.
pub fn three_partition_fixture(k: usize, target: u64, seed: u64) -> (TPartInstance, QuadEquation) {
    let inst = planted_instance(&mut rng(seed), k, target).expect("target admits values");
    let eq = encode(&inst);
    (inst, eq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_words(2).len(), 1 + 4 + 16);
        assert_eq!(multisets(4, 2).len(), 10);
        let d = distinct_short_words(2);
        assert!(d[0].is_empty());
        // a a and a A both evaluate to the identity.
        assert!(d.len() < 21);
    }

    #[test]
    fn seeded_generators_repeat() {
        let a = random_word(&mut rng(3), 50);
        let b = random_word(&mut rng(3), 50);
        assert_eq!(a, b);
        let mut r = rng(9);
        for _ in 0..50 {
            assert!(random_derived(&mut r, 6).in_derived());
            assert!(random_v(&mut r, 6).in_v());
        }
    }
}
