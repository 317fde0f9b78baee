//! Reference implementations used as oracles. They share no code with the
//! library beyond the word type.

#![allow(dead_code)]

use std::collections::BTreeSet;

use llq_core::{GroupWord, LampElement, Letter};

/// Runs the lamplighter: absolute lamp positions and the final position.
pub fn simulate(w: &GroupWord) -> (i64, BTreeSet<i64>) {
    let mut pos = 0i64;
    let mut lit = BTreeSet::new();
    for l in w.letters() {
        match l {
            Letter::A | Letter::AInv => {
                if !lit.remove(&pos) {
                    lit.insert(pos);
                }
            }
            Letter::T => pos += 1,
            Letter::TInv => pos -= 1,
        }
    }
    (pos, lit)
}

/// `(delta, supp f)` in the library's coordinates, where lamps are
/// recorded relative to the final position.
pub fn naive_eval(w: &GroupWord) -> (i64, Vec<i64>) {
    let (pos, lit) = simulate(w);
    (pos, lit.into_iter().map(|p| p - pos).collect())
}

pub fn same(g: &LampElement, naive: &(i64, Vec<i64>)) -> bool {
    g.delta() == naive.0 && g.lamps().support() == naive.1
}

/// Conjugacy by definition-level checks: equal displacement, and either
/// translate-equal supports (`delta = 0`) or residue vectors that are
/// rotations of each other, compared rotation by rotation.
pub fn naive_conjugate(g: &LampElement, h: &LampElement) -> bool {
    if g.delta() != h.delta() {
        return false;
    }
    let d = g.delta();
    let sg = g.lamps().support();
    let sh = h.lamps().support();
    if d == 0 {
        if sg.len() != sh.len() {
            return false;
        }
        if sg.is_empty() {
            return true;
        }
        let off = sg[0] - sh[0];
        return sg.iter().zip(&sh).all(|(a, b)| a - b == off);
    }
    let m = d.unsigned_abs() as usize;
    let residues = |s: &[i64]| {
        let mut v = vec![false; m];
        for &p in s {
            let r = p.rem_euclid(m as i64) as usize;
            v[r] = !v[r];
        }
        v
    };
    let (rg, rh) = (residues(&sg), residues(&sh));
    (0..m).any(|s| (0..m).all(|i| rg[i] == rh[(i + s) % m]))
}

/// Words for an element list, by walking to each lamp.
pub fn word_of(g: &LampElement) -> GroupWord {
    GroupWord::from_element(g)
}
