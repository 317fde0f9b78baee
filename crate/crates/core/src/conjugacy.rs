//! Linear-time conjugacy decision and conjugator search.
//!
//! For `delta = 0` two elements are conjugate iff their lamp configurations
//! are translates of each other. For `delta != 0` they are conjugate iff
//! their projections modulo `|delta|` are cyclic rotations of each other,
//! which is a single pattern-matching pass over the doubled string.

use crate::binomial::project;
use crate::error::{Error, Result};
use crate::group::{GroupWord, LampConfig, LampElement, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyAnswer {
    pub conjugate: bool,
    /// `x` with `x^{-1} c1 x = c2`.
    pub conjugator: Option<GroupWord>,
    /// The shift used to align the two lamp configurations.
    pub shift: Option<i64>,
}

impl ConjugacyAnswer {
    fn no() -> Self {
        ConjugacyAnswer {
            conjugate: false,
            conjugator: None,
            shift: None,
        }
    }
}

fn failure_function(pattern: &[bool]) -> Vec<usize> {
    let mut fail = vec![0; pattern.len()];
    let mut k = 0;
    for i in 1..pattern.len() {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// Least `shift >= 0` with `s2[(i + shift) mod n] = s1[i]` for all `i`,
/// found by matching `s1` against `s2 s2`.
pub fn cyclic_match(s1: &[bool], s2: &[bool]) -> Result<Option<usize>> {
    if s1.len() != s2.len() {
        return Err(Error::LengthMismatch {
            left: s1.len(),
            right: s2.len(),
        });
    }
    let n = s1.len();
    if n == 0 {
        return Ok(Some(0));
    }
    let fail = failure_function(s1);
    let mut k = 0;
    for i in 0..(2 * n - 1) {
        let c = s2[i % n];
        while k > 0 && c != s1[k] {
            k = fail[k - 1];
        }
        if c == s1[k] {
            k += 1;
        }
        if k == n {
            return Ok(Some(i + 1 - n));
        }
    }
    Ok(None)
}

fn same_window(f1: &LampConfig, f2: &LampConfig) -> bool {
    f1.window_len() == f2.window_len() && f1.window().eq(f2.window())
}

pub fn is_conjugate(c1: &LampElement, c2: &LampElement) -> bool {
    if c1.delta() != c2.delta() {
        return false;
    }
    let delta = c1.delta();
    if delta == 0 {
        return same_window(c1.lamps(), c2.lamps());
    }
    let d = delta.unsigned_abs();
    let p1 = project(c1.lamps(), d);
    let p2 = project(c2.lamps(), d);
    cyclic_match(p2.cyclic_bits().unwrap(), p1.cyclic_bits().unwrap())
        .expect("equal lengths")
        .is_some()
}

/// Conjugates `g = (delta, f)`, `delta > 0`, so that every lit lamp lands in
/// `{0, ..., delta - 1}`.
///
/// Conjugating by `t^i a t^{-i} = (0, x^i)` toggles lamps `i` and
/// `i - delta`. Lamps left of 0 are pulled right first, leftmost first;
/// then lamps right of `delta - 1` are pulled left, rightmost first. The
/// returned word is the product of the elementary conjugators in the order
/// they are applied.
pub fn pull_to_window(g: &LampElement) -> Result<(GroupWord, LampElement)> {
    let delta = g.delta();
    if delta <= 0 {
        return Err(Error::NonPositiveDelta(delta));
    }
    let f = g.lamps();
    let (Some(m), Some(mm)) = (f.min(), f.max()) else {
        return Ok((GroupWord::identity(), g.clone()));
    };
    let lo = m.min(0);
    let hi = mm.max(delta - 1);
    let mut bits = vec![false; (hi - lo + 1) as usize];
    for p in f.iter_support() {
        bits[(p - lo) as usize] = true;
    }
    let idx = |p: i64| (p - lo) as usize;

    let mut pulls: Vec<i64> = Vec::new();
    for i in lo..0 {
        if bits[idx(i)] {
            bits[idx(i)] = false;
            bits[idx(i + delta)] ^= true;
            pulls.push(i + delta);
        }
    }
    for i in (delta..=hi).rev() {
        if bits[idx(i)] {
            bits[idx(i)] = false;
            bits[idx(i - delta)] ^= true;
            pulls.push(i);
        }
    }

    let mut word = GroupWord::identity();
    let mut pos = 0;
    for &p in &pulls {
        word.extend_from(&GroupWord::t_pow(p - pos));
        word.push(Letter::A);
        pos = p;
    }
    word.extend_from(&GroupWord::t_pow(-pos));

    let window = LampConfig::from_bits(0, bits[idx(0)..=idx(delta - 1)].iter().copied());
    Ok((word, LampElement::new(delta, window)))
}

/// Finds `x` with `x^{-1} c1 x = c2`, or reports that none exists. Every
/// returned conjugator has been checked by exact evaluation.
pub fn find_conjugator(c1: &LampElement, c2: &LampElement) -> ConjugacyAnswer {
    if c1.delta() != c2.delta() {
        return ConjugacyAnswer::no();
    }
    let delta = c1.delta();
    let (word, shift) = if delta == 0 {
        let (f1, f2) = (c1.lamps(), c2.lamps());
        if !same_window(f1, f2) {
            return ConjugacyAnswer::no();
        }
        // f1^shift = f2 lines the lowest lamps up.
        let shift = f1.min().unwrap_or(0) - f2.min().unwrap_or(0);
        (GroupWord::t_pow(shift), shift)
    } else if delta < 0 {
        // x^{-1} c1 x = c2 iff x^{-1} c1^{-1} x = c2^{-1}.
        return find_conjugator(&c1.inv(), &c2.inv());
    } else {
        let d = delta as u64;
        let p1 = project(c1.lamps(), d);
        let p2 = project(c2.lamps(), d);
        let Some(shift) = cyclic_match(p2.cyclic_bits().unwrap(), p1.cyclic_bits().unwrap())
            .expect("equal lengths")
        else {
            return ConjugacyAnswer::no();
        };
        let shift = shift as i64;
        let aligned = c1.conjugate(&LampElement::t_pow(shift));
        let (x1, r1) = pull_to_window(&aligned).expect("delta > 0");
        let (x2, r2) = pull_to_window(c2).expect("delta > 0");
        debug_assert_eq!(r1, r2);
        let word = GroupWord::t_pow(shift)
            .concat(&x1)
            .concat(&x2.inverse())
            .reduced();
        (word, shift)
    };
    let ok = c1.conjugate(&word.eval()) == *c2;
    assert!(ok, "conjugator failed substitution check");
    ConjugacyAnswer {
        conjugate: true,
        conjugator: Some(word),
        shift: Some(shift),
    }
}
