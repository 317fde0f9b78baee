use std::fmt;
use std::str::FromStr;

use super::element::LampElement;
use super::lamp::LampConfig;
use crate::error::{Error, Result};

/// Hard cap on expanded word length. Integers are unary-scale, so anything
/// longer than this is rejected instead of risking index overflow.
pub const MAX_WORD_LEN: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    AInv,
    T,
    TInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }

    fn is_lamp(self) -> bool {
        matches!(self, Letter::A | Letter::AInv)
    }

    fn t_exponent(self) -> i64 {
        match self {
            Letter::T => 1,
            Letter::TInv => -1,
            _ => 0,
        }
    }
}

/// A word over `{a, a^-1, t, t^-1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        GroupWord { letters }
    }

    pub fn a() -> Self {
        GroupWord { letters: vec![Letter::A] }
    }

    /// `t^n` as `|n|` letters.
    pub fn t_pow(n: i64) -> Self {
        let l = if n >= 0 { Letter::T } else { Letter::TInv };
        GroupWord {
            letters: vec![l; n.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn extend_from(&mut self, other: &GroupWord) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `sigma_a`, the exponent sum of `a` modulo 2.
    pub fn sigma_a(&self) -> bool {
        self.letters.iter().filter(|l| l.is_lamp()).count() % 2 == 1
    }

    /// `sigma_t`, the exponent sum of `t`.
    pub fn sigma_t(&self) -> i64 {
        self.letters.iter().map(|l| l.t_exponent()).sum()
    }

    /// Evaluates the word to its normal form `(delta, f)` in one pass.
    ///
    /// Lamps are tracked in absolute coordinates: an `a` toggles the lamp
    /// under the lamplighter, a `t` only moves him. The result is moved back
    /// to the group's coordinates by a single shift at the end.
    pub fn eval(&self) -> LampElement {
        let mut pos: i64 = 0;
        let mut absolute = LampConfig::zero();
        for l in &self.letters {
            match l {
                Letter::A | Letter::AInv => absolute.toggle_raw(pos),
                Letter::T => pos += 1,
                Letter::TInv => pos -= 1,
            }
        }
        absolute.normalize();
        LampElement::new(pos, absolute.shifted(pos))
    }

    /// Cancels adjacent inverse pairs; `a a` also cancels since `a` has
    /// order two, and a surviving `a^-1` is written as `a`.
    pub fn reduced(&self) -> GroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let l = if l == Letter::AInv { Letter::A } else { l };
            match out.last() {
                Some(&p) if p == l.inverse() || (p.is_lamp() && l.is_lamp()) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        GroupWord { letters: out }
    }

    /// A word evaluating to `g`: walk to each lit lamp, light it, and end
    /// at the lamplighter position.
    pub fn from_element(g: &LampElement) -> GroupWord {
        // In absolute coordinates the lamps of (delta, f) sit at supp(f) + delta.
        let mut w = GroupWord::identity();
        let mut pos = 0i64;
        for p in g.lamps().iter_support() {
            let target = p + g.delta();
            w.extend_from(&GroupWord::t_pow(target - pos));
            w.push(Letter::A);
            pos = target;
        }
        w.extend_from(&GroupWord::t_pow(g.delta() - pos));
        w
    }

    /// Parses with the default length cap.
    pub fn parse(text: &str) -> Result<GroupWord> {
        parse_word(text, MAX_WORD_LEN)
    }
}

/// Parses the word grammar: `a` and `t` with an optional `^<signed int>`,
/// `A`/`T` for the inverses, `1` for the identity, whitespace ignored.
pub fn parse_word(text: &str, max_len: u64) -> Result<GroupWord> {
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut total: u64 = 0;
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i] as char).is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        let base = match bytes[i] {
            b'a' => Some(Letter::A),
            b'A' => Some(Letter::AInv),
            b't' => Some(Letter::T),
            b'T' => Some(Letter::TInv),
            b'1' => None,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character {:?}", ch),
                });
            }
        };
        i += 1;
        skip_ws(&mut i);
        let mut exp: i64 = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            skip_ws(&mut i);
            let num_start = i;
            let mut neg = false;
            if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                neg = bytes[i] == b'-';
                i += 1;
            }
            let digits_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if digits_start == i {
                return Err(Error::Parse {
                    position: num_start,
                    message: "expected an integer exponent after '^'".into(),
                });
            }
            let magnitude: u64 = text[digits_start..i].parse().map_err(|_| Error::Parse {
                position: digits_start,
                message: "exponent out of range".into(),
            })?;
            if magnitude > max_len {
                return Err(Error::TooLong {
                    length: magnitude,
                    cap: max_len,
                });
            }
            exp = if neg {
                -(magnitude as i64)
            } else {
                magnitude as i64
            };
        }
        let Some(letter) = base else {
            continue;
        };
        let count = exp.unsigned_abs();
        total += count;
        if total > max_len {
            return Err(Error::TooLong {
                length: total,
                cap: max_len,
            });
        }
        let l = if exp < 0 { letter.inverse() } else { letter };
        letters.extend(std::iter::repeat_n(l, count as usize));
    }
    Ok(GroupWord { letters })
}

impl FromStr for GroupWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupWord::parse(s)
    }
}

/// Canonical form: maximal runs of one letter as `a^n`/`t^n`, space
/// separated; the empty word prints as `1`.
impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let n = (j - i) as i64;
            let (name, exp) = match l {
                Letter::A => ('a', n),
                Letter::AInv => ('a', -n),
                Letter::T => ('t', n),
                Letter::TInv => ('t', -n),
            };
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, exp)?;
            }
            i = j;
        }
        Ok(())
    }
}
