//! Finite lamp configurations, i.e. elements of the GF(2) Laurent
//! polynomial ring.
//!
//! A configuration `f` is stored as a window of bits `f(base), f(base+1), ...`
//! kept in a deque so it can grow in either direction. The window is always
//! trimmed so that its first and last bits are lit, which makes `m(f)` and
//! `M(f)` constant-time reads. The zero configuration is the empty window.
//!
//! Shift convention: `f^b(x) = f(x + b)`, so the support of `f^b` is the
//! support of `f` moved by `-b`. In polynomial terms `f^b = f * x^(-b)`.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

#[derive(Clone, Default)]
pub struct LampConfig {
    base: i64,
    bits: VecDeque<bool>,
}

impl LampConfig {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The monomial `x^i`, a single lamp lit at `i`.
    pub fn monomial(i: i64) -> Self {
        let mut bits = VecDeque::with_capacity(1);
        bits.push_back(true);
        LampConfig { base: i, bits }
    }

    /// Builds the configuration whose lamps are toggled once per listed
    /// position; repeated positions cancel.
    pub fn from_toggles<I: IntoIterator<Item = i64>>(positions: I) -> Self {
        let mut f = LampConfig::zero();
        for p in positions {
            f.toggle_raw(p);
        }
        f.normalize();
        f
    }

    /// Builds the configuration lit exactly at the given positions.
    pub fn from_support<I: IntoIterator<Item = i64>>(positions: I) -> Self {
        let mut f = LampConfig::zero();
        for p in positions {
            if !f.get(p) {
                f.toggle_raw(p);
            }
        }
        f.normalize();
        f
    }

    /// Builds a configuration from a window of bits starting at `base`.
    pub fn from_bits<I: IntoIterator<Item = bool>>(base: i64, bits: I) -> Self {
        let mut f = LampConfig {
            base,
            bits: bits.into_iter().collect(),
        };
        f.normalize();
        f
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    /// `m(f)`, the lowest lit position.
    pub fn min(&self) -> Option<i64> {
        (!self.bits.is_empty()).then_some(self.base)
    }

    /// `M(f)`, the highest lit position.
    pub fn max(&self) -> Option<i64> {
        (!self.bits.is_empty()).then(|| self.base + self.bits.len() as i64 - 1)
    }

    /// `M(f) - m(f)`.
    pub fn diam(&self) -> Result<i64> {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(Error::EmptySupport),
        }
    }

    /// Number of stored bits (`diam + 1`, or 0 for the zero configuration).
    pub fn window_len(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, i: i64) -> bool {
        if i < self.base {
            return false;
        }
        let off = (i - self.base) as usize;
        self.bits.get(off).copied().unwrap_or(false)
    }

    pub fn toggle(&mut self, i: i64) {
        self.toggle_raw(i);
        self.normalize();
    }

    // Toggles without trimming; callers normalize once at the end.
    pub(crate) fn toggle_raw(&mut self, i: i64) {
        if self.bits.is_empty() {
            self.base = i;
            self.bits.push_back(true);
            return;
        }
        if i < self.base {
            let pad = (self.base - i) as usize;
            for _ in 1..pad {
                self.bits.push_front(false);
            }
            self.bits.push_front(true);
            self.base = i;
            return;
        }
        let off = (i - self.base) as usize;
        if off >= self.bits.len() {
            self.bits.resize(off, false);
            self.bits.push_back(true);
        } else {
            self.bits[off] = !self.bits[off];
        }
    }

    pub(crate) fn normalize(&mut self) {
        while let Some(false) = self.bits.front() {
            self.bits.pop_front();
            self.base += 1;
        }
        while let Some(false) = self.bits.back() {
            self.bits.pop_back();
        }
        if self.bits.is_empty() {
            self.base = 0;
        }
    }

    /// Lit positions in increasing order.
    pub fn support(&self) -> Vec<i64> {
        self.iter_support().collect()
    }

    pub fn iter_support(&self) -> impl Iterator<Item = i64> + '_ {
        let base = self.base;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| base + i as i64)
    }

    /// The stored window `f(m), ..., f(M)`.
    pub fn window(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// Number of lit lamps.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// `sigma_a` of `(delta, f)`: the parity of the number of lit lamps.
    pub fn parity(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// `f^b`, with `f^b(x) = f(x + b)`.
    pub fn shifted(&self, b: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LampConfig {
            base: self.base - b,
            bits: self.bits.clone(),
        }
    }

    /// `x^e * f`.
    pub fn times_monomial(&self, e: i64) -> Self {
        self.shifted(-e)
    }

    /// Polynomial product over GF(2).
    pub fn mul(&self, other: &LampConfig) -> LampConfig {
        let (small, large) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = LampConfig::zero();
        for e in small.iter_support() {
            acc += &large.times_monomial(e);
        }
        acc
    }

    /// True when every lit lamp lies in `[lo, hi]`.
    pub fn within(&self, lo: i64, hi: i64) -> bool {
        match (self.min(), self.max()) {
            (Some(m), Some(mm)) => lo <= m && mm <= hi,
            _ => true,
        }
    }

    pub fn base(&self) -> i64 {
        self.base
    }
}

impl PartialEq for LampConfig {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.bits == other.bits
    }
}

impl Eq for LampConfig {}

impl Hash for LampConfig {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.bits.len().hash(state);
        for b in &self.bits {
            b.hash(state);
        }
    }
}

impl AddAssign<&LampConfig> for LampConfig {
    fn add_assign(&mut self, rhs: &LampConfig) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let lo = self.base.min(rhs.base);
        let hi = self.max().unwrap().max(rhs.max().unwrap());
        while self.base > lo {
            self.bits.push_front(false);
            self.base -= 1;
        }
        let need = (hi - self.base + 1) as usize;
        if self.bits.len() < need {
            self.bits.resize(need, false);
        }
        let off = (rhs.base - self.base) as usize;
        for (i, b) in rhs.bits.iter().enumerate() {
            if *b {
                self.bits[off + i] = !self.bits[off + i];
            }
        }
        self.normalize();
    }
}

impl AddAssign for LampConfig {
    fn add_assign(&mut self, rhs: LampConfig) {
        *self += &rhs;
    }
}

impl Add for &LampConfig {
    type Output = LampConfig;
    fn add(self, rhs: &LampConfig) -> LampConfig {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LampConfig {
    type Output = LampConfig;
    fn add(mut self, rhs: LampConfig) -> LampConfig {
        self += &rhs;
        self
    }
}

impl fmt::Debug for LampConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Formats the sorted support, e.g. `[-4,-3]`.
impl fmt::Display for LampConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.iter_support().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}
