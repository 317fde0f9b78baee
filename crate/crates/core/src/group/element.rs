use std::fmt;

use super::lamp::LampConfig;
use crate::binomial::{divide_by_binomial, project};
use crate::error::{Error, Result};

/// An element `(delta, f)` of the lamplighter group: the lamplighter sits at
/// `delta` and `f` is the finite set of lit lamps.
///
/// Multiplication is `(d1, f1)(d2, f2) = (d1 + d2, f1^{d2} + f2)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LampElement {
    delta: i64,
    lamps: LampConfig,
}

impl LampElement {
    pub fn new(delta: i64, lamps: LampConfig) -> Self {
        LampElement { delta, lamps }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// The generator `a = (0, 1_0)`.
    pub fn a() -> Self {
        LampElement::new(0, LampConfig::monomial(0))
    }

    /// The generator `t = (1, 0)`.
    pub fn t() -> Self {
        LampElement::new(1, LampConfig::zero())
    }

    pub fn t_pow(n: i64) -> Self {
        LampElement::new(n, LampConfig::zero())
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn lamps(&self) -> &LampConfig {
        &self.lamps
    }

    pub fn is_identity(&self) -> bool {
        self.delta == 0 && self.lamps.is_zero()
    }

    pub fn mul(&self, other: &LampElement) -> LampElement {
        let mut lamps = self.lamps.shifted(other.delta);
        lamps += &other.lamps;
        LampElement::new(self.delta + other.delta, lamps)
    }

    /// `(delta, f)^{-1} = (-delta, f^{-delta})`.
    pub fn inv(&self) -> LampElement {
        LampElement::new(-self.delta, self.lamps.shifted(-self.delta))
    }

    /// `(delta, f)^2 = (2 delta, f^delta + f)`.
    pub fn square(&self) -> LampElement {
        LampElement::new(2 * self.delta, &self.lamps.shifted(self.delta) + &self.lamps)
    }

    /// `z^{-1} g z`, via `(d1, (1 - x^{-d1}) f + x^{-d} f1)` for
    /// `g = (d1, f1)`, `z = (d, f)`.
    pub fn conjugate(&self, z: &LampElement) -> LampElement {
        let f = &z.lamps;
        let mut lamps = f + &f.times_monomial(-self.delta);
        lamps += &self.lamps.times_monomial(-z.delta);
        LampElement::new(self.delta, lamps)
    }

    /// `x y x^{-1} y^{-1}`.
    pub fn commutator(x: &LampElement, y: &LampElement) -> LampElement {
        x.mul(y).mul(&x.inv()).mul(&y.inv())
    }

    pub fn pow(&self, n: u64) -> LampElement {
        let mut acc = LampElement::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sigma_a(&self) -> bool {
        self.lamps.parity()
    }

    pub fn sigma_t(&self) -> i64 {
        self.delta
    }

    /// `(delta, f)` is a square iff `delta` is even and `pi_{delta/2}(f) = 0`.
    pub fn is_square(&self) -> bool {
        if self.delta % 2 != 0 {
            return false;
        }
        project(&self.lamps, (self.delta / 2).unsigned_abs()).is_zero()
    }

    /// A root `h` with `h^2 = self`.
    ///
    /// With `delta = 2b` and `f = (1 + x^b) q`, the root is `(b, x^b q)`.
    pub fn sqrt_witness(&self) -> Result<LampElement> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let b = self.delta / 2;
        if b == 0 {
            return Ok(LampElement::identity());
        }
        // (1 + x^b) q = f. For b < 0, 1 + x^b = x^b (1 + x^{|b|}).
        let q_abs = divide_by_binomial(&self.lamps, b.unsigned_abs())?;
        let q = if b > 0 { q_abs } else { q_abs.times_monomial(-b) };
        let root = LampElement::new(b, q.times_monomial(b));
        check(root.square() == *self, "square root")?;
        Ok(root)
    }

    /// Membership in `[L2, L2] = ker(sigma_a) ∩ ker(sigma_t)`.
    pub fn in_derived(&self) -> bool {
        self.delta == 0 && !self.sigma_a()
    }

    /// `(x, y)` with `x y x^{-1} y^{-1} = self`: `x = (0, g)` for the prefix
    /// sums `g(j) = sum_{i <= j} f(i)` and `y = t`.
    pub fn commutator_witness(&self) -> Result<(LampElement, LampElement)> {
        if !self.in_derived() {
            return Err(Error::NotInDerived);
        }
        let mut g = LampConfig::zero();
        if let (Some(lo), Some(hi)) = (self.lamps.min(), self.lamps.max()) {
            let mut acc = false;
            let bits = (lo..=hi).map(|j| {
                acc ^= self.lamps.get(j);
                acc
            });
            g = LampConfig::from_bits(lo, bits.collect::<Vec<_>>());
        }
        let x = LampElement::new(0, g);
        let y = LampElement::t();
        check(LampElement::commutator(&x, &y) == *self, "commutator")?;
        Ok((x, y))
    }

    /// Membership in `V`, the subgroup generated by squares:
    /// `sigma_t` even and `sigma_a = 0`.
    pub fn in_v(&self) -> bool {
        self.delta % 2 == 0 && !self.sigma_a()
    }

    /// `(x, y)` with `x^2 y^2 = self`, `x = (1, h)` and `y = t^k` where
    /// `k = delta/2 - 1`. `h` solves `h(u) + h(u+1) = f(u - 2k)` and is
    /// taken as the suffix sum `h(u) = sum_{y >= u} f(y - 2k)`.
    pub fn two_squares_witness(&self) -> Result<(LampElement, LampElement)> {
        if !self.in_v() {
            return Err(Error::NotInV);
        }
        let k = self.delta / 2 - 1;
        let shifted = self.lamps.times_monomial(2 * k);
        let mut h = LampConfig::zero();
        if let (Some(lo), Some(hi)) = (shifted.min(), shifted.max()) {
            let mut acc = false;
            let mut bits: Vec<bool> = (lo..=hi)
                .rev()
                .map(|u| {
                    acc ^= shifted.get(u);
                    acc
                })
                .collect();
            bits.reverse();
            h = LampConfig::from_bits(lo, bits);
        }
        let x = LampElement::new(1, h);
        let y = LampElement::t_pow(k);
        check(x.square().mul(&y.square()) == *self, "two squares")?;
        Ok((x, y))
    }
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::WitnessCheck(what.to_string()))
    }
}

impl fmt::Debug for LampElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.delta, self.lamps)
    }
}

/// `delta=<d> supp=[...]`
impl fmt::Display for LampElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta={} supp={}", self.delta, self.lamps)
    }
}
