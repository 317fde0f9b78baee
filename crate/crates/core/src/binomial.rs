//! Residue projections `pi_d`, Bezout combinations of binomials `x^b - 1`,
//! exact division by `x^d - 1`, and the lift that turns a vanishing
//! projection into explicit preimages under
//! `(f_1, ..., f_k) -> sum (1 - x^{b_i}) f_i`.
//!
//! Everything is over GF(2), so `1 - x^b` and `1 + x^b` coincide and signs
//! are dropped throughout. Modulus 0 stands for the integers: `pi_0` is the
//! identity and the ideal generated by `x^0 - 1` is zero.

use crate::error::{Error, Result};
use crate::group::LampConfig;

/// The image of a configuration under `pi_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Residues {
    /// `d = 0`: the configuration itself.
    Integers(LampConfig),
    /// `d > 0`: exactly `d` parity bits indexed by residue class.
    Cyclic(Vec<bool>),
}

impl Residues {
    pub fn modulus(&self) -> u64 {
        match self {
            Residues::Integers(_) => 0,
            Residues::Cyclic(bits) => bits.len() as u64,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Residues::Integers(f) => f.is_zero(),
            Residues::Cyclic(bits) => bits.iter().all(|b| !b),
        }
    }

    /// The projection of `f^delta` given the projection of `f`: a cyclic
    /// rotation with `new[r] = old[(r + delta) mod d]`.
    pub fn rotated(&self, delta: i64) -> Residues {
        match self {
            Residues::Integers(f) => Residues::Integers(f.shifted(delta)),
            Residues::Cyclic(bits) => {
                let d = bits.len() as i64;
                Residues::Cyclic(
                    (0..d)
                        .map(|r| bits[(r + delta).rem_euclid(d) as usize])
                        .collect(),
                )
            }
        }
    }

    pub fn add(&self, other: &Residues) -> Residues {
        match (self, other) {
            (Residues::Integers(f), Residues::Integers(g)) => Residues::Integers(f + g),
            (Residues::Cyclic(a), Residues::Cyclic(b)) if a.len() == b.len() => {
                Residues::Cyclic(a.iter().zip(b).map(|(x, y)| x ^ y).collect())
            }
            _ => panic!("adding residues of different moduli"),
        }
    }

    pub fn cyclic_bits(&self) -> Option<&[bool]> {
        match self {
            Residues::Cyclic(bits) => Some(bits),
            Residues::Integers(_) => None,
        }
    }
}

/// `pi_d(f)`: parity of lit lamps in each residue class modulo `d`.
pub fn project(f: &LampConfig, d: u64) -> Residues {
    if d == 0 {
        return Residues::Integers(f.clone());
    }
    let mut bits = vec![false; d as usize];
    for p in f.iter_support() {
        let r = p.rem_euclid(d as i64) as usize;
        bits[r] = !bits[r];
    }
    Residues::Cyclic(bits)
}

/// Coefficients `u_i` with `sum u_i (x^{b_i} - 1) = x^d - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCombination {
    pub moduli: Vec<i64>,
    pub coefficients: Vec<LampConfig>,
    pub gcd: u64,
}

impl BezoutCombination {
    /// Expands `sum u_i (x^{b_i} + 1)` explicitly.
    pub fn expand(&self) -> LampConfig {
        let mut acc = LampConfig::zero();
        for (b, u) in self.moduli.iter().zip(&self.coefficients) {
            acc += &u.mul(&binomial(*b));
        }
        acc
    }

    /// True when the defining identity holds.
    pub fn holds(&self) -> bool {
        self.expand() == binomial(self.gcd as i64)
    }
}

/// `x^b + 1` (zero when `b = 0`).
pub fn binomial(b: i64) -> LampConfig {
    LampConfig::from_toggles([0, b])
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `gcd(|b_1|, ..., |b_k|)` with `gcd(0, ..., 0) = 0`.
pub fn gcd_all(moduli: &[i64]) -> u64 {
    moduli.iter().fold(0, |g, b| gcd(g, b.unsigned_abs()))
}

/// Extended Euclid on binomials. For `e1 = q e2 + r`,
/// `x^{e1} + 1 = Q (x^{e2} + 1) + (x^r + 1)` with `Q = sum_{j=1..q} x^{e1 - j e2}`,
/// so each remainder stays a binomial and only its coefficient vector is
/// carried along.
pub fn bezout_binomials(moduli: &[i64]) -> Result<BezoutCombination> {
    let k = moduli.len();
    if moduli.iter().all(|&b| b == 0) {
        return Err(Error::AllZeroModuli);
    }
    let unit = |i: usize| {
        let mut v = vec![LampConfig::zero(); k];
        v[i] = LampConfig::monomial(0);
        v
    };

    // Running gcd exponent and its combination, over |b_i|.
    let mut acc: Option<(u64, Vec<LampConfig>)> = None;
    for (i, &b) in moduli.iter().enumerate() {
        let e = b.unsigned_abs();
        if e == 0 {
            continue;
        }
        acc = Some(match acc {
            None => (e, unit(i)),
            Some((g, coeffs)) => euclid((g, coeffs), (e, unit(i))),
        });
    }
    let (g, mut coeffs) = acc.expect("some modulus is nonzero");

    // x^b + 1 = x^b (x^{|b|} + 1) for b < 0, so u_i absorbs x^{|b|}.
    for (u, &b) in coeffs.iter_mut().zip(moduli) {
        if b < 0 {
            *u = u.times_monomial(-b);
        }
    }
    Ok(BezoutCombination {
        moduli: moduli.to_vec(),
        coefficients: coeffs,
        gcd: g,
    })
}

fn euclid(
    mut big: (u64, Vec<LampConfig>),
    mut small: (u64, Vec<LampConfig>),
) -> (u64, Vec<LampConfig>) {
    if big.0 < small.0 {
        std::mem::swap(&mut big, &mut small);
    }
    while small.0 > 0 {
        let (e1, e2) = (big.0, small.0);
        let q = e1 / e2;
        let r = e1 % e2;
        let quotient = LampConfig::from_toggles((1..=q).map(|j| (e1 - j * e2) as i64));
        let next: Vec<LampConfig> = big
            .1
            .iter()
            .zip(&small.1)
            .map(|(cb, cs)| cb + &quotient.mul(cs))
            .collect();
        big = std::mem::replace(&mut small, (r, next));
    }
    big
}

/// Exact quotient `q` with `(x^d + 1) q = h`, by cancelling the lowest lit
/// lamp repeatedly.
pub fn divide_by_binomial(h: &LampConfig, d: u64) -> Result<LampConfig> {
    if d == 0 {
        return Err(Error::NotInKernel { modulus: 0 });
    }
    let Some(base) = h.min() else {
        return Ok(LampConfig::zero());
    };
    let mut bits: Vec<bool> = h.window().collect();
    let d = d as usize;
    let mut quotient = Vec::new();
    if bits.len() > d {
        quotient = vec![false; bits.len() - d];
        for i in 0..bits.len() - d {
            if bits[i] {
                bits[i] = false;
                bits[i + d] = !bits[i + d];
                quotient[i] = true;
            }
        }
    }
    if bits.iter().any(|&b| b) {
        return Err(Error::NotInKernel { modulus: d as u64 });
    }
    Ok(LampConfig::from_bits(base, quotient))
}

/// Preimages `f_i` with `sum (1 + x^{b_i}) f_i = target`.
///
/// Requires `pi_d(target) = 0` for `d = gcd(b)`; with all moduli zero only
/// the zero target is liftable.
pub fn lift_certificate(moduli: &[i64], target: &LampConfig) -> Result<Vec<LampConfig>> {
    let d = gcd_all(moduli);
    if d == 0 {
        if target.is_zero() {
            return Ok(vec![LampConfig::zero(); moduli.len()]);
        }
        return Err(Error::NotInKernel { modulus: 0 });
    }
    let q = divide_by_binomial(target, d)?;
    let bez = bezout_binomials(moduli)?;
    Ok(bez.coefficients.iter().map(|u| u.mul(&q)).collect())
}

/// `sum (1 + x^{b_i}) f_i`.
pub fn combine(moduli: &[i64], parts: &[LampConfig]) -> LampConfig {
    let mut acc = LampConfig::zero();
    for (b, f) in moduli.iter().zip(parts) {
        acc += &binomial(*b).mul(f);
    }
    acc
}
