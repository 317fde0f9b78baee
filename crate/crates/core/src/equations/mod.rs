//! Standard-form quadratic equations over `L2` and their solvers.
//!
//! * spherical: `prod z_j^{-1} c_j z_j = 1`, `k >= 1`
//! * orientable: `prod [x_i, y_i] prod z_j^{-1} c_j z_j = 1`, `g >= 1`
//! * non-orientable: `prod x_i^2 prod z_j^{-1} c_j z_j = 1`, `g >= 1`
//!
//! Commutators are `[x, y] = x y x^{-1} y^{-1}`.

mod engine;
mod forms;
mod oracle;
mod spherical;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::group::{GroupWord, LampConfig, LampElement};

pub use forms::{solve_nonorientable, solve_orientable};
pub use oracle::{oracle_search, oracle_solve, DEFAULT_ORACLE_BUDGET};
pub use spherical::solve_spherical;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Spherical,
    Orientable,
    NonOrientable,
}

impl Form {
    pub fn tag(self) -> &'static str {
        match self {
            Form::Spherical => "sph",
            Form::Orientable => "or",
            Form::NonOrientable => "nonor",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Form> {
        match tag {
            "sph" => Some(Form::Spherical),
            "or" => Some(Form::Orientable),
            "nonor" => Some(Form::NonOrientable),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadEquation {
    form: Form,
    genus: u32,
    coeffs: Vec<GroupWord>,
}

impl QuadEquation {
    pub fn new(form: Form, genus: u32, coeffs: Vec<GroupWord>) -> Result<Self> {
        match form {
            Form::Spherical if genus != 0 => {
                return Err(Error::MalformedEquation(
                    "spherical equations have genus 0".into(),
                ))
            }
            Form::Spherical if coeffs.is_empty() => {
                return Err(Error::MalformedEquation(
                    "spherical equations need at least one coefficient".into(),
                ))
            }
            Form::Orientable | Form::NonOrientable if genus == 0 => {
                return Err(Error::MalformedEquation(format!(
                    "{} equations need genus >= 1",
                    form.tag()
                )))
            }
            _ => {}
        }
        Ok(QuadEquation {
            form,
            genus,
            coeffs,
        })
    }

    pub fn spherical(coeffs: Vec<GroupWord>) -> Result<Self> {
        Self::new(Form::Spherical, 0, coeffs)
    }

    pub fn orientable(genus: u32, coeffs: Vec<GroupWord>) -> Result<Self> {
        Self::new(Form::Orientable, genus, coeffs)
    }

    pub fn nonorientable(genus: u32, coeffs: Vec<GroupWord>) -> Result<Self> {
        Self::new(Form::NonOrientable, genus, coeffs)
    }

    /// Convenience constructor from word strings.
    pub fn parse_coeffs(form: Form, genus: u32, words: &[&str]) -> Result<Self> {
        let coeffs = words
            .iter()
            .map(|w| GroupWord::parse(w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(form, genus, coeffs)
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn coeffs(&self) -> &[GroupWord] {
        &self.coeffs
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn num_variables(&self) -> usize {
        let handles = match self.form {
            Form::Spherical => 0,
            Form::Orientable => 2 * self.genus as usize,
            Form::NonOrientable => self.genus as usize,
        };
        handles + self.coeffs.len()
    }

    /// `|W|`: coefficient letters plus two occurrences of every variable.
    pub fn size(&self) -> usize {
        self.coeffs.iter().map(GroupWord::len).sum::<usize>() + 2 * self.num_variables()
    }

    pub fn variables(&self) -> Vec<String> {
        let g = self.genus;
        let mut names = Vec::new();
        match self.form {
            Form::Spherical => {}
            Form::Orientable => {
                for i in 1..=g {
                    names.push(format!("x{}", i));
                    names.push(format!("y{}", i));
                }
            }
            Form::NonOrientable => names.extend((1..=g).map(|i| format!("x{}", i))),
        }
        names.extend((1..=self.coeffs.len()).map(|j| format!("z{}", j)));
        names
    }

    pub fn coefficient_elements(&self) -> Vec<LampElement> {
        self.coeffs.iter().map(GroupWord::eval).collect()
    }

    /// Parses the equation file format: a `form=<sph|or|nonor> genus=<g>`
    /// header followed by one coefficient word per line. Blank lines and
    /// lines starting with `#` are skipped; write `1` for an identity
    /// coefficient.
    pub fn parse_file(text: &str, max_len: u64) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::MalformedEquation("missing header line".into()))?;
        let mut form = None;
        let mut genus = None;
        for field in header.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| {
                Error::MalformedEquation(format!("bad header field {:?}", field))
            })?;
            match key {
                "form" => {
                    form = Some(Form::from_tag(value).ok_or_else(|| {
                        Error::MalformedEquation(format!("unknown form {:?}", value))
                    })?)
                }
                "genus" => {
                    genus = Some(value.parse::<u32>().map_err(|_| {
                        Error::MalformedEquation(format!("bad genus {:?}", value))
                    })?)
                }
                other => {
                    return Err(Error::MalformedEquation(format!(
                        "unknown header key {:?}",
                        other
                    )))
                }
            }
        }
        let form = form.ok_or_else(|| Error::MalformedEquation("header lacks form=".into()))?;
        let genus = genus.unwrap_or(0);
        let mut coeffs = Vec::new();
        let mut total = 0u64;
        for (_, line) in lines {
            let w = crate::group::parse_word(line, max_len)?;
            total += w.len() as u64;
            if total > max_len {
                return Err(Error::TooLong {
                    length: total,
                    cap: max_len,
                });
            }
            coeffs.push(w);
        }
        QuadEquation::new(form, genus, coeffs)
    }
}

/// The equation file format.
impl fmt::Display for QuadEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "form={} genus={}", self.form.tag(), self.genus)?;
        for c in &self.coeffs {
            writeln!(f, "{}", c)?;
        }
        Ok(())
    }
}

/// Shifts `delta_i` with `sum x^{delta_i} f_{c_i} = 0` in `Z2^{Z_d}`
/// (`d = 0` meaning exact vanishing over `Z`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCertificate {
    pub modulus: u64,
    pub shifts: Vec<i64>,
}

impl ShiftCertificate {
    /// The shifted sum `sum x^{delta_i} f_i`, before projection.
    pub fn shifted_sum(&self, lamps: &[LampConfig]) -> LampConfig {
        let mut acc = LampConfig::zero();
        for (f, s) in lamps.iter().zip(&self.shifts) {
            acc += &f.times_monomial(*s);
        }
        acc
    }

    pub fn holds(&self, lamps: &[LampConfig]) -> bool {
        crate::binomial::project(&self.shifted_sum(lamps), self.modulus).is_zero()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness {
    pub assignment: BTreeMap<String, GroupWord>,
    pub verified: bool,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, value: GroupWord) {
        self.assignment.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&GroupWord> {
        self.assignment.get(name)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Stats {
    /// Shift tuples (or sweep states) examined.
    pub enumerated: u64,
    pub millis: f64,
    pub strategy: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub decision: bool,
    pub certificate: Option<ShiftCertificate>,
    pub witness: Option<Witness>,
    pub stats: Stats,
}

impl SolveResult {
    pub(crate) fn no(strategy: &'static str, enumerated: u64) -> Self {
        SolveResult {
            decision: false,
            certificate: None,
            witness: None,
            stats: Stats {
                enumerated,
                millis: 0.0,
                strategy,
            },
        }
    }
}

/// How the `d = 0` spherical case is searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate when the tuple space fits the budget, otherwise sweep.
    Auto,
    /// Lexicographic enumeration of windowed shift tuples; returns the least
    /// certificate.
    Enumerate,
    /// Left-to-right placement search with memoisation.
    Sweep,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub strategy: Strategy,
    /// Worker threads for tuple enumeration. Results do not depend on it.
    pub threads: usize,
    /// Largest tuple space `Auto` will enumerate.
    pub enumeration_limit: u64,
    /// Node budget for the sweep.
    pub sweep_budget: u64,
    /// Failed-state memo entries kept per search branch.
    pub memo_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            strategy: Strategy::Auto,
            threads: 1,
            enumeration_limit: 4_000_000,
            sweep_budget: 50_000_000,
            memo_cap: 1 << 20,
        }
    }
}

fn conjugate_product(coeffs: &[LampElement], z: &[LampElement]) -> LampElement {
    let mut acc = LampElement::identity();
    for (c, zj) in coeffs.iter().zip(z) {
        acc = acc.mul(&c.conjugate(zj));
    }
    acc
}

/// Substitutes the assignment and evaluates the left-hand side exactly.
pub fn verify(eq: &QuadEquation, w: &Witness) -> Result<bool> {
    let value = |name: &str| -> Result<LampElement> {
        w.get(name)
            .map(GroupWord::eval)
            .ok_or_else(|| Error::MissingVariable(name.to_string()))
    };
    let mut acc = LampElement::identity();
    for i in 1..=eq.genus {
        match eq.form {
            Form::Spherical => {}
            Form::Orientable => {
                let x = value(&format!("x{}", i))?;
                let y = value(&format!("y{}", i))?;
                acc = acc.mul(&LampElement::commutator(&x, &y));
            }
            Form::NonOrientable => {
                let x = value(&format!("x{}", i))?;
                acc = acc.mul(&x.square());
            }
        }
    }
    let z = (1..=eq.k())
        .map(|j| value(&format!("z{}", j)))
        .collect::<Result<Vec<_>>>()?;
    acc = acc.mul(&conjugate_product(&eq.coefficient_elements(), &z));
    Ok(acc.is_identity())
}

pub(crate) fn seal(eq: &QuadEquation, mut result: SolveResult) -> Result<SolveResult> {
    if let Some(w) = result.witness.as_mut() {
        w.verified = verify(eq, w)?;
        if !w.verified {
            return Err(Error::WitnessCheck(format!(
                "{} witness does not satisfy the equation",
                eq.form.tag()
            )));
        }
    }
    Ok(result)
}

pub fn solve(eq: &QuadEquation) -> Result<SolveResult> {
    solve_with(eq, &SolverConfig::default())
}

/// Dispatches on the form; every positive answer carries a verified witness.
pub fn solve_with(eq: &QuadEquation, config: &SolverConfig) -> Result<SolveResult> {
    let start = Instant::now();
    let mut result = match eq.form {
        Form::Spherical => solve_spherical(eq, config)?,
        Form::Orientable => solve_orientable(eq)?,
        Form::NonOrientable => solve_nonorientable(eq, config)?,
    };
    result.stats.millis = start.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}
