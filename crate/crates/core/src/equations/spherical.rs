//! The spherical solver and the shift-certificate layouts shared with the
//! genus-1 non-orientable case.

use crate::binomial::{gcd_all, lift_certificate, project};
use crate::error::{Error, Result};
use crate::group::{GroupWord, LampConfig, LampElement};

use super::engine::{Level, Search};
use super::sweep::{center_clusters, sweep};
use super::{seal, Form, QuadEquation, ShiftCertificate, SolveResult, SolverConfig, Stats, Strategy, Witness};

/// Least `(delta_1, ..., delta_{k-1}) in [0, d)^{k-1}` with
/// `sum x^{delta_i} f_i = 0` in `Z2^{Z_d}` and `delta_k = 0`.
pub(crate) fn cyclic_search(
    lamps: &[LampConfig],
    d: u64,
    config: &SolverConfig,
) -> (Option<Vec<i64>>, u64) {
    let k = lamps.len();
    let residues: Vec<Vec<u32>> = lamps
        .iter()
        .map(|f| {
            let p = project(f, d);
            let bits = p.cyclic_bits().expect("d > 0");
            (0..d as u32).filter(|&r| bits[r as usize]).collect()
        })
        .collect();
    let levels = residues[..k - 1]
        .iter()
        .map(|res| Level {
            values: (0..d as i64).collect(),
            masks: (0..d)
                .map(|v| res.iter().map(|&r| ((r as u64 + v) % d) as u32).collect())
                .collect(),
            weight: res.len(),
        })
        .collect();
    let last = &residues[k - 1];
    let words = (d as usize).div_ceil(64);
    let mut target = vec![0u64; words];
    for &r in last {
        target[(r / 64) as usize] |= 1 << (r % 64);
    }
    let leaf = move |state: &[u64]| (state == target.as_slice()).then_some(0);
    let search = Search {
        bits: d as usize,
        levels,
        leaf_weight: last.len(),
        leaf: &leaf,
        memo_cap: config.memo_cap,
    };
    let (found, count) = search.run(config.threads);
    (found.map(|f| f.shifts), count)
}

/// The windowed search for `d = 0`: every shifted support stays inside
/// `[-r, r]` and the last coefficient is matched by aligning endpoints.
struct WindowSearch<'a> {
    lamps: &'a [LampConfig],
    r: i64,
}

impl WindowSearch<'_> {
    fn levels(&self) -> Vec<Level> {
        let k = self.lamps.len();
        let r = self.r;
        self.lamps[..k - 1]
            .iter()
            .map(|f| match (f.min(), f.max()) {
                (Some(m), Some(mm)) => {
                    let supp = f.support();
                    let values: Vec<i64> = (-r - m..=r - mm).collect();
                    let masks = values
                        .iter()
                        .map(|&v| supp.iter().map(|&p| (p + v + r) as u32).collect())
                        .collect();
                    Level {
                        values,
                        masks,
                        weight: supp.len(),
                    }
                }
                _ => Level {
                    values: vec![0],
                    masks: vec![vec![]],
                    weight: 0,
                },
            })
            .collect()
    }

    fn space(&self) -> u64 {
        self.levels()
            .iter()
            .fold(1u64, |a, l| a.saturating_mul(l.values.len() as u64))
    }

    fn run(&self, config: &SolverConfig) -> (Option<Vec<i64>>, u64) {
        let k = self.lamps.len();
        let r = self.r;
        let last = &self.lamps[k - 1];
        let offsets: Vec<i64> = match last.min() {
            Some(m) => last.iter_support().map(|p| p - m).collect(),
            None => Vec::new(),
        };
        let m_last = last.min().unwrap_or(0);
        let weight = offsets.len();
        let leaf = move |state: &[u64]| -> Option<i64> {
            let pop: usize = state.iter().map(|w| w.count_ones() as usize).sum();
            if pop != weight {
                return None;
            }
            if weight == 0 {
                return Some(0);
            }
            let lowest = state
                .iter()
                .enumerate()
                .find(|(_, w)| **w != 0)
                .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)?;
            let hit = offsets.iter().all(|&o| {
                let b = lowest + o as usize;
                b / 64 < state.len() && state[b / 64] >> (b % 64) & 1 == 1
            });
            hit.then(|| lowest as i64 - r - m_last)
        };
        let search = Search {
            bits: (2 * r + 1) as usize,
            levels: self.levels(),
            leaf_weight: weight,
            leaf: &leaf,
            memo_cap: config.memo_cap,
        };
        let (found, count) = search.run(config.threads);
        (found.map(|f| f.shifts), count)
    }
}

/// Witness for `x^2 prod z_i^{-1} c_i z_i = 1` (`lead = Some(delta_x)`) or
/// for the plain spherical product (`lead = None`) from shifts
/// `delta_i` with `sum x^{delta_i} f_{c_i}` in the ideal generated by the
/// binomials of all the `t`-exponents.
///
/// With `Delta_i = delta_{c_{i+1}} + ... + delta_{c_k}` and
/// `delta_{z_i} = -delta_i - Delta_i`, the constant lamps of the product
/// collapse to `H = sum x^{delta_i} f_{c_i}` and the unknowns enter as
/// `(1 + x^{-delta_{c_i}}) x^{-Delta_i} f_{z_i}`, so a lift of `H` over
/// those binomials gives `f_{z_i}` directly.
pub(crate) fn layout_witness(
    coeffs: &[LampElement],
    shifts: &[i64],
    lead: Option<i64>,
) -> Result<(Option<LampElement>, Vec<LampElement>)> {
    let k = coeffs.len();
    let lamps: Vec<LampConfig> = coeffs.iter().map(|c| c.lamps().clone()).collect();
    let h = ShiftCertificate {
        modulus: 0,
        shifts: shifts.to_vec(),
    }
    .shifted_sum(&lamps);
    let mut suffix = vec![0i64; k + 1];
    for i in (0..k).rev() {
        suffix[i] = suffix[i + 1] + coeffs[i].delta();
    }
    let mut moduli: Vec<i64> = Vec::with_capacity(k + 1);
    if let Some(dx) = lead {
        moduli.push(-dx);
    }
    moduli.extend(coeffs.iter().map(|c| -c.delta()));
    let parts = lift_certificate(&moduli, &h)?;
    let offset = usize::from(lead.is_some());
    let x = lead.map(|dx| LampElement::new(dx, parts[0].times_monomial(suffix[0])));
    let z = (0..k)
        .map(|i| {
            let delta_i = suffix[i + 1];
            LampElement::new(
                -shifts[i] - delta_i,
                parts[i + offset].times_monomial(delta_i),
            )
        })
        .collect();
    Ok((x, z))
}

pub(crate) fn words_witness(
    eq: &QuadEquation,
    handles: &[(String, LampElement)],
    z: &[LampElement],
) -> Witness {
    let mut w = Witness::new();
    for name in eq.variables() {
        w.set(&name, GroupWord::identity());
    }
    for (name, value) in handles {
        w.set(name, GroupWord::from_element(value));
    }
    for (j, zj) in z.iter().enumerate() {
        w.set(&format!("z{}", j + 1), GroupWord::from_element(zj));
    }
    w
}

/// Decides `prod z_j^{-1} c_j z_j = 1`.
pub fn solve_spherical(eq: &QuadEquation, config: &SolverConfig) -> Result<SolveResult> {
    if eq.form() != Form::Spherical {
        return Err(Error::MalformedEquation("expected a spherical equation".into()));
    }
    let coeffs = eq.coefficient_elements();
    let k = coeffs.len();
    if coeffs.iter().map(LampElement::delta).sum::<i64>() != 0 {
        return Ok(SolveResult::no("sp1", 0));
    }
    let deltas: Vec<i64> = coeffs.iter().map(LampElement::delta).collect();
    let d = gcd_all(&deltas);
    let lamps: Vec<LampConfig> = coeffs.iter().map(|c| c.lamps().clone()).collect();

    let (shifts, enumerated, strategy) = if d > 0 {
        let (s, n) = cyclic_search(&lamps, d, config);
        (s, n, "cyclic")
    } else {
        let r = (eq.size() as i64 + 3) / 4;
        let window = WindowSearch { lamps: &lamps, r };
        let use_sweep = match config.strategy {
            Strategy::Enumerate => false,
            Strategy::Sweep => true,
            Strategy::Auto => window.space() > config.enumeration_limit,
        };
        if use_sweep {
            let (s, n) = sweep(&lamps, config.sweep_budget, config.memo_cap)?;
            let s = s.map(|mut s| {
                center_clusters(&lamps, &mut s);
                s
            });
            (s, n, "sweep")
        } else {
            let (s, n) = window.run(config);
            (s, n, "enumerate")
        }
    };

    let Some(shifts) = shifts else {
        return Ok(SolveResult::no(strategy, enumerated));
    };
    let certificate = ShiftCertificate {
        modulus: d,
        shifts,
    };
    if !certificate.holds(&lamps) {
        return Err(Error::WitnessCheck("shift certificate does not cancel".into()));
    }
    let (_, z) = layout_witness(&coeffs, &certificate.shifts, None)?;
    debug_assert_eq!(z.len(), k);
    let witness = words_witness(eq, &[], &z);
    seal(
        eq,
        SolveResult {
            decision: true,
            certificate: Some(certificate),
            witness: Some(witness),
            stats: Stats {
                enumerated,
                millis: 0.0,
                strategy,
            },
        },
    )
}
