use crate::binomial::gcd_all;
use crate::error::{Error, Result};
use crate::group::{LampConfig, LampElement};

use super::spherical::{cyclic_search, layout_witness, solve_spherical, words_witness};
use super::{seal, Form, QuadEquation, ShiftCertificate, SolveResult, SolverConfig, Stats};

fn product(coeffs: &[LampElement]) -> LampElement {
    coeffs
        .iter()
        .fold(LampElement::identity(), |acc, c| acc.mul(c))
}

fn yes(
    eq: &QuadEquation,
    handles: &[(String, LampElement)],
    z: &[LampElement],
    certificate: Option<ShiftCertificate>,
    enumerated: u64,
    strategy: &'static str,
) -> Result<SolveResult> {
    seal(
        eq,
        SolveResult {
            decision: true,
            certificate,
            witness: Some(words_witness(eq, handles, z)),
            stats: Stats {
                enumerated,
                millis: 0.0,
                strategy,
            },
        },
    )
}

/// Decides `prod [x_i, y_i] prod z_j^{-1} c_j z_j = 1`: solvable iff
/// `c_1 ... c_k` has trivial image in the abelianisation. The witness puts
/// every `z_j = 1` and writes `(c_1 ... c_k)^{-1}` as one commutator.
pub fn solve_orientable(eq: &QuadEquation) -> Result<SolveResult> {
    if eq.form() != Form::Orientable {
        return Err(Error::MalformedEquation("expected an orientable equation".into()));
    }
    let coeffs = eq.coefficient_elements();
    let p = product(&coeffs);
    if p.sigma_a() || p.sigma_t() != 0 {
        return Ok(SolveResult::no("abelianization", 0));
    }
    let (x, y) = if p.is_identity() {
        (LampElement::identity(), LampElement::identity())
    } else {
        p.inv().commutator_witness()?
    };
    let z = vec![LampElement::identity(); coeffs.len()];
    yes(
        eq,
        &[("x1".into(), x), ("y1".into(), y)],
        &z,
        None,
        0,
        "abelianization",
    )
}

/// Decides `prod x_i^2 prod z_j^{-1} c_j z_j = 1`.
pub fn solve_nonorientable(eq: &QuadEquation, config: &SolverConfig) -> Result<SolveResult> {
    if eq.form() != Form::NonOrientable {
        return Err(Error::MalformedEquation(
            "expected a non-orientable equation".into(),
        ));
    }
    let coeffs = eq.coefficient_elements();
    let k = coeffs.len();
    if eq.genus() >= 2 {
        let p = product(&coeffs);
        if p.sigma_a() || p.sigma_t() % 2 != 0 {
            return Ok(SolveResult::no("abelianization", 0));
        }
        let (x, y) = p.inv().two_squares_witness()?;
        let z = vec![LampElement::identity(); k];
        return yes(
            eq,
            &[("x1".into(), x), ("x2".into(), y)],
            &z,
            None,
            0,
            "abelianization",
        );
    }

    let total: i64 = coeffs.iter().map(LampElement::delta).sum();
    if total % 2 != 0 {
        return Ok(SolveResult::no("parity", 0));
    }
    let dx = -total / 2;
    if dx == 0 {
        // (0, f)^2 = 1, so x = 1 loses nothing and the rest is spherical.
        if k == 0 {
            return yes(eq, &[], &[], None, 0, "trivial");
        }
        let sph = QuadEquation::spherical(eq.coeffs().to_vec())?;
        let inner = solve_spherical(&sph, config)?;
        if !inner.decision {
            return Ok(inner);
        }
        let mut witness = inner.witness.expect("positive answers carry a witness");
        witness.set("x1", crate::group::GroupWord::identity());
        return seal(
            eq,
            SolveResult {
                witness: Some(witness),
                ..inner
            },
        );
    }

    let mut moduli = vec![dx];
    moduli.extend(coeffs.iter().map(LampElement::delta));
    let d = gcd_all(&moduli);
    let lamps: Vec<LampConfig> = coeffs.iter().map(|c| c.lamps().clone()).collect();
    let (shifts, enumerated) = if k == 0 {
        (Some(Vec::new()), 1)
    } else {
        cyclic_search(&lamps, d, config)
    };
    let Some(shifts) = shifts else {
        return Ok(SolveResult::no("cyclic", enumerated));
    };
    let certificate = ShiftCertificate { modulus: d, shifts };
    if !certificate.holds(&lamps) {
        return Err(Error::WitnessCheck("shift certificate does not cancel".into()));
    }
    let (x, z) = layout_witness(&coeffs, &certificate.shifts, Some(dx))?;
    let x = x.expect("lead variable requested");
    yes(
        eq,
        &[("x1".into(), x)],
        &z,
        Some(certificate),
        enumerated,
        "cyclic",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupWord;

    fn eq(form: Form, genus: u32, words: &[&str]) -> QuadEquation {
        QuadEquation::parse_coeffs(form, genus, words).unwrap()
    }

    #[test]
    fn orientable_examples() {
        let r = solve_orientable(&eq(Form::Orientable, 1, &[])).unwrap();
        assert!(r.decision);
        let w = r.witness.unwrap();
        assert!(w.get("x1").unwrap().is_empty() && w.get("y1").unwrap().is_empty());
        assert!(!solve_orientable(&eq(Form::Orientable, 1, &["t"])).unwrap().decision);
        let r = solve_orientable(&eq(Form::Orientable, 2, &["at", "Ta"])).unwrap();
        assert!(r.decision && r.witness.unwrap().verified);
        assert!(!solve_orientable(&eq(Form::Orientable, 3, &["a"])).unwrap().decision);
    }

    #[test]
    fn nonorientable_examples() {
        let c = SolverConfig::default();
        let r = solve_nonorientable(&eq(Form::NonOrientable, 1, &[]), &c).unwrap();
        assert!(r.decision);

        let r = solve_nonorientable(&eq(Form::NonOrientable, 1, &["t^2"]), &c).unwrap();
        assert!(r.decision);
        let w = r.witness.unwrap();
        assert_eq!(w.get("x1").unwrap().eval(), LampElement::t_pow(-1));
        assert_eq!(w.get("z1").unwrap().eval(), LampElement::identity());

        let r = solve_nonorientable(&eq(Form::NonOrientable, 2, &["atat^3"]), &c).unwrap();
        assert!(r.decision && r.witness.unwrap().verified);

        assert!(!solve_nonorientable(&eq(Form::NonOrientable, 1, &["t"]), &c).unwrap().decision);
        assert!(!solve_nonorientable(&eq(Form::NonOrientable, 2, &["a"]), &c).unwrap().decision);
    }

    #[test]
    fn genus_one_with_lamps() {
        let c = SolverConfig::default();
        for words in [&["a t t a t t"][..], &["a t^4", "t a T"], &["t^3 a", "t a T a", "a"]] {
            let e = eq(Form::NonOrientable, 1, words);
            let r = solve_nonorientable(&e, &c).unwrap();
            if r.decision {
                assert!(r.witness.unwrap().verified);
            }
        }
        // x^2 = a is impossible: squares have even lamp parity.
        let r = solve_nonorientable(&eq(Form::NonOrientable, 1, &["a"]), &c).unwrap();
        assert!(!r.decision);
        // x^2 (t^2 a) = 1: (t^2 a)^{-1} = a t^-2 has parity one, not a square.
        let r = solve_nonorientable(&eq(Form::NonOrientable, 1, &["t t a"]), &c).unwrap();
        assert!(!r.decision);
        assert!(!GroupWord::parse("a t^-2").unwrap().eval().is_square());
    }
}
