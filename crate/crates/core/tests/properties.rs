mod common;

use common::{naive_conjugate, naive_eval, same};
use llq_core::binomial::{bezout_binomials, combine, gcd_all, lift_certificate, project};
use llq_core::conjugacy::pull_to_window;
use llq_core::equations::{oracle_solve, solve_with, Form, QuadEquation, SolverConfig, Strategy as Search};
use llq_core::{find_conjugator, is_conjugate, verify, GroupWord, LampConfig, LampElement, Letter};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::A),
        Just(Letter::AInv),
        Just(Letter::T),
        Just(Letter::TInv)
    ]
}

fn word(max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(letter(), 0..=max).prop_map(GroupWord::from_letters)
}

fn lamps(spread: i64) -> impl Strategy<Value = LampConfig> {
    prop::collection::vec(-spread..=spread, 0..8).prop_map(LampConfig::from_toggles)
}

fn element(spread: i64) -> impl Strategy<Value = LampElement> {
    (-spread..=spread, lamps(spread)).prop_map(|(d, f)| LampElement::new(d, f))
}

proptest! {
    #[test]
    fn eval_matches_simulation(w in word(40)) {
        prop_assert!(same(&w.eval(), &naive_eval(&w)));
    }

    #[test]
    fn eval_is_a_homomorphism(u in word(30), v in word(30)) {
        prop_assert_eq!(u.concat(&v).eval(), u.eval().mul(&v.eval()));
        prop_assert_eq!(u.inverse().eval(), u.eval().inv());
    }

    #[test]
    fn group_axioms(x in element(6), y in element(6), z in element(6)) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inv()).is_identity());
        prop_assert!(x.inv().mul(&x).is_identity());
        prop_assert_eq!(x.mul(&LampElement::identity()), x.clone());
    }

    #[test]
    fn closed_forms_match_products(x in element(8), z in element(8)) {
        prop_assert_eq!(x.square(), x.mul(&x));
        prop_assert_eq!(x.conjugate(&z), z.inv().mul(&x).mul(&z));
    }

    #[test]
    fn abelianisation_is_multiplicative(u in word(30), v in word(30)) {
        let (g, h) = (u.eval(), v.eval());
        prop_assert_eq!(g.mul(&h).sigma_a(), g.sigma_a() ^ h.sigma_a());
        prop_assert_eq!(g.mul(&h).sigma_t(), g.sigma_t() + h.sigma_t());
        prop_assert_eq!(u.sigma_a(), g.sigma_a());
    }

    #[test]
    fn canonical_text_round_trips(w in word(40)) {
        let text = w.to_string();
        let back = GroupWord::parse(&text).unwrap();
        prop_assert_eq!(back.eval(), w.eval());
        prop_assert_eq!(GroupWord::parse(&back.to_string()).unwrap(), back);
    }

    #[test]
    fn reduction_and_normal_words(w in word(40)) {
        prop_assert_eq!(w.reduced().eval(), w.eval());
        let g = w.eval();
        prop_assert_eq!(GroupWord::from_element(&g).eval(), g);
    }

    #[test]
    fn word_length_bounds(w in word(60)) {
        let g = w.eval();
        let n = w.len() as i64;
        prop_assert!(g.delta().abs() <= n);
        if let Ok(diam) = g.lamps().diam() {
            prop_assert!(diam <= n);
            if g.delta() == 0 && n >= 2 {
                prop_assert!(2 * diam <= n - 2);
            }
        }
    }

    #[test]
    fn squares_have_verified_roots(h in element(6)) {
        let g = h.square();
        prop_assert!(g.is_square());
        prop_assert_eq!(g.sqrt_witness().unwrap().square(), g);
    }

    #[test]
    fn square_test_matches_root_search(g in element(3)) {
        // Brute force: any root has half the displacement and lamps within
        // a window the shift cannot escape.
        let mut found = false;
        if g.delta() % 2 == 0 {
            let b = g.delta() / 2;
            let lo = -3 - b.abs() - 1;
            let hi = 3 + b.abs() + 1;
            let width = (hi - lo + 1) as u32;
            for mask in 0u64..(1u64 << width) {
                let f = LampConfig::from_support((0..width as i64).filter(|i| mask >> i & 1 == 1).map(|i| i + lo));
                if LampElement::new(b, f).square() == g {
                    found = true;
                    break;
                }
            }
        }
        prop_assert_eq!(g.is_square(), found);
    }

    #[test]
    fn decompositions(g in element(8)) {
        if g.in_derived() {
            let (x, y) = g.commutator_witness().unwrap();
            prop_assert_eq!(LampElement::commutator(&x, &y), g.clone());
        }
        if g.in_v() {
            let (x, y) = g.two_squares_witness().unwrap();
            prop_assert_eq!(x.square().mul(&y.square()), g);
        }
    }

    #[test]
    fn bezout_identity(moduli in prop::collection::vec(-12i64..=12, 1..5)) {
        prop_assume!(moduli.iter().any(|&b| b != 0));
        let bez = bezout_binomials(&moduli).unwrap();
        prop_assert!(bez.holds());
        prop_assert_eq!(bez.gcd, gcd_all(&moduli));
    }

    #[test]
    fn lift_inverts_combine(
        moduli in prop::collection::vec(-9i64..=9, 1..4),
        parts in prop::collection::vec(lamps(6), 4),
    ) {
        prop_assume!(moduli.iter().any(|&b| b != 0));
        let target = combine(&moduli, &parts[..moduli.len()]);
        prop_assert!(project(&target, gcd_all(&moduli)).is_zero());
        let lifted = lift_certificate(&moduli, &target).unwrap();
        prop_assert_eq!(combine(&moduli, &lifted), target);
    }

    #[test]
    fn rotation_is_projection_of_shift(f in lamps(10), d in 1u64..9, s in -12i64..12) {
        prop_assert_eq!(project(&f.shifted(s), d), project(&f, d).rotated(s));
    }

    #[test]
    fn conjugacy_agrees_with_reference(g in element(5), h in element(5), z in element(5)) {
        prop_assert_eq!(is_conjugate(&g, &h), naive_conjugate(&g, &h));
        let c = g.conjugate(&z);
        let ans = find_conjugator(&g, &c);
        prop_assert!(ans.conjugate);
        prop_assert_eq!(g.conjugate(&ans.conjugator.unwrap().eval()), c);
    }

    #[test]
    fn pulls_land_in_the_window(d in 1i64..8, f in lamps(12)) {
        let g = LampElement::new(d, f);
        let (w, r) = pull_to_window(&g).unwrap();
        prop_assert_eq!(g.conjugate(&w.eval()), r.clone());
        prop_assert!(r.lamps().iter_support().all(|p| (0..d).contains(&p)));
    }
}

fn short_word() -> impl Strategy<Value = GroupWord> {
    word(5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn spherical_solver_matches_oracle(coeffs in prop::collection::vec(short_word(), 1..4)) {
        let eq = QuadEquation::spherical(coeffs).unwrap();
        let b = eq.size() as u64;
        let r = solve_with(&eq, &SolverConfig::default()).unwrap();
        prop_assert_eq!(r.decision, oracle_solve(&eq, b).unwrap());
        if let Some(w) = &r.witness {
            prop_assert!(verify(&eq, w).unwrap());
        }
    }

    #[test]
    fn strategies_agree(coeffs in prop::collection::vec(short_word(), 1..5)) {
        let eq = QuadEquation::spherical(coeffs).unwrap();
        let mut answers = Vec::new();
        for strategy in [Search::Enumerate, Search::Sweep] {
            let config = SolverConfig { strategy, ..SolverConfig::default() };
            let r = solve_with(&eq, &config).unwrap();
            if let Some(c) = &r.certificate {
                prop_assert!(c.shifts.iter().all(|s| s.unsigned_abs() <= eq.size() as u64));
            }
            answers.push(r.decision);
        }
        prop_assert_eq!(answers[0], answers[1]);
    }

    #[test]
    fn genus_one_matches_oracle(coeffs in prop::collection::vec(short_word(), 0..3)) {
        let eq = QuadEquation::nonorientable(1, coeffs).unwrap();
        let r = solve_with(&eq, &SolverConfig::default()).unwrap();
        prop_assert_eq!(r.decision, oracle_solve(&eq, eq.size() as u64).unwrap());
    }

    #[test]
    fn handles_match_oracle(coeffs in prop::collection::vec(word(3), 0..3), orientable in any::<bool>()) {
        let form = if orientable { Form::Orientable } else { Form::NonOrientable };
        let eq = QuadEquation::new(form, 2 - u32::from(orientable), coeffs).unwrap();
        let r = solve_with(&eq, &SolverConfig::default()).unwrap();
        prop_assert_eq!(r.decision, oracle_solve(&eq, 3).unwrap());
    }

    #[test]
    fn genus_monotonicity(coeffs in prop::collection::vec(word(6), 0..4)) {
        let one = QuadEquation::orientable(1, coeffs.clone()).unwrap();
        let two = QuadEquation::orientable(2, coeffs).unwrap();
        let r1 = solve_with(&one, &SolverConfig::default()).unwrap();
        let r2 = solve_with(&two, &SolverConfig::default()).unwrap();
        prop_assert!(!r1.decision || r2.decision);
    }

    #[test]
    fn yes_respects_abelianisation(coeffs in prop::collection::vec(word(6), 1..4)) {
        let eq = QuadEquation::spherical(coeffs).unwrap();
        let r = solve_with(&eq, &SolverConfig::default()).unwrap();
        if r.decision {
            let p = eq.coefficient_elements().iter().fold(LampElement::identity(), |a, c| a.mul(c));
            prop_assert_eq!(p.sigma_t(), 0);
        }
    }
}
