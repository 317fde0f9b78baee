//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always
//! printed; the process exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{naive_conjugate, naive_eval, same};
use llq_core::conjugacy::pull_to_window;
use llq_core::equations::{oracle_solve, Form, QuadEquation, SolveResult};
use llq_core::generate::{
    conjugacy_fixture, distinct_short_words, multisets, orientable_fixture, random_derived, random_v,
    random_word, rng,
};
use llq_core::hardness::{all_instances, brute_force_3part, decode, encode};
use llq_core::{find_conjugator, is_conjugate, solve, verify, GroupWord, LampConfig, LampElement};
use rand::Rng;

const RANDOM_CASES: usize = 10_000;
const PULL_CASES: usize = 1_000;
const DECOMPOSITION_CASES: usize = 1_000;
const FAMILY_WORD_LEN: usize = 4;
const HANDLE_ORACLE_BOUND: u64 = 3;
const CONJUGATOR_FACTOR: usize = 8;
const LINEAR_SIZES: (usize, usize) = (100_000, 200_000);
const LINEAR_RATIO: f64 = 3.0;
const LINEAR_ABSOLUTE: Duration = Duration::from_secs(1);
const MAX_3PART_SUM: u64 = 40;
const MIN_3PART_EACH: usize = 5;

const LIMIT_1: Duration = Duration::from_secs(5);
const LIMIT_2: Duration = Duration::from_secs(600);
const LIMIT_3: Duration = Duration::from_secs(600);
const LIMIT_5: Duration = Duration::from_secs(30);
const LIMIT_7: Duration = Duration::from_secs(300);

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

/// Counters shared by the suites that emit answers and certificates.
#[derive(Default)]
struct Ledger {
    yes: usize,
    witness_failures: usize,
    certificates: usize,
    bound_violations: usize,
}

impl Ledger {
    fn record(&mut self, eq: &QuadEquation, r: &SolveResult) {
        if r.decision {
            self.yes += 1;
            let ok = r
                .witness
                .as_ref()
                .is_some_and(|w| w.verified && verify(eq, w) == Ok(true));
            if !ok {
                self.witness_failures += 1;
            }
        }
        if let Some(c) = &r.certificate {
            self.certificates += 1;
            let size = eq.size() as u64;
            let mut ok = c.modulus <= size && c.shifts.iter().all(|s| s.unsigned_abs() <= size);
            if c.modulus == 0 && eq.form() == Form::Spherical && r.stats.strategy == "enumerate" {
                let r_w = (size as i64 + 3) / 4;
                for (coef, s) in eq.coefficient_elements().iter().zip(&c.shifts) {
                    let f = coef.lamps().times_monomial(*s);
                    ok &= f.within(-r_w, r_w);
                }
            }
            if !ok {
                self.bound_violations += 1;
            }
        }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn random_len_word<R: Rng>(r: &mut R, max: usize) -> GroupWord {
    let len = r.gen_range(0..=max);
    random_word(r, len)
}

fn formula_conformance() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut failures = 0;
    for _ in 0..RANDOM_CASES {
        let u = random_len_word(&mut r, 40);
        let v = random_len_word(&mut r, 40);
        let z = random_len_word(&mut r, 40);
        let (g, h, c) = (u.eval(), v.eval(), z.eval());
        let checks = [
            same(&g.mul(&h), &naive_eval(&u.concat(&v))),
            same(&g.inv(), &naive_eval(&u.inverse())),
            same(&g.square(), &naive_eval(&u.concat(&u))),
            same(&g.conjugate(&c), &naive_eval(&z.inverse().concat(&u).concat(&z))),
            g.mul(&h).mul(&c) == g.mul(&h.mul(&c)),
        ];
        failures += checks.iter().filter(|ok| !**ok).count();
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 1,
        name: "formula conformance",
        pass: failures == 0 && elapsed < LIMIT_1,
        detail: format!(
            "{} triples, {} mismatches, {} (limit {})",
            RANDOM_CASES,
            failures,
            secs(elapsed),
            secs(LIMIT_1)
        ),
    }
}

fn family() -> Vec<GroupWord> {
    distinct_short_words(FAMILY_WORD_LEN)
}

fn spherical_oracle(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let words = family();
    let (mut equations, mut oracle_runs, mut disagreements) = (0, 0, 0);
    for k in 1..=3 {
        for m in multisets(words.len(), k) {
            let eq = QuadEquation::spherical(m.iter().map(|&i| words[i].clone()).collect()).unwrap();
            let r = solve(&eq).unwrap();
            ledger.record(&eq, &r);
            equations += 1;
            oracle_runs += 1;
            if oracle_solve(&eq, eq.size() as u64).unwrap() != r.decision {
                disagreements += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 2,
        name: "oracle equivalence (spherical)",
        pass: disagreements == 0 && elapsed < LIMIT_2,
        detail: format!(
            "{} distinct coefficients, {} equations, {} oracle runs at B=|W|, {} disagreements, {} (limit {})",
            words.len(),
            equations,
            oracle_runs,
            disagreements,
            secs(elapsed),
            secs(LIMIT_2)
        ),
    }
}

fn genus_one_oracle(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let words = family();
    let (mut lemma_path, mut cyclic_path, mut parity, mut disagreements) = (0, 0, 0, 0);
    for k in 1..=3 {
        for m in multisets(words.len(), k) {
            let eq = QuadEquation::nonorientable(1, m.iter().map(|&i| words[i].clone()).collect())
                .unwrap();
            let total: i64 = eq.coefficient_elements().iter().map(LampElement::delta).sum();
            match (total % 2 != 0, total == 0) {
                (true, _) => parity += 1,
                (false, true) => lemma_path += 1,
                (false, false) => cyclic_path += 1,
            }
            let r = solve(&eq).unwrap();
            ledger.record(&eq, &r);
            if oracle_solve(&eq, eq.size() as u64).unwrap() != r.decision {
                disagreements += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 3,
        name: "oracle equivalence (genus-1 non-orientable)",
        pass: disagreements == 0 && elapsed < LIMIT_3,
        detail: format!(
            "{} with delta_x=0, {} with d>0, {} odd, {} disagreements at B=|W|, {} (limit {})",
            lemma_path,
            cyclic_path,
            parity,
            disagreements,
            secs(elapsed),
            secs(LIMIT_3)
        ),
    }
}

/// Orientable and genus >= 2 forms on the same family, against the oracle
/// at a fixed small bound. Counted towards witness soundness.
fn handle_forms(ledger: &mut Ledger) -> usize {
    let words = family();
    let mut disagreements = 0;
    for k in 0..=2 {
        for m in multisets(words.len(), k) {
            let coeffs: Vec<GroupWord> = m.iter().map(|&i| words[i].clone()).collect();
            for (form, genus) in [(Form::Orientable, 1), (Form::NonOrientable, 2)] {
                let eq = QuadEquation::new(form, genus, coeffs.clone()).unwrap();
                let r = solve(&eq).unwrap();
                ledger.record(&eq, &r);
                if oracle_solve(&eq, HANDLE_ORACLE_BOUND).unwrap() != r.decision {
                    disagreements += 1;
                }
            }
        }
    }
    disagreements
}

fn conjugacy() -> Outcome {
    let start = Instant::now();
    let mut r = rng(5);
    let (mut failures, mut too_long, mut longest_ratio) = (0, 0, 0.0f64);
    for _ in 0..RANDOM_CASES {
        let wg = random_len_word(&mut r, 200);
        let wz = random_len_word(&mut r, 200);
        let c1 = wg.clone();
        let c2 = wz.inverse().concat(&wg).concat(&wz).reduced();
        let (g, h) = (c1.eval(), c2.eval());
        if !is_conjugate(&g, &h) {
            failures += 1;
            continue;
        }
        let ans = find_conjugator(&g, &h);
        match &ans.conjugator {
            Some(x) if g.conjugate(&x.eval()) == h => {
                let budget = CONJUGATOR_FACTOR * (c1.len() + c2.len());
                if c1.len() + c2.len() > 0 {
                    longest_ratio = longest_ratio.max(x.len() as f64 / (c1.len() + c2.len()) as f64);
                }
                if x.len() > budget {
                    too_long += 1;
                }
            }
            _ => failures += 1,
        }
    }
    let (mut negatives, mut wrong) = (0, 0);
    while negatives < RANDOM_CASES {
        let wg = random_len_word(&mut r, 200);
        let mut wh = random_len_word(&mut r, 200);
        if r.gen_bool(0.75) {
            wh.extend_from(&GroupWord::t_pow(wg.sigma_t() - wh.sigma_t()));
        }
        let (g, h) = (wg.eval(), wh.eval());
        let truth = naive_conjugate(&g, &h);
        if is_conjugate(&g, &h) != truth || (!truth && find_conjugator(&g, &h).conjugate) {
            wrong += 1;
        }
        if !truth {
            negatives += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 5,
        name: "conjugacy",
        pass: failures == 0 && too_long == 0 && wrong == 0 && elapsed < LIMIT_5,
        detail: format!(
            "{} conjugate pairs ({} failures, {} over {}x, max ratio {:.2}), {} non-conjugate pairs ({} wrong), {} (limit {})",
            RANDOM_CASES,
            failures,
            too_long,
            CONJUGATOR_FACTOR,
            longest_ratio,
            negatives,
            wrong,
            secs(elapsed),
            secs(LIMIT_5)
        ),
    }
}

fn best_of<F: FnMut()>(runs: usize, mut f: F) -> Duration {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn linear_time() -> Outcome {
    let (n1, n2) = LINEAR_SIZES;
    let conj = |n: usize| {
        let (a, b) = conjugacy_fixture(n, 11);
        best_of(5, || {
            assert!(is_conjugate(&a.eval(), &b.eval()));
        })
    };
    let orient = |n: usize| {
        let eq = orientable_fixture(n, 12);
        best_of(5, || {
            let r = solve(&eq).unwrap();
            assert!(r.decision && r.witness.unwrap().verified);
        })
    };
    let (c1, c2) = (conj(n1), conj(n2));
    let (o1, o2) = (orient(n1), orient(n2));
    let rc = c2.as_secs_f64() / c1.as_secs_f64();
    let ro = o2.as_secs_f64() / o1.as_secs_f64();
    let pass = rc <= LINEAR_RATIO
        && ro <= LINEAR_RATIO
        && c2 < LINEAR_ABSOLUTE
        && o2 < LINEAR_ABSOLUTE;
    Outcome {
        id: 6,
        name: "linear-time behaviour",
        pass,
        detail: format!(
            "conjugacy {:.1}ms -> {:.1}ms (ratio {:.2}), orientable {:.1}ms -> {:.1}ms (ratio {:.2}); limits ratio {} and {} at n={}",
            c1.as_secs_f64() * 1e3,
            c2.as_secs_f64() * 1e3,
            rc,
            o1.as_secs_f64() * 1e3,
            o2.as_secs_f64() * 1e3,
            ro,
            LINEAR_RATIO,
            secs(LINEAR_ABSOLUTE),
            n2
        ),
    }
}

fn reduction(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let (mut pos, mut neg, mut wrong, mut bad_decode) = (0, 0, 0, 0);
    let instances = all_instances(MAX_3PART_SUM);
    for inst in &instances {
        let eq = encode(inst);
        let r = solve(&eq).unwrap();
        ledger.record(&eq, &r);
        let truth = brute_force_3part(inst, 1 << 32).unwrap().is_some();
        if truth != r.decision {
            wrong += 1;
        }
        if r.decision {
            pos += 1;
            let ok = r.certificate.as_ref().and_then(|c| decode(inst, c).ok()).is_some_and(|p| {
                p.iter()
                    .all(|t| t.iter().map(|&i| inst.values()[i]).sum::<u64>() == inst.target())
            });
            if !ok {
                bad_decode += 1;
            }
        } else {
            neg += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 7,
        name: "reduction correctness",
        pass: wrong == 0
            && bad_decode == 0
            && pos >= MIN_3PART_EACH
            && neg >= MIN_3PART_EACH
            && elapsed < LIMIT_7,
        detail: format!(
            "{} instances with sum <= {} ({} positive, {} negative), {} mismatches, {} bad decodes, {} (limit {})",
            instances.len(),
            MAX_3PART_SUM,
            pos,
            neg,
            wrong,
            bad_decode,
            secs(elapsed),
            secs(LIMIT_7)
        ),
    }
}

fn bounds(ledger: &Ledger) -> Outcome {
    let mut r = rng(8);
    let mut word_violations = 0;
    for _ in 0..RANDOM_CASES {
        let len = r.gen_range(1..=60);
        let w = random_word(&mut r, len);
        let g = w.eval();
        let n = w.len() as i64;
        let mut ok = g.delta().abs() <= n;
        if let Ok(diam) = g.lamps().diam() {
            ok &= diam <= n;
            if g.delta() == 0 && n >= 2 {
                ok &= 2 * diam <= n - 2;
            }
        }
        if !ok {
            word_violations += 1;
        }
    }
    let mut pull_violations = 0;
    for _ in 0..PULL_CASES {
        let delta = r.gen_range(1..=30);
        let f = LampConfig::from_support((-40..=40).filter(|_| r.gen_bool(0.3)));
        let g = LampElement::new(delta, f);
        let (w, reduced) = pull_to_window(&g).unwrap();
        let ok = g.conjugate(&w.eval()) == reduced
            && reduced.lamps().iter_support().all(|p| (0..delta).contains(&p));
        if !ok {
            pull_violations += 1;
        }
    }
    let total = word_violations + pull_violations + ledger.bound_violations;
    Outcome {
        id: 8,
        name: "bounds as assertions",
        pass: total == 0,
        detail: format!(
            "{} words ({} violations), {} certificates ({} violations), {} pulls ({} violations)",
            RANDOM_CASES,
            word_violations,
            ledger.certificates,
            ledger.bound_violations,
            PULL_CASES,
            pull_violations
        ),
    }
}

fn decompositions() -> Outcome {
    let mut r = rng(9);
    let mut failures = 0;
    for _ in 0..DECOMPOSITION_CASES {
        let g = random_derived(&mut r, 30);
        match g.commutator_witness() {
            Ok((x, y)) if LampElement::commutator(&x, &y) == g => {}
            _ => failures += 1,
        }
        let g = random_v(&mut r, 30);
        match g.two_squares_witness() {
            Ok((x, y)) if x.square().mul(&y.square()) == g => {}
            _ => failures += 1,
        }
    }
    let g = GroupWord::parse("atat^3").unwrap().eval();
    let example_ok = !g.is_square()
        && g
            .two_squares_witness()
            .is_ok_and(|(x, y)| {
                let (x2, y2) = (x.square(), y.square());
                x2.is_square() && y2.is_square() && x2.mul(&y2) == g
            });
    Outcome {
        id: 9,
        name: "decomposition widths",
        pass: failures == 0 && example_ok,
        detail: format!(
            "{} commutators and {} two-square products ({} failures); atat^3 example {}",
            DECOMPOSITION_CASES,
            DECOMPOSITION_CASES,
            failures,
            if example_ok { "ok" } else { "FAILED" }
        ),
    }
}

fn main() {
    let start = Instant::now();
    let mut ledger = Ledger::default();
    let mut outcomes = vec![formula_conformance()];
    outcomes.push(spherical_oracle(&mut ledger));
    outcomes.push(genus_one_oracle(&mut ledger));
    let handle_disagreements = handle_forms(&mut ledger);
    outcomes.push(conjugacy());
    outcomes.push(linear_time());
    outcomes.push(reduction(&mut ledger));
    outcomes.push(Outcome {
        id: 4,
        name: "witness soundness",
        pass: ledger.witness_failures == 0 && handle_disagreements == 0,
        detail: format!(
            "{} yes-answers, {} failed witnesses; handle forms vs oracle at B={}: {} disagreements",
            ledger.yes, ledger.witness_failures, HANDLE_ORACLE_BOUND, handle_disagreements
        ),
    });
    outcomes.push(bounds(&ledger));
    outcomes.push(decompositions());
    outcomes.sort_by_key(|o| o.id);

    for o in &outcomes {
        println!(
            "[{}] criterion {}: {}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!(
        "acceptance: {} of {} criteria passed in {}",
        outcomes.len() - failed,
        outcomes.len(),
        secs(start.elapsed())
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
