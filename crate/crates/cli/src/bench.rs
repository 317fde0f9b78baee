use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::ValueEnum;
use llq_core::generate::{conjugacy_fixture, orientable_fixture, rng, spherical_fixture};
use llq_core::hardness::{encode, planted_instance};
use llq_core::{is_conjugate, solve_with, QuadEquation, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Conjugacy,
    Orientable,
    Spherical,
    #[value(name = "3part")]
    ThreePart,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Conjugacy => "conjugacy",
            Suite::Orientable => "orientable",
            Suite::Spherical => "spherical",
            Suite::ThreePart => "3part",
        }
    }

    /// Sizes are total letters for the linear suites, letters per
    /// coefficient for `spherical`, and the target `T` for `3part`.
    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            Suite::Conjugacy | Suite::Orientable => vec![1_000, 10_000, 100_000, 1_000_000],
            Suite::Spherical => vec![8, 16, 32],
            Suite::ThreePart => vec![12, 16, 20, 24],
        }
    }

    pub fn default_k(self) -> usize {
        match self {
            Suite::Spherical => 3,
            _ => 2,
        }
    }
}

pub struct Row {
    w: usize,
    k: usize,
    millis: f64,
    enumerated: u64,
    decision: bool,
}

fn solve_row(eq: &QuadEquation, config: &SolverConfig) -> Result<Row> {
    let start = Instant::now();
    let r = solve_with(eq, config)?;
    Ok(Row {
        w: eq.size(),
        k: eq.k(),
        millis: start.elapsed().as_secs_f64() * 1e3,
        enumerated: r.stats.enumerated,
        decision: r.decision,
    })
}

pub fn run(
    suite: Suite,
    sizes: &[usize],
    k: usize,
    seed: u64,
    config: &SolverConfig,
) -> Result<Vec<Row>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let row = match suite {
            Suite::Conjugacy => {
                let (w1, w2) = conjugacy_fixture(n, seed);
                let start = Instant::now();
                let decision = is_conjugate(&w1.eval(), &w2.eval());
                Row {
                    w: w1.len() + w2.len(),
                    k: 2,
                    millis: start.elapsed().as_secs_f64() * 1e3,
                    enumerated: 0,
                    decision,
                }
            }
            Suite::Orientable => solve_row(&orientable_fixture(n, seed), config)?,
            Suite::Spherical => solve_row(&spherical_fixture(k, n, seed), config)?,
            Suite::ThreePart => {
                let Some(inst) = planted_instance(&mut rng(seed), k, n as u64) else {
                    bail!("no 3-partition values strictly between {}/4 and {}/2", n, n);
                };
                solve_row(&encode(&inst), config)?
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn csv(suite: Suite, rows: &[Row], timing: bool) -> String {
    let mut out = String::from("suite,w,k,millis,enumerated,decision\n");
    for r in rows {
        let millis = if timing {
            format!("{:.3}", r.millis)
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            suite.name(),
            r.w,
            r.k,
            millis,
            r.enumerated,
            if r.decision { "yes" } else { "no" }
        );
    }
    out
}
