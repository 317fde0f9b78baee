mod bench;
mod report;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use llq_core::equations::{oracle_search, DEFAULT_ORACLE_BUDGET};
use llq_core::group::parse_word;
use llq_core::hardness::{decode, encode, TPartInstance};
use llq_core::{
    find_conjugator, is_conjugate, oracle_solve, solve_with, GroupWord, LampElement, QuadEquation,
    SolveResult, SolverConfig, Strategy, Witness,
};
use serde_json::Value;

use bench::Suite;
use report::Report;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

/// Marks an encoded 3-partition instance inside an equation file.
const THREE_PART_TAG: &str = "# 3part";

#[derive(Parser)]
#[command(name = "llq", version, about = "Equations and conjugacy in the lamplighter group")]
struct Cli {
    /// Emit a single JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,

    /// Refuse inputs whose expanded length exceeds this many letters.
    #[arg(long, global = true, env = "LLQ_MAX_LEN", default_value_t = 10_000_000)]
    max_len: u64,

    /// Leave timings out so output is byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word to its normal form.
    Eval { word: String },
    /// Decide whether a word is a square, printing a root.
    IsSquare { word: String },
    /// Decide membership in the derived subgroup, printing a commutator.
    InDerived { word: String },
    /// Decide membership in the subgroup generated by squares.
    #[command(name = "in-V")]
    InV { word: String },
    /// Decide conjugacy of two words.
    Conj {
        w1: String,
        w2: String,
        /// Also print a conjugator x with x^-1 w1 x = w2.
        #[arg(long)]
        search: bool,
    },
    /// Solve the equation in FILE ("-" for stdin).
    Solve {
        file: PathBuf,
        /// Cross-check against the brute-force oracle with shifts bounded by B.
        #[arg(long, value_name = "B")]
        oracle_check: Option<u64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Encode a 3-partition instance as a spherical equation.
    #[command(name = "encode-3part")]
    Encode3Part {
        instance: PathBuf,
        /// Write the equation here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide the equation in FILE by bounded brute force.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
    /// Time a generated suite and print CSV.
    Bench {
        suite: Suite,
        /// Comma-separated sizes; the meaning depends on the suite.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Coefficient count for spherical, block count for 3part.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct SolverArgs {
    /// Worker threads for the shift enumeration. Output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Enumerate,
    Sweep,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            strategy: match self.strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Enumerate => Strategy::Enumerate,
                StrategyArg::Sweep => Strategy::Sweep,
            },
            threads: self.threads.max(1),
            ..SolverConfig::default()
        }
    }
}

struct Outcome {
    report: Option<Report>,
    raw: Option<String>,
    code: u8,
}

impl Outcome {
    fn decided(report: Report, yes: bool) -> Self {
        Outcome {
            report: Some(report),
            raw: None,
            code: if yes { EXIT_YES } else { EXIT_NO },
        }
    }
}

fn yes_no(b: bool) -> u8 {
    if b {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn word_string(g: &LampElement) -> String {
    GroupWord::from_element(g).to_string()
}

fn load_equation(path: &Path, max_len: u64) -> Result<(QuadEquation, Option<TPartInstance>)> {
    let text = read_input(path)?;
    let eq = QuadEquation::parse_file(&text, max_len)?;
    let meta = text
        .lines()
        .find_map(|l| l.trim().strip_prefix(THREE_PART_TAG))
        .map(parse_three_part_tag)
        .transpose()?;
    if let Some(inst) = &meta {
        if encode(inst).coeffs() != eq.coeffs() {
            bail!("{} metadata does not match the equation", THREE_PART_TAG);
        }
    }
    Ok((eq, meta))
}

/// Reads `k=<k> s=<v1,v2,...>` after the tag.
fn parse_three_part_tag(rest: &str) -> Result<TPartInstance> {
    let mut k = None;
    let mut s = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("k", v)) => k = Some(v),
            Some(("s", v)) => s = Some(v),
            _ => bail!("bad {} field {:?}", THREE_PART_TAG, field),
        }
    }
    let (Some(k), Some(s)) = (k, s) else {
        bail!("{} needs k= and s=", THREE_PART_TAG);
    };
    Ok(TPartInstance::parse(&format!("k={}\n{}", k, s))?)
}

fn put_witness(r: &mut Report, eq: &QuadEquation, w: Option<&Witness>) {
    for name in eq.variables() {
        let value = w
            .and_then(|w| w.get(&name))
            .map_or(Value::Null, |g| Value::from(g.to_string()));
        r.put(&name, value);
    }
}

fn solve_report(
    eq: &QuadEquation,
    result: &SolveResult,
    meta: Option<&TPartInstance>,
    timing: bool,
) -> Result<Report> {
    let mut r = Report::new();
    r.put("decision", result.decision)
        .put("form", eq.form().tag())
        .put("genus", eq.genus())
        .put("k", eq.k())
        .put("size", eq.size());
    match &result.certificate {
        Some(c) => r.put("d", c.modulus).put("shifts", c.shifts.clone()),
        None => r.put("d", Value::Null).put("shifts", Value::Null),
    };
    put_witness(&mut r, eq, result.witness.as_ref());
    r.put("verified", result.witness.as_ref().is_some_and(|w| w.verified))
        .put("strategy", result.stats.strategy)
        .put("enumerated", result.stats.enumerated);
    if timing {
        r.put("millis", (result.stats.millis * 1e3).round() / 1e3);
    }
    if let Some(inst) = meta {
        let blocks = match (&result.certificate, result.decision) {
            (Some(cert), true) => {
                let p = decode(inst, cert).context("decoding the partition")?;
                let groups: Vec<Value> = p
                    .iter()
                    .map(|b| Value::from(b.iter().map(|&i| inst.values()[i]).collect::<Vec<_>>()))
                    .collect();
                Value::from(groups)
            }
            _ => Value::Null,
        };
        r.put("partition", blocks);
    }
    Ok(r)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let parse = |w: &str| parse_word(w, cli.max_len).map(|w| w.eval());
    let timing = !cli.no_timing;
    Ok(match &cli.command {
        Command::Eval { word } => {
            let g = parse(word)?;
            let mut r = Report::inline();
            r.put("delta", g.delta()).put("supp", g.lamps().support());
            Outcome {
                report: Some(r),
                raw: None,
                code: EXIT_YES,
            }
        }
        Command::IsSquare { word } => {
            let g = parse(word)?;
            let mut r = Report::new();
            let yes = g.is_square();
            r.put("is_square", yes);
            if yes {
                r.put("root", word_string(&g.sqrt_witness()?));
            }
            Outcome::decided(r, yes)
        }
        Command::InDerived { word } => {
            let g = parse(word)?;
            let mut r = Report::new();
            let yes = g.in_derived();
            r.put("in_derived", yes);
            if yes {
                let (x, y) = g.commutator_witness()?;
                r.put("x", word_string(&x)).put("y", word_string(&y));
            }
            Outcome::decided(r, yes)
        }
        Command::InV { word } => {
            let g = parse(word)?;
            let mut r = Report::new();
            let yes = g.in_v();
            r.put("in_V", yes);
            if yes {
                let (x1, x2) = g.two_squares_witness()?;
                r.put("x1", word_string(&x1)).put("x2", word_string(&x2));
            }
            Outcome::decided(r, yes)
        }
        Command::Conj { w1, w2, search } => {
            let (c1, c2) = (parse(w1)?, parse(w2)?);
            let mut r = Report::new();
            if *search {
                let ans = find_conjugator(&c1, &c2);
                r.put("conjugate", ans.conjugate)
                    .put(
                        "conjugator",
                        ans.conjugator.map_or(Value::Null, |x| x.to_string().into()),
                    )
                    .put("shift", ans.shift.map_or(Value::Null, Value::from));
                Outcome::decided(r, ans.conjugate)
            } else {
                let yes = is_conjugate(&c1, &c2);
                r.put("conjugate", yes);
                Outcome::decided(r, yes)
            }
        }
        Command::Solve {
            file,
            oracle_check,
            solver,
        } => {
            let (eq, meta) = load_equation(file, cli.max_len)?;
            let result = solve_with(&eq, &solver.config())?;
            let mut r = solve_report(&eq, &result, meta.as_ref(), timing)?;
            let mut code = yes_no(result.decision);
            if let Some(bound) = oracle_check {
                let oracle = oracle_solve(&eq, *bound)?;
                r.put("oracle_bound", *bound).put("oracle", oracle);
                if oracle != result.decision {
                    eprintln!(
                        "oracle disagreement: solver says {}, oracle at bound {} says {}",
                        result.decision, bound, oracle
                    );
                    code = EXIT_DISAGREE;
                }
            }
            Outcome {
                report: Some(r),
                raw: None,
                code,
            }
        }
        Command::Encode3Part { instance, output } => {
            let inst = TPartInstance::parse(&read_input(instance)?)?;
            let eq = encode(&inst);
            if eq.size() as u64 > cli.max_len {
                bail!(
                    "encoded equation has {} letters, over the cap of {}",
                    eq.size(),
                    cli.max_len
                );
            }
            let values: Vec<String> = inst.values().iter().map(u64::to_string).collect();
            let text = format!(
                "{} k={} s={}\n{}",
                THREE_PART_TAG,
                inst.k(),
                values.join(","),
                eq
            );
            match output {
                Some(path) => {
                    std::fs::write(path, &text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    Outcome {
                        report: None,
                        raw: None,
                        code: EXIT_YES,
                    }
                }
                None => Outcome {
                    report: None,
                    raw: Some(text),
                    code: EXIT_YES,
                },
            }
        }
        Command::Oracle { file, bound } => {
            let (eq, _) = load_equation(file, cli.max_len)?;
            let found = oracle_search(&eq, *bound, DEFAULT_ORACLE_BUDGET)?;
            let mut r = Report::new();
            r.put("decision", found.is_some()).put("bound", *bound);
            put_witness(&mut r, &eq, found.as_ref());
            Outcome::decided(r, found.is_some())
        }
        Command::Bench {
            suite,
            sizes,
            k,
            seed,
            solver,
        } => {
            let sizes = sizes.clone().unwrap_or_else(|| suite.default_sizes());
            let k = k.unwrap_or_else(|| suite.default_k());
            let rows = bench::run(*suite, &sizes, k, *seed, &solver.config())?;
            Outcome {
                report: None,
                raw: Some(bench::csv(*suite, &rows, timing)),
                code: EXIT_YES,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Some(r) = out.report {
                println!("{}", r.render(cli.json));
            }
            if let Some(raw) = out.raw {
                print!("{}", raw);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(EXIT_INPUT)
        }
    }
}
