//! Command-line front end: word arithmetic, derived-series queries,
//! subgroup membership, and the verification harness.
//!
//! Exit codes: 0 success / all checks pass, 1 violations found,
//! 2 usage errors (including unknown scenario or fault names).

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ggt_core::fox_magnus::{derived_depth, derived_member, DerivedLevel};
use ggt_core::free_groups::{SubgroupAutomaton, Word};
use ggt_core::report::Report;
use ggt_core::verify::{run_all, run_scenario, Fault, ScenarioOptions, SCENARIOS};

#[derive(Parser)]
#[command(name = "ggt", about = "combinatorial group theory engine", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Free-word arithmetic on reduced words.
    Words {
        #[command(subcommand)]
        op: WordsOp,
    },
    /// Derived-series membership and depth.
    Derived {
        #[command(subcommand)]
        op: DerivedOp,
    },
    /// Finitely generated subgroups of free groups.
    Subgroup {
        #[command(subcommand)]
        op: SubgroupOp,
    },
    /// Run a named verification scenario, or all of them.
    Verify(VerifyArgs),
    /// Re-run the scenario recorded in a report file and confirm its
    /// outcome reproduces.
    Replay {
        /// Report JSON produced by `ggt verify --report`.
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Subcommand)]
enum WordsOp {
    /// Freely reduce a word and print its canonical form.
    Reduce { word: String },
    /// Multiply two words.
    Mul { left: String, right: String },
    /// Invert a word.
    Inv { word: String },
    /// Raise a word to an integer power.
    Pow {
        word: String,
        #[arg(allow_negative_numbers = true)]
        exponent: i64,
    },
}

#[derive(Subcommand)]
enum DerivedOp {
    /// Decide membership in the level-N derived subgroup.
    Member {
        #[arg(long)]
        level: u32,
        word: String,
    },
    /// Depth in the derived series, capped at --level.
    Depth {
        #[arg(long)]
        level: u32,
        word: String,
    },
}

#[derive(Subcommand)]
enum SubgroupOp {
    /// Membership in the subgroup generated by --gens.
    Contains {
        /// Comma-separated generator words, e.g. `x1 x1,x2`.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
        word: String,
    },
    /// Shortlex-minimal representative of the right coset of the word.
    Rep {
        /// Comma-separated generator words, e.g. `x1 x1,x2`.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
        word: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Scenario name, or `all`.
    scenario: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Chain depth knob, where the scenario has one.
    #[arg(long)]
    levels: Option<u32>,
    /// Sample/trial count knob.
    #[arg(long)]
    trials: Option<usize>,
    /// Bound knob (closure products, power range, ...).
    #[arg(long)]
    bound: Option<usize>,
    /// Write the report(s) as JSON to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Swap a deliberately broken instance into the main path.
    #[arg(long)]
    inject_fault: Option<String>,
}

fn parse_word(text: &str) -> Result<Word> {
    Word::from_str(text).with_context(|| format!("cannot parse word `{text}`"))
}

fn parse_words(texts: &[String]) -> Result<Vec<Word>> {
    texts.iter().map(|t| parse_word(t)).collect()
}

fn print_report(report: &Report) {
    let status = if report.passed() { "pass" } else { "FAIL" };
    println!(
        "{}: {} ({} checks, {} violations, {} ms)",
        report.scenario,
        status,
        report.checks_run,
        report.violations.len(),
        report.wall_time_ms
    );
    for v in &report.violations {
        let level = v.level.map(|n| format!(" level {n}")).unwrap_or_default();
        println!("  {}{}: {} [{}]", v.check, level, v.detail, v.witnesses.join(", "));
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let fault = match &args.inject_fault {
        Some(name) => Some(Fault::from_str(name).map_err(anyhow::Error::msg)?),
        None => None,
    };
    let opts = ScenarioOptions {
        seed: args.seed,
        levels: args.levels,
        trials: args.trials,
        bound: args.bound,
        fault,
    };
    let reports: Vec<Report> = if args.scenario == "all" {
        run_all(&opts)
    } else {
        match run_scenario(&args.scenario, &opts) {
            Some(r) => vec![r],
            None => bail!(
                "unknown scenario `{}` (known: all, {})",
                args.scenario,
                SCENARIOS.join(", ")
            ),
        }
    };
    for report in &reports {
        print_report(report);
    }
    if let Some(path) = &args.report {
        let json = if args.scenario == "all" {
            serde_json::to_string_pretty(&reports)?
        } else {
            serde_json::to_string_pretty(&reports[0])?
        };
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if reports.iter().all(Report::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn options_from_report(report: &Report) -> ScenarioOptions {
    let get = |keys: &[&str]| {
        keys.iter()
            .find_map(|k| report.parameters.get(*k))
            .and_then(|v| v.parse::<u64>().ok())
    };
    ScenarioOptions {
        seed: report.seed,
        levels: get(&["levels", "level", "n_max"]).map(|v| v as u32),
        trials: get(&["trials", "sample"]).map(|v| v as usize),
        bound: get(&["bound", "k_max"]).map(|v| v as usize),
        fault: report
            .parameters
            .get("fault")
            .and_then(|f| Fault::from_str(f).ok()),
    }
}

fn replay(path: &PathBuf) -> Result<ExitCode> {
    let data = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let reports: Vec<Report> = serde_json::from_str::<Vec<Report>>(&data)
        .or_else(|_| serde_json::from_str::<Report>(&data).map(|r| vec![r]))
        .context("report file is not valid report JSON")?;
    let mut reproduced = true;
    for original in &reports {
        let opts = options_from_report(original);
        let Some(rerun) = run_scenario(&original.scenario, &opts) else {
            bail!("report names unknown scenario `{}`", original.scenario);
        };
        let same = rerun.violations == original.violations;
        println!(
            "{}: {} ({} violations then, {} now)",
            original.scenario,
            if same { "reproduced" } else { "DIVERGED" },
            original.violations.len(),
            rerun.violations.len()
        );
        reproduced &= same;
    }
    Ok(if reproduced { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Words { op } => {
            match op {
                WordsOp::Reduce { word } => println!("{}", parse_word(&word)?),
                WordsOp::Mul { left, right } => {
                    println!("{}", parse_word(&left)?.multiply(&parse_word(&right)?))
                }
                WordsOp::Inv { word } => println!("{}", parse_word(&word)?.invert()),
                WordsOp::Pow { word, exponent } => {
                    println!("{}", parse_word(&word)?.power(exponent))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Derived { op } => {
            match op {
                DerivedOp::Member { level, word } => {
                    println!("{}", derived_member(&parse_word(&word)?, DerivedLevel(level)))
                }
                DerivedOp::Depth { level, word } => {
                    println!("{}", derived_depth(&parse_word(&word)?, level))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Subgroup { op } => {
            match op {
                SubgroupOp::Contains { gens, word } => {
                    let automaton = SubgroupAutomaton::fold(&parse_words(&gens)?);
                    println!("{}", automaton.contains(&parse_word(&word)?));
                }
                SubgroupOp::Rep { gens, word } => {
                    let automaton = SubgroupAutomaton::fold(&parse_words(&gens)?);
                    println!("{}", automaton.coset_rep(&parse_word(&word)?));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => verify(args),
        Command::Replay { report } => replay(&report),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
