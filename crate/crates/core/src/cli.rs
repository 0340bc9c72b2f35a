//! Command-line interface.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage errors or invalid
//! input, 3 when a closure or prefix budget is exceeded.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::constructions::{
    build_extender_target, build_follower_target, build_gns, join, GnsSpec, PartitionSpec,
};
use crate::engine::{Analysis, EngineConfig, Quantity, DEFAULT_CLOSURE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{format_word, parse_word};
use crate::predicates::predicate_report;
use crate::render::{product_csv, sequence_csv, sequence_table};
use crate::shift::{GraphFile, PresentedShift};
use crate::sturmian::{
    distinction_depth, find_nonmonotone_length, product_counts, sturmian_factors, SturmianModel,
    DEFAULT_PREFIX_BUDGET,
};
use crate::verify::{run_suite, Suite, SuiteParams, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sofic",
    version,
    about = "Follower and extender set sequences of sofic shifts"
)]
pub struct Cli {
    /// Maximum number of states in a subset or relation closure.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_BUDGET)]
    pub closure_budget: usize,

    /// Maximum length of the generated Sturmian prefix.
    #[arg(long, global = true, default_value_t = DEFAULT_PREFIX_BUDGET)]
    pub prefix_budget: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a presentation and write it as JSON.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Structural predicates of a graph file.
    Predicates {
        graph: PathBuf,
        /// Also report the synchronization of this word (labels separated by spaces).
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Follower or extender count sequence of a graph file.
    Sequence {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = QuantityArg::Follower)]
        quantity: QuantityArg,
        #[arg(long, default_value_t = 100)]
        lmax: usize,
        /// Output file; `.csv` selects CSV, anything else JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Format for standard output when no --out is given.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Pumping decomposition of a word.
    Pump {
        graph: PathBuf,
        /// Labels separated by spaces.
        #[arg(long)]
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Join two presentations through their synchronizing loops.
    Join {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a shift realizing an oscillation prescribed by a partition of residues.
    Target {
        #[arg(long, value_enum, default_value_t = QuantityArg::Follower)]
        quantity: QuantityArg,
        #[command(flatten)]
        partition: PartitionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor counts and follower distinction of the Fibonacci word.
    Sturmian {
        #[arg(long, default_value_t = 20)]
        lmax: usize,
        /// Largest depth tried for follower distinction; defaults to 2ℓ + 5.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Counts of the product of a graph's shift with a Sturmian shift.
    Product {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = QuantityArg::Extender)]
        quantity: QuantityArg,
        #[arg(long, default_value_t = 200)]
        lmax: usize,
        /// Also report the first nonmonotone length for this `G_{n,S}` (with --s).
        #[arg(long, requires = "s")]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', requires = "n")]
        s: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        params: VerifyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// The three-loop graph `G_{n,S}`.
    Gns {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<usize>,
        /// Defaults to min(S).
        #[arg(long)]
        istar: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub n: usize,
    /// Blocks separated by `;`, residues by `,`: `0,2;1;3`.
    #[arg(long, value_parser = parse_blocks)]
    pub blocks: Blocks,
    #[arg(long, value_delimiter = ',', required = true)]
    pub rates: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
    #[arg(long)]
    pub istar: Option<usize>,
    /// Second graph of thm-join.
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub s2: Option<Vec<usize>>,
    #[arg(long, value_parser = parse_blocks)]
    pub blocks: Option<Blocks>,
    #[arg(long, value_delimiter = ',')]
    pub rates: Option<Vec<usize>>,
    #[arg(long)]
    pub lmax: Option<usize>,
    #[arg(long, value_enum)]
    pub quantity: Option<QuantityArg>,
    /// Seed for sampled words.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of sampled words in thm-periodic.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Follower,
    Extender,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::Follower => Quantity::Follower,
            QuantityArg::Extender => Quantity::Extender,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks(pub Vec<BTreeSet<usize>>);

fn parse_blocks(text: &str) -> std::result::Result<Blocks, String> {
    text.split(';')
        .map(|block| {
            block
                .split(',')
                .map(|r| {
                    r.trim()
                        .parse::<usize>()
                        .map_err(|e| format!("bad residue `{r}`: {e}"))
                })
                .collect::<std::result::Result<BTreeSet<usize>, String>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Blocks)
}

fn parse_suite(text: &str) -> std::result::Result<Suite, String> {
    text.parse()
}

/// What a successful command produced.
enum Outcome {
    Done,
    VerificationFailed,
}

struct Context {
    config: EngineConfig,
    prefix_budget: usize,
}

impl Context {
    fn analysis(&self, shift: &PresentedShift) -> Result<Analysis> {
        Analysis::with_config(shift.graph(), self.config)
    }
}

fn load_shift(path: &Path) -> Result<PresentedShift> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let (shift, removed) = GraphFile::parse(&text)?.trimmed()?;
    if !removed.is_empty() {
        eprintln!(
            "trimmed {} inessential vertices: {:?}",
            removed.len(),
            removed
        );
    }
    Ok(shift)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn execute(cli: Cli) -> Result<Outcome> {
    let ctx = Context {
        config: EngineConfig {
            closure_budget: cli.closure_budget,
        },
        prefix_budget: cli.prefix_budget,
    };
    match cli.command {
        Command::Construct {
            what: Construct::Gns { n, s, istar, out },
        } => {
            let shift = build_gns(&GnsSpec::new(n, s, istar)?)?;
            emit(out.as_deref(), &shift.to_json())?;
        }
        Command::Predicates { graph, word, out } => {
            let shift = load_shift(&graph)?;
            let a = ctx.analysis(&shift)?;
            let mut report = serde_json::to_value(predicate_report(&a)).expect("serializable");
            if let Some(sl) = shift.sync_loop() {
                report["sync_loop"] = json!(sl);
            }
            if let Some(w) = word {
                let w = parse_word(&w)?;
                let status = a.synchronizing_status(&w)?;
                report["word"] = json!({
                    "word": format_word(&w),
                    "right": status.right,
                    "left": status.left,
                    "bi": status.bi(),
                });
            }
            emit(out.as_deref(), &to_json(&report))?;
        }
        Command::Sequence {
            graph,
            quantity,
            lmax,
            out,
            format,
        } => {
            let shift = load_shift(&graph)?;
            let report = ctx.analysis(&shift)?.sequence(quantity.into(), lmax)?;
            let text = match (&out, format) {
                (Some(path), _) if is_csv(path) => sequence_csv(&report),
                (Some(_), _) | (None, Format::Json) => to_json(&report),
                (None, Format::Csv) => sequence_csv(&report),
                (None, Format::Table) => sequence_table(&report),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Pump { graph, word, out } => {
            let shift = load_shift(&graph)?;
            let a = ctx.analysis(&shift)?;
            let w = parse_word(&word)?;
            let pump = a.pump_decomposition(&w)?;
            let report = json!({
                "word": format_word(&w),
                "pumping_length": a.pumping_length()?,
                "x": format_word(&pump.x),
                "y": format_word(&pump.y),
                "z": format_word(&pump.z),
            });
            emit(out.as_deref(), &to_json(&report))?;
        }
        Command::Join { first, second, out } => {
            let joined = join(&load_shift(&first)?, &load_shift(&second)?)?;
            emit(out.as_deref(), &joined.to_json())?;
        }
        Command::Target {
            quantity,
            partition,
            out,
        } => {
            let spec = PartitionSpec::new(partition.n, partition.blocks.0, partition.rates)?;
            let shift = match Quantity::from(quantity) {
                Quantity::Follower => build_follower_target(&spec)?,
                Quantity::Extender => build_extender_target(&spec)?,
            };
            emit(out.as_deref(), &shift.to_json())?;
        }
        Command::Sturmian { lmax, depth, out } => {
            let model = SturmianModel::fibonacci().with_prefix_budget(ctx.prefix_budget);
            let mut rows = Vec::new();
            for l in 1..=lmax {
                let factors = sturmian_factors(&model, l)?;
                let max_depth = depth.unwrap_or(2 * l + 5);
                rows.push(json!({
                    "length": l,
                    "factors": factors.len(),
                    "distinction_depth": distinction_depth(&model, l, max_depth)?,
                }));
            }
            emit(out.as_deref(), &to_json(&json!({ "lengths": rows })))?;
        }
        Command::Product {
            graph,
            quantity,
            lmax,
            n,
            s,
            out,
        } => {
            let shift = load_shift(&graph)?;
            let a = ctx.analysis(&shift)?;
            let report = a.sequence(quantity.into(), lmax)?;
            let product = product_counts(&report, lmax)?;
            let text = match &out {
                Some(path) if is_csv(path) => product_csv(&product),
                _ => {
                    let mut value = serde_json::to_value(&product).expect("serializable");
                    if let (Some(n), Some(s)) = (n, s) {
                        let spec = GnsSpec::new(n, s, None)?;
                        value["first_nonmonotone_length"] =
                            json!(find_nonmonotone_length(&spec, quantity.into(), ctx.config)?);
                    }
                    to_json(&value)
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Verify { suite, params, out } => {
            let p = SuiteParams {
                n: params.n,
                s: params.s,
                istar: params.istar,
                n2: params.n2,
                s2: params.s2,
                blocks: params.blocks.map(|b| b.0),
                rates: params.rates,
                lmax: params.lmax,
                quantity: params.quantity.map(Quantity::from),
                seed: Some(params.seed),
                samples: params.samples,
                config: ctx.config,
            };
            let result = run_suite(suite, &p)?;
            let failures: Vec<_> = result.failures().collect();
            eprintln!(
                "{suite}: {} ({} checks, {} failed)",
                if result.passed { "pass" } else { "FAIL" },
                result.checks.len(),
                failures.len()
            );
            for c in failures.iter().take(20) {
                match c.length {
                    Some(l) => eprintln!(
                        "  {} at length {l}: expected {}, computed {}",
                        c.name, c.expected, c.computed
                    ),
                    None => eprintln!(
                        "  {}: expected {}, computed {}",
                        c.name, c.expected, c.computed
                    ),
                }
            }
            emit(out.as_deref(), &to_json(&result))?;
            if !result.passed {
                return Ok(Outcome::VerificationFailed);
            }
        }
    }
    Ok(Outcome::Done)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_budget() => EXIT_BUDGET,
        Error::InvalidSpec(_)
        | Error::InvalidGraph(_)
        | Error::EmptyShift
        | Error::NotEssential(_) => EXIT_USAGE,
        _ => EXIT_VERIFY_FAILED,
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(Outcome::Done) => EXIT_OK,
        Ok(Outcome::VerificationFailed) => EXIT_VERIFY_FAILED,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_syntax() {
        let b = parse_blocks("0,2;1;3").unwrap();
        assert_eq!(b.0.len(), 3);
        assert!(b.0[0].contains(&2));
        assert!(parse_blocks("0,x").is_err());
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run(["sofic", "construct", "gns", "--n", "5"]), EXIT_USAGE);
        assert_eq!(run(["sofic", "verify", "thm-nope"]), EXIT_USAGE);
        assert_eq!(
            run(["sofic", "construct", "gns", "--n", "2", "--s", "5"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn budget_errors_exit_with_three() {
        assert_eq!(
            run([
                "sofic",
                "verify",
                "thm-counts",
                "--closure-budget",
                "3",
                "--lmax",
                "5"
            ]),
            EXIT_BUDGET
        );
    }
}
