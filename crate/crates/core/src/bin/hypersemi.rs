use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hypersemi::enumerate::{census, search_nonassociative_divergence};
use hypersemi::report;
use hypersemi::{
    classify, compose, io, left_ideal_closure, right_ideal_closure, verify_theorems,
    is_fuzzy_left_ideal, is_fuzzy_right_ideal, CensusMode, CensusOptions, Error, ExhaustiveBudget,
    FuzzySubset, HyperOp,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_ASSOCIATIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "hypersemi", version, about = "Regularity classes of finite hypersemigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide all five classes by every route.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check route agreement and sample random fuzzy subsets.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Tally classes over all (or a sample of) tables of one order.
    Census {
        #[arg(long)]
        order: usize,
        /// Sample this many random tables instead of enumerating.
        #[arg(long, conflicts_with = "exhaustive")]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow exhaustive enumeration beyond order 2.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print f ∘ g.
    Compose {
        file: PathBuf,
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
        #[arg(long = "g", allow_hyphen_values = true)]
        g: String,
    },
    /// Ideal predicates and closures of f.
    Ideals {
        file: PathBuf,
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
    },
    /// Look for a non-associative table where definitional and fuzzy verdicts differ.
    SearchNonassoc {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotHypersemigroup(..) => EXIT_NOT_ASSOCIATIVE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<HyperOp, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    io::parse_table(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn fuzzy_arg(h: &HyperOp, text: &str) -> Result<FuzzySubset, Failure> {
    let f: FuzzySubset = text.parse()?;
    if f.order() != h.order() {
        return Err(Error::CarrierMismatch {
            left: h.order(),
            right: f.order(),
        }
        .into());
    }
    Ok(f)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        print!("{}", text(value));
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Classify { file, json } => {
            let h = load(&file)?;
            let r = classify(&h)?;
            emit(json, &r, report::classification_text);
            Ok(0)
        }
        Command::Verify {
            file,
            trials,
            seed,
            json,
        } => {
            let h = load(&file)?;
            let r = verify_theorems(&h, trials, seed)?;
            emit(json, &r, report::theorem_text);
            Ok(if r.passed { 0 } else { EXIT_FAILURE })
        }
        Command::Census {
            order,
            sample,
            seed,
            exhaustive,
            jobs,
            json,
        } => {
            let mode = match sample {
                Some(count) => CensusMode::Sampled { count, seed },
                None => CensusMode::Exhaustive,
            };
            let progress = |done: usize, total: usize| eprintln!("census: {done}/{total} partitions");
            let options = CensusOptions {
                budget: if exhaustive {
                    ExhaustiveBudget::EXTENDED
                } else {
                    ExhaustiveBudget::DEFAULT
                },
                jobs,
                progress: (exhaustive && order >= 3).then_some(&progress as _),
                ..CensusOptions::default()
            };
            let r = census(order, mode, options).map_err(|e| match e {
                Error::BudgetExceeded { .. } if !exhaustive => {
                    Failure::input(format!("{e}; pass --exhaustive to allow order 3"))
                }
                e => e.into(),
            })?;
            emit(json, &r, report::census_text);
            Ok(if r.route_disagreements > 0 { EXIT_FAILURE } else { 0 })
        }
        Command::Compose { file, f, g } => {
            let h = load(&file)?;
            let f = fuzzy_arg(&h, &f)?;
            let g = fuzzy_arg(&h, &g)?;
            println!("{}", compose(&h, &f, &g)?);
            Ok(0)
        }
        Command::Ideals { file, f } => {
            let h = load(&file)?;
            let f = fuzzy_arg(&h, &f)?;
            let one = FuzzySubset::one(h.carrier());
            println!("right ideal: {}", is_fuzzy_right_ideal(&h, &f)?);
            println!("left ideal: {}", is_fuzzy_left_ideal(&h, &f)?);
            println!("f∘1: {}", compose(&h, &f, &one)?);
            println!("1∘f: {}", compose(&h, &one, &f)?);
            println!("right closure: {}", right_ideal_closure(&h, &f)?);
            println!("left closure: {}", left_ideal_closure(&h, &f)?);
            Ok(0)
        }
        Command::SearchNonassoc {
            order,
            budget,
            seed,
            json,
        } => {
            let r = search_nonassociative_divergence(order, budget, seed)?;
            emit(json, &r, report::search_text);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
