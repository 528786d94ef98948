//! `fibcalc`: classify, straighten, dualise, extract mates and verify.

mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use fibcalc::verify::Report;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "fibcalc", version, about = "Fibration calculus on finite categories")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// treat informational negatives as failures
    #[arg(long, global = true)]
    pub strict: bool,
    /// worker threads (default: all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    /// attach wall times to records
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VarianceArg {
    Covariant,
    Contravariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    /// cocartesian over the side to cartesian over its opposite
    Ct,
    Cc,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a functor into a product
    Classify {
        #[arg(long)]
        fib: PathBuf,
    },
    /// Straighten over one factor and check the round trip
    Straighten {
        #[arg(long)]
        fib: PathBuf,
        #[arg(long, value_enum, default_value_t = VarianceArg::Covariant)]
        variance: VarianceArg,
        #[arg(long, value_enum, default_value_t = SideArg::A)]
        side: SideArg,
    },
    /// Dualise over one factor
    Dualize {
        #[arg(long)]
        fib: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::A)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = DirectionArg::Ct)]
        direction: DirectionArg,
    },
    /// Parametrised left adjoint and its mates
    Mate {
        #[arg(long)]
        map: PathBuf,
    },
    /// Parametrised unit, counit and conjugation identities
    Unit {
        #[arg(long)]
        map: PathBuf,
    },
    /// The strict 2-category [m] ⊠ [n]
    Gray {
        m: usize,
        n: usize,
        /// largest m and n accepted
        #[arg(long, default_value_t = fibcalc::graytensor::DEFAULT_CAP)]
        cap: usize,
    },
    /// Gray scaling on the product of two scaled nerves
    Scaling {
        /// poset or category JSON (default: [1])
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long)]
        right: Option<PathBuf>,
        /// scale only degenerate triangles instead of all
        #[arg(long)]
        flat: bool,
    },
    /// Run verification suites
    Verify {
        /// `all` or a comma separated list
        #[arg(long, default_value = "all", value_parser = parse_suites)]
        suite: Suites,
        /// restrict the corpus to inputs over this base
        #[arg(long)]
        base: Option<PathBuf>,
    },
}

#[derive(Clone, Debug)]
pub struct Suites(pub Vec<fibcalc::verify::Suite>);

fn parse_suites(s: &str) -> Result<Suites, String> {
    fibcalc::verify::parse_selection(s).map(Suites).map_err(|e| e.to_string())
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || commands::run(&cli);
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j as usize).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(commands::CliError::Input(e.to_string())),
        },
        None => run(),
    };
    match result {
        Ok(report) => {
            print!("{}", emit(&report, cli.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("fibcalc: {e}");
            ExitCode::from(3)
        }
    }
}
