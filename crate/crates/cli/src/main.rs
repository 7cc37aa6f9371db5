//! `dqp`: quivers, Boalch presentations, double brackets and their
//! verification suites from the command line.
//!
//! Exit codes: 0 when every check is EQUAL or valid, 1 when any check is
//! NOT_EQUAL or a violation, 2 when any check is UNDECIDED (and none
//! fails), 3 on input errors.

mod commands;
mod input;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Outcome, Output, RepSource, Verify};

#[derive(Parser)]
#[command(
    name = "dqp",
    version,
    about = "Double quasi-Poisson brackets on Boalch algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Sources {
    /// Quiver JSON file or builtin:interval|triangle|table1.
    #[arg(long)]
    quiver: Option<String>,
    /// Generator table JSON file or builtin:interval|triangle|table1.
    #[arg(long)]
    table: Option<String>,
}

#[derive(Args)]
struct Checks {
    /// Equality strategies in order, e.g. structural,expanded,oracle.
    #[arg(long, default_value = "structural,expanded,oracle")]
    strategy: String,
    /// Dimension vector of the oracle representations, e.g. 2,2,2.
    #[arg(long)]
    dims: Option<String>,
    /// Seed of the oracle representations.
    #[arg(long)]
    seed: Option<u64>,
    /// Integer entry range LO,HI of the oracle representations.
    #[arg(long)]
    range: Option<String>,
}

impl Checks {
    fn verify(&self) -> Result<Verify> {
        let chain = input::strategies(&self.strategy)?;
        commands::check_chain(&chain)?;
        Ok(Verify {
            chain,
            dims: self.dims.as_deref().map(input::dims).transpose()?,
            seed: self.seed,
            range: self.range.as_deref().map(input::range).transpose()?,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report every structural violation of a colored quiver.
    ValidateQuiver {
        #[arg(long)]
        quiver: String,
    },
    /// Print the double, the extended double, the Boalch relations and the
    /// derived generators.
    BuildBoalch {
        #[command(flatten)]
        src: Sources,
        /// Coefficient family JSON file or builtin:table1 to include in the dump.
        #[arg(long)]
        family: Option<String>,
        /// Write a self-contained JSON dump that can be read back.
        #[arg(long)]
        dump: bool,
    },
    /// The double bracket of two expressions.
    Bracket {
        #[command(flatten)]
        src: Sources,
        #[command(flatten)]
        checks: Checks,
        /// Compare with this expected value.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
        a: String,
        b: String,
    },
    /// The triple bracket of three expressions against its quasi-Poisson target.
    Triple {
        #[command(flatten)]
        src: Sources,
        #[command(flatten)]
        checks: Checks,
        a: String,
        b: String,
        c: String,
    },
    /// The quasi-Poisson identity on every ordered triple of arrows.
    CheckQp {
        #[command(flatten)]
        src: Sources,
        #[command(flatten)]
        checks: Checks,
    },
    /// The moment-map identity for the product of loops at each vertex.
    CheckMoment {
        #[command(flatten)]
        src: Sources,
        #[command(flatten)]
        checks: Checks,
    },
    /// Every coefficient condition of a family.
    CheckConditions {
        /// Family JSON file or builtin:table1.
        #[arg(long)]
        family: String,
    },
    /// Recompute every builtin fixture from its arrow table.
    VerifyFixtures {
        /// Fixture name (repeatable; default: all).
        #[arg(long = "fixture")]
        fixtures: Vec<String>,
        #[command(flatten)]
        checks: Checks,
    },
    /// Enumerate admissible coefficient families over a value grid.
    Search {
        /// Number of vertices.
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Values per class: `class[,class]=v,v;...`, class `all` for every class.
        #[arg(long, default_value = "alpha,beta,mu=1/2,-1/2;nu,kappa=0,1")]
        grid: String,
        /// Stop after this many families.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build or load a matrix representation and verify its relations.
    RepVerify {
        #[command(flatten)]
        src: Sources,
        /// Dimension vector, e.g. 2,2,2.
        #[arg(long)]
        dims: Option<String>,
        /// Seed of the sampled representation.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Integer entry range LO,HI.
        #[arg(long, default_value = "-3,3")]
        range: String,
        /// Use the trivial representation.
        #[arg(long)]
        trivial: bool,
        /// Load a representation JSON file instead of sampling.
        #[arg(long)]
        rep: Option<String>,
        /// Print the representation as JSON instead of checking it.
        #[arg(long)]
        dump: bool,
    },
}

fn run(cli: &Cli) -> Result<Output> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("cannot configure worker threads")?;
    }
    match &cli.command {
        Command::ValidateQuiver { quiver } => commands::validate_quiver(quiver),
        Command::BuildBoalch { src, family, dump } => {
            let q = input::quiver(src.quiver.as_deref(), src.table.as_deref())?;
            let table = match &src.table {
                Some(t) => Some((input::table_source(t)?, input::table(t, &q)?)),
                None => None,
            };
            let fam = family.as_deref().map(input::family).transpose()?;
            let (mut out, d) = commands::build_boalch(
                &q,
                table.as_ref().map(|(s, t)| (s.as_str(), t)),
                fam.as_ref(),
            )?;
            if *dump {
                out.text = serde_json::to_string_pretty(&d)? + "\n";
                out.json = d;
            }
            Ok(out)
        }
        Command::Bracket {
            src,
            checks,
            expect,
            a,
            b,
        } => {
            let (q, t) = quiver_and_table(src)?;
            commands::bracket(&q, &t, a, b, expect.as_deref(), &checks.verify()?)
        }
        Command::Triple {
            src,
            checks,
            a,
            b,
            c,
        } => {
            let (q, t) = quiver_and_table(src)?;
            commands::triple(&q, &t, [a, b, c], &checks.verify()?)
        }
        Command::CheckQp { src, checks } => {
            let (q, t) = quiver_and_table(src)?;
            commands::check_qp(&q, &t, &checks.verify()?)
        }
        Command::CheckMoment { src, checks } => {
            let (q, t) = quiver_and_table(src)?;
            commands::check_moment(&q, &t, &checks.verify()?)
        }
        Command::CheckConditions { family } => commands::check_family(&input::family(family)?),
        Command::VerifyFixtures { fixtures, checks } => {
            commands::verify_fixtures(fixtures, &checks.verify()?)
        }
        Command::Search { n, grid, limit } => commands::search(*n, grid, *limit),
        Command::RepVerify {
            src,
            dims,
            seed,
            range,
            trivial,
            rep,
            dump,
        } => {
            let q = input::quiver(src.quiver.as_deref(), src.table.as_deref())?;
            let source = match (rep, dims) {
                (Some(path), _) => RepSource::File(path.clone()),
                (None, Some(d)) if *trivial => RepSource::Trivial(input::dims(d)?),
                (None, Some(d)) => RepSource::Random {
                    dims: input::dims(d)?,
                    seed: *seed,
                    range: input::range(range)?,
                },
                (None, None) => anyhow::bail!("rep-verify needs --dims or --rep"),
            };
            let r = commands::load_rep(&q, &source)?;
            if *dump {
                let text = r.to_json();
                return Ok(Output {
                    json: serde_json::from_str(&text)?,
                    text: text + "\n",
                    outcome: Outcome::Ok,
                });
            }
            let table = src
                .table
                .as_deref()
                .map(|t| input::table(t, &q))
                .transpose()?;
            commands::rep_verify(&q, &r, table.as_ref())
        }
    }
}

fn quiver_and_table(src: &Sources) -> Result<(quiver_core::ColoredQuiver, dbracket::BracketTable)> {
    let q = input::quiver(src.quiver.as_deref(), src.table.as_deref())?;
    let source = src
        .table
        .as_deref()
        .context("--table is required (a file or builtin:interval|triangle|table1)")?;
    let t = input::table(source, &q)?;
    Ok((q, t))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("output serializes")
                ),
            }
            ExitCode::from(out.outcome.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
