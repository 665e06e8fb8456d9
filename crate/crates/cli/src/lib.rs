//! Command-line front end: input documents, the bundled corpus and the JSON
//! output documents.

pub mod commands;
pub mod corpus;
pub mod docs;
pub mod error;
pub mod input;
pub mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::{load_input, load_point, InputSpec};
use crate::render::parse_direction;

#[derive(Debug, Parser)]
#[command(
    name = "toricstab",
    version,
    about = "Exact optimal destabilizers of toric Fano pairs"
)]
pub struct Cli {
    /// Decimal places in the display-only `decimal` blocks.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: u32,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Volume, barycenter, covariance, verdict and invariants at given directions.
    Report {
        /// A JSON file or `corpus:NAME`.
        input: String,
        /// Direction as comma-separated rationals; repeatable.
        #[arg(long = "v", allow_hyphen_values = true)]
        v: Vec<String>,
    },
    /// The optimal destabilizer with its certificate.
    Destabilize {
        input: Option<String>,
        /// Emit a list over every bundled corpus entry.
        #[arg(long, conflicts_with = "input")]
        corpus: bool,
    },
    /// Group inputs by exact `M^μ`, strictly descending.
    Stratify {
        inputs: Vec<String>,
        /// Stratify the bundled corpus.
        #[arg(long)]
        corpus: bool,
    },
    /// Lattice-point convergence table for a direction.
    Oracle {
        input: String,
        #[arg(long = "v", allow_hyphen_values = true)]
        v: String,
        /// Largest dilate; defaults to 60 times the vertex denominator period.
        #[arg(long)]
        mmax: Option<u64>,
        /// Write a whitespace-separated columnar dump here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Limit of a weighted point under a one-parameter subgroup.
    Limits {
        /// JSON file `{"weights": [[int, …], …], "support": [int, …]}`.
        pointfile: String,
        #[arg(long = "v", allow_hyphen_values = true)]
        v: String,
    },
    /// Names of the bundled corpus entries.
    ListCorpus,
}

/// Runs the command and returns the rendered document.
pub fn run(cli: &Cli) -> CliResult<String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Input("--threads must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let doc = pool.install(|| execute(cli))?;
    if let Some(path) = &cli.out {
        std::fs::write(path, &doc)?;
        return Ok(String::new());
    }
    Ok(doc)
}

fn execute(cli: &Cli) -> CliResult<String> {
    let digits = cli.digits;
    match &cli.command {
        Command::Report { input, v } => {
            let spec = load_input(input)?;
            let dirs = v
                .iter()
                .map(|s| parse_direction(s))
                .collect::<CliResult<Vec<_>>>()?;
            render(&commands::report(&spec, &dirs, digits)?)
        }
        Command::Destabilize { input, corpus } => match (input, corpus) {
            (Some(input), false) => render(&commands::destabilize(&load_input(input)?, digits)?),
            (None, true) => {
                let docs = corpus::corpus()
                    .iter()
                    .map(|s| commands::destabilize(s, digits))
                    .collect::<CliResult<Vec<_>>>()?;
                render(&docs)
            }
            _ => Err(CliError::Input(
                "destabilize: give an input or --corpus".into(),
            )),
        },
        Command::Stratify { inputs, corpus } => {
            let mut specs: Vec<InputSpec> = inputs
                .iter()
                .map(|s| load_input(s))
                .collect::<CliResult<_>>()?;
            if *corpus {
                specs.extend(corpus::corpus().iter().cloned());
            }
            render(&commands::stratify(&specs, digits)?)
        }
        Command::Oracle {
            input,
            v,
            mmax,
            dump,
        } => {
            let spec = load_input(input)?;
            let (doc, columns) = commands::oracle(&spec, &parse_direction(v)?, *mmax, digits)?;
            if let Some(path) = dump {
                std::fs::write(path, columns)?;
            }
            render(&doc)
        }
        Command::Limits { pointfile, v } => render(&commands::limits(
            &load_point(pointfile)?,
            &parse_direction(v)?,
        )?),
        Command::ListCorpus => Ok(corpus::corpus()
            .iter()
            .map(|s| format!("{}\n", s.name))
            .collect()),
    }
}

fn render<T: Serialize>(doc: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
