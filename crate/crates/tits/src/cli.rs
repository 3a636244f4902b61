//! Command-line front end. Exit codes: 0 ok, 1 domain error, 2 usage error,
//! 3 no criterion available.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use tits_core::equivalence::{motivic_equivalent, motivic_equivalent_mod_p, Verdict};
use tits_core::render::{render_svg, render_text, render_text_ascii, render_tikz};
use tits_core::{Family, RuleSet, TitsIndex};

use crate::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNAVAILABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tits", version, about = "Tits p-indexes of simple algebraic groups")]
pub struct Cli {
    /// Rules file replacing the built-in tables
    #[arg(long, global = true, env = "TITS_RULES")]
    pub rules: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ListFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PictureFormat {
    Text,
    Svg,
    Tikz,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every Tits p-index of a family
    Enumerate {
        /// Family: 1A, 2A, B, C, 1D, 2D, 3D4, G2, F4, 1E6, 2E6, E7, E8
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: ListFormat,
    },
    /// Check an index file (one index or an array); `-` reads stdin
    Validate {
        file: PathBuf,
        /// Also require the index to be a p-index of its family
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Draw an index file
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: PictureFormat,
        /// Use `###` for triple edges
        #[arg(long)]
        ascii_only: bool,
    },
    /// Decide motivic equivalence between two profile files
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        prime: Option<u64>,
        /// Every torsion prime of the type
        #[arg(long)]
        all: bool,
    },
    /// Write the golden table files
    Tables {
        #[arg(long)]
        out: PathBuf,
    },
    /// Resolve a profile file to its Tits p-index
    Profile {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Profiles producing the index in a file
    Constraints {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
    },
}

enum Failure {
    Domain(anyhow::Error),
    Unavailable(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<tits_core::Error> for Failure {
    fn from(e: tits_core::Error) -> Self {
        Failure::Domain(e.into())
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn parse_family(s: &str) -> anyhow::Result<Family> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

fn valid_indexes(path: &Path) -> anyhow::Result<Vec<TitsIndex>> {
    let indexes = json::parse_indexes(&read_input(path)?)?;
    for index in &indexes {
        let v = index.validate();
        if !v.is_empty() {
            let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
            bail!("{}", msgs.join("; "));
        }
    }
    Ok(indexes)
}

/// Runs the command line, writing to `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_DOMAIN
        }
        Err(Failure::Unavailable(note)) => {
            let _ = writeln!(err, "criterion_unavailable: {note}");
            EXIT_UNAVAILABLE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let rules: RuleSet = crate::rules::load(cli.rules.as_deref())?;
    let io = |r: std::io::Result<()>| r.map_err(|e| Failure::Domain(e.into()));
    match &cli.command {
        Command::Enumerate { family, rank, prime, format } => {
            let family = parse_family(family)?;
            let all = rules.enumerate(family, *rank, *prime)?;
            match format {
                ListFormat::Json => {
                    let docs: Vec<_> = all.iter().map(json::index_json).collect();
                    io(write!(out, "{}", json::pretty(&docs)))?;
                }
                ListFormat::Text => {
                    for (i, index) in all.iter().enumerate() {
                        if i > 0 {
                            io(writeln!(out))?;
                        }
                        io(writeln!(out, "[{}] split rank {}", i + 1, index.split_rank()))?;
                        io(writeln!(out, "{}", render_text(index)))?;
                    }
                }
            }
        }
        Command::Validate { file, prime } => {
            let indexes = valid_indexes(file)?;
            if let Some(p) = prime {
                for index in &indexes {
                    if !rules.admissible(index, *p) {
                        return Err(anyhow!("{:?} is not a Tits {p}-index", index.distinguished()).into());
                    }
                }
            }
            io(writeln!(out, "ok: {} valid index(es)", indexes.len()))?;
        }
        Command::Render { file, format, ascii_only } => {
            let indexes = valid_indexes(file)?;
            for (i, index) in indexes.iter().enumerate() {
                let pic = match format {
                    PictureFormat::Text if *ascii_only => render_text_ascii(index),
                    PictureFormat::Text => render_text(index),
                    PictureFormat::Svg => render_svg(index),
                    PictureFormat::Tikz => render_tikz(index),
                };
                if i > 0 {
                    io(writeln!(out))?;
                }
                io(write!(out, "{pic}"))?;
                if !pic.ends_with('\n') {
                    io(writeln!(out))?;
                }
            }
        }
        Command::Equiv { first, second, prime, all } => {
            let a = json::parse_profile(&read_input(first)?)?;
            let b = json::parse_profile(&read_input(second)?)?;
            let decision = match (prime, all) {
                (Some(p), _) => motivic_equivalent_mod_p(&a, &b, *p)?,
                (None, _) => motivic_equivalent(&a, &b)?,
            };
            io(write!(out, "{}", json::pretty(&json::decision_json(&decision))))?;
            if decision.verdict == Verdict::CriterionUnavailable {
                let note = decision
                    .per_prime
                    .iter()
                    .find(|d| d.verdict == Verdict::CriterionUnavailable)
                    .unwrap_or(&decision)
                    .note
                    .clone()
                    .unwrap_or_default();
                return Err(Failure::Unavailable(note));
            }
        }
        Command::Tables { out: dir } => {
            for name in crate::tables::write_all(&rules, dir)? {
                io(writeln!(out, "{}", dir.join(name).display()))?;
            }
        }
        Command::Profile { file, prime } => {
            let profile = json::parse_profile(&read_input(file)?)?;
            let r = rules.index_from_profile(&profile, *prime)?;
            io(write!(out, "{}", json::pretty(&json::resolution_json(&r))))?;
        }
        Command::Constraints { file, prime } => {
            for index in valid_indexes(file)? {
                let cs = rules.constraints_for_index(&index, *prime)?;
                io(write!(out, "{}", json::pretty(&json::constraints_json(&cs))))?;
            }
        }
    }
    Ok(())
}
