use std::path::PathBuf;
use std::process::ExitCode;

use brauer_commuting::perm::GroupSpec;
use brauer_commuting_cli::commands::{self, Format, Outcome, PosetRequest, Which};
use brauer_commuting_cli::corpus::{BlockSelector, CorpusEntry, Degree};
use brauer_commuting_cli::pipeline::{Check, Options};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "commuting", version, about = "Commuting posets of blocks of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Limits {
    /// Bound on group orders and on the number of elements of K(b).
    #[arg(long, default_value_t = 100_000)]
    max_elements: usize,
    /// Homology is skipped above this many simplices.
    #[arg(long, default_value_t = 100_000)]
    max_simplices: usize,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct TargetArgs {
    /// Preset (S7, D8) or a JSON group record.
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: u32,
    #[arg(long, default_value_t = 1, conflicts_with = "auto_split")]
    field_degree: u32,
    /// Pick the degree from the group exponent.
    #[arg(long)]
    auto_split: bool,
}

impl TargetArgs {
    fn resolve(&self) -> Result<(GroupSpec, Degree), String> {
        let spec = GroupSpec::parse(&self.group).map_err(|e| e.to_string())?;
        let degree = if self.auto_split {
            Degree::AutoSplit
        } else {
            Degree::Fixed(self.field_degree)
        };
        Ok((spec, degree))
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the blocks with their defect groups.
    Blocks {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run verification suites on one target or the corpus.
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, default_value_t = 1, conflicts_with = "auto_split")]
        field_degree: u32,
        #[arg(long)]
        auto_split: bool,
        #[arg(long, default_value = "all")]
        block: BlockSelector,
        /// Use the shipped corpus instead of a single target.
        #[arg(long, conflicts_with = "group")]
        corpus: bool,
        /// Include corpus entries marked slow.
        #[arg(long)]
        include_slow: bool,
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Record wall-clock times in the report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Export a poset as JSON or DOT.
    Poset {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value = "principal")]
        block: BlockSelector,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Subgroup family for brauer-pairs, as JSON lists of generators in cycle notation.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Search symmetric groups for a nonprincipal 2-block with a dihedral defect group of order 8.
    FindDihedralBlock {
        #[arg(long, default_value_t = 6)]
        from: usize,
        #[arg(long, default_value_t = 8)]
        to: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

fn options(limits: &Limits, timings: bool) -> Options {
    Options {
        max_elements: limits.max_elements,
        max_simplices: limits.max_simplices,
        cache_dir: limits.cache_dir.clone(),
        timings,
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let err = |e: brauer_commuting::Error| e.to_string();
    match cli.command {
        Command::Blocks { target, format, limits } => {
            let (spec, degree) = target.resolve()?;
            let Outcome { text, code } =
                commands::blocks(&spec, target.prime, degree, format, &options(&limits, false)).map_err(err)?;
            print!("{text}");
            Ok(code)
        }
        Command::Verify {
            group,
            prime,
            field_degree,
            auto_split,
            block,
            corpus,
            include_slow,
            checks,
            out,
            jobs,
            timings,
            limits,
        } => {
            let entries = if corpus {
                commands::corpus_entries(include_slow)
            } else {
                let (Some(group), Some(p)) = (group, prime) else {
                    return Err("verify needs --corpus or both --group and --prime".into());
                };
                let spec = GroupSpec::parse(&group).map_err(err)?;
                let mut entry = CorpusEntry::new(spec, p, block);
                entry.degree = if auto_split { Degree::AutoSplit } else { Degree::Fixed(field_degree) };
                vec![entry]
            };
            let checks = if checks.is_empty() { Check::ALL.to_vec() } else { checks };
            let report = commands::verify(&entries, &checks, jobs, &options(&limits, timings));
            print!("{}", report.summary());
            if let Some(path) = &out {
                emit(&report.to_json(), Some(path))?;
            }
            Ok(report.exit_code())
        }
        Command::Poset {
            target,
            block,
            which,
            format,
            family,
            out,
            limits,
        } => {
            let (spec, degree) = target.resolve()?;
            let req = PosetRequest {
                spec: &spec,
                p: target.prime,
                degree,
                block,
                which,
                format,
                family: family.as_deref(),
            };
            let Outcome { text, code } = commands::poset(&req, &options(&limits, false)).map_err(err)?;
            emit(&text, out.as_ref())?;
            Ok(code)
        }
        Command::FindDihedralBlock { from, to, limits } => {
            let Outcome { text, code } = commands::dihedral(from, to, &options(&limits, false)).map_err(err)?;
            print!("{text}");
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
