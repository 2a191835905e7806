//! Command-line front end: reproduce the counting table, verify the twisted
//! point-count identity, fit multiplicities from counts, extract stable
//! series coefficients, and dump factorization statistics.
//!
//! Exit codes: 0 all agreement flags true; 1 a mismatch or computation
//! failure; 2 usage error; 3 enumeration budget exceeded.

mod commands;
mod stat;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lefcount::braidcoh::MultiplicityCache;
use stat::Stat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug)]
pub struct RunConfig {
    pub format: Format,
    pub cache_path: Option<PathBuf>,
    pub budget: u64,
    pub jobs: usize,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
    Failure(String),
}

#[derive(Parser)]
#[command(
    name = "lefcount",
    version,
    about = "Exact point counts vs. cohomology multiplicities for squarefree polynomials over F_q and maximal tori in GL_n(F_q)"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Multiplicity cache file (overrides the LEFCOUNT_CACHE variable)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Maximum number of polynomials any single enumeration may visit
    #[arg(long, global = true, default_value_t = lefcount::glcount::DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for enumeration folds
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All five counting rows for both families at one (q, n)
    TableA {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
    },
    /// Verify lhs = rhs of the twisted point-count identity
    VerifyGl {
        /// Statistic name (see --help for the registry grammar)
        #[arg(value_name = "STAT")]
        stat_pos: Option<String>,
        #[arg(value_name = "Q")]
        q_pos: Option<u64>,
        #[arg(value_name = "N")]
        n_pos: Option<u32>,
        #[arg(long, conflicts_with = "stat_pos")]
        stat: Option<String>,
        #[arg(long, conflicts_with = "q_pos")]
        q: Option<u64>,
        #[arg(long, conflicts_with = "n_pos")]
        n: Option<u32>,
    },
    /// Recover multiplicities a_0..a_n from counts over several prime powers
    Fit {
        #[arg(value_name = "STAT")]
        stat_pos: Option<String>,
        #[arg(value_name = "N")]
        n_pos: Option<u32>,
        /// Comma-separated prime powers, at least n+1 of them
        #[arg(value_name = "QLIST")]
        qs_pos: Option<String>,
        #[arg(long, conflicts_with = "stat_pos")]
        stat: Option<String>,
        #[arg(long, conflicts_with = "n_pos")]
        n: Option<u32>,
        #[arg(long, conflicts_with = "qs_pos")]
        qs: Option<String>,
    },
    /// Stable coefficients a_1..a_I of a weighted L-series
    Stable {
        /// Series tag: x1 | x2 | binomx12 | quad
        #[arg(value_name = "STAT")]
        stat_pos: Option<String>,
        #[arg(value_name = "I")]
        i_pos: Option<u32>,
        #[arg(long, conflicts_with = "stat_pos")]
        stat: Option<String>,
        #[arg(long = "i", conflicts_with = "i_pos")]
        i_flag: Option<u32>,
    },
    /// Maximal-torus statistic, cross-checked against the brute-force
    /// oracle when n <= 3 and q is small
    Tori {
        #[arg(value_name = "STAT")]
        stat_pos: Option<String>,
        #[arg(value_name = "Q")]
        q_pos: Option<u64>,
        #[arg(value_name = "N")]
        n_pos: Option<u32>,
        #[arg(long, conflicts_with = "stat_pos")]
        stat: Option<String>,
        #[arg(long, conflicts_with = "q_pos")]
        q: Option<u64>,
        #[arg(long, conflicts_with = "n_pos")]
        n: Option<u32>,
    },
    /// Degree-profile distribution and derived factor statistics
    FactorStats {
        #[arg(value_name = "Q")]
        q_pos: Option<u64>,
        #[arg(value_name = "N")]
        n_pos: Option<u32>,
        #[arg(long, conflicts_with = "q_pos")]
        q: Option<u64>,
        #[arg(long, conflicts_with = "n_pos")]
        n: Option<u32>,
    },
}

fn require<T>(name: &str, pos: Option<T>, flag: Option<T>) -> Result<T, CliError> {
    pos.or(flag)
        .ok_or_else(|| CliError::Usage(format!("missing required argument {name}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_path = cli
        .cache
        .clone()
        .or_else(|| std::env::var_os("LEFCOUNT_CACHE").map(PathBuf::from));
    let cfg = RunConfig {
        format: cli.format,
        cache_path,
        budget: cli.budget,
        jobs: cli.jobs.max(1),
    };

    let mut cache = match &cfg.cache_path {
        Some(path) if path.exists() => match MultiplicityCache::load(path) {
            Ok(c) => c,
            Err(e) => return fail(&cfg, CliError::Failure(e.to_string())),
        },
        _ => MultiplicityCache::new(),
    };
    let cache_size_before = cache.len();

    let result = run(&cli.command, &cfg, &mut cache);

    if let Some(path) = &cfg.cache_path {
        if cache.len() > cache_size_before || !path.exists() {
            if let Err(e) = cache.save(path) {
                eprintln!("warning: could not write cache: {e}");
            }
        }
    }

    match result {
        Ok(out) => {
            match cfg.format {
                Format::Human => println!("{}", out.human),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                ),
                Format::Csv => print!("{}", out.csv),
            }
            if out.all_match {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(&cfg, e),
    }
}

fn fail(_cfg: &RunConfig, e: CliError) -> ExitCode {
    let (kind, message, code) = match &e {
        CliError::Usage(m) => ("usage", m, 2),
        CliError::Budget(m) => ("budget", m, 3),
        CliError::Failure(m) => ("failure", m, 1),
    };
    let doc = serde_json::json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{}", serde_json::to_string(&doc).expect("serializable"));
    ExitCode::from(code)
}

fn run(
    command: &Command,
    cfg: &RunConfig,
    cache: &mut MultiplicityCache,
) -> Result<commands::Output, CliError> {
    match command {
        Command::TableA { q, n } => commands::table_a(cfg, cache, *q, *n),
        Command::VerifyGl {
            stat_pos,
            q_pos,
            n_pos,
            stat,
            q,
            n,
        } => {
            let stat = parse_stat(require("STAT", stat_pos.clone(), stat.clone())?)?;
            let q = require("Q", *q_pos, *q)?;
            let n = require("N", *n_pos, *n)?;
            commands::verify_gl(cfg, cache, &stat, q, n)
        }
        Command::Fit {
            stat_pos,
            n_pos,
            qs_pos,
            stat,
            n,
            qs,
        } => {
            let stat = parse_stat(require("STAT", stat_pos.clone(), stat.clone())?)?;
            let n = require("N", *n_pos, *n)?;
            let qs_text = require("QLIST", qs_pos.clone(), qs.clone())?;
            let qs = parse_q_list(&qs_text)?;
            commands::fit(cfg, &stat, n, &qs)
        }
        Command::Stable {
            stat_pos,
            i_pos,
            stat,
            i_flag,
        } => {
            let name = require("STAT", stat_pos.clone(), stat.clone())?;
            let tag = stat::parse_weight_tag(&name).map_err(CliError::Usage)?;
            let i_max = require("I", *i_pos, *i_flag)?;
            if i_max == 0 {
                return Err(CliError::Usage("stable requires I >= 1".into()));
            }
            commands::stable(&name, tag, i_max)
        }
        Command::Tori {
            stat_pos,
            q_pos,
            n_pos,
            stat,
            q,
            n,
        } => {
            let stat = parse_stat(require("STAT", stat_pos.clone(), stat.clone())?)?;
            let q = require("Q", *q_pos, *q)?;
            let n = require("N", *n_pos, *n)?;
            commands::tori(cfg, &stat, q, n)
        }
        Command::FactorStats {
            q_pos,
            n_pos,
            q,
            n,
        } => {
            let q = require("Q", *q_pos, *q)?;
            let n = require("N", *n_pos, *n)?;
            commands::factor_stats(cfg, q, n)
        }
    }
}

fn parse_stat(text: String) -> Result<Stat, CliError> {
    Stat::parse(&text).map_err(CliError::Usage)
}

fn parse_q_list(text: &str) -> Result<Vec<u64>, CliError> {
    let qs: Result<Vec<u64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    let qs = qs.map_err(|_| CliError::Usage(format!("bad prime-power list {text:?}")))?;
    if qs.is_empty() {
        return Err(CliError::Usage("empty prime-power list".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &q in &qs {
        if !seen.insert(q) {
            return Err(CliError::Usage(format!("duplicate prime power {q}")));
        }
    }
    Ok(qs)
}
