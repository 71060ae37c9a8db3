use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Parser, Subcommand, ValueEnum};

use rewind_lab::ingest::{self, write_season_snapshot};
use rewind_lab::report::{self, render_all, Format};
use rewind_lab::{Cutoff, Error, OddsTable, TeamId};

#[derive(Parser)]
#[command(
    name = "rewind-lab",
    version,
    about = "Draft-lottery orderings under the current, Gold and Ex Post Gold plans"
)]
struct Cli {
    /// League config (TOML). Defaults to $REWIND_LAB_DATA_DIR/league.toml.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Game log (CSV or snapshot). Defaults to $REWIND_LAB_DATA_DIR/games.csv.
    #[arg(long, global = true)]
    log: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "REWIND_LAB_DATA_DIR", hide_env_values = true)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the inputs and optionally write a snapshot.
    Ingest {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conference standings.
    Standings {
        #[arg(long)]
        as_of: Option<NaiveDate>,
    },
    /// REWIND table for the lottery teams.
    Rewind {
        #[arg(long)]
        reference_seed: Option<usize>,
        /// Draw the reference seed from these (uses --seed).
        #[arg(long, value_delimiter = ',')]
        seed_candidates: Option<Vec<usize>>,
    },
    /// Gold Plan table for the lottery teams.
    Gold,
    /// One team under all three plans.
    Compare {
        #[arg(long)]
        team: String,
    },
    /// Monte Carlo completion of the season from a cutoff date.
    Simulate {
        #[arg(long)]
        as_of: NaiveDate,
        #[arg(long)]
        team: String,
        #[arg(long, default_value_t = 10_000)]
        replicas: u64,
    },
    /// Hybrid draft order from the REWIND ranking.
    Lottery {
        /// Comma-separated weights by REWIND rank; overrides `lottery_odds`.
        #[arg(long, value_delimiter = ',')]
        odds: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1)]
        draws: u64,
    },
}

fn input_path(explicit: Option<PathBuf>, data_dir: Option<&Path>, file: &str, flag: &str) -> Result<PathBuf, Error> {
    explicit
        .or_else(|| data_dir.map(|d| d.join(file)))
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required when REWIND_LAB_DATA_DIR is unset")))
}

fn run(cli: Cli) -> Result<String, Error> {
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let config_path = input_path(cli.config, cli.data_dir.as_deref(), "league.toml", "config")?;
    let log_path = input_path(cli.log, cli.data_dir.as_deref(), "games.csv", "log")?;

    if let Command::Ingest { out } = &cli.command {
        let doc = ingest::read_config_document(&config_path)?;
        let text = std::fs::read_to_string(&log_path)?;
        let (log, warnings) = ingest::parse_game_log_with_warnings(&text, &doc.league)?;
        for w in &warnings {
            eprintln!("warning: line {}: {}", w.line, w.message);
        }
        if let Some(path) = out {
            write_season_snapshot(&log, path)?;
            eprintln!("wrote {}", path.display());
        }
        return Ok(report::ingest_table(&log, warnings.len()).render(format));
    }

    let (doc, log) = report::load_inputs(&config_path, &log_path)?;
    let team = |code: &str| -> Result<TeamId, Error> {
        let t = TeamId::new(code)?;
        log.config().conference_of(&t)?;
        Ok(t)
    };
    let tables = match cli.command {
        Command::Ingest { .. } => unreachable!(),
        Command::Standings { as_of } => {
            vec![report::standings_table(&log, as_of.map_or(Cutoff::End, Cutoff::Date))]
        }
        Command::Rewind { reference_seed, seed_candidates } => {
            let candidates = seed_candidates.or_else(|| doc.reference_seed_candidates.clone());
            let k = report::choose_reference_seed(&log, reference_seed, candidates.as_deref(), cli.seed)?;
            let eligible = report::eligibility(&doc, &log);
            let r = report::rewind_report(&log, &eligible, &doc.draft_tiebreak, k)?;
            vec![report::rewind_table(&r)]
        }
        Command::Gold => vec![report::gold_table(&log, &report::eligibility(&doc, &log))?],
        Command::Compare { team: code } => {
            vec![report::compare_table(&report::compare_report(&log, &team(&code)?)?)]
        }
        Command::Simulate { as_of, team: code, replicas } => {
            let r = report::simulate_report(&log, &doc, as_of, &team(&code)?, replicas, cli.seed)?;
            vec![report::simulate_table(&r)]
        }
        Command::Lottery { odds, draws } => {
            let eligible = report::eligibility(&doc, &log);
            let odds = match odds {
                Some(w) => OddsTable::new(w)?,
                None => doc.lottery_odds.clone().ok_or_else(|| {
                    Error::InvalidArgument("no lottery odds: pass --odds or set `lottery_odds`".into())
                })?,
            };
            if eligible.is_empty() {
                return Err(Error::InvalidArgument("no lottery teams".into()));
            }
            let r = report::lottery_report(&log, &eligible, &odds, cli.seed, draws)?;
            report::lottery_tables(&r)
        }
    };
    Ok(render_all(&tables, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
