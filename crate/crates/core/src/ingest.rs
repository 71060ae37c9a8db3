//! Reading and writing league configs, game logs and season snapshots.
//!
//! Game logs are CSV with the header `date,home,away,home_score,away_score`.
//! The winner is always derived from the scores. League configs are TOML:
//!
//! ```toml
//! season_games = 82
//! reference_seed = 6
//! historical_target_bounds = [29, 42]
//! lottery_odds = [0.14, 0.14, 0.14, 0.125, 0.105, 0.09, 0.075, 0.06, 0.045, 0.03, 0.02, 0.015, 0.01, 0.005]
//! lottery_teams = ["DET", "WAS"]          # optional, default: 14 worst non-top-seed records
//! draft_tiebreak = ["CHO", "POR"]        # optional order among teams tied on losses
//! home_advantage = 0.1
//!
//! [conferences]
//! East = ["ATL", "BOS"]
//! West = ["DAL", "DEN"]
//!
//! [strengths]
//! BOS = 1.2
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use chrono::NaiveDate;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lottery::OddsTable;
use crate::season::{
    GameResult, LeagueConfig, SeasonLog, TargetBounds, TeamId, DEFAULT_REFERENCE_SEED, DEFAULT_SEASON_GAMES,
    DEFAULT_TARGET_BOUNDS,
};
use crate::strategy::StrengthModel;

pub const GAME_LOG_HEADER: [&str; 5] = ["date", "home", "away", "home_score", "away_score"];
pub const SNAPSHOT_MAGIC: &str = "REWIND-LAB-SNAPSHOT";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    conferences: BTreeMap<String, Vec<String>>,
    season_games: Option<u32>,
    reference_seed: Option<usize>,
    historical_target_bounds: Option<[u32; 2]>,
    lottery_odds: Option<Vec<f64>>,
    lottery_teams: Option<Vec<String>>,
    draft_tiebreak: Option<Vec<String>>,
    reference_seed_candidates: Option<Vec<usize>>,
    strengths: Option<BTreeMap<String, f64>>,
    home_advantage: Option<f64>,
}

/// Everything a config file can carry besides the league itself.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDocument {
    pub league: LeagueConfig,
    pub lottery_odds: Option<OddsTable>,
    /// Explicit lottery population; `None` means use the default.
    pub lottery_teams: Option<Vec<TeamId>>,
    /// Precedence among teams tied on losses in the current-plan order.
    pub draft_tiebreak: Vec<TeamId>,
    /// Candidate reference seeds for an end-of-season seed lottery.
    pub reference_seed_candidates: Option<Vec<usize>>,
    pub strength: StrengthModel,
}

fn team_list(codes: Vec<String>, config: &LeagueConfig, key: &str) -> Result<Vec<TeamId>> {
    codes
        .into_iter()
        .map(|c| {
            let t = TeamId::new(c)?;
            if !config.contains(&t) {
                return Err(Error::Config(format!("`{key}` names unknown team `{t}`")));
            }
            Ok(t)
        })
        .collect()
}

pub fn parse_config_document(text: &str) -> Result<ConfigDocument> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let conferences = raw
        .conferences
        .into_iter()
        .map(|(name, codes)| Ok((name, codes.into_iter().map(TeamId::new).collect::<Result<Vec<_>>>()?)))
        .collect::<Result<Vec<_>>>()?;
    let mut league =
        LeagueConfig::new(conferences)?.with_season_games(raw.season_games.unwrap_or(DEFAULT_SEASON_GAMES))?;
    // An explicit seed is validated strictly; the default shrinks to fit small leagues.
    league = match raw.reference_seed {
        Some(seed) => league.with_reference_seed(seed)?,
        None => {
            let smallest = league.conferences().map(|(_, t)| t.len()).min().unwrap();
            league.with_reference_seed(DEFAULT_REFERENCE_SEED.min(smallest))?
        }
    };
    let bounds = match raw.historical_target_bounds {
        Some([min, max]) => TargetBounds::new(min, max)?,
        None => DEFAULT_TARGET_BOUNDS,
    };
    league = league.with_target_bounds(bounds)?;

    let lottery_odds = raw
        .lottery_odds
        .map(|w| OddsTable::new(w).map_err(|e| Error::Config(format!("lottery_odds: {e}"))))
        .transpose()?;
    let lottery_teams = raw.lottery_teams.map(|c| team_list(c, &league, "lottery_teams")).transpose()?;
    if let (Some(odds), Some(teams)) = (&lottery_odds, &lottery_teams) {
        if odds.len() != teams.len() {
            return Err(Error::Config(format!(
                "lottery_odds has {} entries for {} lottery_teams",
                odds.len(),
                teams.len()
            )));
        }
    }
    let draft_tiebreak = team_list(raw.draft_tiebreak.unwrap_or_default(), &league, "draft_tiebreak")?;
    let strengths = raw
        .strengths
        .unwrap_or_default()
        .into_iter()
        .map(|(code, s)| {
            let t = TeamId::new(code)?;
            if !league.contains(&t) {
                return Err(Error::Config(format!("`strengths` names unknown team `{t}`")));
            }
            Ok((t, s))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let strength =
        StrengthModel::new(strengths, raw.home_advantage.unwrap_or(0.0)).map_err(|e| Error::Config(e.to_string()))?;

    Ok(ConfigDocument {
        league,
        lottery_odds,
        lottery_teams,
        draft_tiebreak,
        reference_seed_candidates: raw.reference_seed_candidates,
        strength,
    })
}

/// The league part of a config document, with defaults applied.
pub fn parse_league_config(text: &str) -> Result<LeagueConfig> {
    parse_config_document(text).map(|d| d.league)
}

pub fn read_config_document(path: impl AsRef<Path>) -> Result<ConfigDocument> {
    parse_config_document(&fs::read_to_string(path)?)
}

/// A non-fatal ingestion problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestWarning {
    pub line: usize,
    pub message: String,
}

/// Parses a game-log CSV against `config`. Out-of-order dates are sorted
/// (stable) with a warning; everything else malformed is an error.
pub fn parse_game_log_with_warnings(text: &str, config: &LeagueConfig) -> Result<(SeasonLog, Vec<IngestWarning>)> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let mut games: Vec<GameResult> = Vec::new();
    let mut warnings = Vec::new();
    let mut header_seen = false;

    for row in reader.records() {
        let row = row.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        if row.iter().all(str::is_empty) {
            continue;
        }
        if !header_seen {
            let header: Vec<&str> = row.iter().map(|f| f.trim_start_matches('\u{feff}')).collect();
            if header != GAME_LOG_HEADER {
                return Err(Error::Parse {
                    line,
                    message: format!("expected header `{}`, found `{}`", GAME_LOG_HEADER.join(","), header.join(",")),
                });
            }
            header_seen = true;
            continue;
        }
        if row.len() != GAME_LOG_HEADER.len() {
            return Err(Error::Parse { line, message: format!("expected 5 fields, found {}", row.len()) });
        }
        let bad = |message: String| Error::Parse { line, message };
        let date =
            NaiveDate::parse_from_str(&row[0], "%Y-%m-%d").map_err(|e| bad(format!("date `{}`: {e}", &row[0])))?;
        let team = |field: &str| -> Result<TeamId> {
            let t = TeamId::new(field).map_err(|e| bad(e.to_string()))?;
            if !config.contains(&t) {
                return Err(bad(format!("unknown team `{t}`")));
            }
            Ok(t)
        };
        let (home, away) = (team(&row[1])?, team(&row[2])?);
        let score = |field: &str, name: &str| -> Result<u32> {
            field.parse().map_err(|_| bad(format!("{name} `{field}` is not a non-negative integer")))
        };
        let (hs, aws) = (score(&row[3], "home_score")?, score(&row[4], "away_score")?);
        let game = GameResult::from_scores(date, home, away, hs, aws).map_err(|e| bad(e.to_string()))?;
        if let Some(prev) = games.last() {
            if prev.date > game.date {
                warnings.push(IngestWarning {
                    line,
                    message: format!("date {} precedes {}; log re-sorted", game.date, prev.date),
                });
            }
        }
        games.push(game);
    }
    for w in &warnings {
        log::warn!("line {}: {}", w.line, w.message);
    }
    games.sort_by_key(|g| g.date);
    Ok((SeasonLog::new(config.clone(), games)?, warnings))
}

pub fn parse_game_log(text: &str, config: &LeagueConfig) -> Result<SeasonLog> {
    parse_game_log_with_warnings(text, config).map(|(log, _)| log)
}

pub fn read_game_log(path: impl AsRef<Path>, config: &LeagueConfig) -> Result<SeasonLog> {
    parse_game_log(&fs::read_to_string(path)?, config)
}

/// Writes the log back out as CSV. Every game needs a score.
pub fn game_log_csv(log: &SeasonLog) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(GAME_LOG_HEADER).map_err(io)?;
    for (i, g) in log.games().iter().enumerate() {
        let s = g.score.ok_or_else(|| Error::InvalidArgument(format!("game {} has no score to write", i + 1)))?;
        w.write_record([
            g.date.format("%Y-%m-%d").to_string(),
            g.home.to_string(),
            g.away.to_string(),
            s.home.to_string(),
            s.away.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Snapshot bytes: a `REWIND-LAB-SNAPSHOT <version>` line, then JSON.
pub fn encode_snapshot(log: &SeasonLog) -> Vec<u8> {
    let mut out = format!("{SNAPSHOT_MAGIC} {SNAPSHOT_VERSION}\n").into_bytes();
    serde_json::to_writer(&mut out, log).expect("season logs serialize");
    out.push(b'\n');
    out
}

pub fn decode_snapshot(bytes: &[u8]) -> Result<SeasonLog> {
    let newline =
        bytes.iter().position(|&b| b == b'\n').ok_or_else(|| Error::Snapshot("missing header line".into()))?;
    let header = std::str::from_utf8(&bytes[..newline]).map_err(|_| Error::Snapshot("header is not utf-8".into()))?;
    let version = header
        .strip_prefix(SNAPSHOT_MAGIC)
        .and_then(|v| v.trim().parse::<u32>().ok())
        .ok_or_else(|| Error::Snapshot(format!("not a season snapshot (header `{header}`)")))?;
    if version != SNAPSHOT_VERSION {
        return Err(Error::Snapshot(format!("version {version} not supported (expected {SNAPSHOT_VERSION})")));
    }
    serde_json::from_slice(&bytes[newline + 1..]).map_err(|e| Error::Snapshot(format!("corrupt body: {e}")))
}

pub fn is_snapshot(bytes: &[u8]) -> bool {
    bytes.starts_with(SNAPSHOT_MAGIC.as_bytes())
}

pub fn write_season_snapshot(log: &SeasonLog, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_snapshot(log))?;
    Ok(())
}

pub fn read_season_snapshot(path: impl AsRef<Path>) -> Result<SeasonLog> {
    decode_snapshot(&fs::read(path)?)
}
