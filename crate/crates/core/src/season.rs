//! League configuration, game results and standings algebra.
//!
//! Everything here is immutable once built. A [`SeasonLog`] keeps its games in
//! chronological order and indexes each team's games so that per-team
//! sequences ("the team's 34th loss", "wins through game 49") are cheap.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Shortfall};

pub const DEFAULT_SEASON_GAMES: u32 = 82;
pub const DEFAULT_REFERENCE_SEED: usize = 6;
/// One more than the fewest (28) and most (41) losses a sixth seed has
/// finished with in 82-game seasons since 2000.
pub const DEFAULT_TARGET_BOUNDS: TargetBounds = TargetBounds { min: 29, max: 42 };

/// Short franchise code such as `POR`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TeamId(String);

impl TeamId {
    pub fn new(code: impl Into<String>) -> Result<Self> {
        let code = code.into();
        let trimmed = code.trim();
        if trimmed.is_empty() || trimmed.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(Error::InvalidTeamCode(code));
        }
        Ok(Self(trimmed.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for TeamId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Self::new(value)
    }
}

impl TryFrom<&str> for TeamId {
    type Error = Error;

    fn try_from(value: &str) -> Result<Self> {
        Self::new(value)
    }
}

impl From<TeamId> for String {
    fn from(value: TeamId) -> Self {
        value.0
    }
}

impl fmt::Display for TeamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Range of plausible REWIND Targets used by phase classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetBounds {
    pub min: u32,
    pub max: u32,
}

impl TargetBounds {
    pub fn new(min: u32, max: u32) -> Result<Self> {
        if min == 0 || min > max {
            return Err(Error::Config(format!(
                "historical target bounds must satisfy 1 <= min <= max, got ({min}, {max})"
            )));
        }
        Ok(Self { min, max })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawLeagueConfig {
    conferences: BTreeMap<String, Vec<TeamId>>,
    season_games: u32,
    reference_seed: usize,
    historical_target_bounds: TargetBounds,
}

/// Teams grouped by conference plus the season parameters that REWIND needs.
///
/// Teams are indexed internally in lexicographic order of their codes; that
/// order is also the seeding tie-break.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLeagueConfig", into = "RawLeagueConfig")]
pub struct LeagueConfig {
    conferences: BTreeMap<String, Vec<TeamId>>,
    season_games: u32,
    reference_seed: usize,
    historical_target_bounds: TargetBounds,
    teams: Vec<TeamId>,
    conference_of: Vec<usize>,
}

impl LeagueConfig {
    /// Builds a config with the default season length and bounds. The reference
    /// seed defaults to 6, or to the smallest conference size if that is less.
    pub fn new<I, S>(conferences: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<TeamId>)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (name, teams) in conferences {
            let name = name.into();
            if name.trim().is_empty() {
                return Err(Error::Config("conference name is empty".into()));
            }
            if map.insert(name.clone(), teams).is_some() {
                return Err(Error::Config(format!("conference `{name}` listed twice")));
            }
        }
        Self::from_raw(RawLeagueConfig {
            conferences: map,
            season_games: DEFAULT_SEASON_GAMES,
            reference_seed: 1,
            historical_target_bounds: DEFAULT_TARGET_BOUNDS,
        })
        .and_then(|cfg| {
            let seed = DEFAULT_REFERENCE_SEED.min(cfg.smallest_conference());
            cfg.with_reference_seed(seed)
        })
    }

    fn from_raw(raw: RawLeagueConfig) -> Result<Self> {
        if raw.conferences.is_empty() {
            return Err(Error::Config("no conferences".into()));
        }
        if raw.season_games == 0 {
            return Err(Error::Config("season_games must be positive".into()));
        }
        let mut owner: BTreeMap<TeamId, usize> = BTreeMap::new();
        for (ci, (name, teams)) in raw.conferences.iter().enumerate() {
            if teams.is_empty() {
                return Err(Error::Config(format!("conference `{name}` has no teams")));
            }
            for team in teams {
                if let Some(prev) = owner.insert(team.clone(), ci) {
                    let prev_name = raw.conferences.keys().nth(prev).unwrap();
                    return Err(if prev == ci {
                        Error::Config(format!("team `{team}` listed twice in `{name}`"))
                    } else {
                        Error::Config(format!("team `{team}` assigned to both `{prev_name}` and `{name}`"))
                    });
                }
            }
        }
        let smallest = raw.conferences.values().map(Vec::len).min().unwrap_or(0);
        if raw.reference_seed == 0 || raw.reference_seed > smallest {
            return Err(Error::Config(format!(
                "reference_seed {} outside 1..={smallest} (smallest conference size)",
                raw.reference_seed
            )));
        }
        TargetBounds::new(raw.historical_target_bounds.min, raw.historical_target_bounds.max)?;
        let (teams, conference_of) = owner.into_iter().unzip();
        Ok(Self {
            conferences: raw.conferences,
            season_games: raw.season_games,
            reference_seed: raw.reference_seed,
            historical_target_bounds: raw.historical_target_bounds,
            teams,
            conference_of,
        })
    }

    fn to_raw(&self) -> RawLeagueConfig {
        RawLeagueConfig {
            conferences: self.conferences.clone(),
            season_games: self.season_games,
            reference_seed: self.reference_seed,
            historical_target_bounds: self.historical_target_bounds,
        }
    }

    pub fn with_season_games(self, season_games: u32) -> Result<Self> {
        Self::from_raw(RawLeagueConfig { season_games, ..self.to_raw() })
    }

    pub fn with_reference_seed(self, reference_seed: usize) -> Result<Self> {
        Self::from_raw(RawLeagueConfig { reference_seed, ..self.to_raw() })
    }

    pub fn with_target_bounds(self, bounds: TargetBounds) -> Result<Self> {
        Self::from_raw(RawLeagueConfig { historical_target_bounds: bounds, ..self.to_raw() })
    }

    pub fn season_games(&self) -> u32 {
        self.season_games
    }

    pub fn reference_seed(&self) -> usize {
        self.reference_seed
    }

    pub fn target_bounds(&self) -> TargetBounds {
        self.historical_target_bounds
    }

    /// All teams in lexicographic order.
    pub fn teams(&self) -> &[TeamId] {
        &self.teams
    }

    pub fn conferences(&self) -> impl Iterator<Item = (&str, &[TeamId])> {
        self.conferences.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn conference_names(&self) -> impl Iterator<Item = &str> {
        self.conferences.keys().map(String::as_str)
    }

    pub fn conference_teams(&self, conference: &str) -> Result<&[TeamId]> {
        self.conferences
            .get(conference)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownConference(conference.to_string()))
    }

    pub fn conference_of(&self, team: &TeamId) -> Result<&str> {
        let idx = self.team_index(team)?;
        Ok(self.conferences.keys().nth(self.conference_of[idx]).unwrap())
    }

    pub fn contains(&self, team: &TeamId) -> bool {
        self.teams.binary_search(team).is_ok()
    }

    pub(crate) fn team_index(&self, team: &TeamId) -> Result<usize> {
        self.teams.binary_search(team).map_err(|_| Error::UnknownTeam(team.to_string()))
    }

    pub(crate) fn conference_index_of(&self, team_idx: usize) -> usize {
        self.conference_of[team_idx]
    }

    pub(crate) fn conference_index(&self, conference: &str) -> Result<usize> {
        self.conferences
            .keys()
            .position(|k| k == conference)
            .ok_or_else(|| Error::UnknownConference(conference.to_string()))
    }

    /// Team indices of every member of conference `ci`, in lexicographic order.
    pub(crate) fn members(&self, ci: usize) -> impl Iterator<Item = usize> + '_ {
        self.conference_of.iter().enumerate().filter(move |(_, &c)| c == ci).map(|(t, _)| t)
    }

    pub(crate) fn conference_count(&self) -> usize {
        self.conferences.len()
    }

    fn smallest_conference(&self) -> usize {
        self.conferences.values().map(Vec::len).min().unwrap_or(0)
    }
}

impl TryFrom<RawLeagueConfig> for LeagueConfig {
    type Error = Error;

    fn try_from(raw: RawLeagueConfig) -> Result<Self> {
        Self::from_raw(raw)
    }
}

impl From<LeagueConfig> for RawLeagueConfig {
    fn from(cfg: LeagueConfig) -> Self {
        cfg.to_raw()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub home: u32,
    pub away: u32,
}

/// One decided game. Basketball has no ties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameResult {
    pub date: NaiveDate,
    pub home: TeamId,
    pub away: TeamId,
    pub winner: TeamId,
    /// Final score when known; always agrees with `winner`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<Score>,
}

impl GameResult {
    pub fn new(date: NaiveDate, home: TeamId, away: TeamId, winner: TeamId) -> Result<Self> {
        if home == away {
            return Err(Error::InvalidGame(format!("{home} cannot play itself on {date}")));
        }
        if winner != home && winner != away {
            return Err(Error::InvalidGame(format!("winner {winner} did not play in {away} at {home} on {date}")));
        }
        Ok(Self { date, home, away, winner, score: None })
    }

    /// The winner is whichever side scored more; equal scores are rejected.
    pub fn from_scores(date: NaiveDate, home: TeamId, away: TeamId, home_score: u32, away_score: u32) -> Result<Self> {
        if home_score == away_score {
            return Err(Error::InvalidGame(format!("{away} at {home} on {date} ended tied {home_score}-{away_score}")));
        }
        let winner = if home_score > away_score { home.clone() } else { away.clone() };
        let mut game = Self::new(date, home, away, winner)?;
        game.score = Some(Score { home: home_score, away: away_score });
        Ok(game)
    }

    pub fn loser(&self) -> &TeamId {
        if self.winner == self.home {
            &self.away
        } else {
            &self.home
        }
    }

    pub fn involves(&self, team: &TeamId) -> bool {
        &self.home == team || &self.away == team
    }

    pub fn opponent(&self, team: &TeamId) -> Option<&TeamId> {
        if &self.home == team {
            Some(&self.away)
        } else if &self.away == team {
            Some(&self.home)
        } else {
            None
        }
    }

    /// Same game with the result set so that `winner` wins. The score is dropped.
    pub fn with_winner(&self, winner: &TeamId) -> Result<Self> {
        Self::new(self.date, self.home.clone(), self.away.clone(), winner.clone())
    }
}

/// Win-loss record.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Record {
    pub wins: u32,
    pub losses: u32,
}

impl Record {
    pub fn new(wins: u32, losses: u32) -> Self {
        Self { wins, losses }
    }

    pub fn games(&self) -> u32 {
        self.wins + self.losses
    }

    pub(crate) fn add(&mut self, won: bool) {
        if won {
            self.wins += 1;
        } else {
            self.losses += 1;
        }
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.wins, self.losses)
    }
}

/// Which prefix of the season counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cutoff {
    /// Every game dated on or before this day.
    Date(NaiveDate),
    /// The first `n` games of the log.
    Games(usize),
    End,
}

impl Cutoff {
    fn includes(&self, log_index: usize, game: &GameResult) -> bool {
        match *self {
            Cutoff::Date(d) => game.date <= d,
            Cutoff::Games(n) => log_index < n,
            Cutoff::End => true,
        }
    }
}

/// A game in one team's sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeamGameEvent {
    pub date: NaiveDate,
    /// 0-based position in the team's own schedule.
    pub team_game_index: usize,
    /// Position in the league-wide log.
    pub log_index: usize,
    /// The team's record including this game.
    pub record: Record,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSeasonLog {
    config: LeagueConfig,
    games: Vec<GameResult>,
}

/// Chronological game results for one league season.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeasonLog", into = "RawSeasonLog")]
pub struct SeasonLog {
    config: LeagueConfig,
    games: Vec<GameResult>,
    /// Per team index: log indices of that team's games, in order.
    by_team: Vec<Vec<usize>>,
}

impl SeasonLog {
    /// Validates and indexes `games`, which must already be in date order.
    pub fn new(config: LeagueConfig, games: Vec<GameResult>) -> Result<Self> {
        let mut by_team = vec![Vec::new(); config.teams().len()];
        for (i, game) in games.iter().enumerate() {
            if i > 0 && games[i - 1].date > game.date {
                return Err(Error::InvalidLog(format!(
                    "game {} dated {} follows {}",
                    i + 1,
                    game.date,
                    games[i - 1].date
                )));
            }
            let score_disagrees =
                game.score.is_some_and(|s| s.home == s.away || (s.home > s.away) != (game.winner == game.home));
            if game.home == game.away || (game.winner != game.home && game.winner != game.away) || score_disagrees {
                return Err(Error::InvalidGame(format!("game {} is inconsistent", i + 1)));
            }
            for team in [&game.home, &game.away] {
                let t = config.team_index(team)?;
                by_team[t].push(i);
                if by_team[t].len() as u32 > config.season_games() {
                    return Err(Error::InvalidLog(format!("{team} plays more than {} games", config.season_games())));
                }
            }
        }
        Ok(Self { config, games, by_team })
    }

    pub fn empty(config: LeagueConfig) -> Self {
        let by_team = vec![Vec::new(); config.teams().len()];
        Self { config, games: Vec::new(), by_team }
    }

    pub fn config(&self) -> &LeagueConfig {
        &self.config
    }

    pub fn games(&self) -> &[GameResult] {
        &self.games
    }

    pub fn into_parts(self) -> (LeagueConfig, Vec<GameResult>) {
        (self.config, self.games)
    }

    pub fn first_date(&self) -> Option<NaiveDate> {
        self.games.first().map(|g| g.date)
    }

    pub fn last_date(&self) -> Option<NaiveDate> {
        self.games.last().map(|g| g.date)
    }

    /// Distinct game dates in order.
    pub fn dates(&self) -> Vec<NaiveDate> {
        let mut out: Vec<NaiveDate> = self.games.iter().map(|g| g.date).collect();
        out.dedup();
        out
    }

    /// Log indices of a team's games in schedule order.
    pub fn team_game_indices(&self, team: &TeamId) -> Result<&[usize]> {
        Ok(&self.by_team[self.config.team_index(team)?])
    }

    /// A team's schedule with running record after each game.
    pub fn team_sequence(&self, team: &TeamId) -> Result<Vec<TeamGameEvent>> {
        let mut record = Record::default();
        Ok(self
            .team_game_indices(team)?
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                record.add(&self.games[i].winner == team);
                TeamGameEvent { date: self.games[i].date, team_game_index: k, log_index: i, record }
            })
            .collect())
    }

    pub fn is_complete(&self) -> bool {
        self.shortfalls().is_empty()
    }

    /// Teams that have not played `season_games` games.
    pub fn shortfalls(&self) -> Vec<Shortfall> {
        let expected = self.config.season_games();
        self.config
            .teams()
            .iter()
            .zip(&self.by_team)
            .filter(|(_, g)| (g.len() as u32) < expected)
            .map(|(t, g)| Shortfall { team: t.clone(), played: g.len() as u32, expected })
            .collect()
    }

    pub fn ensure_complete(&self) -> Result<()> {
        let short = self.shortfalls();
        if short.is_empty() {
            Ok(())
        } else {
            Err(Error::Incomplete(short))
        }
    }

    /// Games of this log whose index or date falls within `cutoff`.
    pub fn prefix(&self, cutoff: Cutoff) -> SeasonLog {
        let games: Vec<GameResult> =
            self.games.iter().enumerate().filter(|(i, g)| cutoff.includes(*i, g)).map(|(_, g)| g.clone()).collect();
        SeasonLog::new(self.config.clone(), games).expect("prefix of a valid log is valid")
    }

    /// Copy of the log with one game's winner replaced.
    pub fn with_result(&self, log_index: usize, winner: &TeamId) -> Result<SeasonLog> {
        let game = self
            .games
            .get(log_index)
            .ok_or_else(|| Error::InvalidArgument(format!("no game at log index {log_index}")))?;
        let flipped = game.with_winner(winner)?;
        let mut games = self.games.clone();
        games[log_index] = flipped;
        Ok(SeasonLog { config: self.config.clone(), games, by_team: self.by_team.clone() })
    }

    pub(crate) fn records_at(&self, cutoff: Cutoff) -> Vec<Record> {
        let mut records = vec![Record::default(); self.config.teams().len()];
        for (i, game) in self.games.iter().enumerate() {
            if !cutoff.includes(i, game) {
                // Dates are sorted, so nothing later can qualify either.
                break;
            }
            let w = self.config.team_index(&game.winner).unwrap();
            let l = self.config.team_index(game.loser()).unwrap();
            records[w].wins += 1;
            records[l].losses += 1;
        }
        records
    }
}

impl TryFrom<RawSeasonLog> for SeasonLog {
    type Error = Error;

    fn try_from(raw: RawSeasonLog) -> Result<Self> {
        SeasonLog::new(raw.config, raw.games)
    }
}

impl From<SeasonLog> for RawSeasonLog {
    fn from(log: SeasonLog) -> Self {
        let (config, games) = log.into_parts();
        RawSeasonLog { config, games }
    }
}

/// Wins and losses for `team` over games inside `cutoff`.
pub fn record_as_of(log: &SeasonLog, team: &TeamId, cutoff: Cutoff) -> Result<Record> {
    let mut record = Record::default();
    for &i in log.team_game_indices(team)? {
        let game = &log.games[i];
        if !cutoff.includes(i, game) {
            break;
        }
        record.add(&game.winner == team);
    }
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedEntry {
    /// 1-based.
    pub seed: usize,
    pub team: TeamId,
    pub record: Record,
    /// Another team in the conference has the same win total; the order
    /// between them came from the team-code tie-break.
    pub tied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seeding {
    pub conference: String,
    pub entries: Vec<SeedEntry>,
}

impl Seeding {
    /// Entry at a 1-based seed.
    pub fn at(&self, seed: usize) -> Option<&SeedEntry> {
        seed.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn teams(&self) -> impl Iterator<Item = &TeamId> {
        self.entries.iter().map(|e| &e.team)
    }
}

/// Per-team records and conference seedings as of a cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandingsSnapshot {
    pub cutoff: Cutoff,
    pub records: BTreeMap<TeamId, Record>,
    pub seedings: BTreeMap<String, Seeding>,
}

pub(crate) fn seed_conference(config: &LeagueConfig, ci: usize, records: &[Record]) -> Seeding {
    let mut members: Vec<usize> = config.members(ci).collect();
    // Members come out in team-code order, so a stable sort on wins keeps the
    // lexicographic tie-break.
    members.sort_by(|a, b| records[*b].wins.cmp(&records[*a].wins));
    let entries = members
        .iter()
        .enumerate()
        .map(|(pos, &t)| {
            let wins = records[t].wins;
            let tied = members.iter().any(|&other| other != t && records[other].wins == wins);
            SeedEntry { seed: pos + 1, team: config.teams()[t].clone(), record: records[t], tied }
        })
        .collect();
    Seeding { conference: config.conference_names().nth(ci).unwrap().to_string(), entries }
}

/// Conference teams ordered by wins, most first; ties go to the smaller team code.
pub fn conference_seeding(log: &SeasonLog, conference: &str, cutoff: Cutoff) -> Result<Seeding> {
    let ci = log.config.conference_index(conference)?;
    Ok(seed_conference(&log.config, ci, &log.records_at(cutoff)))
}

pub fn standings(log: &SeasonLog, cutoff: Cutoff) -> StandingsSnapshot {
    let records = log.records_at(cutoff);
    let config = &log.config;
    StandingsSnapshot {
        cutoff,
        records: config.teams().iter().cloned().zip(records.iter().copied()).collect(),
        seedings: (0..config.conference_count())
            .map(|ci| {
                let s = seed_conference(config, ci, &records);
                (s.conference.clone(), s)
            })
            .collect(),
    }
}

/// The team's `n`-th loss (1-based), or `None` if it never loses that often.
/// `n == 0` also yields `None`.
pub fn nth_loss_event(log: &SeasonLog, team: &TeamId, n: u32) -> Result<Option<TeamGameEvent>> {
    if n == 0 {
        return Ok(None);
    }
    let mut record = Record::default();
    for (k, &i) in log.team_game_indices(team)?.iter().enumerate() {
        let game = &log.games[i];
        record.add(&game.winner == team);
        if &game.winner != team && record.losses == n {
            return Ok(Some(TeamGameEvent { date: game.date, team_game_index: k, log_index: i, record }));
        }
    }
    Ok(None)
}

/// The `k`-th highest value (1-based) of `wins` restricted to conference members.
pub(crate) fn kth_highest_wins(config: &LeagueConfig, ci: usize, records: &[Record], k: usize) -> u32 {
    let mut wins: Vec<u32> = config.members(ci).map(|t| records[t].wins).collect();
    wins.sort_unstable_by(|a, b| b.cmp(a));
    wins[k - 1]
}

/// Teams with tied win totals at `seed`; non-empty only when the tie-break decided the seed.
pub fn tied_at_seed(seeding: &Seeding, seed: usize) -> BTreeSet<TeamId> {
    let Some(entry) = seeding.at(seed) else {
        return BTreeSet::new();
    };
    if !entry.tied {
        return BTreeSet::new();
    }
    seeding.entries.iter().filter(|e| e.record.wins == entry.record.wins).map(|e| e.team.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(code: &str) -> TeamId {
        TeamId::new(code).unwrap()
    }

    fn d(day: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(2024, 1, day).unwrap()
    }

    fn four_team_round_robin() -> SeasonLog {
        // Every pair meets twice; 6 games per team.
        let cfg = LeagueConfig::new([("East", vec![t("A"), t("B")]), ("West", vec![t("C"), t("D")])])
            .unwrap()
            .with_season_games(6)
            .unwrap()
            .with_reference_seed(1)
            .unwrap();
        let results = [
            (1, "A", "B", "A"),
            (1, "C", "D", "D"),
            (2, "A", "C", "C"),
            (2, "B", "D", "B"),
            (3, "A", "D", "A"),
            (3, "B", "C", "C"),
            (4, "B", "A", "A"),
            (4, "D", "C", "C"),
            (5, "C", "A", "A"),
            (5, "D", "B", "D"),
            (6, "D", "A", "D"),
            (6, "C", "B", "B"),
        ];
        let games = results.iter().map(|&(day, h, a, w)| GameResult::new(d(day), t(h), t(a), t(w)).unwrap()).collect();
        SeasonLog::new(cfg, games).unwrap()
    }

    #[test]
    fn team_codes_are_validated() {
        assert!(TeamId::new("").is_err());
        assert!(TeamId::new("  ").is_err());
        assert!(TeamId::new("P R").is_err());
        assert_eq!(TeamId::new(" POR ").unwrap().as_str(), "POR");
    }

    #[test]
    fn config_rejects_team_in_two_conferences() {
        let err = LeagueConfig::new([("East", vec![t("A"), t("B")]), ("West", vec![t("B")])]);
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn config_rejects_reference_seed_beyond_conference() {
        let cfg = LeagueConfig::new([("East", vec![t("A"), t("B")])]).unwrap();
        assert_eq!(cfg.reference_seed(), 2);
        assert!(cfg.clone().with_reference_seed(3).is_err());
        assert!(cfg.with_reference_seed(0).is_err());
    }

    #[test]
    fn game_validation() {
        assert!(GameResult::new(d(1), t("A"), t("A"), t("A")).is_err());
        assert!(GameResult::new(d(1), t("A"), t("B"), t("C")).is_err());
        let g = GameResult::new(d(1), t("A"), t("B"), t("B")).unwrap();
        assert_eq!(g.loser(), &t("A"));
        assert_eq!(g.opponent(&t("B")), Some(&t("A")));
        assert_eq!(g.opponent(&t("C")), None);
    }

    #[test]
    fn log_rejects_unsorted_dates_and_overfull_schedules() {
        let cfg = LeagueConfig::new([("X", vec![t("A"), t("B")])]).unwrap().with_season_games(1).unwrap();
        let g1 = GameResult::new(d(2), t("A"), t("B"), t("A")).unwrap();
        let g2 = GameResult::new(d(1), t("B"), t("A"), t("A")).unwrap();
        assert!(SeasonLog::new(cfg.clone(), vec![g1.clone(), g2]).is_err());
        let g3 = GameResult::new(d(3), t("B"), t("A"), t("A")).unwrap();
        assert!(SeasonLog::new(cfg, vec![g1, g3]).is_err());
    }

    #[test]
    fn record_before_first_game_is_empty() {
        let log = four_team_round_robin();
        let before = log.first_date().unwrap().pred_opt().unwrap();
        for team in log.config().teams() {
            assert_eq!(record_as_of(&log, team, Cutoff::Date(before)).unwrap(), Record::default());
        }
    }

    #[test]
    fn record_matches_hand_count() {
        let log = four_team_round_robin();
        // A through day 3: W vs B, L vs C, W vs D.
        assert_eq!(record_as_of(&log, &t("A"), Cutoff::Date(d(3))).unwrap(), Record::new(2, 1));
        assert_eq!(record_as_of(&log, &t("A"), Cutoff::End).unwrap(), Record::new(4, 2));
        assert_eq!(record_as_of(&log, &t("A"), Cutoff::Games(1)).unwrap(), Record::new(1, 0));
        assert!(matches!(record_as_of(&log, &t("Z"), Cutoff::End), Err(Error::UnknownTeam(_))));
    }

    #[test]
    fn seeding_breaks_ties_by_team_code() {
        let log = four_team_round_robin();
        // C: 4-2, D: 3-3 in West; A: 4-2, B: 1-5 in East.
        let west = conference_seeding(&log, "West", Cutoff::End).unwrap();
        assert_eq!(west.teams().cloned().collect::<Vec<_>>(), vec![t("C"), t("D")]);
        // Day 1: C 0-1, D 1-0; day 2: C 1-1, D 1-1 -> tie, C first.
        let tied = conference_seeding(&log, "West", Cutoff::Date(d(2))).unwrap();
        assert_eq!(tied.entries[0].team, t("C"));
        assert!(tied.entries[0].tied && tied.entries[1].tied);
        assert_eq!(tied_at_seed(&tied, 1).len(), 2);
        assert!(conference_seeding(&log, "North", Cutoff::End).is_err());
    }

    #[test]
    fn single_team_conference() {
        let cfg = LeagueConfig::new([("Solo", vec![t("A")]), ("Rest", vec![t("B")])]).unwrap();
        let log = SeasonLog::empty(cfg);
        let s = conference_seeding(&log, "Solo", Cutoff::End).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].team, t("A"));
    }

    #[test]
    fn nth_loss() {
        let log = four_team_round_robin();
        // B loses on days 1, 3 (to C), 4 (to A), 5 (to D).
        let e = nth_loss_event(&log, &t("B"), 3).unwrap().unwrap();
        assert_eq!(e.date, d(4));
        assert_eq!(e.team_game_index, 3);
        assert_eq!(e.record, Record::new(1, 3));
        assert_eq!(nth_loss_event(&log, &t("B"), 6).unwrap(), None);
        assert_eq!(nth_loss_event(&log, &t("B"), 0).unwrap(), None);
    }

    #[test]
    fn undefeated_team_has_no_first_loss() {
        let cfg = LeagueConfig::new([("X", vec![t("A"), t("B")])]).unwrap().with_season_games(2).unwrap();
        let games = vec![
            GameResult::new(d(1), t("A"), t("B"), t("A")).unwrap(),
            GameResult::new(d(2), t("B"), t("A"), t("A")).unwrap(),
        ];
        let log = SeasonLog::new(cfg, games).unwrap();
        assert_eq!(nth_loss_event(&log, &t("A"), 1).unwrap(), None);
    }

    #[test]
    fn shortfalls_are_reported() {
        let log = four_team_round_robin();
        assert!(log.is_complete());
        let partial = log.prefix(Cutoff::Date(d(3)));
        let short = partial.shortfalls();
        assert_eq!(short.len(), 4);
        assert!(short.iter().all(|s| s.played == 3 && s.expected == 6));
        assert!(matches!(partial.ensure_complete(), Err(Error::Incomplete(_))));
    }

    #[test]
    fn snapshot_serde_validates() {
        let log = four_team_round_robin();
        let json = serde_json::to_string(&log).unwrap();
        let back: SeasonLog = serde_json::from_str(&json).unwrap();
        assert_eq!(back, log);
        let broken = json.replace("\"winner\":\"A\"", "\"winner\":\"Q\"");
        assert!(serde_json::from_str::<SeasonLog>(&broken).is_err());
    }
}
