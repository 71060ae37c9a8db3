//! Typed reports and their table renderings, shared by the binary and tests.
//!
//! Each `*_report` function only assembles results from the library
//! operations; each `*_table` function only formats one.

use std::fmt::Write as _;
use std::path::Path;

use chrono::{Datelike, NaiveDate};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ingest::{self, ConfigDocument};
use crate::lottery::{
    current_order, default_eligibility, draft_frequencies, hybrid_draft_order, randomized_reference_seed,
    rewind_ranking, DraftOrder, LotteryRanking, OddsTable, DEFAULT_LOTTERY_SIZE, DRAWN_PICKS,
};
use crate::metrics::{
    compare_plans, gold_outcomes, rewind_outcomes_for_seed, rewind_target_detail, rewind_targets, PlanComparison,
    RewindTarget,
};
use crate::season::{record_as_of, standings, Cutoff, Record, SeasonLog, TeamId};
use crate::strategy::{
    classify_phase, expected_score_delta, simulate_completions, Estimate, MidSeasonState, Phase, ScoreDelta,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Value and number of decimals.
    Float(f64, usize),
    /// Signed integer rendered with an explicit `+` in text.
    Change(i64),
    Text(String),
    Date(NaiveDate),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v, p) => format!("{v:.p$}"),
            Cell::Change(v) => format!("{v:+}"),
            Cell::Text(s) => s.clone(),
            Cell::Date(d) => format!("{}/{}", d.month(), d.day()),
            Cell::Empty => String::new(),
        }
    }

    fn machine(&self) -> String {
        match self {
            Cell::Change(v) => v.to_string(),
            Cell::Date(d) => d.format("%Y-%m-%d").to_string(),
            Cell::Float(v, _) => v.to_string(),
            other => other.text(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) | Cell::Change(v) => json!(v),
            Cell::Float(v, _) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Date(d) => json!(d.format("%Y-%m-%d").to_string()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&TeamId> for Cell {
    fn from(t: &TeamId) -> Self {
        Cell::Text(t.to_string())
    }
}

impl From<Record> for Cell {
    fn from(r: Record) -> Self {
        Cell::Text(r.to_string())
    }
}

impl From<Option<NaiveDate>> for Cell {
    fn from(d: Option<NaiveDate>) -> Self {
        d.map_or(Cell::Empty, Cell::Date)
    }
}

/// A rectangular table with a fixed column order.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl OutputTable {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Self {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match headers in `{}`", self.title);
        self.rows.push(row);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn column(&self, header: &str) -> Option<Vec<&Cell>> {
        let i = self.headers.iter().position(|h| h == header)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).unwrap();
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| cells.iter().map(|r| r[i].chars().count()).chain([self.headers[i].len()]).max().unwrap())
            .collect();
        let line = |fields: &[String]| {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = String::new();
        if !self.title.is_empty() {
            writeln!(out, "{}", self.title).unwrap();
        }
        writeln!(out, "{}", line(&self.headers)).unwrap();
        writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ")).unwrap();
        for row in &cells {
            writeln!(out, "{}", line(row)).unwrap();
        }
        for note in &self.notes {
            writeln!(out, "* {note}").unwrap();
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).unwrap();
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::machine)).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.headers.iter().cloned().zip(r.iter().map(Cell::json)).collect::<Map<_, _>>()))
            .collect();
        json!({ "title": self.title, "columns": self.headers, "rows": rows, "notes": self.notes })
    }
}

/// Renders several tables one after another (JSON: as an array).
pub fn render_all(tables: &[OutputTable], format: Format) -> String {
    match format {
        Format::Json => {
            let v = Value::Array(tables.iter().map(OutputTable::to_json).collect());
            let mut s = serde_json::to_string_pretty(&v).unwrap();
            s.push('\n');
            s
        }
        _ => tables.iter().map(|t| t.render(format)).collect::<Vec<_>>().join("\n"),
    }
}

/// Loads a config document and a game log (CSV or snapshot).
pub fn load_inputs(config_path: &Path, log_path: &Path) -> Result<(ConfigDocument, SeasonLog)> {
    let doc = ingest::read_config_document(config_path)?;
    let bytes = std::fs::read(log_path)?;
    let log = if ingest::is_snapshot(&bytes) {
        let log = ingest::decode_snapshot(&bytes)?;
        if log.config() != &doc.league {
            return Err(Error::Config(format!(
                "snapshot {} was taken under a different league config",
                log_path.display()
            )));
        }
        log
    } else {
        let text = String::from_utf8(bytes).map_err(|_| Error::Parse { line: 0, message: "not utf-8".into() })?;
        ingest::parse_game_log(&text, &doc.league)?
    };
    Ok((doc, log))
}

/// Lottery population from the document, or the default.
pub fn eligibility(doc: &ConfigDocument, log: &SeasonLog) -> Vec<TeamId> {
    doc.lottery_teams.clone().unwrap_or_else(|| default_eligibility(log, DEFAULT_LOTTERY_SIZE))
}

pub fn ingest_table(log: &SeasonLog, warnings: usize) -> OutputTable {
    let mut t = OutputTable::new("Season log", &["Team", "Conference", "Games", "Record"]);
    for team in log.config().teams() {
        let r = record_as_of(log, team, Cutoff::End).unwrap();
        t.push(vec![team.into(), log.config().conference_of(team).unwrap().into(), r.games().into(), r.into()]);
    }
    t.note(format!("{} games, {} warnings", log.games().len(), warnings));
    if log.is_complete() {
        t.note("season complete");
    } else {
        t.note(format!("season incomplete: {} teams short", log.shortfalls().len()));
    }
    t
}

pub fn standings_table(log: &SeasonLog, cutoff: Cutoff) -> OutputTable {
    let snap = standings(log, cutoff);
    let title = match cutoff {
        Cutoff::Date(d) => format!("Standings through {d}"),
        Cutoff::Games(n) => format!("Standings after {n} games"),
        Cutoff::End => "Final standings".to_string(),
    };
    let mut t = OutputTable::new(title, &["Conference", "Seed", "Team", "W", "L", "Tied"]);
    for seeding in snap.seedings.values() {
        for e in &seeding.entries {
            t.push(vec![
                seeding.conference.as_str().into(),
                e.seed.into(),
                (&e.team).into(),
                e.record.wins.into(),
                e.record.losses.into(),
                if e.tied { "yes" } else { "" }.into(),
            ]);
        }
    }
    t.note("ties in wins are broken by team code");
    t
}

/// One row of the REWIND lottery table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewindRow {
    pub actual_rank: usize,
    pub team: TeamId,
    pub record: Record,
    pub rewind_date: Option<NaiveDate>,
    pub rewind_wins: u32,
    pub score: u32,
    pub rewind_rank: usize,
    /// `actual_rank - rewind_rank`: positive means the team moves up.
    pub rank_change: i64,
    /// The team holding REWIND rank `actual_rank`.
    pub ranking_team: TeamId,
    pub ineligible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewindReport {
    pub targets: Vec<RewindTarget>,
    pub ranking: LotteryRanking,
    pub rows: Vec<RewindRow>,
}

/// REWIND results for the lottery teams, rows in current-plan order.
pub fn rewind_report(
    log: &SeasonLog,
    eligible: &[TeamId],
    tiebreak: &[TeamId],
    reference_seed: usize,
) -> Result<RewindReport> {
    let targets = rewind_targets(log, reference_seed)?;
    let outcomes = rewind_outcomes_for_seed(log, reference_seed)?;
    let ranking = rewind_ranking(&outcomes, eligible)?;
    let actual = current_order(log, eligible, tiebreak)?;
    let rows = actual
        .iter()
        .enumerate()
        .map(|(i, (team, _))| {
            let o = outcomes.iter().find(|o| &o.team == team).unwrap();
            let rewind_rank = ranking.rank_of(team).unwrap();
            RewindRow {
                actual_rank: i + 1,
                team: team.clone(),
                record: o.total,
                rewind_date: o.rewind_date.map(|e| e.date),
                rewind_wins: o.rewind_wins,
                score: o.score,
                rewind_rank,
                rank_change: (i + 1) as i64 - rewind_rank as i64,
                ranking_team: ranking.entries[i].team.clone(),
                ineligible: o.ineligible,
            }
        })
        .collect();
    Ok(RewindReport { targets, ranking, rows })
}

pub fn rewind_table(report: &RewindReport) -> OutputTable {
    let mut t = OutputTable::new(
        "REWIND results",
        &[
            "Actual Rank",
            "Team",
            "Record",
            "REWIND Date",
            "REWIND Wins",
            "REWIND Score",
            "REWIND Rank",
            "Rank Change",
            "REWIND Ranking",
        ],
    );
    for r in &report.rows {
        t.push(vec![
            r.actual_rank.into(),
            (&r.team).into(),
            r.record.into(),
            r.rewind_date.into(),
            r.rewind_wins.into(),
            r.score.into(),
            r.rewind_rank.into(),
            Cell::Change(r.rank_change),
            (&r.ranking_team).into(),
        ]);
    }
    for target in &report.targets {
        t.note(format!(
            "{}: seed {} {} at {}, REWIND Target {}{}",
            target.conference,
            target.seed,
            target.reference_team,
            target.reference_record,
            target.target,
            if target.tie_broken { " (seed decided by tie-break)" } else { "" }
        ));
    }
    for r in report.rows.iter().filter(|r| r.ineligible) {
        t.note(format!("{} never reached its REWIND Target", r.team));
    }
    t.note("REWIND ties are broken by total losses");
    t
}

pub fn gold_table(log: &SeasonLog, eligible: &[TeamId]) -> Result<OutputTable> {
    let outcomes = gold_outcomes(log)?;
    let find = |t: &TeamId| outcomes.iter().find(|o| &o.team == t).ok_or_else(|| Error::UnknownTeam(t.to_string()));
    let ranking = LotteryRanking::from_scores(
        eligible.iter().map(|t| find(t).map(|o| (t.clone(), o.score, o.total.losses))).collect::<Result<Vec<_>>>()?,
    );
    let mut t = OutputTable::new(
        "Gold Plan results",
        &["Gold Rank", "Team", "Record", "Elimination Date", "Record at Elimination", "Reference Seed", "Gold Score"],
    );
    for entry in &ranking.entries {
        let o = find(&entry.team)?;
        let p = o.elimination.as_ref();
        t.push(vec![
            entry.rank.into(),
            (&entry.team).into(),
            o.total.into(),
            o.elimination_date().into(),
            p.map_or(Cell::Empty, |p| p.record.into()),
            p.map_or(Cell::Empty, |p| format!("{} ({})", p.reference_team, p.reference_record).into()),
            o.score.into(),
        ]);
    }
    t.note(format!("eliminated once losses + reference seed wins > {}", log.config().season_games()));
    Ok(t)
}

/// The plan comparison plus the reference seed that fixed the REWIND Target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub comparison: PlanComparison,
    pub target: RewindTarget,
    pub season_games: u32,
}

pub fn compare_report(log: &SeasonLog, team: &TeamId) -> Result<CompareReport> {
    let comparison = compare_plans(log, team)?;
    let target = rewind_target_detail(log, &comparison.rewind.conference, log.config().reference_seed())?;
    Ok(CompareReport { comparison, target, season_games: log.config().season_games() })
}

pub fn compare_table(report: &CompareReport) -> OutputTable {
    let c = &report.comparison;
    let total = c.rewind.total;
    let mut t = OutputTable::new(
        format!("Lottery plans for {} ({})", c.team, total),
        &[
            "Plan",
            "Pivot Date",
            "Record at Pivot",
            "Relevant Team and Record",
            "Reason for Pivot",
            "Metric",
            "Calculation",
        ],
    );
    t.push(vec![
        "Current".into(),
        "End of Season".into(),
        total.into(),
        "NA".into(),
        "Definition".into(),
        c.current_metric.into(),
        c.current_metric.to_string().into(),
    ]);
    match &c.gold.elimination {
        Some(p) => t.push(vec![
            "Gold Plan".into(),
            Cell::Date(p.date),
            p.record.into(),
            format!("{} at pivot ({})", p.reference_team, p.reference_record).into(),
            format!("{}+{} > {}", p.record.losses, p.reference_record.wins, report.season_games).into(),
            c.gold.score.into(),
            format!("{}-{}", total.wins, p.record.wins).into(),
        ]),
        None => t.push(vec![
            "Gold Plan".into(),
            Cell::Empty,
            Cell::Empty,
            "NA".into(),
            "never eliminated".into(),
            c.gold.score.into(),
            Cell::Empty,
        ]),
    }
    let reference = format!("{} at end of season ({})", report.target.reference_team, report.target.reference_record);
    match &c.rewind.rewind_date {
        Some(e) => t.push(vec![
            "Ex Post Gold Plan".into(),
            Cell::Date(e.date),
            e.record.into(),
            reference.into(),
            format!("{} > {}", e.record.losses, report.target.reference_record.losses).into(),
            c.rewind.score.into(),
            format!("{}-{}", total.wins, c.rewind.rewind_wins).into(),
        ]),
        None => t.push(vec![
            "Ex Post Gold Plan".into(),
            Cell::Empty,
            Cell::Empty,
            reference.into(),
            "never eliminated".into(),
            c.rewind.score.into(),
            Cell::Empty,
        ]),
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConferenceSummary {
    pub conference: String,
    pub mean: Estimate,
    pub q05: u32,
    pub median: u32,
    pub q95: u32,
    pub min: u32,
    pub max: u32,
    /// The target in the full log, for comparison.
    pub realized: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub as_of: NaiveDate,
    pub team: TeamId,
    pub record: Record,
    pub phase: Phase,
    pub remaining_games: usize,
    pub conferences: Vec<ConferenceSummary>,
    pub expected_score: Estimate,
    pub never_eliminated: f64,
    pub next_game: Option<(NaiveDate, TeamId)>,
    pub delta: Option<ScoreDelta>,
    pub replicas: u64,
    pub seed: u64,
}

/// Freezes a complete log at `as_of` and simulates the rest of the season.
pub fn simulate_report(
    log: &SeasonLog,
    doc: &ConfigDocument,
    as_of: NaiveDate,
    team: &TeamId,
    replicas: u64,
    seed: u64,
) -> Result<SimulationReport> {
    log.config().team_index(team)?;
    let last = log.last_date().ok_or_else(|| Error::InvalidArgument("empty game log".into()))?;
    if as_of > last {
        return Err(Error::InvalidArgument(format!("as-of date {as_of} is after the season ended on {last}")));
    }
    let state = MidSeasonState::as_of(log, Cutoff::Date(as_of))?;
    let record = state.record_so_far(team)?;
    let dist = simulate_completions(&state, &doc.strength, replicas, seed)?;
    let conferences = rewind_targets(log, log.config().reference_seed())?
        .into_iter()
        .map(|realized| {
            let c = realized.conference.as_str();
            let counts = &dist.targets[c];
            Ok(ConferenceSummary {
                conference: c.to_string(),
                mean: dist.mean_target(c)?,
                q05: dist.target_quantile(c, 0.05)?,
                median: dist.target_quantile(c, 0.5)?,
                q95: dist.target_quantile(c, 0.95)?,
                min: *counts.keys().next().unwrap(),
                max: *counts.keys().next_back().unwrap(),
                realized: realized.target,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let team_dist = &dist.teams[team];
    let never = team_dist.rewind_dates.get(&None).copied().unwrap_or(0) as f64 / replicas as f64;
    let next = state.next_game_for(team)?;
    let delta = next.map(|slot| expected_score_delta(&state, team, slot, &doc.strength, replicas, seed)).transpose()?;
    let next_game = next.map(|slot| {
        let g = &state.schedule()[slot];
        let opp = if &g.home == team { g.away.clone() } else { g.home.clone() };
        (g.date, opp)
    });
    Ok(SimulationReport {
        as_of,
        team: team.clone(),
        record,
        phase: classify_phase(record.losses, log.config().target_bounds()),
        remaining_games: state.remaining_count(),
        conferences,
        expected_score: dist.expected_score(team)?,
        never_eliminated: never,
        next_game,
        delta,
        replicas,
        seed,
    })
}

pub fn simulate_table(r: &SimulationReport) -> OutputTable {
    let mut t = OutputTable::new(
        format!("{} as of {} ({}), {} replicas, seed {}", r.team, r.as_of, r.record, r.replicas, r.seed),
        &["Quantity", "Subject", "Value", "Std Error"],
    );
    let team = r.team.to_string();
    t.push(vec!["Phase".into(), team.clone().into(), format!("{:?}", r.phase).into(), Cell::Empty]);
    t.push(vec!["Losses so far".into(), team.clone().into(), r.record.losses.into(), Cell::Empty]);
    t.push(vec!["Unplayed league games".into(), "".into(), r.remaining_games.into(), Cell::Empty]);
    for c in &r.conferences {
        let subject = || Cell::from(c.conference.as_str());
        t.push(vec!["Target mean".into(), subject(), Cell::Float(c.mean.mean, 3), Cell::Float(c.mean.std_error, 3)]);
        t.push(vec!["Target 5%".into(), subject(), c.q05.into(), Cell::Empty]);
        t.push(vec!["Target median".into(), subject(), c.median.into(), Cell::Empty]);
        t.push(vec!["Target 95%".into(), subject(), c.q95.into(), Cell::Empty]);
        t.push(vec!["Target range".into(), subject(), format!("{}-{}", c.min, c.max).into(), Cell::Empty]);
        t.push(vec!["Realized target".into(), subject(), c.realized.into(), Cell::Empty]);
    }
    t.push(vec![
        "Expected REWIND Score".into(),
        team.clone().into(),
        Cell::Float(r.expected_score.mean, 3),
        Cell::Float(r.expected_score.std_error, 3),
    ]);
    t.push(vec!["P(never eliminated)".into(), team.clone().into(), Cell::Float(r.never_eliminated, 4), Cell::Empty]);
    match (&r.next_game, &r.delta) {
        (Some((date, opp)), Some(d)) => {
            t.push(vec!["Next game".into(), team.clone().into(), format!("{date} vs {opp}").into(), Cell::Empty]);
            t.push(vec![
                "Score delta (win - loss)".into(),
                team.into(),
                Cell::Float(d.estimate, 4),
                Cell::Float(d.std_error, 4),
            ]);
        }
        _ => t.push(vec!["Next game".into(), team.into(), "none".into(), Cell::Empty]),
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LotteryReport {
    pub ranking: LotteryRanking,
    pub odds: OddsTable,
    pub order: DraftOrder,
    /// `frequencies[r][p]` when more than one draw was requested.
    pub frequencies: Option<Vec<Vec<u64>>>,
    pub draws: u64,
}

pub fn lottery_report(
    log: &SeasonLog,
    eligible: &[TeamId],
    odds: &OddsTable,
    seed: u64,
    draws: u64,
) -> Result<LotteryReport> {
    let outcomes = rewind_outcomes_for_seed(log, log.config().reference_seed())?;
    let ranking = rewind_ranking(&outcomes, eligible)?;
    let order = hybrid_draft_order(&ranking, odds, seed)?;
    let frequencies = (draws > 1).then(|| draft_frequencies(&ranking, odds, seed, draws)).transpose()?;
    Ok(LotteryReport { ranking, odds: odds.clone(), order, frequencies, draws })
}

pub fn lottery_tables(r: &LotteryReport) -> Vec<OutputTable> {
    let mut ranking =
        OutputTable::new("REWIND lottery ranking", &["Rank", "Team", "REWIND Score", "Losses", "Tie-break", "Odds"]);
    for (e, p) in r.ranking.entries.iter().zip(r.odds.probabilities()) {
        ranking.push(vec![
            e.rank.into(),
            (&e.team).into(),
            e.score.into(),
            e.total_losses.into(),
            if e.tiebreak_applied { "losses" } else { "" }.into(),
            Cell::Float(*p, 4),
        ]);
    }
    let mut tables = vec![ranking];
    match &r.frequencies {
        Some(freq) => {
            let mut t = OutputTable::new(
                format!("Draft frequencies over {} draws", r.draws),
                &["Rank", "Team", "P(pick 1)", "P(top 4)", "Mean pick", "Worst pick"],
            );
            for (e, row) in r.ranking.entries.iter().zip(freq) {
                let n = r.draws as f64;
                let top = row.iter().take(DRAWN_PICKS).sum::<u64>() as f64 / n;
                let mean = row.iter().enumerate().map(|(p, c)| (p + 1) as f64 * *c as f64).sum::<f64>() / n;
                let worst = row.iter().rposition(|&c| c > 0).map_or(0, |p| p + 1);
                t.push(vec![
                    e.rank.into(),
                    (&e.team).into(),
                    Cell::Float(row[0] as f64 / n, 4),
                    Cell::Float(top, 4),
                    Cell::Float(mean, 3),
                    worst.into(),
                ]);
            }
            tables.push(t);
        }
        None => {
            let mut t = OutputTable::new("Draft order", &["Pick", "Team", "How"]);
            for (i, team) in r.order.picks.iter().enumerate() {
                t.push(vec![
                    (i + 1).into(),
                    team.into(),
                    if i < r.order.drawn { "lottery draw" } else { "total losses" }.into(),
                ]);
            }
            tables.push(t);
        }
    }
    tables
}

/// Reference seed to use: an explicit override, a draw among candidates, or the config.
pub fn choose_reference_seed(
    log: &SeasonLog,
    explicit: Option<usize>,
    candidates: Option<&[usize]>,
    seed: u64,
) -> Result<usize> {
    match (explicit, candidates) {
        (Some(s), _) => {
            log.config().clone().with_reference_seed(s)?;
            Ok(s)
        }
        (None, Some(c)) => randomized_reference_seed(log.config(), seed, c, None),
        (None, None) => Ok(log.config().reference_seed()),
    }
}
