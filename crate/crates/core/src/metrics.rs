//! Per-team lottery metrics under the three plans.
//!
//! * Current plan: total losses, pivot at the end of the season.
//! * Gold Plan: wins after the first day on which the team's losses plus the
//!   reference seed's current wins exceed the season length.
//! * Ex Post Gold Plan: wins after the team's REWIND Date, the day it suffers
//!   loss number `L + 1`, where `L` is the final loss count of its
//!   conference's reference seed.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::season::{
    kth_highest_wins, nth_loss_event, seed_conference, Cutoff, Record, SeasonLog, TeamGameEvent, TeamId,
};

/// The REWIND Target of one conference and the team that set it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewindTarget {
    pub conference: String,
    pub seed: usize,
    pub reference_team: TeamId,
    pub reference_record: Record,
    /// `reference_record.losses + 1`.
    pub target: u32,
    /// The reference team shares its win total with a neighbour. The target
    /// does not depend on which of them is picked.
    pub tie_broken: bool,
}

/// Target for `conference` using the configured reference seed.
pub fn rewind_target(log: &SeasonLog, conference: &str) -> Result<u32> {
    rewind_target_detail(log, conference, log.config().reference_seed()).map(|t| t.target)
}

pub fn rewind_target_for_seed(log: &SeasonLog, conference: &str, seed: usize) -> Result<u32> {
    rewind_target_detail(log, conference, seed).map(|t| t.target)
}

pub fn rewind_target_detail(log: &SeasonLog, conference: &str, seed: usize) -> Result<RewindTarget> {
    log.ensure_complete()?;
    let config = log.config();
    let ci = config.conference_index(conference)?;
    let records = log.records_at(Cutoff::End);
    let seeding = seed_conference(config, ci, &records);
    let entry = seeding.at(seed).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "seed {seed} outside conference `{conference}` of {} teams",
            seeding.entries.len()
        ))
    })?;
    Ok(RewindTarget {
        conference: conference.to_string(),
        seed,
        reference_team: entry.team.clone(),
        reference_record: entry.record,
        target: entry.record.losses + 1,
        tie_broken: entry.tied,
    })
}

/// Every conference's target, in conference-name order.
pub fn rewind_targets(log: &SeasonLog, seed: usize) -> Result<Vec<RewindTarget>> {
    let names: Vec<String> = log.config().conference_names().map(str::to_string).collect();
    names.iter().map(|c| rewind_target_detail(log, c, seed)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewindOutcome {
    pub team: TeamId,
    pub conference: String,
    pub target: u32,
    /// The game in which the team took its `target`-th loss.
    pub rewind_date: Option<TeamGameEvent>,
    /// Wins through and including the REWIND Date. Equals the season total
    /// when the team never reaches the target, so that `score` stays
    /// `total.wins - rewind_wins`.
    pub rewind_wins: u32,
    pub total: Record,
    pub score: u32,
    /// Never eliminated ex post; such teams finished at or above the reference seed.
    pub ineligible: bool,
}

pub fn rewind_outcome(log: &SeasonLog, team: &TeamId) -> Result<RewindOutcome> {
    let conference = log.config().conference_of(team)?.to_string();
    let target = rewind_target(log, &conference)?;
    rewind_outcome_with_target(log, team, target)
}

/// REWIND metrics for `team` against an explicit target.
pub fn rewind_outcome_with_target(log: &SeasonLog, team: &TeamId, target: u32) -> Result<RewindOutcome> {
    log.ensure_complete()?;
    let conference = log.config().conference_of(team)?.to_string();
    let total = crate::season::record_as_of(log, team, Cutoff::End)?;
    let event = nth_loss_event(log, team, target)?;
    let rewind_wins = event.map_or(total.wins, |e| e.record.wins);
    Ok(RewindOutcome {
        team: team.clone(),
        conference,
        target,
        rewind_date: event,
        rewind_wins,
        total,
        score: total.wins - rewind_wins,
        ineligible: event.is_none(),
    })
}

/// Outcomes for every team using the configured reference seed.
pub fn rewind_outcomes(log: &SeasonLog) -> Result<Vec<RewindOutcome>> {
    rewind_outcomes_for_seed(log, log.config().reference_seed())
}

/// Outcomes for every team, in team-code order, with the target taken from `seed`.
pub fn rewind_outcomes_for_seed(log: &SeasonLog, seed: usize) -> Result<Vec<RewindOutcome>> {
    let targets = rewind_targets(log, seed)?;
    log.config()
        .teams()
        .iter()
        .map(|team| {
            let conf = log.config().conference_of(team)?;
            let target = targets.iter().find(|t| t.conference == conf).unwrap().target;
            rewind_outcome_with_target(log, team, target)
        })
        .collect()
}

/// The day a team was first counted as eliminated under the simplified rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldPivot {
    pub date: NaiveDate,
    /// The team's record at the end of `date`.
    pub record: Record,
    /// Holder of the reference seed at the end of `date`.
    pub reference_team: TeamId,
    pub reference_record: Record,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldOutcome {
    pub team: TeamId,
    pub elimination: Option<GoldPivot>,
    pub wins_at_elimination: u32,
    pub total: Record,
    /// Wins after the elimination date; 0 when never eliminated.
    pub score: u32,
}

impl GoldOutcome {
    pub fn elimination_date(&self) -> Option<NaiveDate> {
        self.elimination.as_ref().map(|p| p.date)
    }
}

pub fn gold_outcome(log: &SeasonLog, team: &TeamId) -> Result<GoldOutcome> {
    let idx = log.config().team_index(team)?;
    Ok(gold_outcomes(log)?.swap_remove(idx))
}

/// Gold Plan outcomes for every team in team-code order.
///
/// Standings are evaluated at the end of each game day. A team is eliminated
/// on the first day where `losses + W_k > season_games`, with `W_k` the win
/// total of the conference's reference seed that day.
pub fn gold_outcomes(log: &SeasonLog) -> Result<Vec<GoldOutcome>> {
    log.ensure_complete()?;
    let config = log.config();
    let n = config.teams().len();
    let k = config.reference_seed();
    let season = config.season_games();
    let games = log.games();
    let mut records = vec![Record::default(); n];
    let mut pivots: Vec<Option<GoldPivot>> = vec![None; n];

    let mut i = 0;
    while i < games.len() {
        let date = games[i].date;
        while i < games.len() && games[i].date == date {
            let g = &games[i];
            records[config.team_index(&g.winner)?].wins += 1;
            records[config.team_index(g.loser())?].losses += 1;
            i += 1;
        }
        for ci in 0..config.conference_count() {
            let pending: Vec<usize> = config.members(ci).filter(|&t| pivots[t].is_none()).collect();
            if pending.is_empty() {
                continue;
            }
            let reference_wins = kth_highest_wins(config, ci, &records, k);
            let eliminated: Vec<usize> =
                pending.into_iter().filter(|&t| records[t].losses + reference_wins > season).collect();
            if eliminated.is_empty() {
                continue;
            }
            let seeding = seed_conference(config, ci, &records);
            let reference = seeding.at(k).unwrap();
            for t in eliminated {
                pivots[t] = Some(GoldPivot {
                    date,
                    record: records[t],
                    reference_team: reference.team.clone(),
                    reference_record: reference.record,
                });
            }
        }
    }

    Ok(config
        .teams()
        .iter()
        .zip(pivots)
        .zip(records)
        .map(|((team, pivot), total)| {
            let wins_at_elimination = pivot.as_ref().map_or(total.wins, |p| p.record.wins);
            GoldOutcome {
                team: team.clone(),
                elimination: pivot,
                wins_at_elimination,
                total,
                score: total.wins - wins_at_elimination,
            }
        })
        .collect())
}

/// A team's metrics under the current plan, the Gold Plan and the Ex Post Gold Plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanComparison {
    pub team: TeamId,
    /// Total losses; the current plan pivots at the end of the season.
    pub current_metric: u32,
    pub season_end: Option<NaiveDate>,
    pub gold: GoldOutcome,
    pub rewind: RewindOutcome,
}

pub fn compare_plans(log: &SeasonLog, team: &TeamId) -> Result<PlanComparison> {
    let rewind = rewind_outcome(log, team)?;
    let gold = gold_outcome(log, team)?;
    Ok(PlanComparison {
        team: team.clone(),
        current_metric: rewind.total.losses,
        season_end: log.last_date(),
        gold,
        rewind,
    })
}
