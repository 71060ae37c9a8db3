//! The tanking team's decision problem.
//!
//! A tanking team does not know its REWIND Date until the season ends: the
//! date depends on the final loss count of whoever finishes as the reference
//! seed. This module measures that uncertainty three ways:
//!
//! * [`classify_phase`] splits the season by historical target bounds;
//! * [`counterfactual_game_value`] replays a finished season with one result
//!   flipped;
//! * [`simulate_completions`] and [`expected_score_delta`] finish a partial
//!   season many times under a logistic strength model.
//!
//! Monte Carlo replicas draw from `ChaCha8Rng` seeded with the caller's seed
//! and using the replica number as the stream id, and aggregate integer
//! counts only. Results are therefore identical for any thread schedule.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{rewind_outcome, RewindOutcome};
use crate::season::{Cutoff, GameResult, LeagueConfig, SeasonLog, TargetBounds, TeamId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phase {
    /// The next loss cannot come after any historically plausible REWIND Date.
    DefiniteLose,
    Uncertain,
    /// Every historically plausible REWIND Date has already passed.
    DefiniteWin,
}

/// Phase of the season for a team that has lost `losses_so_far` games.
pub fn classify_phase(losses_so_far: u32, bounds: TargetBounds) -> Phase {
    if losses_so_far < bounds.min {
        Phase::DefiniteLose
    } else if losses_so_far >= bounds.max {
        Phase::DefiniteWin
    } else {
        Phase::Uncertain
    }
}

/// Both branches of a single flipped game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterfactual {
    pub log_index: usize,
    pub if_won: RewindOutcome,
    pub if_lost: RewindOutcome,
}

impl Counterfactual {
    /// Score if the team wins minus score if it loses.
    pub fn value(&self) -> i64 {
        i64::from(self.if_won.score) - i64::from(self.if_lost.score)
    }
}

fn team_game(log: &SeasonLog, team: &TeamId, log_index: usize) -> Result<GameResult> {
    let game = log
        .games()
        .get(log_index)
        .ok_or_else(|| Error::InvalidArgument(format!("no game at log index {log_index}")))?;
    if !game.involves(team) {
        return Err(Error::InvalidArgument(format!(
            "game {log_index} ({} at {}) does not involve {team}",
            game.away, game.home
        )));
    }
    Ok(game.clone())
}

/// Replays the season with game `log_index` won and lost by `team`, every
/// other result held fixed. Targets are recomputed in each branch.
pub fn counterfactual(log: &SeasonLog, team: &TeamId, log_index: usize) -> Result<Counterfactual> {
    log.ensure_complete()?;
    let game = team_game(log, team, log_index)?;
    let opponent = game.opponent(team).unwrap();
    let won = log.with_result(log_index, team)?;
    let lost = log.with_result(log_index, opponent)?;
    Ok(Counterfactual { log_index, if_won: rewind_outcome(&won, team)?, if_lost: rewind_outcome(&lost, team)? })
}

pub fn counterfactual_game_value(log: &SeasonLog, team: &TeamId, log_index: usize) -> Result<i64> {
    counterfactual(log, team, log_index).map(|c| c.value())
}

/// Intentional losses that landed after the realized REWIND Date, where a win
/// would have counted.
pub fn ex_post_regret(log: &SeasonLog, team: &TeamId, intended_losses: &[usize]) -> Result<usize> {
    let outcome = rewind_outcome(log, team)?;
    for &i in intended_losses {
        let game = team_game(log, team, i)?;
        if &game.winner == team {
            return Err(Error::InvalidArgument(format!("{team} won game {i}; it cannot be an intentional loss")));
        }
    }
    let Some(pivot) = outcome.rewind_date else {
        return Ok(0);
    };
    let mut unique: Vec<usize> = intended_losses.to_vec();
    unique.sort_unstable();
    unique.dedup();
    Ok(unique.into_iter().filter(|&i| i > pivot.log_index).count())
}

/// Logistic pairwise model: `P(a beats b) = 1 / (1 + exp(-(s_a - s_b)))`,
/// with `home_advantage` added to the home side.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct StrengthModel {
    /// Teams without an entry have strength 0.
    pub strengths: BTreeMap<TeamId, f64>,
    pub home_advantage: f64,
}

impl StrengthModel {
    pub fn new(strengths: BTreeMap<TeamId, f64>, home_advantage: f64) -> Result<Self> {
        if let Some((t, s)) = strengths.iter().find(|(_, s)| !s.is_finite()) {
            return Err(Error::InvalidArgument(format!("strength of {t} is not finite: {s}")));
        }
        if !home_advantage.is_finite() {
            return Err(Error::InvalidArgument("home advantage is not finite".into()));
        }
        Ok(Self { strengths, home_advantage })
    }

    /// Every team equally strong, no home edge: each game is a coin flip.
    pub fn even() -> Self {
        Self::default()
    }

    pub fn strength(&self, team: &TeamId) -> f64 {
        self.strengths.get(team).copied().unwrap_or(0.0)
    }

    /// Probability that `a` beats `b` at a neutral site.
    pub fn beat_probability(&self, a: &TeamId, b: &TeamId) -> f64 {
        logistic(self.strength(a) - self.strength(b))
    }

    /// Probability that the home side wins.
    pub fn home_win_probability(&self, home: &TeamId, away: &TeamId) -> f64 {
        logistic(self.strength(home) + self.home_advantage - self.strength(away))
    }
}

fn logistic(x: f64) -> f64 {
    // Kept strictly inside (0, 1) so that no game is decided in advance.
    (1.0 / (1.0 + (-x).exp())).clamp(1e-12, 1.0 - 1e-12)
}

/// A game on the schedule, played or not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduledGame {
    pub date: NaiveDate,
    pub home: TeamId,
    pub away: TeamId,
}

/// A season part-way through: the full schedule with results for the games
/// already played.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MidSeasonState {
    config: LeagueConfig,
    schedule: Vec<ScheduledGame>,
    /// `Some(winner)` for played games.
    results: Vec<Option<TeamId>>,
}

impl MidSeasonState {
    /// Merges played games and the remaining schedule by date (played first
    /// within a date). Every team must end up with exactly `season_games` games.
    pub fn new(played: &SeasonLog, remaining: Vec<ScheduledGame>) -> Result<Self> {
        let mut rows: Vec<(ScheduledGame, Option<TeamId>)> = played
            .games()
            .iter()
            .map(|g| {
                (ScheduledGame { date: g.date, home: g.home.clone(), away: g.away.clone() }, Some(g.winner.clone()))
            })
            .collect();
        rows.extend(remaining.into_iter().map(|g| (g, None)));
        rows.sort_by_key(|(g, _)| g.date);
        let (schedule, results) = rows.into_iter().unzip();
        Self::from_parts(played.config().clone(), schedule, results)
    }

    /// Splits a complete log at `cutoff`: later results are forgotten.
    pub fn as_of(log: &SeasonLog, cutoff: Cutoff) -> Result<Self> {
        log.ensure_complete()?;
        let keep = log.prefix(cutoff).games().len();
        Self::with_unplayed(log, &(keep..log.games().len()).collect::<Vec<_>>())
    }

    /// A complete log with the listed games (log indices) marked unplayed.
    pub fn with_unplayed(log: &SeasonLog, log_indices: &[usize]) -> Result<Self> {
        let mut results: Vec<Option<TeamId>> = log.games().iter().map(|g| Some(g.winner.clone())).collect();
        for &i in log_indices {
            *results.get_mut(i).ok_or_else(|| Error::InvalidArgument(format!("no game at log index {i}")))? = None;
        }
        let schedule = log
            .games()
            .iter()
            .map(|g| ScheduledGame { date: g.date, home: g.home.clone(), away: g.away.clone() })
            .collect();
        Self::from_parts(log.config().clone(), schedule, results)
    }

    fn from_parts(config: LeagueConfig, schedule: Vec<ScheduledGame>, results: Vec<Option<TeamId>>) -> Result<Self> {
        let mut counts = vec![0u32; config.teams().len()];
        for (g, r) in schedule.iter().zip(&results) {
            if g.home == g.away {
                return Err(Error::InvalidArgument(format!("{} scheduled against itself", g.home)));
            }
            if let Some(w) = r {
                if w != &g.home && w != &g.away {
                    return Err(Error::InvalidArgument(format!("{w} did not play {} at {}", g.away, g.home)));
                }
            }
            counts[config.team_index(&g.home)?] += 1;
            counts[config.team_index(&g.away)?] += 1;
        }
        if let Some((t, c)) = config.teams().iter().zip(&counts).find(|(_, &c)| c != config.season_games()) {
            return Err(Error::InvalidArgument(format!(
                "inconsistent remaining schedule: {t} has {c} games, expected {}",
                config.season_games()
            )));
        }
        Ok(Self { config, schedule, results })
    }

    pub fn config(&self) -> &LeagueConfig {
        &self.config
    }

    pub fn schedule(&self) -> &[ScheduledGame] {
        &self.schedule
    }

    /// Unplayed games with their schedule indices.
    pub fn remaining(&self) -> impl Iterator<Item = (usize, &ScheduledGame)> {
        self.schedule.iter().enumerate().filter(|(i, _)| self.results[*i].is_none())
    }

    pub fn remaining_count(&self) -> usize {
        self.results.iter().filter(|r| r.is_none()).count()
    }

    /// The team's record over its played games.
    pub fn record_so_far(&self, team: &TeamId) -> Result<crate::season::Record> {
        self.config.team_index(team)?;
        let mut record = crate::season::Record::default();
        for (g, r) in self.schedule.iter().zip(&self.results) {
            if let Some(w) = r {
                if &g.home == team || &g.away == team {
                    record.add(w == team);
                }
            }
        }
        Ok(record)
    }

    /// Schedule index of the team's first unplayed game.
    pub fn next_game_for(&self, team: &TeamId) -> Result<Option<usize>> {
        self.config.team_index(team)?;
        Ok(self.remaining().find(|(_, g)| &g.home == team || &g.away == team).map(|(i, _)| i))
    }

    /// The season with `winners` filled in for the unplayed games, in schedule order.
    pub fn complete_with(&self, winners: &[TeamId]) -> Result<SeasonLog> {
        if winners.len() != self.remaining_count() {
            return Err(Error::InvalidArgument(format!(
                "{} winners for {} unplayed games",
                winners.len(),
                self.remaining_count()
            )));
        }
        let mut fill = winners.iter();
        let games = self
            .schedule
            .iter()
            .zip(&self.results)
            .map(|(g, r)| {
                let w = r.clone().unwrap_or_else(|| fill.next().unwrap().clone());
                GameResult::new(g.date, g.home.clone(), g.away.clone(), w)
            })
            .collect::<Result<Vec<_>>>()?;
        SeasonLog::new(self.config.clone(), games)
    }
}

/// Index-based form of a state for the inner simulation loop.
struct Kernel {
    season_games: u32,
    reference_seed: usize,
    conference_of: Vec<usize>,
    conference_count: usize,
    /// (home, away) team indices per schedule slot.
    games: Vec<(usize, usize)>,
    /// Known results: `Some(home_won)`.
    fixed: Vec<Option<bool>>,
    /// Unplayed schedule slots and the home side's win probability.
    free: Vec<(usize, f64)>,
    /// Each team's schedule slots in order.
    sequences: Vec<Vec<usize>>,
}

/// Per-replica result for every team.
struct Evaluation {
    targets: Vec<u32>,
    /// Position of the REWIND game in the team's schedule, if reached.
    pivots: Vec<Option<usize>>,
    scores: Vec<u32>,
}

impl Kernel {
    fn new(state: &MidSeasonState, model: &StrengthModel) -> Result<Self> {
        let config = &state.config;
        let n = config.teams().len();
        let mut games = Vec::with_capacity(state.schedule.len());
        let mut fixed = Vec::with_capacity(state.schedule.len());
        let mut free = Vec::new();
        let mut sequences = vec![Vec::new(); n];
        for (slot, (g, r)) in state.schedule.iter().zip(&state.results).enumerate() {
            let h = config.team_index(&g.home)?;
            let a = config.team_index(&g.away)?;
            games.push((h, a));
            sequences[h].push(slot);
            sequences[a].push(slot);
            match r {
                Some(w) => fixed.push(Some(w == &g.home)),
                None => {
                    fixed.push(None);
                    free.push((slot, model.home_win_probability(&g.home, &g.away)));
                }
            }
        }
        Ok(Self {
            season_games: config.season_games(),
            reference_seed: config.reference_seed(),
            conference_of: (0..n).map(|t| config.conference_index_of(t)).collect(),
            conference_count: config.conference_count(),
            games,
            fixed,
            free,
            sequences,
        })
    }

    /// Fills `outcome` (home won, per slot) from uniforms `u`, one per free slot.
    fn realize(&self, u: &[f64], forced: Option<(usize, bool)>, outcome: &mut Vec<bool>) {
        outcome.clear();
        outcome.extend(self.fixed.iter().map(|r| r.unwrap_or(false)));
        for (&(slot, p), &x) in self.free.iter().zip(u) {
            outcome[slot] = x < p;
        }
        if let Some((slot, home_won)) = forced {
            outcome[slot] = home_won;
        }
    }

    fn evaluate(&self, outcome: &[bool]) -> Evaluation {
        let n = self.sequences.len();
        let mut wins = vec![0u32; n];
        for (&(h, a), &home_won) in self.games.iter().zip(outcome) {
            wins[if home_won { h } else { a }] += 1;
        }
        let targets: Vec<u32> = (0..self.conference_count)
            .map(|c| {
                let mut w: Vec<u32> = (0..n).filter(|&t| self.conference_of[t] == c).map(|t| wins[t]).collect();
                w.sort_unstable_by(|a, b| b.cmp(a));
                // Complete season: losses = games - wins.
                self.season_games - w[self.reference_seed - 1] + 1
            })
            .collect();
        let mut pivots = Vec::with_capacity(n);
        let mut scores = Vec::with_capacity(n);
        for t in 0..n {
            let target = targets[self.conference_of[t]];
            let mut losses = 0;
            let mut pivot = None;
            let mut after = 0;
            for (k, &slot) in self.sequences[t].iter().enumerate() {
                let (h, _) = self.games[slot];
                let won = (h == t) == outcome[slot];
                if pivot.is_some() {
                    after += u32::from(won);
                } else if !won {
                    losses += 1;
                    if losses == target {
                        pivot = Some(k);
                    }
                }
            }
            pivots.push(pivot);
            scores.push(after);
        }
        Evaluation { targets, pivots, scores }
    }
}

fn replica_rng(seed: u64, replica: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

#[derive(Clone)]
struct Tally {
    /// [conference][target] counts; targets range over 1..=season_games + 1.
    targets: Vec<Vec<u64>>,
    /// [team][pivot position or season_games for "never"].
    pivots: Vec<Vec<u64>>,
    /// [team][score].
    scores: Vec<Vec<u64>>,
}

impl Tally {
    fn new(conferences: usize, teams: usize, season_games: u32) -> Self {
        let width = season_games as usize + 2;
        Self {
            targets: vec![vec![0; width]; conferences],
            pivots: vec![vec![0; width]; teams],
            scores: vec![vec![0; width]; teams],
        }
    }

    fn add(&mut self, e: &Evaluation, never: usize) {
        for (c, &t) in e.targets.iter().enumerate() {
            self.targets[c][t as usize] += 1;
        }
        for (t, p) in e.pivots.iter().enumerate() {
            self.pivots[t][p.unwrap_or(never)] += 1;
            self.scores[t][e.scores[t] as usize] += 1;
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in
            [(&mut self.targets, &other.targets), (&mut self.pivots, &other.pivots), (&mut self.scores, &other.scores)]
        {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
        }
        self
    }
}

/// Simulated outcome distribution for one team.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeamDistribution {
    /// REWIND Date counts; `None` means the team was never eliminated ex post.
    pub rewind_dates: BTreeMap<Option<NaiveDate>, u64>,
    /// Same, keyed by 0-based position in the team's schedule.
    pub rewind_positions: BTreeMap<Option<usize>, u64>,
    pub scores: BTreeMap<u32, u64>,
}

/// Empirical distribution of REWIND quantities over simulated completions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetDistribution {
    pub replicas: u64,
    pub seed: u64,
    /// Target counts per conference.
    pub targets: BTreeMap<String, BTreeMap<u32, u64>>,
    pub teams: BTreeMap<TeamId, TeamDistribution>,
}

/// Mean with its Monte Carlo standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

fn estimate_from_counts<'a>(counts: impl Iterator<Item = (f64, &'a u64)> + Clone) -> Estimate {
    let n: f64 = counts.clone().map(|(_, &c)| c as f64).sum();
    let mean = counts.clone().map(|(x, &c)| x * c as f64).sum::<f64>() / n;
    let var = if n > 1.0 { counts.map(|(x, &c)| (x - mean).powi(2) * c as f64).sum::<f64>() / (n - 1.0) } else { 0.0 };
    Estimate { mean, std_error: (var / n).sqrt() }
}

impl TargetDistribution {
    pub fn target_probabilities(&self, conference: &str) -> Result<BTreeMap<u32, f64>> {
        let counts = self.targets.get(conference).ok_or_else(|| Error::UnknownConference(conference.to_string()))?;
        Ok(counts.iter().map(|(&t, &c)| (t, c as f64 / self.replicas as f64)).collect())
    }

    pub fn mean_target(&self, conference: &str) -> Result<Estimate> {
        let counts = self.targets.get(conference).ok_or_else(|| Error::UnknownConference(conference.to_string()))?;
        Ok(estimate_from_counts(counts.iter().map(|(&t, c)| (f64::from(t), c))))
    }

    /// Smallest target `t` with `P(target <= t) >= q`.
    pub fn target_quantile(&self, conference: &str, q: f64) -> Result<u32> {
        let counts = self.targets.get(conference).ok_or_else(|| Error::UnknownConference(conference.to_string()))?;
        let need = (q.clamp(0.0, 1.0) * self.replicas as f64).ceil().max(1.0) as u64;
        let mut acc = 0;
        for (&t, &c) in counts {
            acc += c;
            if acc >= need {
                return Ok(t);
            }
        }
        Ok(*counts.keys().next_back().unwrap())
    }

    pub fn expected_score(&self, team: &TeamId) -> Result<Estimate> {
        let d = self.teams.get(team).ok_or_else(|| Error::UnknownTeam(team.to_string()))?;
        Ok(estimate_from_counts(d.scores.iter().map(|(&s, c)| (f64::from(s), c))))
    }

    pub fn score_probabilities(&self, team: &TeamId) -> Result<BTreeMap<u32, f64>> {
        let d = self.teams.get(team).ok_or_else(|| Error::UnknownTeam(team.to_string()))?;
        Ok(d.scores.iter().map(|(&s, &c)| (s, c as f64 / self.replicas as f64)).collect())
    }
}

/// Finishes the season `replicas` times, drawing every unplayed game
/// independently from `model`, and tallies targets, REWIND Dates and scores.
pub fn simulate_completions(
    state: &MidSeasonState,
    model: &StrengthModel,
    replicas: u64,
    rng_seed: u64,
) -> Result<TargetDistribution> {
    if replicas == 0 {
        return Err(Error::InvalidArgument("replicas must be at least 1".into()));
    }
    let kernel = Kernel::new(state, model)?;
    let config = &state.config;
    let n = config.teams().len();
    let never = config.season_games() as usize;
    let empty = Tally::new(kernel.conference_count, n, config.season_games());

    let tally = (0..replicas)
        .into_par_iter()
        .fold(
            || (empty.clone(), Vec::new(), Vec::new()),
            |(mut tally, mut u, mut outcome), r| {
                let mut rng = replica_rng(rng_seed, r);
                u.clear();
                u.extend((0..kernel.free.len()).map(|_| rng.gen::<f64>()));
                kernel.realize(&u, None, &mut outcome);
                tally.add(&kernel.evaluate(&outcome), never);
                (tally, u, outcome)
            },
        )
        .map(|(t, _, _)| t)
        .reduce(|| empty.clone(), Tally::merge);

    let nonzero = |row: &[u64]| -> Vec<(usize, u64)> {
        row.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c)).collect()
    };
    let targets = config
        .conference_names()
        .zip(&tally.targets)
        .map(|(name, row)| (name.to_string(), nonzero(row).into_iter().map(|(t, c)| (t as u32, c)).collect()))
        .collect();
    let teams = config
        .teams()
        .iter()
        .enumerate()
        .map(|(t, team)| {
            let positions: BTreeMap<Option<usize>, u64> =
                nonzero(&tally.pivots[t]).into_iter().map(|(p, c)| ((p != never).then_some(p), c)).collect();
            let mut rewind_dates = BTreeMap::new();
            for (p, c) in &positions {
                let date = p.map(|k| state.schedule[kernel.sequences[t][k]].date);
                *rewind_dates.entry(date).or_insert(0) += c;
            }
            let scores = nonzero(&tally.scores[t]).into_iter().map(|(s, c)| (s as u32, c)).collect();
            (team.clone(), TeamDistribution { rewind_dates, rewind_positions: positions, scores })
        })
        .collect();
    Ok(TargetDistribution { replicas, seed: rng_seed, targets, teams })
}

/// Estimated effect of winning rather than losing the next game on the final
/// REWIND Score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreDelta {
    /// E[score | win] - E[score | loss].
    pub estimate: f64,
    pub std_error: f64,
    pub expected_if_won: f64,
    pub expected_if_lost: f64,
    pub replicas: u64,
}

/// Both branches share the draws for every other unplayed game (common random
/// numbers), so the estimate is a mean of per-replica differences.
pub fn expected_score_delta(
    state: &MidSeasonState,
    team: &TeamId,
    next_game: usize,
    model: &StrengthModel,
    replicas: u64,
    rng_seed: u64,
) -> Result<ScoreDelta> {
    if replicas == 0 {
        return Err(Error::InvalidArgument("replicas must be at least 1".into()));
    }
    let expected = state.next_game_for(team)?;
    if expected != Some(next_game) {
        return Err(Error::InvalidArgument(format!(
            "schedule slot {next_game} is not {team}'s next unplayed game ({expected:?})"
        )));
    }
    let kernel = Kernel::new(state, model)?;
    let t = state.config.team_index(team)?;
    let home_side = kernel.games[next_game].0 == t;

    // Integer sums keep the reduction order-independent.
    let (sum_d, sum_d2, sum_w, sum_l) = (0..replicas)
        .into_par_iter()
        .fold(
            || ((0i64, 0i64, 0u64, 0u64), Vec::new(), Vec::new()),
            |(mut acc, mut u, mut outcome), r| {
                let mut rng = replica_rng(rng_seed, r);
                u.clear();
                u.extend((0..kernel.free.len()).map(|_| rng.gen::<f64>()));
                // The forced slot's draw goes unused; every other game sees
                // the same number in both branches.
                kernel.realize(&u, Some((next_game, home_side)), &mut outcome);
                let w = kernel.evaluate(&outcome).scores[t];
                kernel.realize(&u, Some((next_game, !home_side)), &mut outcome);
                let l = kernel.evaluate(&outcome).scores[t];
                let d = i64::from(w) - i64::from(l);
                acc.0 += d;
                acc.1 += d * d;
                acc.2 += u64::from(w);
                acc.3 += u64::from(l);
                (acc, u, outcome)
            },
        )
        .map(|(acc, _, _)| acc)
        .reduce(|| (0, 0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3));

    let n = replicas as f64;
    let mean = sum_d as f64 / n;
    let var = if replicas > 1 { ((sum_d2 as f64) - n * mean * mean).max(0.0) / (n - 1.0) } else { 0.0 };
    Ok(ScoreDelta {
        estimate: mean,
        std_error: (var / n).sqrt(),
        expected_if_won: sum_w as f64 / n,
        expected_if_lost: sum_l as f64 / n,
        replicas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(code: &str) -> TeamId {
        TeamId::new(code).unwrap()
    }

    #[test]
    fn phases_match_historical_bounds() {
        let b = TargetBounds::new(29, 42).unwrap();
        assert_eq!(classify_phase(10, b), Phase::DefiniteLose);
        assert_eq!(classify_phase(28, b), Phase::DefiniteLose);
        assert_eq!(classify_phase(29, b), Phase::Uncertain);
        assert_eq!(classify_phase(35, b), Phase::Uncertain);
        assert_eq!(classify_phase(41, b), Phase::Uncertain);
        assert_eq!(classify_phase(42, b), Phase::DefiniteWin);
        assert_eq!(classify_phase(70, b), Phase::DefiniteWin);
    }

    #[test]
    fn logistic_model_is_symmetric() {
        let mut s = BTreeMap::new();
        s.insert(t("A"), 1.5);
        s.insert(t("B"), -0.5);
        let m = StrengthModel::new(s, 0.3).unwrap();
        let p = m.beat_probability(&t("A"), &t("B"));
        assert!((p + m.beat_probability(&t("B"), &t("A")) - 1.0).abs() < 1e-12);
        assert!((p - 1.0 / (1.0 + (-2.0f64).exp())).abs() < 1e-12);
        assert!(m.home_win_probability(&t("B"), &t("A")) > m.beat_probability(&t("B"), &t("A")));
        assert_eq!(m.beat_probability(&t("C"), &t("D")), 0.5);
        let extreme = StrengthModel::new([(t("A"), 1e6)].into_iter().collect(), 0.0).unwrap();
        let q = extreme.beat_probability(&t("A"), &t("B"));
        assert!(q > 0.0 && q < 1.0);
        assert!(StrengthModel::new([(t("A"), f64::NAN)].into_iter().collect(), 0.0).is_err());
    }
}
