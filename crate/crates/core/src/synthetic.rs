//! Small random leagues for demos and tests.
//!
//! Schedules are built day by day by pairing teams that still owe games, so
//! every team plays exactly `season_games` games and at most one per day.

use chrono::{Days, NaiveDate};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lottery::rng_from_seed;
use crate::season::{GameResult, LeagueConfig, SeasonLog, TeamId};
use crate::strategy::{ScheduledGame, StrengthModel};

/// `conference_sizes` teams per conference, named `T00`, `T01`, ...
/// and conferences `C0`, `C1`, ...
pub fn league(conference_sizes: &[usize], season_games: u32, reference_seed: usize) -> Result<LeagueConfig> {
    let mut next = 0;
    let conferences: Vec<(String, Vec<TeamId>)> = conference_sizes
        .iter()
        .enumerate()
        .map(|(c, &size)| {
            let teams = (next..next + size).map(|i| TeamId::new(format!("T{i:02}")).unwrap()).collect();
            next += size;
            (format!("C{c}"), teams)
        })
        .collect();
    LeagueConfig::new(conferences)?.with_season_games(season_games)?.with_reference_seed(reference_seed)
}

/// A random schedule where each team plays exactly `season_games` games.
pub fn schedule<R: Rng + ?Sized>(config: &LeagueConfig, start: NaiveDate, rng: &mut R) -> Result<Vec<ScheduledGame>> {
    let teams = config.teams();
    let total = teams.len() as u64 * u64::from(config.season_games());
    if teams.len() < 2 || total % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "{} teams cannot each play {} games",
            teams.len(),
            config.season_games()
        )));
    }
    'attempt: for _ in 0..1000 {
        let mut owed = vec![config.season_games(); teams.len()];
        let mut games = Vec::new();
        let mut day = 0u64;
        while owed.iter().any(|&o| o > 0) {
            let mut open: Vec<usize> = (0..teams.len()).filter(|&t| owed[t] > 0).collect();
            if open.len() == 1 {
                continue 'attempt;
            }
            open.shuffle(rng);
            // Teams owing the most games go first so nobody is stranded.
            open.sort_by_key(|&t| std::cmp::Reverse(owed[t]));
            let date = start + Days::new(day);
            for pair in open.chunks_exact(2) {
                let (h, a) = if rng.gen::<bool>() { (pair[0], pair[1]) } else { (pair[1], pair[0]) };
                owed[h] -= 1;
                owed[a] -= 1;
                games.push(ScheduledGame { date, home: teams[h].clone(), away: teams[a].clone() });
            }
            day += 1;
        }
        return Ok(games);
    }
    Err(Error::InvalidArgument("could not build a schedule".into()))
}

/// Plays `schedule` under `model`, with plausible basketball scores.
pub fn play<R: Rng + ?Sized>(
    config: &LeagueConfig,
    schedule: &[ScheduledGame],
    model: &StrengthModel,
    rng: &mut R,
) -> Result<SeasonLog> {
    let games = schedule
        .iter()
        .map(|g| {
            let home_wins = rng.gen::<f64>() < model.home_win_probability(&g.home, &g.away);
            let winner_pts = rng.gen_range(95..=130);
            let loser_pts = winner_pts - rng.gen_range(1..=25);
            let (hs, aws) = if home_wins { (winner_pts, loser_pts) } else { (loser_pts, winner_pts) };
            GameResult::from_scores(g.date, g.home.clone(), g.away.clone(), hs, aws)
        })
        .collect::<Result<Vec<_>>>()?;
    SeasonLog::new(config.clone(), games)
}

/// Random strengths, a schedule and its results from one seed.
pub fn season(config: &LeagueConfig, spread: f64, seed: u64) -> Result<(SeasonLog, StrengthModel)> {
    let mut rng = rng_from_seed(seed);
    let strengths = config.teams().iter().map(|t| (t.clone(), (rng.gen::<f64>() * 2.0 - 1.0) * spread)).collect();
    let model = StrengthModel::new(strengths, 0.1)?;
    let start = NaiveDate::from_ymd_opt(2024, 10, 22).unwrap();
    let games = schedule(config, start, &mut rng)?;
    Ok((play(config, &games, &model, &mut rng)?, model))
}
