//! Brute-force reference implementations. They read games straight off the
//! log and recompute everything from scratch, sharing no code paths with the
//! library beyond its data types.
#![allow(dead_code)]

use std::collections::BTreeMap;

use chrono::{Days, NaiveDate};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rewind_lab::season::{LeagueConfig, SeasonLog, TeamId};
use rewind_lab::strategy::{MidSeasonState, StrengthModel};
use rewind_lab::synthetic;

pub fn tally(log: &SeasonLog, upto: impl Fn(usize, NaiveDate) -> bool) -> BTreeMap<TeamId, (u32, u32)> {
    let mut t: BTreeMap<TeamId, (u32, u32)> = log.config().teams().iter().map(|x| (x.clone(), (0, 0))).collect();
    for (i, g) in log.games().iter().enumerate() {
        if !upto(i, g.date) {
            continue;
        }
        t.get_mut(&g.winner).unwrap().0 += 1;
        let loser = if g.winner == g.home { &g.away } else { &g.home };
        t.get_mut(loser).unwrap().1 += 1;
    }
    t
}

/// Conference members ordered by wins desc, then code.
pub fn seeding(log: &SeasonLog, conference: &str, records: &BTreeMap<TeamId, (u32, u32)>) -> Vec<(TeamId, u32, u32)> {
    let mut rows: Vec<(TeamId, u32, u32)> = log
        .config()
        .conferences()
        .find(|(c, _)| *c == conference)
        .unwrap()
        .1
        .iter()
        .map(|t| (t.clone(), records[t].0, records[t].1))
        .collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    rows
}

pub fn target(log: &SeasonLog, conference: &str, seed: usize) -> u32 {
    let fin = tally(log, |_, _| true);
    seeding(log, conference, &fin)[seed - 1].2 + 1
}

pub fn conference_of(log: &SeasonLog, team: &TeamId) -> String {
    log.config().conferences().find(|(_, ts)| ts.contains(team)).map(|(c, _)| c.to_string()).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewindOracle {
    pub target: u32,
    /// Log index of the target-th loss.
    pub pivot: Option<usize>,
    pub date: Option<NaiveDate>,
    pub rewind_wins: u32,
    pub total_wins: u32,
    pub total_losses: u32,
    pub score: u32,
}

pub fn rewind(log: &SeasonLog, team: &TeamId, seed: usize) -> RewindOracle {
    let target = target(log, &conference_of(log, team), seed);
    let mine: Vec<(usize, bool)> = log
        .games()
        .iter()
        .enumerate()
        .filter(|(_, g)| &g.home == team || &g.away == team)
        .map(|(i, g)| (i, &g.winner == team))
        .collect();
    let mut losses = 0;
    let mut pivot = None;
    for &(i, won) in &mine {
        if !won {
            losses += 1;
            if losses == target {
                pivot = Some(i);
                break;
            }
        }
    }
    let total_wins = mine.iter().filter(|(_, w)| *w).count() as u32;
    let total_losses = mine.len() as u32 - total_wins;
    // Score by direct count: wins strictly after the pivot game.
    let score = match pivot {
        Some(p) => mine.iter().filter(|(i, w)| *w && *i > p).count() as u32,
        None => 0,
    };
    let rewind_wins = match pivot {
        Some(p) => mine.iter().filter(|(i, w)| *w && *i <= p).count() as u32,
        None => total_wins,
    };
    RewindOracle {
        target,
        pivot,
        date: pivot.map(|p| log.games()[p].date),
        rewind_wins,
        total_wins,
        total_losses,
        score,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldOracle {
    pub date: Option<NaiveDate>,
    pub wins_at: u32,
    pub score: u32,
}

/// Walks every calendar day of the season and re-tallies from scratch.
pub fn gold(log: &SeasonLog, team: &TeamId) -> GoldOracle {
    let conf = conference_of(log, team);
    let k = log.config().reference_seed();
    let g = log.config().season_games();
    let fin = tally(log, |_, _| true);
    let (Some(first), Some(last)) = (log.first_date(), log.last_date()) else {
        return GoldOracle { date: None, wins_at: fin[team].0, score: 0 };
    };
    let mut d = first;
    while d <= last {
        let rec = tally(log, |_, date| date <= d);
        let wk = seeding(log, &conf, &rec)[k - 1].1;
        if rec[team].1 + wk > g {
            let wins_at = rec[team].0;
            return GoldOracle { date: Some(d), wins_at, score: fin[team].0 - wins_at };
        }
        d = d + Days::new(1);
    }
    GoldOracle { date: None, wins_at: fin[team].0, score: 0 }
}

/// Stable sort on (-score, -losses) of the candidates listed in code order.
pub fn ranking(mut rows: Vec<(TeamId, u32, u32)>) -> Vec<TeamId> {
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    rows.sort_by_key(|r| (std::cmp::Reverse(r.1), std::cmp::Reverse(r.2)));
    rows.into_iter().map(|r| r.0).collect()
}

pub fn logistic_home(model: &StrengthModel, home: &TeamId, away: &TeamId) -> f64 {
    let s = |t: &TeamId| model.strengths.get(t).copied().unwrap_or(0.0);
    1.0 / (1.0 + (-(s(home) + model.home_advantage - s(away))).exp())
}

/// Exact distribution over completions of a state: every assignment of the
/// unplayed games, weighted by its probability.
pub struct Enumeration {
    /// (probability, completed log)
    pub worlds: Vec<(f64, SeasonLog)>,
}

pub fn enumerate(state: &MidSeasonState, model: &StrengthModel, forced: Option<(usize, TeamId)>) -> Enumeration {
    let open: Vec<(usize, TeamId, TeamId)> =
        state.remaining().map(|(i, g)| (i, g.home.clone(), g.away.clone())).collect();
    let free: Vec<&(usize, TeamId, TeamId)> =
        open.iter().filter(|(i, _, _)| Some(*i) != forced.as_ref().map(|f| f.0)).collect();
    assert!(free.len() <= 20, "too many games to enumerate");
    let mut worlds = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1u64 << free.len()) {
        let mut p = 1.0;
        let mut winners: BTreeMap<usize, TeamId> = BTreeMap::new();
        for (b, (i, h, a)) in free.iter().enumerate() {
            let ph = logistic_home(model, h, a);
            if mask >> b & 1 == 1 {
                p *= ph;
                winners.insert(*i, h.clone());
            } else {
                p *= 1.0 - ph;
                winners.insert(*i, a.clone());
            }
        }
        if let Some((i, w)) = &forced {
            winners.insert(*i, w.clone());
        }
        let ordered: Vec<TeamId> = open.iter().map(|(i, _, _)| winners[i].clone()).collect();
        worlds.push((p, state.complete_with(&ordered).unwrap()));
    }
    Enumeration { worlds }
}

/// A random complete season drawn from the acceptance corpus ranges:
/// 4-10 teams, 6-30 games, 1-2 conferences. Some seasons squeeze two game
/// days into one date.
pub fn random_season(seed: u64) -> SeasonLog {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let teams: usize = rng.gen_range(4..=10);
    let sizes = if teams >= 4 && rng.gen_bool(0.5) {
        let east = rng.gen_range(2..=teams - 2);
        vec![east, teams - east]
    } else {
        vec![teams]
    };
    let mut games: u32 = rng.gen_range(6..=30);
    if (teams as u32 * games) % 2 == 1 {
        games += if games < 30 { 1 } else { -1i32 as u32 };
    }
    let smallest = *sizes.iter().min().unwrap();
    let k = rng.gen_range(1..=smallest);
    let cfg = synthetic::league(&sizes, games, k).unwrap();
    let spread = rng.gen_range(0.0..2.0);
    let (log, _) = synthetic::season(&cfg, spread, rng.gen()).unwrap();
    if rng.gen_bool(0.3) {
        squeeze_dates(&log)
    } else {
        log
    }
}

/// Maps day n to day n / 2, so a team can play twice on one date.
pub fn squeeze_dates(log: &SeasonLog) -> SeasonLog {
    let start = log.first_date().unwrap();
    let games = log
        .games()
        .iter()
        .map(|g| {
            let mut g = g.clone();
            let offset = (g.date - start).num_days() as u64 / 2;
            g.date = start + Days::new(offset);
            g
        })
        .collect();
    SeasonLog::new(log.config().clone(), games).unwrap()
}

pub fn config_of(log: &SeasonLog) -> &LeagueConfig {
    log.config()
}
