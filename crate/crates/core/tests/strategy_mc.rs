mod common;

use std::collections::BTreeMap;

use rewind_lab::metrics::rewind_outcome;
use rewind_lab::season::{Cutoff, TargetBounds, TeamId};
use rewind_lab::strategy::{
    classify_phase, counterfactual_game_value, ex_post_regret, expected_score_delta, simulate_completions,
    MidSeasonState, Phase, ScheduledGame, StrengthModel,
};
use rewind_lab::{synthetic, Error};

const SIGMAS: f64 = 3.0;

fn small_state(seed: u64, unplayed: usize) -> (MidSeasonState, StrengthModel) {
    let cfg = synthetic::league(&[2, 3], 6, 2).unwrap();
    let (log, model) = synthetic::season(&cfg, 1.2, seed).unwrap();
    let n = log.games().len();
    let open: Vec<usize> = (n - unplayed..n).collect();
    (MidSeasonState::with_unplayed(&log, &open).unwrap(), model)
}

fn exact_scores(
    state: &MidSeasonState,
    model: &StrengthModel,
    forced: Option<(usize, TeamId)>,
) -> Vec<(f64, BTreeMap<TeamId, u32>)> {
    let k = state.config().reference_seed();
    common::enumerate(state, model, forced)
        .worlds
        .iter()
        .map(|(p, log)| {
            (*p, state.config().teams().iter().map(|t| (t.clone(), common::rewind(log, t, k).score)).collect())
        })
        .collect()
}

#[test]
fn simulation_matches_enumeration() {
    let (state, model) = small_state(4, 9);
    let replicas = 40_000;
    let sim = simulate_completions(&state, &model, replicas, 1).unwrap();
    let n = replicas as f64;
    let k = state.config().reference_seed();
    let worlds = common::enumerate(&state, &model, None).worlds;
    assert!((worlds.iter().map(|w| w.0).sum::<f64>() - 1.0).abs() < 1e-9);
    for conf in state.config().conference_names() {
        let mut exact: BTreeMap<u32, f64> = BTreeMap::new();
        for (p, log) in &worlds {
            *exact.entry(common::target(log, conf, k)).or_default() += p;
        }
        let got = sim.target_probabilities(conf).unwrap();
        for (target, p) in &exact {
            let q = got.get(target).copied().unwrap_or(0.0);
            assert!((q - p).abs() <= SIGMAS * (p * (1.0 - p) / n).sqrt() + 1e-12, "{conf} {target}: {q} vs {p}");
        }
        assert!(got.keys().all(|t| exact.contains_key(t)));
    }
    for team in state.config().teams() {
        let (m1, m2) = worlds.iter().fold((0.0, 0.0), |(a, b), (p, log)| {
            let s = f64::from(common::rewind(log, team, k).score);
            (a + p * s, b + p * s * s)
        });
        let est = sim.expected_score(team).unwrap();
        assert!((est.mean - m1).abs() <= SIGMAS * ((m2 - m1 * m1) / n).sqrt() + 1e-12, "{team}: {} vs {m1}", est.mean);
    }
}

#[test]
fn score_delta_matches_enumeration() {
    let (state, model) = small_state(8, 10);
    let cfg = state.config().clone();
    let mut checked = 0;
    for team in cfg.teams() {
        let Some(slot) = state.next_game_for(team).unwrap() else { continue };
        let g = &state.schedule()[slot];
        let opponent = if &g.home == team { g.away.clone() } else { g.home.clone() };
        let won = exact_scores(&state, &model, Some((slot, team.clone())));
        let lost = exact_scores(&state, &model, Some((slot, opponent)));
        // Same free-game assignment in the same position: the paired difference.
        let (mut mean, mut sq) = (0.0, 0.0);
        for ((p, w), (_, l)) in won.iter().zip(&lost) {
            let d = f64::from(w[team]) - f64::from(l[team]);
            mean += p * d;
            sq += p * d * d;
        }
        let replicas = 20_000;
        let est = expected_score_delta(&state, team, slot, &model, replicas, 3).unwrap();
        let sigma = ((sq - mean * mean).max(0.0) / replicas as f64).sqrt();
        assert!((est.estimate - mean).abs() <= SIGMAS * sigma + 1e-12, "{team}: {} vs {mean}", est.estimate);
        assert!((est.expected_if_won - est.expected_if_lost - est.estimate).abs() < 1e-9);
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn single_open_game_delta_is_the_counterfactual() {
    let log = common::random_season(21);
    let model = StrengthModel::even();
    for team in log.config().teams().iter().take(3) {
        for &j in log.team_game_indices(team).unwrap().iter().step_by(3) {
            let state = MidSeasonState::with_unplayed(&log, &[j]).unwrap();
            let d = expected_score_delta(&state, team, j, &model, 50, 0).unwrap();
            assert_eq!(d.estimate, counterfactual_game_value(&log, team, j).unwrap() as f64);
            assert_eq!(d.std_error, 0.0);
        }
    }
}

#[test]
fn fixed_seeds_reproduce_bit_for_bit() {
    let (state, model) = small_state(5, 12);
    let a = simulate_completions(&state, &model, 5000, 42).unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = single.install(|| simulate_completions(&state, &model, 5000, 42).unwrap());
    assert_eq!(a, b);
    assert_ne!(a, simulate_completions(&state, &model, 5000, 43).unwrap());
    let team = state.config().teams()[0].clone();
    let slot = state.next_game_for(&team).unwrap().unwrap();
    let x = expected_score_delta(&state, &team, slot, &model, 3000, 9).unwrap();
    let y = single.install(|| expected_score_delta(&state, &team, slot, &model, 3000, 9).unwrap());
    assert_eq!(x, y);
}

#[test]
fn standard_error_shrinks_like_root_n() {
    let (state, model) = small_state(6, 12);
    let conf = state.config().conference_names().next().unwrap().to_string();
    let small = simulate_completions(&state, &model, 2_000, 1).unwrap().mean_target(&conf).unwrap();
    let large = simulate_completions(&state, &model, 32_000, 1).unwrap().mean_target(&conf).unwrap();
    assert!(small.std_error > 0.0);
    let ratio = small.std_error / large.std_error;
    assert!((ratio - 4.0).abs() < 0.6, "ratio {ratio}");
}

#[test]
fn no_open_games_means_no_uncertainty() {
    let log = common::random_season(9);
    let state = MidSeasonState::as_of(&log, Cutoff::End).unwrap();
    assert_eq!(state.remaining_count(), 0);
    let dist = simulate_completions(&state, &StrengthModel::even(), 100, 0).unwrap();
    for team in log.config().teams() {
        let o = rewind_outcome(&log, team).unwrap();
        assert_eq!(dist.score_probabilities(team).unwrap(), BTreeMap::from([(o.score, 1.0)]));
        assert_eq!(dist.expected_score(team).unwrap().std_error, 0.0);
    }
}

#[test]
fn next_game_must_be_the_teams_next_unplayed_game() {
    let (state, model) = small_state(2, 8);
    let team = state.config().teams()[0].clone();
    let slot = state.next_game_for(&team).unwrap().unwrap();
    let later = state.remaining().map(|(i, _)| i).find(|&i| i != slot).unwrap();
    assert!(matches!(expected_score_delta(&state, &team, later, &model, 10, 0), Err(Error::InvalidArgument(_))));
    assert!(expected_score_delta(&state, &team, slot, &model, 0, 0).is_err());
    assert!(simulate_completions(&state, &model, 0, 0).is_err());
}

#[test]
fn states_must_cover_the_whole_schedule() {
    let log = common::random_season(12);
    let half = log.prefix(Cutoff::Games(log.games().len() / 2));
    assert!(MidSeasonState::new(&half, Vec::new()).is_err());
    let rest: Vec<ScheduledGame> = log.games()[log.games().len() / 2..]
        .iter()
        .map(|g| ScheduledGame { date: g.date, home: g.home.clone(), away: g.away.clone() })
        .collect();
    let state = MidSeasonState::new(&half, rest).unwrap();
    let winners: Vec<TeamId> = log.games()[log.games().len() / 2..].iter().map(|g| g.winner.clone()).collect();
    let done = state.complete_with(&winners).unwrap();
    for team in log.config().teams() {
        assert_eq!(rewind_outcome(&done, team).unwrap().score, rewind_outcome(&log, team).unwrap().score);
    }
}

#[test]
fn regret_counts_intended_losses_after_the_pivot() {
    for s in 0..20 {
        let log = common::random_season(s);
        for team in log.config().teams() {
            let o = common::rewind(&log, team, log.config().reference_seed());
            let losses: Vec<usize> = log
                .team_game_indices(team)
                .unwrap()
                .iter()
                .copied()
                .filter(|&i| &log.games()[i].winner != team)
                .collect();
            let want = o.pivot.map_or(0, |p| losses.iter().filter(|&&i| i > p).count());
            assert_eq!(ex_post_regret(&log, team, &losses).unwrap(), want);
            if let Some(&won) = log.team_game_indices(team).unwrap().iter().find(|&&i| &log.games()[i].winner == team) {
                assert!(ex_post_regret(&log, team, &[won]).is_err());
            }
        }
    }
}

#[test]
fn phases_follow_the_historical_bounds() {
    let b = TargetBounds::new(29, 42).unwrap();
    assert_eq!(classify_phase(0, b), Phase::DefiniteLose);
    assert_eq!(classify_phase(28, b), Phase::DefiniteLose);
    assert_eq!(classify_phase(29, b), Phase::Uncertain);
    assert_eq!(classify_phase(41, b), Phase::Uncertain);
    assert_eq!(classify_phase(42, b), Phase::DefiniteWin);
    assert!(TargetBounds::new(5, 4).is_err());
}
