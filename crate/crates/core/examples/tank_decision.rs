//! Should a team try to win its next game? Walks one team through its season,
//! estimating the effect of a win on its final REWIND Score before each game,
//! then compares that with the value known after the fact.
//!
//!     cargo run --release --example tank_decision -- [TEAM] [DATA_DIR] [REPLICAS]

use std::path::PathBuf;

use rewind_lab::report;
use rewind_lab::season::{Cutoff, TeamId};
use rewind_lab::strategy::{classify_phase, counterfactual_game_value, expected_score_delta, MidSeasonState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let team = args.next();
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample"));
    let replicas: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(5_000);
    let (doc, log) = report::load_inputs(&dir.join("league.toml"), &dir.join("games.csv"))?;
    let team = match team {
        Some(code) => TeamId::new(code)?,
        None => report::eligibility(&doc, &log).first().cloned().ok_or("no lottery teams")?,
    };
    let bounds = log.config().target_bounds();

    println!("{team}: expected score change from winning each game (win - loss)");
    println!("{:<4} {:<11} {:>6} {:<13} {:>9} {:>7}", "game", "date", "record", "phase", "expected", "actual");
    let indices = log.team_game_indices(&team)?.to_vec();
    for (n, &j) in indices.iter().enumerate().step_by(4) {
        let state = MidSeasonState::as_of(&log, Cutoff::Games(j))?;
        let record = state.record_so_far(&team)?;
        let phase = classify_phase(record.losses, bounds);
        let delta = expected_score_delta(&state, &team, j, &doc.strength, replicas, n as u64)?;
        let actual = counterfactual_game_value(&log, &team, j)?;
        println!(
            "{:<4} {:<11} {:>6} {:<13} {:>9.3} {:>+7}",
            n + 1,
            log.games()[j].date.to_string(),
            record.to_string(),
            format!("{phase:?}"),
            delta.estimate,
            actual
        );
    }
    Ok(())
}
