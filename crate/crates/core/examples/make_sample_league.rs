//! Writes a synthetic 20-team league to `data/sample` (or the given directory):
//! `league.toml` with strengths and lottery odds, and a complete `games.csv`.
//!
//!     cargo run --example make_sample_league -- [DIR] [SEED]

use std::fmt::Write as _;
use std::path::PathBuf;

use rewind_lab::ingest::game_log_csv;
use rewind_lab::lottery::default_eligibility;
use rewind_lab::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample"));
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2024);

    let mut config = synthetic::league(&[10, 10], 40, 6)?;
    config = config.with_target_bounds(rewind_lab::season::TargetBounds::new(19, 26)?)?;
    let (log, model) = synthetic::season(&config, 1.2, seed)?;
    let lottery = default_eligibility(&log, 14);

    let quoted =
        |teams: &mut dyn Iterator<Item = String>| teams.map(|t| format!("\"{t}\"")).collect::<Vec<_>>().join(", ");
    let mut toml = String::new();
    writeln!(toml, "season_games = {}", config.season_games())?;
    writeln!(toml, "reference_seed = {}", config.reference_seed())?;
    let b = config.target_bounds();
    writeln!(toml, "historical_target_bounds = [{}, {}]", b.min, b.max)?;
    writeln!(toml, "lottery_teams = [{}]", quoted(&mut lottery.iter().map(|t| t.to_string())))?;
    let odds: Vec<String> = (0..lottery.len()).map(|i| format!("{:.1}", 25.0 - 3.0 * i as f64)).collect();
    writeln!(toml, "lottery_odds = [{}]", odds.join(", "))?;
    writeln!(toml, "home_advantage = {}", model.home_advantage)?;
    writeln!(toml, "\n[conferences]")?;
    for (name, teams) in config.conferences() {
        writeln!(toml, "{name} = [{}]", quoted(&mut teams.iter().map(|t| t.to_string())))?;
    }
    writeln!(toml, "\n[strengths]")?;
    for (team, s) in &model.strengths {
        writeln!(toml, "{team} = {s:.3}")?;
    }

    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("league.toml"), toml)?;
    std::fs::write(dir.join("games.csv"), game_log_csv(&log)?)?;
    println!("wrote {} games for {} teams to {}", log.games().len(), config.teams().len(), dir.display());
    Ok(())
}
