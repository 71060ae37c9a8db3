//! Validates a game-log CSV, writes a snapshot and reads it back.
//!
//!     cargo run --example ingest_snapshot -- [DATA_DIR] [SNAPSHOT_PATH]

use std::path::PathBuf;

use rewind_lab::ingest::{
    parse_game_log_with_warnings, read_config_document, read_season_snapshot, write_season_snapshot,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("season.snap"));

    let doc = read_config_document(dir.join("league.toml"))?;
    let text = std::fs::read_to_string(dir.join("games.csv"))?;
    let (log, warnings) = parse_game_log_with_warnings(&text, &doc.league)?;
    for w in &warnings {
        eprintln!("line {}: {}", w.line, w.message);
    }
    println!(
        "{} games from {} to {}, complete: {}",
        log.games().len(),
        log.first_date().map_or("-".into(), |d| d.to_string()),
        log.last_date().map_or("-".into(), |d| d.to_string()),
        log.is_complete()
    );
    for s in log.shortfalls() {
        println!("  {s}");
    }

    write_season_snapshot(&log, &out)?;
    let back = read_season_snapshot(&out)?;
    println!("snapshot {} ({} bytes), identical: {}", out.display(), std::fs::metadata(&out)?.len(), back == log);
    Ok(())
}
