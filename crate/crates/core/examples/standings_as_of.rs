//! Conference standings on a given date, plus each team's record.
//!
//!     cargo run --example standings_as_of -- [YYYY-MM-DD] [DATA_DIR]

use std::path::PathBuf;

use chrono::NaiveDate;
use rewind_lab::ingest::{read_config_document, read_game_log};
use rewind_lab::season::{standings, Cutoff};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let cutoff = match args.next() {
        Some(d) => Cutoff::Date(d.parse::<NaiveDate>()?),
        None => Cutoff::End,
    };
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample"));
    let doc = read_config_document(dir.join("league.toml"))?;
    let log = read_game_log(dir.join("games.csv"), &doc.league)?;

    let snap = standings(&log, cutoff);
    for (conference, seeding) in &snap.seedings {
        println!("{conference}");
        for e in &seeding.entries {
            let tie = if e.tied { "  (tied)" } else { "" };
            println!("  {:>2}. {:<5} {:>7}{tie}", e.seed, e.team, e.record.to_string());
        }
    }
    Ok(())
}
