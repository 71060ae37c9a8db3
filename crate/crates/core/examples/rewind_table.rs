//! The REWIND lottery table for a season, with ties, targets and rank changes.
//!
//!     cargo run --example rewind_table -- [DATA_DIR] [REFERENCE_SEED]

use std::path::PathBuf;

use rewind_lab::report::{self, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample"));
    let (doc, log) = report::load_inputs(&dir.join("league.toml"), &dir.join("games.csv"))?;
    let seed = match args.next() {
        Some(s) => s.parse()?,
        None => log.config().reference_seed(),
    };

    let eligible = report::eligibility(&doc, &log);
    let r = report::rewind_report(&log, &eligible, &doc.draft_tiebreak, seed)?;
    print!("{}", report::rewind_table(&r).render(Format::Text));

    let movers: Vec<String> = r
        .rows
        .iter()
        .filter(|row| row.rank_change != 0)
        .map(|row| format!("{} {:+}", row.team, row.rank_change))
        .collect();
    println!("\nmoved: {}", movers.join(", "));
    Ok(())
}
