//! Runs the hybrid draft lottery on the REWIND ranking: four weighted draws,
//! then the rest by losses. Prints one draft and the pick distribution.
//!
//!     cargo run --release --example hybrid_lottery -- [DATA_DIR] [SEED] [DRAWS]

use std::path::PathBuf;

use rewind_lab::lottery::{draft_frequencies, hybrid_draft_order, OddsTable};
use rewind_lab::metrics::rewind_outcomes;
use rewind_lab::{report, rewind_ranking};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample"));
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let draws: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100_000);
    let (doc, log) = report::load_inputs(&dir.join("league.toml"), &dir.join("games.csv"))?;

    let eligible = report::eligibility(&doc, &log);
    let ranking = rewind_ranking(&rewind_outcomes(&log)?, &eligible)?;
    let odds = match doc.lottery_odds {
        Some(o) => o,
        None => OddsTable::uniform(ranking.len())?,
    };

    let order = hybrid_draft_order(&ranking, &odds, seed)?;
    println!("draft (seed {seed}):");
    for (pick, team) in order.picks.iter().enumerate() {
        let how = if pick < order.drawn { "drawn" } else { "by losses" };
        println!("  {:>2}. {team:<5} {how}", pick + 1);
    }

    let counts = draft_frequencies(&ranking, &odds, seed, draws)?;
    println!("\nover {draws} draws:");
    println!("  {:<4} {:<5} {:>6} {:>8} {:>8}", "rank", "team", "losses", "P(#1)", "P(top4)");
    for (e, row) in ranking.entries.iter().zip(&counts) {
        let n = draws as f64;
        println!(
            "  {:<4} {:<5} {:>6} {:>8.4} {:>8.4}",
            e.rank,
            e.team,
            e.total_losses,
            row[0] as f64 / n,
            row[..4.min(row.len())].iter().sum::<u64>() as f64 / n
        );
    }
    Ok(())
}
