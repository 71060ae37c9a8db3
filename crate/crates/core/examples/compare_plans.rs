//! One team under the current, Gold and Ex Post Gold plans.
//!
//!     cargo run --example compare_plans -- [TEAM] [DATA_DIR]

use std::path::PathBuf;

use rewind_lab::report::{self, Format};
use rewind_lab::TeamId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let team = args.next();
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample"));
    let (doc, log) = report::load_inputs(&dir.join("league.toml"), &dir.join("games.csv"))?;
    let team = match team {
        Some(code) => TeamId::new(code)?,
        // Default to the team with the worst record among the lottery teams.
        None => rewind_lab::lottery::current_order(&log, &report::eligibility(&doc, &log), &doc.draft_tiebreak)?
            .first()
            .map(|(t, _)| t.clone())
            .ok_or("no lottery teams")?,
    };

    let r = report::compare_report(&log, &team)?;
    print!("{}", report::compare_table(&r).render(Format::Text));
    let c = &r.comparison;
    println!("\nwins after elimination: {} under Gold, {} under Ex Post Gold", c.gold.score, c.rewind.score);
    Ok(())
}
