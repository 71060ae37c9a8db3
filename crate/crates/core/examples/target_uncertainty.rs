//! How uncertain the REWIND Target is at different points of a season.
//! Each cutoff freezes the results so far and simulates the rest.
//!
//!     cargo run --release --example target_uncertainty -- [DATA_DIR] [REPLICAS]

use std::path::PathBuf;

use rewind_lab::metrics::rewind_targets;
use rewind_lab::report;
use rewind_lab::season::Cutoff;
use rewind_lab::strategy::{simulate_completions, MidSeasonState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/sample"));
    let replicas: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20_000);
    let (doc, log) = report::load_inputs(&dir.join("league.toml"), &dir.join("games.csv"))?;
    let realized = rewind_targets(&log, log.config().reference_seed())?;

    let dates = log.dates();
    println!("{:<12} {:<6} {:>8} {:>6} {:>10} {:>9}", "as of", "conf", "mean", "sd.e", "90% band", "realized");
    for frac in [0.25, 0.5, 0.75, 0.9] {
        let as_of = dates[((dates.len() - 1) as f64 * frac) as usize];
        let state = MidSeasonState::as_of(&log, Cutoff::Date(as_of))?;
        let dist = simulate_completions(&state, &doc.strength, replicas, 1)?;
        for target in &realized {
            let c = &target.conference;
            let mean = dist.mean_target(c)?;
            let band = format!("{}-{}", dist.target_quantile(c, 0.05)?, dist.target_quantile(c, 0.95)?);
            println!(
                "{:<12} {:<6} {:>8.2} {:>6.3} {:>10} {:>9}",
                as_of.to_string(),
                c,
                mean.mean,
                mean.std_error,
                band,
                target.target
            );
        }
    }
    Ok(())
}
