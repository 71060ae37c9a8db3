//! Draft-lottery orderings for a finished season under three plans, and the
//! tools to study a tanking team's choices under the Ex Post Gold Plan.
//!
//! * [`season`]: league configuration, game logs, records and seedings.
//! * [`ingest`]: CSV game logs, TOML configs, versioned snapshots.
//! * [`metrics`]: current-plan losses, Gold Plan and REWIND metrics.
//! * [`lottery`]: rankings, the hybrid draw and the randomized reference seed.
//! * [`strategy`]: phases, counterfactual flips, Monte Carlo season completion.
//! * [`report`]: tables behind the `rewind-lab` binary.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod error;
pub mod ingest;
pub mod lottery;
pub mod metrics;
pub mod report;
pub mod season;
pub mod strategy;
pub mod synthetic;

pub use error::{Error, Result};
pub use lottery::{hybrid_draft_order, rewind_ranking, LotteryRanking, OddsTable};
pub use metrics::{
    compare_plans, gold_outcome, rewind_outcome, rewind_target, GoldOutcome, PlanComparison, RewindOutcome,
};
pub use season::{
    conference_seeding, nth_loss_event, record_as_of, Cutoff, GameResult, LeagueConfig, Record, SeasonLog, TeamId,
};
