use std::fmt;

use crate::season::TeamId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A team that has not yet played its full schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortfall {
    pub team: TeamId,
    pub played: u32,
    pub expected: u32,
}

impl fmt::Display for Shortfall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} played {} of {}", self.team, self.played, self.expected)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown team `{0}`")]
    UnknownTeam(String),

    #[error("unknown conference `{0}`")]
    UnknownConference(String),

    #[error("invalid team code {0:?}")]
    InvalidTeamCode(String),

    #[error("invalid league config: {0}")]
    Config(String),

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid season log: {0}")]
    InvalidLog(String),

    #[error("season incomplete: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))]
    Incomplete(Vec<Shortfall>),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
