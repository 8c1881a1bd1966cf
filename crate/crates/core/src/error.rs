use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no gaps defined: spectrum has {0} level(s), need at least 2")]
    NoGaps(usize),
    #[error("spectrum too short: {got} level(s), need at least {need}")]
    TooFewLevels { need: usize, got: usize },
    #[error("spectrum length mismatch: {first} vs {second}")]
    LengthMismatch { first: usize, second: usize },
    #[error("conjecture formula outside domain: {0}")]
    ConjectureDomain(String),
    #[error("invalid trial plan: {0}")]
    InvalidPlan(String),
    #[error("empty grid")]
    EmptyGrid,
    #[error("unknown figure id `{0}` (expected fig3..fig8)")]
    UnknownFigure(String),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
