use thiserror::Error;

use crate::set_model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid set system: {}", join(.0))]
    InvalidSystem(Vec<Violation>),

    #[error("unknown set {0:?}")]
    UnknownSet(String),

    #[error("no item has any interest")]
    EmptyTable,

    #[error("item id {0:?} appears more than once")]
    DuplicateItem(String),

    #[error("item {0:?} lists the same interest twice")]
    DuplicateLabel(String),

    #[error("arrangement does not match the system: {0}")]
    DimensionMismatch(String),

    #[error("{zones} zones exceeds the exact-search threshold of {threshold}; use the heuristic")]
    ThresholdExceeded { zones: usize, threshold: usize },

    #[error("set index {index} out of range for {count} sets")]
    InvalidSet { index: usize, count: usize },

    #[error("{sets} sets need more colors than the {palette}-color palette has")]
    PaletteExhausted { sets: usize, palette: usize },

    #[error("{0}")]
    Topology(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable code used on the wire.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse-error",
            Error::InvalidSystem(_)
            | Error::UnknownSet(_)
            | Error::EmptyTable
            | Error::DuplicateItem(_)
            | Error::DuplicateLabel(_) => "invalid-system",
            Error::DimensionMismatch(_) | Error::Topology(_) => "dimension-mismatch",
            Error::ThresholdExceeded { .. } => "threshold-exceeded",
            Error::InvalidSet { .. } => "invalid-index",
            Error::PaletteExhausted { .. } => "palette-exhausted",
            Error::Io(_) => "io-error",
        }
    }
}

fn join(report: &[Violation]) -> String {
    report
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
