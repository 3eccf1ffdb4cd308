//! Error type shared by the whole pipeline.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("document '{0}' has no text")]
    EmptyDocument(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("corpus is degenerate: {0}")]
    DegenerateCorpus(String),

    #[error("series '{series}' has {len} values but delta {delta} needs at least {delta}")]
    SeriesTooShort {
        series: String,
        len: usize,
        delta: usize,
    },

    #[error("coefficient of variation undefined: series mean is zero")]
    ZeroMeanSeries,

    #[error("network has no chapter labels, chapter coloring impossible")]
    MissingChapters,

    #[error("label sets mismatch: {0}")]
    LabelMismatch(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed resource file: {0}")]
    MalformedResource(String),
}
