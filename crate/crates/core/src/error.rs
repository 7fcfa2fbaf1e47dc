use thiserror::Error;

/// Errors raised anywhere in the measurement chain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("degenerate fit: {0}")]
    FitDegenerate(String),
    #[error("insufficient record: {0}")]
    InsufficientRecord(String),
    #[error("SNR undefined: {0}")]
    UndefinedSnr(String),
    #[error("records not aligned: {0}")]
    Alignment(String),
    #[error("{0} is undefined for this loop")]
    MetricUndefined(&'static str),
    #[error("noise calibration failed: {0}")]
    Calibration(String),
    #[error("gain {0}: regression never reaches the 6 dB threshold")]
    NoCrossing(u8),
    #[error("gain {0}: lower current bound is not below the output ceiling bound")]
    EmptyRange(u8),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
