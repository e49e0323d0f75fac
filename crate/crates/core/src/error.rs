use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("singular: B(x,y) is not invertible")]
    Singular,
    #[error("skew generic norm is not a perfect square")]
    SqrtFail,
    #[error("limit vanishes")]
    Vanishes,
    #[error("limit diverges (remaining pole order {0})")]
    Diverges(i32),
    #[error("pole at parameter value {0}")]
    Pole(String),
    #[error("unbound parameter {0}")]
    Unbound(String),
    #[error("calibration found no consistent convention")]
    CalibrationFail,
    #[error("calibration is ambiguous ({0} solutions)")]
    CalibrationAmbiguous(usize),
    #[error("domain is not calibrated")]
    Uncalibrated,
    #[error("residue order too small: a retained term diverges")]
    OrderTooSmall,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
