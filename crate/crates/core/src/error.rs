use thiserror::Error;

use crate::rat::ExtReal;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {0} is outside the function domain")]
    OutOfDomain(String),
    #[error("function jumps at {0}; a one-sided limit must be requested")]
    AmbiguousAtJump(String),
    #[error("domains do not intersect")]
    EmptyDomainIntersection,
    #[error("malformed piecewise function: {0}")]
    InvalidFunction(String),
    #[error("invalid step density: {0}")]
    InvalidDensity(String),
    #[error("interval [{0}, {1}] is not contained in [-1, 1]")]
    OutOfSupport(String, String),
    #[error("averaging width must be positive")]
    AlphaNonPositive,
    #[error("domain of width {width} is too narrow for alpha = {alpha}")]
    DomainTooNarrow { width: String, alpha: String },
    #[error("function must be continuous (continuity class >= 0)")]
    NotContinuous,
    #[error("piece of degree {degree} exceeds the supported maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("function is constant on [{start}, {end}]")]
    PlateauDetected { start: ExtReal, end: ExtReal },
    #[error("extreme values are not mutually distinct")]
    NonGeneric,
    #[error("invalid alpha grid: {0}")]
    InvalidAlphas(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
