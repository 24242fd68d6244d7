use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("nome parameters must satisfy 0 < p < 1 and 0 < q < 1 (got p = {p}, q = {q})")]
    InvalidModulus { p: f64, q: f64 },

    #[error("theta function has an essential singularity at z = 0")]
    ZeroArgument,

    #[error("evaluation point is too close to a pole: {factor} (distance {distance:.3e})")]
    PoleProximity { factor: String, distance: f64 },

    #[error("cannot add difference operators with shifts {left} and {right}")]
    ShiftMismatch { left: i32, right: i32 },

    #[error("series does not terminate: no trailing parameter equals q^(-2m) for m <= {max_m}")]
    NonTerminating { max_m: u32 },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("too many pole resamples in check `{check}`: {resampled} of {drawn} draws")]
    ResampleBudget {
        check: String,
        resampled: usize,
        drawn: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
