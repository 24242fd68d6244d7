//! Numerics for the elliptic U(2) dynamical quantum group: theta functions,
//! the dynamical R-matrix, elliptic hypergeometric series, the pairing
//! with the dual algebra of difference operators, and a randomised
//! verification harness.

pub mod config;
pub mod diffop;
pub mod dynrep;
pub mod ehs;
pub mod elliptic;
pub mod error;
pub mod pairing;
pub mod rmatrix;
pub mod sampling;
pub mod verify;

pub use config::CampaignConfig;
pub use diffop::DiffOp;
pub use elliptic::ModulusParams;
pub use error::{Error, Result};
pub use pairing::matrix::MatrixElementIndex;
pub use pairing::token::{Kind, Token};
pub use verify::{run_check, run_suite, CheckRecord, Report, Status, Suite};
