//! Plumbing around the library: JSON code configs, the fixed-weight channel,
//! experiment and verification runners, and the command-line front end.

pub mod channel;
pub mod cli;
pub mod config;
pub mod experiment;

use thiserror::Error;

use crate::agcode::CodeError;
use crate::curves::CurveError;
use crate::decoder::DecodeError;
use crate::galois::FieldError;
use crate::secantgeom::GeomError;

pub use channel::{ChannelModel, RNG_ALGORITHM};
pub use config::{CodeConfigFile, CurveSpec, PointsSpec};
pub use experiment::{simulate, verify, ExperimentSpec, SimulationReport, VerifyReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Config(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Code(CodeError),
    #[error(transparent)]
    Geom(GeomError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

impl From<CodeError> for HarnessError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::TooLargeToExhaust { .. } => HarnessError::BudgetExceeded(e.to_string()),
            other => HarnessError::Code(other),
        }
    }
}

impl From<GeomError> for HarnessError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::TooLargeToExhaust { .. } => HarnessError::BudgetExceeded(e.to_string()),
            other => HarnessError::Geom(other),
        }
    }
}
