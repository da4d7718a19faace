//! The exit-code contract. Every nonzero exit prints a machine-readable
//! error object before terminating.

use serde::Serialize;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INDEX_RANGE: i32 = 3;
pub const EXIT_SEARCH_SPACE: i32 = 4;
pub const EXIT_SCALAR_INCONSISTENCY: i32 = 5;
pub const EXIT_DEPTH_INSUFFICIENT: i32 = 6;
pub const EXIT_RESIDUAL: i32 = 7;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: i32,
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        CliError { code, kind, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, "parse_error", message)
    }

    pub fn index_range(message: impl Into<String>) -> Self {
        Self::new(EXIT_INDEX_RANGE, "index_out_of_range", message)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ErrorObject {
            error: ErrorBody { code: self.code, kind: self.kind, message: &self.message },
        })
        .expect("error objects serialize")
    }
}

impl From<kg2_core::dilation::DilationError> for CliError {
    fn from(e: kg2_core::dilation::DilationError) -> Self {
        match &e {
            kg2_core::dilation::DilationError::ScalarInconsistency { .. } => {
                Self::new(EXIT_SCALAR_INCONSISTENCY, "scalar_inconsistency", e.to_string())
            }
            kg2_core::dilation::DilationError::InvalidSeed(_) => Self::parse(e.to_string()),
        }
    }
}

impl From<kg2_core::wandering::WanderingError> for CliError {
    fn from(e: kg2_core::wandering::WanderingError) -> Self {
        match &e {
            kg2_core::wandering::WanderingError::DepthInsufficient { .. }
            | kg2_core::wandering::WanderingError::FrontierVertex(_) => {
                Self::new(EXIT_DEPTH_INSUFFICIENT, "depth_insufficient", e.to_string())
            }
            kg2_core::wandering::WanderingError::Inconclusive(_) => {
                Self::new(EXIT_DEPTH_INSUFFICIENT, "inconclusive", e.to_string())
            }
        }
    }
}

impl From<kg2_core::periodicity::PeriodError> for CliError {
    fn from(e: kg2_core::periodicity::PeriodError) -> Self {
        Self::new(EXIT_SEARCH_SPACE, "search_space_too_large", e.to_string())
    }
}

impl From<kg2_core::fock::FockError> for CliError {
    fn from(e: kg2_core::fock::FockError) -> Self {
        match &e {
            kg2_core::fock::FockError::CapExceeded { .. } => {
                Self::new(EXIT_SEARCH_SPACE, "cap_exceeded", e.to_string())
            }
            kg2_core::fock::FockError::ThetaNotIdentity => Self::parse(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::parse(format!("io: {e}"))
    }
}
