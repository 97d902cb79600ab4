use std::fmt::Display;

use serde::Serialize;
use skeletonkit::drinfeld::DrinfeldError;
use skeletonkit::groups::{GogError, GogJsonError};
use skeletonkit::semigraph::{CochainError, RankError, SemiGraphError};
use skeletonkit::skeleton::{SkeletonError, SkeletonJsonError};
use skeletonkit::wild::WildError;

/// Domain errors exit with 1, malformed input with 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub code: String,
    pub message: String,
    #[serde(skip)]
    pub malformed: bool,
}

impl CliError {
    pub fn domain(code: &str, message: impl Display) -> Self {
        CliError { code: code.into(), message: message.to_string(), malformed: false }
    }

    pub fn malformed(code: &str, message: impl Display) -> Self {
        CliError { code: code.into(), message: message.to_string(), malformed: true }
    }

    pub fn json(err: serde_json::Error) -> Self {
        CliError::malformed("malformed_json", err)
    }

    pub fn exit_code(&self) -> i32 {
        if self.malformed {
            2
        } else {
            1
        }
    }
}

macro_rules! domain_errors {
    ($($ty:ty),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::domain(e.code(), &e)
            }
        })*
    };
}

domain_errors!(WildError, SkeletonError, SemiGraphError, CochainError, RankError, GogError, DrinfeldError);

impl From<SkeletonJsonError> for CliError {
    fn from(e: SkeletonJsonError) -> Self {
        match e {
            SkeletonJsonError::Json(j) => CliError::json(j),
            SkeletonJsonError::Skeleton(s) => s.into(),
        }
    }
}

impl From<GogJsonError> for CliError {
    fn from(e: GogJsonError) -> Self {
        match e {
            GogJsonError::Json(j) => CliError::json(j),
            GogJsonError::Gog(g) => g.into(),
        }
    }
}
