use std::fmt;

use serde::Serialize;

use crate::solution::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("size {n} exceeds the limit {limit} for {what}")]
    Size {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("not a solution: {}", .0.summary())]
    Rejected(Box<VerificationReport>),

    #[error("{0}")]
    Discrepancy(Box<Discrepancy>),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn as_discrepancy(&self) -> Option<&Discrepancy> {
        match self {
            Error::Discrepancy(d) => Some(d),
            _ => None,
        }
    }
}

impl From<Discrepancy> for Error {
    fn from(d: Discrepancy) -> Self {
        Error::Discrepancy(Box::new(d))
    }
}

/// A structural claim that failed on concrete data.
///
/// These are values rather than panics: the library is used as an
/// empirical checker, so a failed claim is an outcome to report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    /// Short citation of the claim, e.g. `"Lemma infotorsioncover (4)"`.
    pub claim: String,
    pub detail: String,
    /// Points (or lengths) at which the claim fails.
    pub witness: Vec<usize>,
}

impl Discrepancy {
    pub fn new(claim: impl Into<String>, detail: impl Into<String>, witness: Vec<usize>) -> Self {
        Discrepancy {
            claim: claim.into(),
            detail: detail.into(),
            witness,
        }
    }
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "claim `{}` fails: {} (at {:?})",
            self.claim, self.detail, self.witness
        )
    }
}
