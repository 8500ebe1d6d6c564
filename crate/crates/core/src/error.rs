//! Crate-wide error type.
//!
//! Every refusal the workbench can produce is a variant here; operations
//! never panic on malformed input.  `InternalFault` is reserved for
//! situations that are mathematically impossible on validated input — if
//! one surfaces it means either the input lied about its preconditions or
//! there is a bug, and the message says which theorem was falsified.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow in {op}: {detail}")]
    Overflow { op: &'static str, detail: String },

    #[error("carrier size {size} exceeds the exhaustive-check ceiling {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("duplicate carrier element {0}")]
    DuplicateName(u64),

    #[error("element {0} is not in the carrier")]
    UnknownName(u64),

    #[error("point {0} is not in the point set")]
    UnknownPoint(u64),

    #[error("operator code {code} is invalid over the carrier: {detail}")]
    InvalidOperatorCode { code: u64, detail: String },

    #[error("base index {0} out of range")]
    BadBaseIndex(usize),

    #[error("{0} is not a φ-ideal (not closed under the operator)")]
    NotIdeal(String),

    #[error("{0} is not down-directed")]
    NotDownDirected(String),

    #[error("empty {0} violates the separation preconditions")]
    EmptySeparand(&'static str),

    #[error("ideal and filter are not disjoint (common element {0})")]
    NotDisjoint(u64),

    #[error("source c-poset is not distributive: {0}")]
    NotDistributive(String),

    #[error("map is not total on the source carrier (missing {0})")]
    MapNotTotal(u64),

    #[error("map sends {from} to {to}, which is outside the target carrier")]
    MapOutsideCarrier { from: u64, to: u64 },

    #[error("map is not a bijection: {0}")]
    NotBijective(String),

    #[error("point map is not spectral: {0}")]
    NotSpectral(String),

    #[error("map is not strict: {0}")]
    NotStrict(String),

    #[error("base is not injectively indexed: β({i}) = β({j})")]
    BaseNotInjective { i: usize, j: usize },

    #[error("space is not almost sober or the input is invalid: {0}")]
    NotAlmostSober(String),

    #[error("semilattice table is invalid: {0}")]
    BadTable(String),

    #[error("invalid input: {0}")]
    Parse(String),

    #[error("internal consistency fault (this falsifies {law} on the given input): {detail}")]
    InternalFault { law: &'static str, detail: String },
}

impl Error {
    /// Exit code the command-line tool maps this error to: 2 when the
    /// input could not be understood as its claimed kind (syntax, schema,
    /// dangling indices, size refusals), 1 when a well-formed input
    /// failed a semantic check or precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::DuplicateName(_)
            | Error::UnknownName(_)
            | Error::UnknownPoint(_)
            | Error::InvalidOperatorCode { .. }
            | Error::BadBaseIndex(_)
            | Error::BadTable(_)
            | Error::Overflow { .. }
            | Error::SizeLimit { .. } => 2,
            _ => 1,
        }
    }
}
