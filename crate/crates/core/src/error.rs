use thiserror::Error;

use crate::quat::RingTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error in token {token}, column {column}: {message}")]
    Parse {
        /// 1-based index of the offending element in a set literal.
        token: usize,
        /// 1-based character column inside that element.
        column: usize,
        message: String,
    },

    #[error("coordinate of {0} exceeds 2^30 in absolute value")]
    CoordinateRange(String),

    #[error("{elem} is not an element of {ring}")]
    NotInRing { elem: String, ring: RingTag },

    #[error("{0} has no integral minimal polynomial")]
    NonIntegral(String),

    #[error("polynomial degree {0} exceeds the cap of {cap}", cap = crate::qpoly::MAX_DEGREE)]
    DegreeCap(usize),

    #[error("Γ = {gamma} exceeds the brute-force cap {cap}")]
    GammaCap { gamma: i64, cap: i64 },

    #[error("empty set")]
    EmptySet,

    #[error("the set spans more than one minimal polynomial class")]
    MixedClasses,

    #[error("the set lies inside the integers")]
    CentralSet,

    #[error("the set is not reduced")]
    NotReduced,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Errors that stem from bounded-integer limits rather than bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::Overflow | Error::DegreeCap(_) | Error::GammaCap { .. }
        )
    }
}
