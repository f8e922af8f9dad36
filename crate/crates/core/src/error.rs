use thiserror::Error;

use crate::vbase::BaseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown object or morphism: {0}")]
    NotFound(String),
    #[error("expected a unique {what}, found {count}")]
    NotUnique { what: String, count: usize },
    #[error("opfibration has not been verified: {0}")]
    Unverified(String),
    #[error("incomplete lifts table: missing lift of {arrow} at {object}")]
    IncompleteLifts { object: String, arrow: String },
    #[error("functor is not opfibered: {0}")]
    NotOpfibered(String),
    #[error("transformation does not lie over the base: {0}")]
    NotOverBase(String),
    #[error("base is not the free V-category on the given category: {0}")]
    BaseNotFree(String),
    #[error("law check failed: {0}")]
    LawFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}
