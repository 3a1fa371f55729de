use thiserror::Error;

use crate::name::NameError;
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("unknown morphism `{0}`")]
    NameNotFound(String),
    #[error("`{0}` is not an identity")]
    NotAnIdentity(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateName(String),
    #[error(transparent)]
    BadName(#[from] NameError),
    #[error("capacity exceeded: {what} has {size} morphisms, limit is {limit}")]
    Capacity {
        what: String,
        size: usize,
        limit: usize,
    },
    #[error("{0}")]
    Mismatch(String),
    #[error("invalid category:\n{0}")]
    Invalid(ValidationReport),
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;
