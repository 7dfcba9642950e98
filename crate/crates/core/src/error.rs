//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree {0} out of range (1..={max})", max = crate::ff::MAX_EXTENSION_DEGREE)]
    BadExtensionDegree(usize),

    #[error("field order {q} exceeds cap {cap}")]
    FieldCapExceeded { q: u64, cap: u64 },

    #[error("{0} is not an odd prime power")]
    BadFieldOrder(u64),

    #[error("characteristic 2 is not supported for symmetric pairs")]
    EvenCharacteristic,

    #[error("division by zero in GF({0})")]
    ZeroInverse(u64),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix dimension {0} out of range (1..={max})", max = crate::matgrp::MAX_DIM)]
    BadDimension(usize),

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("group enumeration needs {needed} steps, cap is {cap}")]
    GroupCapExceeded { needed: u64, cap: u64 },

    #[error("{count} double cosets exceed cap {cap}")]
    CosetCapExceeded { count: usize, cap: usize },

    #[error("predicate does not select a subgroup (identity missing or set not closed)")]
    NotASubgroup,

    #[error("symplectic involution needs even dimension, got {0}")]
    OddSymplecticDimension(usize),

    #[error("unknown pair id {0:?}")]
    UnknownPair(String),

    #[error("{r} conjugacy classes exceed cap {cap}")]
    TooManyClasses { r: usize, cap: usize },

    #[error("no prime = 1 (mod {exponent}) and > {min} found below {bound}")]
    NoSplittingPrime { exponent: u64, min: u64, bound: u64 },

    #[error("multiplicity lift {value} is not below l/2 = {half}")]
    LiftAmbiguity { value: u64, half: u64 },

    #[error("rank threshold k must exceed 2, got {0}")]
    BadRankThreshold(u64),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("bad configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotPrime(_)
            | Error::BadExtensionDegree(_)
            | Error::BadFieldOrder(_)
            | Error::EvenCharacteristic
            | Error::BadDimension(_)
            | Error::OddSymplecticDimension(_)
            | Error::UnknownPair(_)
            | Error::BadRankThreshold(_)
            | Error::Config(_) => 2,
            Error::FieldCapExceeded { .. }
            | Error::GroupCapExceeded { .. }
            | Error::CosetCapExceeded { .. }
            | Error::TooManyClasses { .. } => 3,
            _ => 5,
        }
    }
}
