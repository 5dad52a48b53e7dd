use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is ±I, every point of CP^1 is fixed")]
    WholeSphereFixed,
    #[error("both matrices are ±I")]
    DegeneratePair,
    #[error("translation length undefined for non-loxodromic element ({0})")]
    ZeroLength(String),
    #[error("cannot eliminate: {0}")]
    InvalidElimination(String),
    #[error("Laurent polynomial is not invariant under m -> 1/m")]
    NotSymmetric,
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("character polynomial algorithms disagree: {0}")]
    AlgorithmDisagreement(String),
    #[error("dihedral census mismatch: expected {expected}, found {found}")]
    CensusMismatch { expected: usize, found: usize },
    #[error("fiber count unstable: {0}")]
    UnstableFiber(String),
    #[error("bending element does not centralize the edge group")]
    InvalidBend,
    #[error("structural verdict contradicts sampling: {0}")]
    TheoryCheck(String),
    #[error("construction check failed: {0}")]
    ConstructionBug(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Stable kebab-case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::WholeSphereFixed => "whole-sphere-fixed",
            Error::DegeneratePair => "degenerate-pair",
            Error::ZeroLength(_) => "zero-length",
            Error::InvalidElimination(_) => "invalid-elimination",
            Error::NotSymmetric => "not-symmetric",
            Error::InconsistentInput(_) => "inconsistent-input",
            Error::AlgorithmDisagreement(_) => "algorithm-disagreement",
            Error::CensusMismatch { .. } => "census-mismatch",
            Error::UnstableFiber(_) => "unstable-fiber",
            Error::InvalidBend => "invalid-bend",
            Error::TheoryCheck(_) => "theory-check",
            Error::ConstructionBug(_) => "construction-bug",
            Error::Numerical(_) => "numerical",
        }
    }

    /// Whether the error signals bad user input rather than an internal
    /// consistency failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::WholeSphereFixed
                | Error::DegeneratePair
                | Error::ZeroLength(_)
                | Error::InvalidElimination(_)
                | Error::NotSymmetric
                | Error::InconsistentInput(_)
                | Error::InvalidBend
        )
    }
}
