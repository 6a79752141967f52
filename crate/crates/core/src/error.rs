//! Shared error type. Each variant carries the name used by the CLI when
//! rendering domain errors.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no roots to count")]
    ZeroPolynomial,
    #[error("an interval endpoint is a root of the polynomial")]
    EndpointIsRoot,
    #[error("rows are linearly dependent over Q")]
    RankDeficient,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial degree must be at least 2")]
    DegreeTooSmall,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("irreducibility undecided for degree {0}: no witness prime below 100 and no bounded factor found; refusing to guess")]
    IrreducibilityUndecided(usize),
    #[error("interval does not isolate exactly one real root (it contains {0})")]
    NotIsolating(usize),
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different number fields or flow models")]
    FieldMismatch,
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error("continued fraction did not close a period within {0} steps")]
    StepLimitExceeded(usize),
    #[error("unit group of this field needs {0} supplied generator(s)")]
    GeneratorsRequired(usize),
    #[error("expected {required} supplied generator(s), got {supplied}")]
    WrongGeneratorCount { required: usize, supplied: usize },
    #[error("element is not an algebraic unit")]
    NotAUnit,
    #[error("element is a torsion unit (\u{b1}1) and cannot generate the infinite part")]
    TorsionOnly,
    #[error("frequency coordinate matrix is singular over Q; the flow is not quasiperiodic")]
    NotQuasiperiodic,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no multiplier exponent found up to the bound {0}; supplied unit data is likely wrong")]
    IndexBoundExceeded(u64),
    #[error("element does not stabilize the frequency lattice in both directions")]
    NotAMultiplier,
    #[error("matrix does not map the frequency vector to a scalar multiple of itself")]
    NotASymmetry,
    #[error("matrix determinant is not \u{b1}1")]
    NotUnimodular,
    #[error("the unique rational solution has non-integer entries or zero determinant")]
    NotSemiconjugate,
    #[error("flows are not conjugate by a GL(n,Z) matrix")]
    NotConjugate,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-facing name for CLI rendering and tests.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::EndpointIsRoot => "EndpointIsRoot",
            Error::RankDeficient => "RankDeficient",
            Error::NotMonic => "NotMonic",
            Error::DegreeTooSmall => "DegreeTooSmall",
            Error::Reducible(_) => "Reducible",
            Error::IrreducibilityUndecided(_) => "IrreducibilityUndecided",
            Error::NotIsolating(_) => "NotIsolating",
            Error::NoRealRoot => "NoRealRoot",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::NotSquarefree(_) => "NotSquarefree",
            Error::OutOfRange(_) => "OutOfRange",
            Error::StepLimitExceeded(_) => "StepLimitExceeded",
            Error::GeneratorsRequired(_) => "GeneratorsRequired",
            Error::WrongGeneratorCount { .. } => "WrongGeneratorCount",
            Error::NotAUnit => "NotAUnit",
            Error::TorsionOnly => "TorsionOnly",
            Error::NotQuasiperiodic => "NotQuasiperiodic",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::IndexBoundExceeded(_) => "IndexBoundExceeded",
            Error::NotAMultiplier => "NotAMultiplier",
            Error::NotASymmetry => "NotASymmetry",
            Error::NotUnimodular => "NotUnimodular",
            Error::NotSemiconjugate => "NotSemiconjugate",
            Error::NotConjugate => "NotConjugate",
            Error::Internal(_) => "Internal",
        }
    }
}
