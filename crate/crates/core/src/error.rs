use thiserror::Error;

/// Error type shared by all modules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element is not invertible at working precision")]
    NonUnit,
    #[error("operands belong to different precision rings")]
    RingMismatch,
    #[error("series does not converge on the requested region: {0}")]
    Divergent(String),
    #[error("matrix is not symplectic up to similitude at working precision")]
    NotSymplectic,
    #[error("matrix fails the strict-Iwahori congruence")]
    NotStrictIwahori,
    #[error("pivot is not a unit; precision exhausted in factorization")]
    NonUnitPivot,
    #[error("pair does not satisfy the cell symmetry condition")]
    NotInT0,
    #[error("matrix is not a member of the acting semigroup")]
    NotInXi,
    #[error("dilation index out of range")]
    IndexOutOfRange,
    #[error("truncation orders do not match")]
    TruncationMismatch,
    #[error("norm radius below the weight's admissible bound")]
    RTooSmall,
    #[error("leading principal minor is not a unit")]
    NonUnitMinor,
    #[error("weight is not dominant algebraic")]
    NotDominant,
    #[error("weight is not adapted: some component has |kappa-1| >= 1")]
    NotAdapted,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("newton polygon break not visible at this truncation degree")]
    InsufficientDegree,
    #[error("(region, bound) pair is not a slope datum")]
    NotASlopeDatum,
    #[error("factorization lift did not converge")]
    LiftDiverged,
    #[error("projector rank does not match factor degree")]
    RankMismatch,
    #[error("invalid level: {0}")]
    BadLevel(String),
    #[error("invalid Hecke prime: {0}")]
    BadPrime(String),
    #[error("slope bound is not admissible for the control comparison: {0}")]
    HNotAdmissible(String),
    #[error("failed to lift a class to compact support")]
    LiftFailure,
    #[error("operators do not commute at working precision")]
    NonCommuting,
    #[error("generated span did not stabilize to a free module: {0}")]
    RankUnstable(String),
    #[error("no monogenic presentation found for the algebra")]
    PresentationNotFound,
    #[error("module is not free of rank one over the algebra")]
    NotRankOne,
    #[error("pairing is degenerate on the requested fiber; verdict withheld")]
    DegeneratePairing,
    #[error("invalid input: {0}")]
    Invalid(String),
}
