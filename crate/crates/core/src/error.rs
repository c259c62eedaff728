use thiserror::Error;

/// Errors are typed so callers can tell "this input is outside the setting"
/// (CLI exit code 2) apart from ordinary verification failure (exit code 1,
/// reported through the report structs, not through this enum).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable contexts differ ({left} vs {right})")]
    VarMismatch { left: String, right: String },
    #[error("invalid variable context: {0}")]
    BadVars(String),
    #[error("zero where a nonzero element is required")]
    ZeroElement,
    #[error("constant factor `{0}` where a nonconstant polynomial is required")]
    ConstantFactor(String),
    #[error("cannot verify irreducibility of `{0}`; only single variables and linear polynomials are checked automatically, use the asserting constructor for anything else")]
    UnverifiedIrreducible(String),
    #[error("resultant undefined: both inputs are constant in `{0}`")]
    ResultantBothConstant(String),
    #[error("element lies in the prime, so its divisor there is undefined")]
    ElementInPrime,
    #[error("grade mismatch: {left} vs {right}")]
    GradeMismatch { left: usize, right: usize },
    #[error("unsupported setting: {0}")]
    Unsupported(String),
    #[error("generator `{0}` is not a monomial after localization; use the plane or pid setting")]
    NonMonomialLocalization(String),
    #[error("cannot certify rational intersection points: {0}")]
    IrrationalIntersection(String),
    #[error("determinant is zero; the cokernel length identity needs an injective matrix")]
    ZeroDeterminant,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("residue undefined: factor `{0}` vanishes identically modulo the prime")]
    ResidueVanishes(String),
}

pub type Result<T> = std::result::Result<T, Error>;
