use thiserror::Error;

/// Errors raised by the exact (combinatorial) side of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("value must be strictly positive, got {0}")]
    NotPositive(String),
    #[error("unit mismatch: cannot combine {left} with {right}")]
    UnitMismatch { left: String, right: String },
    #[error("cannot decide the order of {left} and {right} at the available precision of pi")]
    Undecidable { left: String, right: String },
    #[error("sequence exhausted after {available} terms (requested index {requested})")]
    Exhausted { available: usize, requested: usize },
    #[error("sequence terms are not integer multiples of a common unit; cannot filter by divisibility")]
    NonIntegralBase,
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("cannot parse exact quantity {0:?}")]
    Parse(String),
    #[error("arithmetic overflow")]
    Overflow,
}

/// Errors raised by the chain-complex models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("orbit sets lie in different homology classes ({alpha} vs {beta} mod {modulus})")]
    HomologyMismatch { alpha: u64, beta: u64, modulus: u64 },
    #[error("grading is only defined on the nullhomologous class, got class {class} mod {modulus}")]
    GradingUndefined { class: u64, modulus: u64 },
    #[error("the U map is not defined on the empty orbit set")]
    UndefinedOnEmpty,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Errors raised by the numerical moment-map pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("point lies outside the domain |x|^2 < C (|x|^2 = {norm_sq}, C = {c})")]
    OutsideDomain { norm_sq: f64, c: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("level h = {h} is below the minimum {h_min} for j = {j}; no radial roots")]
    NoRoot { h: f64, h_min: f64, j: f64 },
    #[error("j = 0 is excluded from sample grids")]
    ZeroMomentum,
    #[error("quadrature did not reach tolerance {tol:e} (estimated error {err:e})")]
    QuadratureFailed { tol: f64, err: f64 },
    #[error("bracketing failed: {0}")]
    Bracket(String),
    #[error("curve geometry: {0}")]
    Geometry(String),
    #[error("numerical instability: {0}")]
    Instability(String),
    #[error("curve I/O: {0}")]
    Io(String),
}
