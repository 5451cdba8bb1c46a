use thiserror::Error;

/// Errors produced by octonion arithmetic, the eigen constructors and the
/// input/CLI layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("multiplication table invalid: {0}")]
    TableInvalid(String),

    #[error("non-finite coefficient at index {index}")]
    NonFinite { index: usize },

    #[error("division by an octonion of norm {norm:e}")]
    DivisionByZero { norm: f64 },

    #[error("expected a pure imaginary unit octonion (real part {real:e}, norm {norm:e})")]
    NotUnitImaginary { real: f64, norm: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("could not sample an orthonormal pair after {attempts} attempts")]
    DegenerateSample { attempts: usize },

    #[error("matrix is not in the non-real family: |p-m| = {p_minus_m:e}, |Re(a)| = {re_a:e}, |a| = {norm_a:e} (requires p = m, Re(a) = 0, a != 0)")]
    NotInA { p_minus_m: f64, re_a: f64, norm_a: f64 },

    #[error("vector is not a shared left eigenvector: ||x|^2-|y|^2| = {norm_defect:e}, |x.y| = {dot_defect:e}")]
    NotInV { norm_defect: f64, dot_defect: f64 },

    #[error("inadmissible eigenvalue: {constraint} violated by {defect:e}")]
    InadmissibleLambda { constraint: &'static str, defect: f64 },

    #[error("component {index} is zero")]
    ZeroComponent { index: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid eigenpair: {0}")]
    InvalidPair(String),

    #[error("associator obstruction |[r,x,y]| = {obstruction:e}; the problem is not quaternionic")]
    NotQuaternionic { obstruction: f64 },

    #[error("vector not normalized: v'v = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },

    #[error("unsupported document version {0:?}")]
    VersionUnsupported(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
