use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zeta has a simple pole at s = 1")]
    PoleAtOne,

    #[error("gamma has a pole at the non-positive integer {0}")]
    PoleAtNonPositiveInteger(i64),

    #[error("b(s) = zeta(s) zeta(1 - s) is singular at s = {0}")]
    PoleAtEndpoint(Complex64),

    #[error("a zeta factor was evaluated at its pole (argument {0})")]
    PoleEncountered(Complex64),

    #[error("non-finite input: {0}")]
    NonFinite(String),

    /// The value is returned anyway; the caller decides whether to use it.
    #[error("error estimate {estimate:e} exceeds target tolerance {target:e}")]
    PrecisionLoss {
        value: Complex64,
        estimate: f64,
        target: f64,
    },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("scan step too coarse: refinement near t = {ordinate} left residual {residual:e}")]
    StepTooCoarse { ordinate: f64, residual: f64 },

    #[error("io error: {0}")]
    Io(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("exponent real part {found} differs from sigma = {expected}")]
    RealPartMismatch { expected: f64, found: f64 },

    #[error("quadrature did not converge: successive refinements differ by {0:e}")]
    NonConvergence(f64),

    #[error("state is not an eigenvector: {0}")]
    NotAnEigenvector(String),

    #[error("Casimir paths disagree: composition {composed}, closed form {closed_form}")]
    CasimirMismatch {
        composed: Complex64,
        closed_form: Complex64,
    },

    #[error("cannot compose an empty operator list")]
    EmptyComposition,

    #[error("operators carry different omega values ({0} vs {1})")]
    MixedOmega(f64, f64),

    #[error("PT action needs a parity-tagged state")]
    ParityUntagged,

    #[error("omega = {omega} is not a nontrivial zero ordinate (|zeta(1/2 + i omega)| = {residual:.3e})")]
    NotAZero { omega: f64, residual: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{name} = {x}")))
    }
}

pub(crate) fn ensure_finite_c(name: &str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{name} = {z}")))
    }
}
