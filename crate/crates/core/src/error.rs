use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid coin parameters: {0}")]
    InvalidParams(String),

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not block-circulant (deviation {deviation:e})")]
    NotBlockCirculant { deviation: f64 },

    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("value {0} is not on the unit circle")]
    NotUnitModulus(f64),

    #[error("period methods disagree: brute force {brute:?}, spectral {spectral:?}")]
    MethodDisagreement {
        brute: Option<u64>,
        spectral: Option<u64>,
    },

    #[error("argument {name} = {value} outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("rho = {rho} out of domain: discriminant {discriminant:e} is negative")]
    OutOfDomain { rho: f64, discriminant: f64 },

    #[error("rho = {rho} out of domain: closed-form roots leave residual {residual:e}, non-trivial solutions need 1/3 <= rho <= 1/2")]
    SpuriousRoots { rho: f64, residual: f64 },

    #[error("rho = {rho}: root {root} leaves [0, 1]")]
    RootOutOfRange { rho: f64, root: f64 },

    #[error("degenerate interval: t = t0 = {0}")]
    DegenerateInterval(usize),

    #[error("invalid position {position} for a {k}-cycle")]
    InvalidPosition { position: usize, k: usize },

    #[error("invalid message {message} for a {k}-cycle")]
    InvalidMessage { message: usize, k: usize },

    #[error("state is not a position eigenstate (largest site probability {max_probability})")]
    NotPositionEigenstate { max_probability: f64 },

    #[error("invalid protocol configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}
