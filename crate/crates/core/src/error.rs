use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("half-angle {0} is outside (0, pi/2]")]
    InvalidHalfAngle(f64),

    #[error("half-angle {0} is too small to fit reliably (below 1e-8)")]
    DegenerateHalfAngle(f64),

    #[error("parameter {name} = {value} is outside [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("unsupported case: degree {degree}, smoothness {smoothness}")]
    UnsupportedCase { degree: usize, smoothness: usize },

    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("{method} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("solution {params:?} lies outside the admissible region {region}")]
    NotAdmissible {
        params: Vec<f64>,
        region: &'static str,
    },

    #[error("no admissible solution found; Newton endpoints: {endpoints:?}")]
    NoAdmissibleSolution { endpoints: Vec<Vec<f64>> },

    #[error("invalid zero pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
