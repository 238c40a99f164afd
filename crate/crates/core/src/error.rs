use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("laser wavelength {wavelength_nm} nm is on resonance with the {line} line")]
    OnResonance { line: &'static str, wavelength_nm: f64 },

    #[error("no zero crossing between {lo_nm} nm and {hi_nm} nm")]
    NoZeroCrossing { lo_nm: f64, hi_nm: f64 },

    #[error("no sign change in bracket [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("bisection did not converge: bracket [{lo}, {hi}] after {iterations} iterations")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },

    #[error("site is not a potential minimum (|grad| = {gradient:e})")]
    NotAMinimum { gradient: f64 },

    #[error("unstable site: dynamical matrix eigenvalue {eigenvalue:e} is negative")]
    UnstableSite { eigenvalue: f64 },

    #[error("no closed form for Green's integral M_{n}{l}")]
    UnsupportedIntegral { n: u32, l: u32 },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    EigenNoConvergence { iterations: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
