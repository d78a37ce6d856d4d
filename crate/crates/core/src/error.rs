use thiserror::Error;

use crate::quat::Sphere;

/// Domain errors. Each message starts with the variant name and states
/// the precondition that failed.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpectralError {
    #[error(
        "SingularOperator: smallest singular value {sigma_min:e} is at or below tolerance {tol:e}"
    )]
    SingularOperator { sigma_min: f64, tol: f64 },

    #[error("OnSpectrum: Q_q(A) is singular at q = {q} (minimum modulus {mu:e})")]
    OnSpectrum { q: String, mu: f64 },

    #[error("EigenFailure: {0}")]
    EigenFailure(String),

    #[error("DependentInput: vector {index} lies in the right span of its predecessors (residual {residual:e})")]
    DependentInput { index: usize, residual: f64 },

    #[error("NotIsolated: sphere {sphere} has slice-plane gap {gap:e} to the rest of the spectrum, at or below {tol:e}")]
    NotIsolated { sphere: Sphere, gap: f64, tol: f64 },

    #[error(
        "NotInSpectrum: sphere {sphere} is not within {tol:e} of any computed spectral sphere"
    )]
    NotInSpectrum { sphere: Sphere, tol: f64 },

    #[error("RankMismatch: projector rank {rank} differs from summed multiplicity {expected}")]
    RankMismatch { rank: usize, expected: usize },

    #[error("SpectraNotDisjoint: restricted spectra are {distance:e} apart, at or below {tol:e}")]
    SpectraNotDisjoint { distance: f64, tol: f64 },

    #[error("NotAProjector: {0}")]
    NotAProjector(String),

    #[error("ZeroImage: A·x vanishes (norm {norm:e})")]
    ZeroImage { norm: f64 },

    #[error("DegenerateCase: x equals A·x, the rank-one construction needs x ≠ y")]
    DegenerateCase,

    #[error("DivergentSeed: |q| = {modulus} is not below 1")]
    DivergentSeed { modulus: f64 },

    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
