//! S-spectra, Riesz projections and the slice functional calculus for
//! right linear operators on `H^n`.

// `!(x > tol)` is used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod calculus;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod quat;
pub mod random;
pub mod shift;
pub mod verify;

pub use error::{Result, SpectralError};
pub use linalg::{QMatrix, QVector, SpectrumResult};
pub use quat::{canonical, qmul, sphere_point, ImaginaryUnit, Quaternion, Sphere};
