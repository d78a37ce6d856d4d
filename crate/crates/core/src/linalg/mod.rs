//! Quaternionic matrices, the complex adjoint embedding and S-spectra.

pub mod eigen;
mod matrix;
mod spectrum;

pub(crate) use matrix::solve_unchecked;
pub use matrix::{
    apply_qq, apply_qq_real, chi, gram_schmidt, null_vector, qrank, qsolve, qsolve_tol,
    range_basis, range_basis_scaled, singular_values, split_ij, unchi, ComplexMatrix, QMatrix,
    QVector, RectMatrix, RANK_TOL, SOLVE_TOL,
};
pub use spectrum::{
    chi_eigenvalues, hausdorff, s_spectrum, s_spectrum_tol, spectral_margin, SpectralSphere,
    SpectrumResult, CLUSTER_TOL,
};

/// Minimum modulus `μ(A) = inf_{‖x‖=1} ‖Ax‖`, the smallest singular value
/// of `chi(A)`.
pub fn min_modulus(a: &QMatrix) -> f64 {
    singular_values(a).last().copied().unwrap_or(0.0)
}
