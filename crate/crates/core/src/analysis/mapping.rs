use nalgebra::Complex;
use serde::Serialize;

use crate::error::{Result, SpectralError};
use crate::linalg::{hausdorff, s_spectrum, QMatrix, SpectrumResult, CLUSTER_TOL};
use crate::quat::Sphere;

/// Spectra of `Aⁿ` and of the sphere-power image of `σ_S(A)`.
#[derive(Clone, Debug, Serialize)]
pub struct PowerMapReport {
    pub power: u32,
    pub lhs: SpectrumResult,
    pub rhs: SpectrumResult,
    pub hausdorff: f64,
    pub multiplicity_match: bool,
}

/// Maps every sphere `[re + I·rho]` to `[(re + I·rho)ⁿ]`, merging
/// collisions and adding their multiplicities.
pub fn power_image(spec: &SpectrumResult, n: u32) -> SpectrumResult {
    let items: Vec<(Sphere, usize)> = spec
        .spheres
        .iter()
        .map(|s| {
            let z = Complex::new(s.re, s.rho).powu(n);
            (Sphere::new(z.re, z.im), s.mult)
        })
        .collect();
    let scale = spec.radius().max(1.0).powi(n as i32);
    SpectrumResult::from_weighted(&items, CLUSTER_TOL * scale)
}

pub fn spectral_mapping_power(a: &QMatrix, n: u32) -> Result<PowerMapReport> {
    if n == 0 {
        return Err(SpectralError::InvalidArgument(
            "power must be at least 1".into(),
        ));
    }
    let lhs = s_spectrum(&a.pow(n))?;
    let rhs = power_image(&s_spectrum(a)?, n);
    let hausdorff = hausdorff(&lhs.sphere_list(), &rhs.sphere_list());
    let tol = 1e-6 * lhs.radius().max(1.0);
    let multiplicity_match = lhs.total_multiplicity() == rhs.total_multiplicity()
        && rhs
            .spheres
            .iter()
            .all(|s| lhs.multiplicity_of(&s.sphere(), tol) == s.mult);
    Ok(PowerMapReport {
        power: n,
        lhs,
        rhs,
        hausdorff,
        multiplicity_match,
    })
}
