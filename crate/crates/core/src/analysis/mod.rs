//! Isolated parts, multiplicities, Riesz decomposition, finite-rank
//! perturbations and spectral mapping.

mod decompose;
mod mapping;
mod perturb;

use serde::{Deserialize, Serialize};

use crate::calculus::{
    match_targets, riesz_projection_with, QuadratureOptions, ISOLATION_TOL, MATCH_TOL,
};
use crate::error::{Result, SpectralError};
use crate::linalg::{s_spectrum, QMatrix, SpectralSphere, SpectrumResult};
use crate::quat::Sphere;

pub use decompose::{
    projector_uniqueness_check, restrict, riesz_decompose, DecompositionReport, Restriction,
};
pub use mapping::{power_image, spectral_mapping_power, PowerMapReport};
pub use perturb::{
    deflate_sphere, deflation_check, min_modulus, min_modulus_perturbation, rank_one_shift,
    resolvent_neighborhood, sample_neighborhood, DeflationReport, NeighborhoodReport,
    PerturbationReport, RankOneReport,
};

/// Distance tolerance for "this sphere belongs to that spectrum" checks.
pub const MEMBERSHIP_TOL: f64 = 1e-6;

/// A cluster of spheres separated from the rest of the spectrum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolatedPart {
    pub spheres: Vec<SpectralSphere>,
    /// Slice-plane distance to the complementary spectrum; `None` when the
    /// part is the whole spectrum.
    pub gap: Option<f64>,
}

impl IsolatedPart {
    pub fn sphere_list(&self) -> Vec<Sphere> {
        self.spheres.iter().map(SpectralSphere::sphere).collect()
    }

    pub fn multiplicity(&self) -> usize {
        self.spheres.iter().map(|s| s.mult).sum()
    }

    /// The part consisting of the whole spectrum.
    pub fn whole(spec: &SpectrumResult) -> Self {
        IsolatedPart {
            spheres: spec.spheres.clone(),
            gap: None,
        }
    }

    /// The part made of the given spheres of `spec`, with its realized gap.
    pub fn of(spec: &SpectrumResult, spheres: &[Sphere]) -> Result<Self> {
        let idx = match_targets(spheres, spec, MATCH_TOL)?;
        let gap = crate::calculus::complement_gap(spec, &idx);
        Ok(IsolatedPart {
            spheres: idx.iter().map(|&k| spec.spheres[k]).collect(),
            gap: gap.is_finite().then_some(gap),
        })
    }
}

/// Single-linkage clusters of spheres in `(re, rho)`: spheres within
/// `gap_tol` of each other end up in the same part.
pub fn isolated_parts(spec: &SpectrumResult, gap_tol: f64) -> Vec<IsolatedPart> {
    assert!(gap_tol > 0.0, "gap tolerance must be positive");
    let n = spec.spheres.len();
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if label[start].is_some() {
            continue;
        }
        let id = clusters.len();
        label[start] = Some(id);
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(k) = stack.pop() {
            members.push(k);
            for j in 0..n {
                if label[j].is_none()
                    && spec.spheres[k].sphere().distance(&spec.spheres[j].sphere()) <= gap_tol
                {
                    label[j] = Some(id);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        clusters.push(members);
    }
    clusters
        .iter()
        .map(|members| {
            let gap = crate::calculus::complement_gap(spec, members);
            IsolatedPart {
                spheres: members.iter().map(|&k| spec.spheres[k]).collect(),
                gap: gap.is_finite().then_some(gap),
            }
        })
        .collect()
}

/// Algebraic multiplicity `dim R(P_[s])`, the rank of the Riesz projector.
pub fn multiplicity(a: &QMatrix, s: &Sphere) -> Result<usize> {
    let spec = s_spectrum(a)?;
    multiplicity_with(a, &spec, s)
}

fn multiplicity_with(a: &QMatrix, spec: &SpectrumResult, s: &Sphere) -> Result<usize> {
    Ok(riesz_projection_with(a, spec, &[*s], QuadratureOptions::default())?.rank)
}

/// Outcome of the eigenvalue-of-finite-type test for one sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteTypeReport {
    pub is_finite_type: bool,
    /// Rank of the Riesz projector, when the sphere is isolated.
    pub multiplicity: Option<usize>,
    /// Multiplicity read off the eigenvalues of the complex adjoint.
    pub chi_multiplicity: usize,
    /// Distance from the sphere to the rest of the spectrum.
    pub gap: Option<f64>,
    /// The restriction to the range of the projector has spectrum `[s]`
    /// and the complement does not contain `[s]`.
    pub split_verified: bool,
}

/// Finite-type check with the default isolation tolerance.
pub fn finite_type_check(a: &QMatrix, s: &Sphere) -> Result<FiniteTypeReport> {
    finite_type_check_with(a, s, ISOLATION_TOL)
}

/// `[s]` is of finite type iff it is isolated in the spectrum (spheres closer
/// than `isolation_tol·max(1, radius)` count as clustered) and its Riesz
/// projector has finite rank, which in finite dimension is automatic. The
/// invariant splitting is verified through [`riesz_decompose`].
pub fn finite_type_check_with(
    a: &QMatrix,
    s: &Sphere,
    isolation_tol: f64,
) -> Result<FiniteTypeReport> {
    let spec = s_spectrum(a)?;
    let scale = spec.radius().max(1.0);
    let not_finite = |chi_multiplicity, gap| FiniteTypeReport {
        is_finite_type: false,
        multiplicity: None,
        chi_multiplicity,
        gap,
        split_verified: false,
    };
    let Some(k) = spec.find(s, MATCH_TOL * scale) else {
        return Ok(not_finite(0, None));
    };
    let chi_multiplicity = spec.spheres[k].mult;
    let gap = crate::calculus::complement_gap(&spec, &[k]);
    let gap_opt = gap.is_finite().then_some(gap);
    if gap <= isolation_tol * scale {
        return Ok(not_finite(chi_multiplicity, gap_opt));
    }
    let part = IsolatedPart {
        spheres: vec![spec.spheres[k]],
        gap: gap_opt,
    };
    let report = match riesz_decompose(a, &part) {
        Ok(r) => r,
        Err(SpectralError::RankMismatch { .. }) => {
            return Ok(not_finite(chi_multiplicity, gap_opt))
        }
        Err(e) => return Err(e),
    };
    let m = report.projection.rank;
    let split_verified = report.holds()
        && report.spectra1.spheres.len() == 1
        && report.spectra1.spheres[0].mult == chi_multiplicity
        && !report
            .spectra2
            .contains(&spec.spheres[k].sphere(), MEMBERSHIP_TOL);
    Ok(FiniteTypeReport {
        is_finite_type: split_verified && m == chi_multiplicity,
        multiplicity: Some(m),
        chi_multiplicity,
        gap: gap_opt,
        split_verified,
    })
}

/// `(rank P_part, Σ rank P_[s])` over the spheres of the part.
pub fn multiplicity_sum_check(a: &QMatrix, part: &IsolatedPart) -> Result<(usize, usize)> {
    let spec = s_spectrum(a)?;
    let lhs =
        riesz_projection_with(a, &spec, &part.sphere_list(), QuadratureOptions::default())?.rank;
    let mut rhs = 0;
    for s in part.sphere_list() {
        rhs += multiplicity_with(a, &spec, &s)?;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn parts_of_two_spheres() {
        let spec = SpectrumResult::from_weighted(
            &[(Sphere::new(0.0, 1.0), 2), (Sphere::new(3.0, 0.0), 1)],
            1e-8,
        );
        let parts = isolated_parts(&spec, 1.0);
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert!((p.gap.unwrap() - 10f64.sqrt()).abs() < 1e-15);
        }
        let parts = isolated_parts(&spec, 4.0);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].spheres.len(), 2);
        assert_eq!(parts[0].gap, None);
    }

    #[test]
    fn single_sphere_part_has_no_gap() {
        let spec = SpectrumResult::from_weighted(&[(Sphere::new(1.0, 0.0), 1)], 1e-8);
        let parts = isolated_parts(&spec, 0.1);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].gap, None);
        assert_eq!(
            serde_json::to_value(&parts[0]).unwrap()["gap"],
            serde_json::Value::Null
        );
    }

    #[test]
    fn multiplicity_examples() {
        let a = QMatrix::from_diag(&[Quaternion::I, q(1.0, 0.0, 2.0, 0.0)]);
        assert_eq!(multiplicity(&a, &Sphere::new(0.0, 1.0)).unwrap(), 1);
        let a = QMatrix::from_diag(&[Quaternion::I, Quaternion::J]);
        assert_eq!(multiplicity(&a, &Sphere::new(0.0, 1.0)).unwrap(), 2);
        let a = QMatrix::from_diag(&[Quaternion::real(3.0)]);
        assert_eq!(multiplicity(&a, &Sphere::new(3.0, 0.0)).unwrap(), 1);
    }

    #[test]
    fn finite_type_examples() {
        let a = QMatrix::from_diag(&[Quaternion::I, Quaternion::real(3.0)]);
        let r = finite_type_check(&a, &Sphere::new(0.0, 1.0)).unwrap();
        assert!(r.is_finite_type);
        assert_eq!(r.multiplicity, Some(1));

        let a = QMatrix::from_diag(&[Quaternion::I, Quaternion::J]);
        let r = finite_type_check(&a, &Sphere::new(0.0, 1.0)).unwrap();
        assert!(r.is_finite_type);
        assert_eq!(r.multiplicity, Some(2));

        // Two spheres 1e-7 apart: distinct in the spectrum, not isolated.
        let a = QMatrix::from_diag(&[Quaternion::I, q(0.0, 0.0, 1.0 + 1e-7, 0.0)]);
        let spec = s_spectrum(&a).unwrap();
        assert_eq!(spec.spheres.len(), 2);
        let r = finite_type_check(&a, &Sphere::new(0.0, 1.0)).unwrap();
        assert!(!r.is_finite_type);
        assert_eq!(r.multiplicity, None);
    }

    #[test]
    fn multiplicity_sum_examples() {
        let a = QMatrix::from_diag(&[Quaternion::I, q(1.0, 0.0, 2.0, 0.0), Quaternion::real(3.0)]);
        let spec = s_spectrum(&a).unwrap();
        let part =
            IsolatedPart::of(&spec, &[Sphere::new(0.0, 1.0), Sphere::new(1.0, 2.0)]).unwrap();
        assert_eq!(multiplicity_sum_check(&a, &part).unwrap(), (2, 2));
        let single = IsolatedPart::of(&spec, &[Sphere::new(3.0, 0.0)]).unwrap();
        assert_eq!(multiplicity_sum_check(&a, &single).unwrap(), (1, 1));
        assert_eq!(
            multiplicity_sum_check(&a, &IsolatedPart::whole(&spec)).unwrap(),
            (3, 3)
        );
    }
}
