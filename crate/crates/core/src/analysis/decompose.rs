use serde::Serialize;

use super::{IsolatedPart, MEMBERSHIP_TOL};
use crate::calculus::{riesz_projection_with, ProjectionResult, QuadratureOptions, ISOLATION_TOL};
use crate::error::{Result, SpectralError};
use crate::linalg::{
    hausdorff, range_basis_scaled, s_spectrum, QMatrix, QVector, RectMatrix, SpectrumResult,
    CLUSTER_TOL,
};
use crate::quat::Sphere;

const BASIS_TOL: f64 = 1e-8;
const INVARIANCE_TOL: f64 = 1e-7;
const SPLIT_TOL: f64 = 1e-6;
const PROJECTOR_TOL: f64 = 1e-8;

/// `A` split along a projector `P`: orthonormal bases of `R(P)` and `N(P)`
/// and the matrices of `A` on them.
#[derive(Clone, Debug, Serialize)]
pub struct Restriction {
    pub basis_range: Vec<QVector>,
    pub basis_null: Vec<QVector>,
    #[serde(rename = "T1")]
    pub t1: QMatrix,
    #[serde(rename = "T2")]
    pub t2: QMatrix,
    pub spectra1: SpectrumResult,
    pub spectra2: SpectrumResult,
    /// Largest `‖Pv − v‖` over the range basis.
    pub range_residual: f64,
    /// Largest `‖Pv‖` over the null basis.
    pub null_residual: f64,
    /// Largest `‖(I−P)Av‖` over the range basis and `‖PAv‖` over the null basis.
    pub invariance_residual: f64,
}

fn spectrum_of(t: &QMatrix) -> Result<SpectrumResult> {
    if t.dim() == 0 {
        return Ok(SpectrumResult {
            spheres: Vec::new(),
            tol: CLUSTER_TOL,
        });
    }
    s_spectrum(t)
}

/// Restricts `A` to the range and kernel of `P`. Fails with `RankMismatch`
/// when the two bases do not add up to `n`.
pub fn restrict(a: &QMatrix, p: &QMatrix) -> Result<Restriction> {
    let n = a.dim();
    let complement = &QMatrix::identity(n) - p;
    // Both halves are measured against the same scale so that a numerically
    // zero half yields an empty basis.
    let scale = p.norm_fro().max(complement.norm_fro()).max(1.0);
    let basis_range = range_basis_scaled(p, BASIS_TOL, scale);
    let basis_null = range_basis_scaled(&complement, BASIS_TOL, scale);
    if basis_range.len() + basis_null.len() != n {
        return Err(SpectralError::RankMismatch {
            rank: basis_range.len(),
            expected: n - basis_null.len(),
        });
    }
    let mut range_residual: f64 = 0.0;
    let mut invariance_residual: f64 = 0.0;
    for v in &basis_range {
        range_residual = range_residual.max((&p.mul_vec(v) - v).norm());
        invariance_residual = invariance_residual.max(complement.mul_vec(&a.mul_vec(v)).norm());
    }
    let mut null_residual: f64 = 0.0;
    for v in &basis_null {
        null_residual = null_residual.max(p.mul_vec(v).norm());
        invariance_residual = invariance_residual.max(p.mul_vec(&a.mul_vec(v)).norm());
    }
    let t1 = RectMatrix::from_columns(n, &basis_range).compress(a);
    let t2 = RectMatrix::from_columns(n, &basis_null).compress(a);
    let spectra1 = spectrum_of(&t1)?;
    let spectra2 = spectrum_of(&t2)?;
    Ok(Restriction {
        basis_range,
        basis_null,
        t1,
        t2,
        spectra1,
        spectra2,
        range_residual,
        null_residual,
        invariance_residual,
    })
}

/// Riesz decomposition of `A` along an isolated part of its spectrum.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub projection: ProjectionResult,
    pub restriction: Restriction,
    pub spectra1: SpectrumResult,
    pub spectra2: SpectrumResult,
    /// Expected part and complement, taken from `σ_S(A)`.
    pub expected1: SpectrumResult,
    pub expected2: SpectrumResult,
    /// Largest Hausdorff distance between computed and expected halves.
    pub split_error: f64,
    pub multiplicity_match: bool,
}

impl DecompositionReport {
    /// All numerical guarantees of the decomposition hold.
    pub fn holds(&self) -> bool {
        self.restriction.range_residual <= PROJECTOR_TOL
            && self.restriction.null_residual <= PROJECTOR_TOL
            && self.restriction.invariance_residual <= INVARIANCE_TOL
            && self.split_error <= SPLIT_TOL
            && self.multiplicity_match
    }

    pub fn basis_range(&self) -> &[QVector] {
        &self.restriction.basis_range
    }

    pub fn basis_null(&self) -> &[QVector] {
        &self.restriction.basis_null
    }

    pub fn t1(&self) -> &QMatrix {
        &self.restriction.t1
    }

    pub fn t2(&self) -> &QMatrix {
        &self.restriction.t2
    }
}

fn same_multiplicities(computed: &SpectrumResult, expected: &SpectrumResult) -> bool {
    computed.total_multiplicity() == expected.total_multiplicity()
        && expected
            .spheres
            .iter()
            .all(|s| computed.multiplicity_of(&s.sphere(), SPLIT_TOL) == s.mult)
}

/// Splits `A` along the Riesz projector of `part`, restricts it to both
/// invariant subspaces and compares their spectra with the partition.
pub fn riesz_decompose(a: &QMatrix, part: &IsolatedPart) -> Result<DecompositionReport> {
    let spectrum = s_spectrum(a)?;
    let targets = part.sphere_list();
    let projection = riesz_projection_with(a, &spectrum, &targets, QuadratureOptions::default())?;
    let scale = spectrum.radius().max(1.0);

    let in_part = |s: &Sphere| {
        targets
            .iter()
            .any(|t| t.distance(s) <= MEMBERSHIP_TOL * scale)
    };
    let expected1 = SpectrumResult {
        spheres: spectrum
            .spheres
            .iter()
            .copied()
            .filter(|s| in_part(&s.sphere()))
            .collect(),
        tol: spectrum.tol,
    };
    let expected2 = SpectrumResult {
        spheres: spectrum
            .spheres
            .iter()
            .copied()
            .filter(|s| !in_part(&s.sphere()))
            .collect(),
        tol: spectrum.tol,
    };
    let expected_rank = expected1.total_multiplicity();
    if projection.rank != expected_rank {
        return Err(SpectralError::RankMismatch {
            rank: projection.rank,
            expected: expected_rank,
        });
    }
    let restriction = restrict(a, &projection.p)?;
    if restriction.basis_range.len() != expected_rank {
        return Err(SpectralError::RankMismatch {
            rank: restriction.basis_range.len(),
            expected: expected_rank,
        });
    }
    let spectra1 = restriction.spectra1.clone();
    let spectra2 = restriction.spectra2.clone();
    let split_error = hausdorff(&spectra1.sphere_list(), &expected1.sphere_list())
        .max(hausdorff(&spectra2.sphere_list(), &expected2.sphere_list()));
    let multiplicity_match =
        same_multiplicities(&spectra1, &expected1) && same_multiplicities(&spectra2, &expected2);
    Ok(DecompositionReport {
        projection,
        restriction,
        spectra1,
        spectra2,
        expected1,
        expected2,
        split_error,
        multiplicity_match,
    })
}

/// Compares a commuting projector `P` with the Riesz projector of the
/// spectrum of `A` restricted to `R(P)` and returns `‖P − P_σ₁‖_F`.
pub fn projector_uniqueness_check(a: &QMatrix, p: &QMatrix) -> Result<f64> {
    if a.dim() != p.dim() {
        return Err(SpectralError::DimensionMismatch {
            expected: a.dim(),
            got: p.dim(),
        });
    }
    let pn = p.norm_fro().max(1.0);
    let idem = (&(p * p) - p).norm_fro();
    if idem > PROJECTOR_TOL * pn {
        return Err(SpectralError::NotAProjector(format!(
            "‖P²−P‖ = {idem:e} exceeds {:e}",
            PROJECTOR_TOL * pn
        )));
    }
    let comm = (&(p * a) - &(a * p)).norm_fro();
    let comm_tol = PROJECTOR_TOL * pn * a.norm_fro().max(1.0);
    if comm > comm_tol {
        return Err(SpectralError::NotAProjector(format!(
            "‖PA−AP‖ = {comm:e} exceeds {comm_tol:e}"
        )));
    }
    let split = restrict(a, p)?;
    let spectrum = s_spectrum(a)?;
    let scale = spectrum.radius().max(1.0);
    let tol = ISOLATION_TOL * scale;
    let mut distance = f64::INFINITY;
    for s in &split.spectra1.spheres {
        for t in &split.spectra2.spheres {
            distance = distance.min(s.sphere().distance(&t.sphere()));
        }
    }
    if distance <= tol {
        return Err(SpectralError::SpectraNotDisjoint { distance, tol });
    }
    let sigma1 = split.spectra1.sphere_list();
    let p_sigma = if sigma1.is_empty() {
        QMatrix::zeros(a.dim())
    } else {
        riesz_projection_with(a, &spectrum, &sigma1, QuadratureOptions::default())?.p
    };
    Ok((p - &p_sigma).norm_fro())
}
