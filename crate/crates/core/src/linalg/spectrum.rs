//! S-spectrum of a quaternionic matrix via the eigenvalues of its complex
//! adjoint.
//!
//! The eigenvalues of `chi(A)` come in conjugate pairs. Each eigenvalue `λ`
//! is mapped to the half-plane point `(Re λ, |Im λ|)` and the points are
//! grouped by single linkage. A group of `2m` points is one sphere of
//! multiplicity `m`: a nonreal sphere contributes `m` copies each of `λ`
//! and `λ̄`, a real one `2m` copies of `λ`.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use super::eigen::eigenvalues;
use super::matrix::{apply_qq, chi, singular_values, QMatrix};
use crate::error::{Result, SpectralError};
use crate::quat::{Quaternion, Sphere};

/// Relative clustering tolerance: `CLUSTER_TOL · max(1, spectral radius)`.
pub const CLUSTER_TOL: f64 = 1e-8;

/// A sphere of the S-spectrum with its multiplicity over `H`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSphere {
    pub re: f64,
    pub rho: f64,
    pub mult: usize,
}

impl SpectralSphere {
    pub fn sphere(&self) -> Sphere {
        Sphere::new(self.re, self.rho)
    }
}

/// Spheres of `σ_S(A)` with multiplicities summing to `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub spheres: Vec<SpectralSphere>,
    pub tol: f64,
}

impl SpectrumResult {
    pub fn total_multiplicity(&self) -> usize {
        self.spheres.iter().map(|s| s.mult).sum()
    }

    pub fn sphere_list(&self) -> Vec<Sphere> {
        self.spheres.iter().map(SpectralSphere::sphere).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    /// Largest `|q|` over the spectrum.
    pub fn radius(&self) -> f64 {
        self.spheres
            .iter()
            .map(|s| s.re.hypot(s.rho))
            .fold(0.0, f64::max)
    }

    /// Index of the sphere nearest to `s` if it lies within `tol`.
    pub fn find(&self, s: &Sphere, tol: f64) -> Option<usize> {
        self.spheres
            .iter()
            .enumerate()
            .map(|(k, t)| (k, t.sphere().distance(s)))
            .filter(|(_, d)| *d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(k, _)| k)
    }

    pub fn contains(&self, s: &Sphere, tol: f64) -> bool {
        self.find(s, tol).is_some()
    }

    /// Multiplicity of the sphere matching `s` within `tol`, or zero.
    pub fn multiplicity_of(&self, s: &Sphere, tol: f64) -> usize {
        self.find(s, tol).map_or(0, |k| self.spheres[k].mult)
    }

    /// Builds a result from weighted spheres, merging entries closer than `tol`.
    pub fn from_weighted(items: &[(Sphere, usize)], tol: f64) -> Self {
        let mut spheres: Vec<SpectralSphere> = Vec::new();
        for (s, m) in items {
            if *m == 0 {
                continue;
            }
            if let Some(t) = spheres.iter_mut().find(|t| t.sphere().distance(s) <= tol) {
                let total = (t.mult + m) as f64;
                t.re = (t.re * t.mult as f64 + s.re * *m as f64) / total;
                t.rho = (t.rho * t.mult as f64 + s.rho * *m as f64) / total;
                t.mult += m;
            } else {
                spheres.push(SpectralSphere {
                    re: s.re,
                    rho: s.rho,
                    mult: *m,
                });
            }
        }
        sort_spheres(&mut spheres);
        SpectrumResult { spheres, tol }
    }
}

fn sort_spheres(spheres: &mut [SpectralSphere]) {
    spheres.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.rho.total_cmp(&b.rho)));
}

/// Hausdorff distance between two sphere sets in the `(re, rho)` half-plane.
/// Zero for two empty sets, infinite when exactly one is empty.
pub fn hausdorff(a: &[Sphere], b: &[Sphere]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let directed = |x: &[Sphere], y: &[Sphere]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| p.distance(q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Eigenvalues of `chi(A)`. For matrices with entries in `C_i` only the
/// `n×n` block is decomposed and each eigenvalue is paired with its conjugate.
pub fn chi_eigenvalues(a: &QMatrix) -> Result<Vec<Complex<f64>>> {
    if a.is_complex_i() {
        let n = a.dim();
        let block = super::matrix::ComplexMatrix::from_fn(n, n, |r, c| {
            let q = a[(r, c)];
            Complex::new(q.w, q.x)
        });
        let e = eigenvalues(&block)?;
        Ok(e.iter().flat_map(|z| [*z, z.conj()]).collect())
    } else {
        eigenvalues(&chi(a))
    }
}

/// S-spectrum with the default clustering tolerance.
pub fn s_spectrum(a: &QMatrix) -> Result<SpectrumResult> {
    s_spectrum_tol(a, CLUSTER_TOL)
}

/// S-spectrum; `tol` is scaled by `max(1, spectral radius)`.
pub fn s_spectrum_tol(a: &QMatrix, tol: f64) -> Result<SpectrumResult> {
    if !(tol > 0.0) {
        return Err(SpectralError::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = a.dim();
    let eig = chi_eigenvalues(a)?;
    let radius = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let base = tol * radius.max(1.0);
    let points: Vec<(f64, f64)> = eig.iter().map(|z| (z.re, z.im.abs())).collect();

    // Conjugate partners always land on the same half-plane point, so a group
    // of odd size means the tolerance split a numerically perturbed cluster.
    let mut t = base;
    for _ in 0..6 {
        let groups = single_linkage(&points, t);
        if groups.iter().all(|g| g.len() % 2 == 0) {
            let mut spheres: Vec<SpectralSphere> = groups
                .iter()
                .map(|g| {
                    let re = g.iter().map(|&k| points[k].0).sum::<f64>() / g.len() as f64;
                    let mut rho = g.iter().map(|&k| points[k].1).sum::<f64>() / g.len() as f64;
                    if rho < t {
                        rho = 0.0;
                    }
                    SpectralSphere {
                        re,
                        rho,
                        mult: g.len() / 2,
                    }
                })
                .collect();
            sort_spheres(&mut spheres);
            debug_assert_eq!(spheres.iter().map(|s| s.mult).sum::<usize>(), n);
            return Ok(SpectrumResult { spheres, tol: t });
        }
        t *= 10.0;
    }
    Err(SpectralError::EigenFailure(format!(
        "eigenvalues of the complex adjoint could not be paired into spheres up to tolerance {t:e}"
    )))
}

/// Connected components of the graph joining points closer than `tol`.
fn single_linkage(points: &[(f64, f64)], tol: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut label = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut stack = vec![start];
        label[start] = id;
        let mut members = Vec::new();
        while let Some(k) = stack.pop() {
            members.push(k);
            for j in 0..n {
                if label[j] == usize::MAX {
                    let d = (points[k].0 - points[j].0).hypot(points[k].1 - points[j].1);
                    if d <= tol {
                        label[j] = id;
                        stack.push(j);
                    }
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    groups
}

/// Smallest singular value of `chi(Q_q(A))`; zero exactly on `σ_S(A)`.
pub fn spectral_margin(a: &QMatrix, q: Quaternion) -> f64 {
    singular_values(&apply_qq(a, q))
        .last()
        .copied()
        .unwrap_or(0.0)
}
