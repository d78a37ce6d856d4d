use rand::Rng;
use serde::Serialize;

use super::MEMBERSHIP_TOL;
use crate::calculus::{riesz_projection_with, QuadratureOptions, RESOLVENT_TOL};
use crate::error::{Result, SpectralError};
use crate::linalg::{
    apply_qq, gram_schmidt, hausdorff, qsolve, s_spectrum, singular_values, spectral_margin,
    QMatrix, QVector, SpectrumResult, CLUSTER_TOL,
};
use crate::quat::{Quaternion, Sphere};
use crate::random::{random_unit, seeded};

pub use crate::linalg::min_modulus;

const DEPENDENCE_TOL: f64 = 1e-10;

/// Certificate for the rank-one spectral-shift construction.
#[derive(Clone, Debug, Serialize)]
pub struct RankOneReport {
    pub x: QVector,
    pub y: QVector,
    /// Left coefficients `c_k` of `f(u) = Σ c_k·u_k`.
    pub functional: Vec<Quaternion>,
    /// Whether `x` and `y = Ax` are right linearly independent.
    pub independent: bool,
    pub f_of_x: Quaternion,
    pub f_of_y: Quaternion,
    /// `‖(A+F)²x − 2(A+F)x + x‖`
    pub identity_residual: f64,
    pub one_in_sum: bool,
    pub one_in_shift: bool,
    pub zero_in_shift: bool,
    /// `σ_min(chi(Q_1(A+F)))` and `σ_min(chi(Q_1(F)))`.
    pub margin_sum_at_one: f64,
    pub margin_shift_at_one: f64,
}

/// Builds a right-linear functional with `f(x) = 1 = f(y)` for `y = Ax`
/// and the rank-one operator `F: u ↦ (x − y)·f(u)`, so that `1` becomes an
/// S-eigenvalue of `A + F` while `F` itself never has `1` in its spectrum.
pub fn rank_one_shift(a: &QMatrix, x: &QVector) -> Result<(QMatrix, RankOneReport)> {
    let n = a.dim();
    if x.len() != n {
        return Err(SpectralError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let xn = x.norm();
    if xn == 0.0 {
        return Err(SpectralError::InvalidArgument("x must be nonzero".into()));
    }
    let y = a.mul_vec(x);
    let yn = y.norm();
    if yn <= f64::EPSILON * xn * a.op_norm().max(1.0) {
        return Err(SpectralError::ZeroImage { norm: yn });
    }
    if (&y - x).norm() <= f64::EPSILON * xn {
        return Err(SpectralError::DegenerateCase);
    }

    let independent = gram_schmidt(&[x.clone(), y.clone()], DEPENDENCE_TOL).is_ok();
    let functional: Vec<Quaternion> = if independent {
        // Complete {x, y} to a right basis with pivoted unit vectors; f sums
        // the first two coordinates in that basis.
        let mut z = vec![x.clone(), y.clone()];
        let mut ortho = gram_schmidt(&z, DEPENDENCE_TOL)?;
        let mut used = vec![false; n];
        while z.len() < n {
            let (k, _) = (0..n)
                .filter(|k| !used[*k])
                .map(|k| {
                    let e = QVector::basis(n, k);
                    let r = ortho
                        .iter()
                        .fold(e, |w, u| &w - &u.scale_right(u.inner(&w)));
                    (k, r.norm())
                })
                .fold(
                    (usize::MAX, -1.0),
                    |acc, c| if c.1 > acc.1 { c } else { acc },
                );
            used[k] = true;
            z.push(QVector::basis(n, k));
            ortho = gram_schmidt(&z, DEPENDENCE_TOL)?;
        }
        let zinv = qsolve(&QMatrix::from_columns(&z)?, &QMatrix::identity(n))?;
        (0..n).map(|k| zinv[(0, k)] + zinv[(1, k)]).collect()
    } else {
        // y = x·λ: f(u) = ⟨x, u⟩/‖x‖² gives f(x) = 1 and f(y) = λ ≠ 0.
        x.0.iter().map(|c| c.conj() / (xn * xn)).collect()
    };
    let apply_f = |u: &QVector| -> Quaternion {
        functional
            .iter()
            .zip(&u.0)
            .fold(Quaternion::ZERO, |acc, (c, v)| acc + *c * *v)
    };
    let d = x - &y;
    let shift = QMatrix::from_fn(n, |j, k| d.0[j] * functional[k]);
    let sum = a + &shift;
    let sx = sum.mul_vec(x);
    let identity_residual = (&(&sum.mul_vec(&sx) - &sx.scale(2.0)) + x).norm();

    let one = Sphere::new(1.0, 0.0);
    let zero = Sphere::new(0.0, 0.0);
    let spec_sum = s_spectrum(&sum)?;
    let spec_shift = s_spectrum(&shift)?;
    let tol_sum = MEMBERSHIP_TOL * spec_sum.radius().max(1.0);
    let tol_shift = MEMBERSHIP_TOL * spec_shift.radius().max(1.0);
    let report = RankOneReport {
        f_of_x: apply_f(x),
        f_of_y: apply_f(&y),
        x: x.clone(),
        y,
        functional: functional.clone(),
        independent,
        identity_residual,
        one_in_sum: spec_sum.contains(&one, tol_sum),
        one_in_shift: spec_shift.contains(&one, tol_shift),
        zero_in_shift: spec_shift.contains(&zero, tol_shift),
        margin_sum_at_one: spectral_margin(&sum, Quaternion::ONE),
        margin_shift_at_one: spectral_margin(&shift, Quaternion::ONE),
    };
    Ok((shift, report))
}

/// `A + α·P_[s]`: shifts the isolated sphere `[s]` by `α` along the real axis.
pub fn deflate_sphere(a: &QMatrix, s: &Sphere, alpha: f64) -> Result<QMatrix> {
    let spectrum = s_spectrum(a)?;
    deflate_with(a, &spectrum, s, alpha)
}

fn deflate_with(a: &QMatrix, spectrum: &SpectrumResult, s: &Sphere, alpha: f64) -> Result<QMatrix> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(SpectralError::InvalidArgument(format!(
            "alpha must be finite and nonzero, got {alpha}"
        )));
    }
    let p = riesz_projection_with(a, spectrum, &[*s], QuadratureOptions::default())?.p;
    Ok(a + &p.scale(alpha))
}

/// Spectrum before and after deflation, compared with the shifted oracle.
#[derive(Clone, Debug, Serialize)]
pub struct DeflationReport {
    pub before: SpectrumResult,
    pub after: SpectrumResult,
    pub expected: SpectrumResult,
    /// Hausdorff distance between `after` and `expected`.
    pub hausdorff: f64,
    /// Largest distance from an untouched sphere to the deflated spectrum.
    pub complement_drift: f64,
    pub multiplicity_match: bool,
}

impl DeflationReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.hausdorff <= tol && self.complement_drift <= tol && self.multiplicity_match
    }
}

/// Deflates `[s]` and checks that only that sphere moved, by exactly `alpha`.
pub fn deflation_check(a: &QMatrix, s: &Sphere, alpha: f64) -> Result<DeflationReport> {
    let before = s_spectrum(a)?;
    let scale = before.radius().max(1.0);
    let k = before
        .find(s, MEMBERSHIP_TOL * scale)
        .ok_or(SpectralError::NotInSpectrum {
            sphere: *s,
            tol: MEMBERSHIP_TOL * scale,
        })?;
    let deflated = deflate_with(a, &before, s, alpha)?;
    let after = s_spectrum(&deflated)?;
    let weighted: Vec<(Sphere, usize)> = before
        .spheres
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let sphere = if j == k {
                Sphere::new(t.re + alpha, t.rho)
            } else {
                t.sphere()
            };
            (sphere, t.mult)
        })
        .collect();
    let expected = SpectrumResult::from_weighted(&weighted, CLUSTER_TOL * (scale + alpha.abs()));
    let hausdorff = hausdorff(&after.sphere_list(), &expected.sphere_list());
    let after_list = after.sphere_list();
    let complement_drift = before
        .spheres
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != k)
        .map(|(_, t)| {
            after_list
                .iter()
                .map(|u| u.distance(&t.sphere()))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let multiplicity_match = after.total_multiplicity() == expected.total_multiplicity()
        && expected
            .spheres
            .iter()
            .all(|e| after.multiplicity_of(&e.sphere(), MEMBERSHIP_TOL * scale) == e.mult);
    Ok(DeflationReport {
        before,
        after,
        expected,
        hausdorff,
        complement_drift,
        multiplicity_match,
    })
}

/// Minimum-modulus stability under a perturbation `E`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PerturbationReport {
    pub mu: f64,
    pub norm_e: f64,
    pub mu_perturbed: f64,
    /// `‖E‖ < μ(A)`: the hypothesis under which `μ(A+E) > 0` is guaranteed.
    pub premise: bool,
}

impl PerturbationReport {
    pub fn violated(&self) -> bool {
        self.premise && !(self.mu_perturbed > 0.0)
    }
}

pub fn min_modulus_perturbation(a: &QMatrix, e: &QMatrix) -> PerturbationReport {
    let mu = min_modulus(a);
    let norm_e = e.op_norm();
    PerturbationReport {
        mu,
        norm_e,
        mu_perturbed: min_modulus(&(a + e)),
        premise: norm_e < mu,
    }
}

/// Sampled certificate that a neighbourhood of a resolvent point lies in
/// the S-resolvent set.
#[derive(Clone, Debug, Serialize)]
pub struct NeighborhoodReport {
    pub q0: Quaternion,
    /// `μ(Q_{q0}(A))`, the neighbourhood size.
    pub epsilon: f64,
    /// `‖A‖`, largest singular value of `chi(A)`.
    pub norm: f64,
    pub probes: usize,
    /// Probes for which no point of the neighbourhood was found.
    pub skipped: usize,
    /// Probes with `μ(Q_q(A)) ≤ 0`.
    pub violations: usize,
    /// Smallest `μ(Q_q(A))` over the probes.
    pub worst_margin: f64,
    /// Smallest `μ(Q_q(A)) − (ε − δ(q))`, where `δ(q)` bounds `‖Q_q − Q_{q0}‖`.
    pub worst_slack: f64,
}

/// Draws a point `q` with `2|Re q − Re q0|·norm + ||q|² − |q0|²| < ε` and
/// returns it with that left-hand side.
pub fn sample_neighborhood<R: Rng>(
    norm: f64,
    q0: Quaternion,
    epsilon: f64,
    rng: &mut R,
) -> Option<(Quaternion, f64)> {
    for _ in 0..1000 {
        let budget = epsilon * rng.random_range(0.0..0.999);
        let (d, e) = if norm > 0.0 {
            let share: f64 = rng.random_range(0.0..1.0);
            let sign = |r: &mut R| if r.random_bool(0.5) { 1.0 } else { -1.0 };
            (
                sign(rng) * budget * share / (2.0 * norm),
                sign(rng) * budget * (1.0 - share),
            )
        } else {
            let reach = q0.norm().max(1.0);
            (
                rng.random_range(-reach..reach),
                if rng.random_bool(0.5) {
                    budget
                } else {
                    -budget
                },
            )
        };
        let re = q0.re() + d;
        let im_sqr = q0.norm_sqr() + e - re * re;
        if im_sqr < 0.0 {
            continue;
        }
        let q = random_unit(rng).slice_point(re, im_sqr.sqrt());
        let delta = 2.0 * (q.re() - q0.re()).abs() * norm + (q.norm_sqr() - q0.norm_sqr()).abs();
        if delta < epsilon {
            return Some((q, delta));
        }
    }
    None
}

/// Samples `probes` points of the neighbourhood `O(A, q0, μ(Q_{q0}(A)))`
/// and checks that each lies in the S-resolvent set.
pub fn resolvent_neighborhood(
    a: &QMatrix,
    q0: Quaternion,
    probes: usize,
    seed: u64,
) -> Result<NeighborhoodReport> {
    let qq = apply_qq(a, q0);
    let sv = singular_values(&qq);
    let epsilon = sv.last().copied().unwrap_or(0.0);
    let smax = sv.first().copied().unwrap_or(0.0);
    let tol = RESOLVENT_TOL * smax.max(1.0);
    if epsilon <= tol {
        return Err(SpectralError::OnSpectrum {
            q: q0.to_string(),
            mu: epsilon,
        });
    }
    let norm = a.op_norm();
    let mut rng = seeded(seed);
    let mut report = NeighborhoodReport {
        q0,
        epsilon,
        norm,
        probes,
        skipped: 0,
        violations: 0,
        worst_margin: f64::INFINITY,
        worst_slack: f64::INFINITY,
    };
    for _ in 0..probes {
        let Some((q, delta)) = sample_neighborhood(norm, q0, epsilon, &mut rng) else {
            report.skipped += 1;
            continue;
        };
        let margin = spectral_margin(a, q);
        if !(margin > 0.0) {
            report.violations += 1;
        }
        report.worst_margin = report.worst_margin.min(margin);
        report.worst_slack = report.worst_slack.min(margin - (epsilon - delta));
    }
    Ok(report)
}
