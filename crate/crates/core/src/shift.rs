//! Truncations of the unilateral shift on `ℓ²_H`: approximate
//! eigenvectors, exterior resolvent margins and finite-rank perturbations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};
use crate::linalg::{apply_qq, min_modulus, s_spectrum, QMatrix, QVector, SpectralSphere};
use crate::quat::Quaternion;
use crate::random::{random_vector, seeded};

/// Relative distance at which spheres of different trials are identified.
pub const PERSISTENCE_TOL: f64 = 1e-6;

/// `N×N` matrix with ones on the superdiagonal: `(Tx)_i = x_{i+1}`,
/// `(Tx)_{N−1} = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftTruncation {
    #[serde(rename = "N")]
    pub n: usize,
    pub matrix: QMatrix,
}

pub fn truncated_shift(n: usize) -> Result<ShiftTruncation> {
    if n < 2 {
        return Err(SpectralError::InvalidArgument(format!(
            "truncation length must be at least 2, got {n}"
        )));
    }
    let matrix = QMatrix::from_fn(n, |r, c| {
        if c == r + 1 {
            Quaternion::ONE
        } else {
            Quaternion::ZERO
        }
    });
    Ok(ShiftTruncation { n, matrix })
}

fn shift_left(v: &QVector) -> QVector {
    let n = v.len();
    QVector(
        (0..n)
            .map(|i| {
                if i + 1 < n {
                    v.0[i + 1]
                } else {
                    Quaternion::ZERO
                }
            })
            .collect(),
    )
}

/// `v_i = qⁱ` and `‖Q_q(T_N)v‖/‖v‖`. On the untruncated shift `v` is an
/// exact eigenvector, `Tv = v·q`; the residual comes from the last two rows.
pub fn approx_eigvector(q: Quaternion, n: usize) -> Result<(QVector, f64)> {
    let modulus = q.norm();
    if modulus >= 1.0 {
        return Err(SpectralError::DivergentSeed { modulus });
    }
    let mut v = Vec::with_capacity(n);
    let mut p = Quaternion::ONE;
    for _ in 0..n {
        v.push(p);
        p *= q;
    }
    let v = QVector(v);
    let tv = shift_left(&v);
    let ttv = shift_left(&tv);
    let re = q.re();
    let ns = q.norm_sqr();
    let r = QVector(
        (0..n)
            .map(|i| ttv.0[i] - tv.0[i] * (2.0 * re) + v.0[i] * ns)
            .collect(),
    );
    let residual = r.norm() / v.norm();
    Ok((v, residual))
}

/// `μ(Q_q(T_N))`, bounded away from zero for `|q| > 1` uniformly in `N`.
pub fn exterior_margin(q: Quaternion, n: usize) -> Result<f64> {
    let t = truncated_shift(n)?;
    Ok(min_modulus(&apply_qq(&t.matrix, q)))
}

/// Spectrum of one perturbed truncation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub spheres: Vec<SpectralSphere>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationExperiment {
    #[serde(rename = "N")]
    pub n: usize,
    pub rank: usize,
    pub seed: u64,
    pub trials: Vec<Trial>,
    /// Spheres found in every trial, with the smallest multiplicity seen.
    pub persistent_spheres: Vec<SpectralSphere>,
}

/// Random rank-`rank` perturbation `Σ u_r·⟨v_r, ·⟩` with unit vectors.
fn random_perturbation(n: usize, rank: usize, rng: &mut crate::random::Rng64) -> QMatrix {
    let mut k = QMatrix::zeros(n);
    for _ in 0..rank {
        let u = random_vector(n, rng);
        let v = random_vector(n, rng);
        let (u, v) = (u.scale(1.0 / u.norm()), v.scale(1.0 / v.norm()));
        k = &k + &QMatrix::from_fn(n, |r, c| u.0[r] * v.0[c].conj());
    }
    k
}

/// Spectra of `T_N + K` for `trials` random perturbations of rank `rank`.
/// Perturbations are drawn sequentially from `seed`; spectra are computed
/// in parallel and reported in trial order.
pub fn perturbation_experiment(
    n: usize,
    rank: usize,
    trials: usize,
    seed: u64,
) -> Result<PerturbationExperiment> {
    if rank >= n {
        return Err(SpectralError::InvalidArgument(format!(
            "rank must be below N = {n}, got {rank}"
        )));
    }
    let t = truncated_shift(n)?;
    let mut rng = seeded(seed);
    let perturbations: Vec<QMatrix> = (0..trials)
        .map(|_| random_perturbation(n, rank, &mut rng))
        .collect();
    let spectra: Vec<Trial> = perturbations
        .par_iter()
        .map(|k| s_spectrum(&(&t.matrix + k)).map(|s| Trial { spheres: s.spheres }))
        .collect::<Result<_>>()?;
    let persistent_spheres = match spectra.split_first() {
        None => Vec::new(),
        Some((first, rest)) => first
            .spheres
            .iter()
            .filter_map(|s| {
                let tol = PERSISTENCE_TOL * s.re.hypot(s.rho).max(1.0);
                let mut mult = s.mult;
                for trial in rest {
                    let m = trial
                        .spheres
                        .iter()
                        .find(|u| u.sphere().distance(&s.sphere()) <= tol)?;
                    mult = mult.min(m.mult);
                }
                Some(SpectralSphere { mult, ..*s })
            })
            .collect(),
    };
    Ok(PerturbationExperiment {
        n,
        rank,
        seed,
        trials: spectra,
        persistent_spheres,
    })
}
