//! Seeded random quaternions, matrices and test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{qsolve, QMatrix, QVector};
use crate::quat::{ImaginaryUnit, Quaternion, Sphere};

pub type Rng64 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Components uniform in `[-1, 1)`.
pub fn random_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// Uniformly distributed imaginary unit.
pub fn random_unit<R: Rng>(rng: &mut R) -> ImaginaryUnit {
    loop {
        let (x, y, z) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let r2: f64 = x * x + y * y + z * z;
        if r2 > 1e-4 && r2 <= 1.0 {
            return ImaginaryUnit::new(x, y, z).expect("norm checked");
        }
    }
}

pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> QVector {
    QVector((0..n).map(|_| random_quaternion(rng)).collect())
}

pub fn random_matrix<R: Rng>(n: usize, rng: &mut R) -> QMatrix {
    QMatrix::from_fn(n, |_, _| random_quaternion(rng))
}

/// `S·D·S⁻¹` with `S = I + 0.3·G` for a random `G` scaled to operator
/// norm at most 1, so `S` stays well conditioned.
pub fn similar_to_diagonal<R: Rng>(diag: &[Quaternion], rng: &mut R) -> QMatrix {
    let n = diag.len();
    let g = random_matrix(n, rng);
    let g = g.scale(0.3 / g.op_norm().max(1e-300));
    let s = &QMatrix::identity(n) + &g;
    let sinv = qsolve(&s, &QMatrix::identity(n)).expect("perturbed identity is invertible");
    &(&s * &QMatrix::from_diag(diag)) * &sinv
}

/// A matrix with a prescribed, well separated S-spectrum.
#[derive(Clone, Debug)]
pub struct Instance {
    pub matrix: QMatrix,
    /// Distinct spheres with multiplicities, as constructed.
    pub spheres: Vec<(Sphere, usize)>,
    /// Block-diagonal twin with the same spectrum, before the similarity.
    pub diagonal: Vec<Quaternion>,
}

/// Random instance of dimension `n` whose spheres are pairwise at least
/// `gap` apart in `(re, rho)` and whose nonreal spheres have `rho ≥ gap/2`,
/// so conjugate slice points are also at least `gap` apart. Spheres are
/// placed in a box of side growing with `n`; one sphere may repeat.
pub fn separated_instance<R: Rng>(n: usize, gap: f64, rng: &mut R) -> Instance {
    let side = 2.0 + n as f64 * gap;
    let mut chosen: Vec<Sphere> = Vec::new();
    let mut diag: Vec<Quaternion> = Vec::new();
    let mut mults: Vec<usize> = Vec::new();
    while diag.len() < n {
        // Occasionally reuse an existing sphere in a different slice.
        if !chosen.is_empty() && rng.random_bool(0.2) {
            let k = rng.random_range(0..chosen.len());
            let s = chosen[k];
            diag.push(s.point(random_unit(rng)));
            mults[k] += 1;
            continue;
        }
        let s = if rng.random_bool(0.25) {
            Sphere::new(rng.random_range(-side..side), 0.0)
        } else {
            Sphere::new(
                rng.random_range(-side..side),
                rng.random_range(gap / 2.0..side),
            )
        };
        if chosen.iter().any(|t| t.distance(&s) < gap) {
            continue;
        }
        chosen.push(s);
        mults.push(1);
        diag.push(s.point(random_unit(rng)));
    }
    let matrix = similar_to_diagonal(&diag, rng);
    Instance {
        matrix,
        spheres: chosen.into_iter().zip(mults).collect(),
        diagonal: diag,
    }
}

/// `count` separated instances with gap `0.5` and dimensions cycling
/// through `2..=6`, all drawn from one seeded stream.
pub fn standard_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|k| separated_instance(2 + k % 5, 0.5, &mut rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_is_deterministic() {
        let a = random_matrix(3, &mut seeded(5));
        let b = random_matrix(3, &mut seeded(5));
        assert_eq!(a, b);
    }

    #[test]
    fn instance_spheres_are_separated() {
        let mut rng = seeded(1);
        for n in 1..8 {
            let inst = separated_instance(n, 0.5, &mut rng);
            assert_eq!(inst.spheres.iter().map(|s| s.1).sum::<usize>(), n);
            for (i, a) in inst.spheres.iter().enumerate() {
                assert!(a.0.rho == 0.0 || a.0.rho >= 0.25);
                for b in &inst.spheres[i + 1..] {
                    assert!(a.0.distance(&b.0) >= 0.5);
                }
            }
        }
    }
}
