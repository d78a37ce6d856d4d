//! Truncated unilateral shift: approximate eigenvectors inside the unit
//! ball, resolvent margins outside it, and random finite-rank perturbations.

use qspectra::shift::{approx_eigvector, exterior_margin, perturbation_experiment};
use qspectra::{ImaginaryUnit, Quaternion};

fn main() -> qspectra::Result<()> {
    let unit = ImaginaryUnit::new(0.0, 1.0, 1.0).expect("nonzero");
    for modulus in [0.5, 0.9] {
        let q = unit.exp(0.7) * modulus;
        for n in [16, 64, 128] {
            let (_, r) = approx_eigvector(q, n)?;
            println!("|q| = {modulus}, N = {n:>3}: residual {r:.2e}");
        }
    }
    for n in [8, 64, 256] {
        println!(
            "N = {n:>3}: μ(Q_2(T_N)) = {:.4}",
            exterior_margin(Quaternion::real(2.0), n)?
        );
    }

    let exp = perturbation_experiment(24, 1, 5, 42)?;
    for (k, t) in exp.trials.iter().enumerate() {
        let outer = t
            .spheres
            .iter()
            .map(|s| s.re.hypot(s.rho))
            .fold(0.0, f64::max);
        println!(
            "trial {k}: {} spheres, largest modulus {outer:.3}",
            t.spheres.len()
        );
    }
    println!(
        "{} spheres persist in every trial",
        exp.persistent_spheres.len()
    );
    Ok(())
}
