//! Minimum-modulus stability and a sampled resolvent neighbourhood.

use qspectra::analysis::{min_modulus, min_modulus_perturbation, resolvent_neighborhood};
use qspectra::random::{random_matrix, seeded};
use qspectra::Quaternion;

fn main() -> qspectra::Result<()> {
    let mut rng = seeded(9);
    let a = random_matrix(4, &mut rng);
    let mu = min_modulus(&a);
    let e = random_matrix(4, &mut rng);
    let e = e.scale(0.9 * mu / e.op_norm());
    let r = min_modulus_perturbation(&a, &e);
    println!(
        "μ(A) = {:.4}, ‖E‖ = {:.4}, μ(A+E) = {:.4}",
        r.mu, r.norm_e, r.mu_perturbed
    );

    let q0 = Quaternion::new(2.0, 1.0, 0.0, -1.0);
    let n = resolvent_neighborhood(&a, q0, 200, 9)?;
    println!(
        "neighbourhood of {q0}: ε = {:.4}, {} probes, {} violations, worst margin {:.4}",
        n.epsilon, n.probes, n.violations, n.worst_margin
    );
    Ok(())
}
