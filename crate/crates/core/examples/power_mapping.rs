//! Spectral mapping for powers: `σ_S(Aⁿ)` is the image of `σ_S(A)` under `q ↦ qⁿ`.

use qspectra::analysis::spectral_mapping_power;
use qspectra::random::{random_matrix, seeded};

fn main() -> qspectra::Result<()> {
    let mut rng = seeded(1);
    for n in 1..=4 {
        let a = random_matrix(3 + n as usize, &mut rng);
        let r = spectral_mapping_power(&a, n)?;
        println!(
            "n = {n}: {} spheres, Hausdorff {:.2e}, multiplicities match: {}",
            r.lhs.spheres.len(),
            r.hausdorff,
            r.multiplicity_match
        );
    }
    Ok(())
}
