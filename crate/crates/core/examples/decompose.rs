//! Riesz decomposition: restrict `A` to the range and kernel of a projector.

use qspectra::analysis::{isolated_parts, riesz_decompose, IsolatedPart};
use qspectra::calculus::ISOLATION_TOL;
use qspectra::linalg::s_spectrum;
use qspectra::random::{seeded, separated_instance};

fn main() -> qspectra::Result<()> {
    let inst = separated_instance(6, 0.5, &mut seeded(11));
    let spec = s_spectrum(&inst.matrix)?;
    println!(
        "{} isolated clusters",
        isolated_parts(&spec, ISOLATION_TOL).len()
    );

    let first: Vec<_> = spec.sphere_list().into_iter().take(2).collect();
    let report = riesz_decompose(&inst.matrix, &IsolatedPart::of(&spec, &first)?)?;
    println!(
        "dim V1 = {}, dim V2 = {}",
        report.basis_range().len(),
        report.basis_null().len()
    );
    for (name, s) in [("T1", &report.spectra1), ("T2", &report.spectra2)] {
        let list: Vec<String> = s
            .spheres
            .iter()
            .map(|t| format!("({:.3}, {:.3})×{}", t.re, t.rho, t.mult))
            .collect();
        println!("σ_S({name}) = {}", list.join(" "));
    }
    println!(
        "split error {:.2e}, holds: {}",
        report.split_error,
        report.holds()
    );
    Ok(())
}
