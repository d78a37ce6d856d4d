//! Riesz projector onto one sphere, with its quality diagnostics.

use qspectra::calculus::{riesz_projection, Side};
use qspectra::random::{seeded, separated_instance};
use qspectra::ImaginaryUnit;

fn main() -> qspectra::Result<()> {
    let inst = separated_instance(5, 0.5, &mut seeded(3));
    let (target, mult) = inst.spheres[0];
    println!(
        "target sphere ({:.4}, {:.4}) of multiplicity {mult}",
        target.re, target.rho
    );

    let left = riesz_projection(&inst.matrix, &[target], ImaginaryUnit::I, 256, Side::Left)?;
    println!("rank {}", left.rank);
    println!("‖P² − P‖ = {:.2e}", left.idempotency_residual);
    println!("‖PA − AP‖ = {:.2e}", left.commutator_residual);

    // The integral does not depend on the slice or on the resolvent form.
    let unit = ImaginaryUnit::new(1.0, -2.0, 0.5).expect("nonzero");
    let right = riesz_projection(&inst.matrix, &[target], unit, 256, Side::Right)?;
    println!(
        "left/i vs right/other slice: {:.2e}",
        left.p.max_abs_diff(&right.p)
    );
    Ok(())
}
