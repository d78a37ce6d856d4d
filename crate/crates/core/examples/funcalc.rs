//! Polynomial S-functional calculus: contour integral against `Σ Aᵐ·cₘ`.

use qspectra::calculus::{poly_calculus, poly_direct};
use qspectra::random::{random_unit, seeded, separated_instance};
use qspectra::Quaternion;

fn main() -> qspectra::Result<()> {
    let mut rng = seeded(5);
    let inst = separated_instance(4, 0.5, &mut rng);
    let unit = random_unit(&mut rng);

    for coeffs in [
        vec![1.0],
        vec![0.0, 1.0],
        vec![1.0, -2.0, 1.0],
        vec![0.5, 0.0, 0.0, -1.0],
    ] {
        let c: Vec<Quaternion> = coeffs.iter().map(|x| Quaternion::real(*x)).collect();
        let contour = poly_calculus(&inst.matrix, &c, unit, 256)?;
        let direct = poly_direct(&inst.matrix, &c);
        println!(
            "{coeffs:?}: max difference {:.2e}",
            contour.max_abs_diff(&direct)
        );
    }

    // Quaternion coefficients on the right work the same way.
    let c = [
        Quaternion::J,
        Quaternion::ZERO,
        Quaternion::new(0.0, 1.0, 0.0, 1.0),
    ];
    let diff =
        poly_calculus(&inst.matrix, &c, unit, 256)?.max_abs_diff(&poly_direct(&inst.matrix, &c));
    println!("quaternion coefficients: max difference {diff:.2e}");
    Ok(())
}
