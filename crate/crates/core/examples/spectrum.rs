//! S-spectrum of a quaternionic matrix, printed as spheres `[re + I·rho]`.

use qspectra::linalg::{chi_eigenvalues, s_spectrum};
use qspectra::random::{seeded, similar_to_diagonal};
use qspectra::{QMatrix, Quaternion};

fn main() -> qspectra::Result<()> {
    // i and j lie on the same sphere, so the sphere [i] has multiplicity 2.
    let d = [
        Quaternion::I,
        Quaternion::J,
        Quaternion::real(3.0),
        Quaternion::new(-1.0, 0.0, 0.0, 2.0),
    ];
    let a = similar_to_diagonal(&d, &mut seeded(7));

    let spec = s_spectrum(&a)?;
    println!("{:>10} {:>10} {:>5}", "re", "rho", "mult");
    for s in &spec.spheres {
        println!("{:>10.6} {:>10.6} {:>5}", s.re, s.rho, s.mult);
    }

    // Each sphere shows up as a conjugate pair of eigenvalues of the complex adjoint.
    let ev = chi_eigenvalues(&a)?;
    println!("complex adjoint has {} eigenvalues", ev.len());

    let diag = s_spectrum(&QMatrix::from_diag(&d))?;
    assert_eq!(diag.spheres.len(), spec.spheres.len());
    Ok(())
}
