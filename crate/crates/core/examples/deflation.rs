//! Moves one isolated sphere along the real axis with `A + α·P`.

use qspectra::analysis::{deflation_check, finite_type_check};
use qspectra::random::{seeded, separated_instance};

fn main() -> qspectra::Result<()> {
    let inst = separated_instance(5, 0.5, &mut seeded(21));
    let (s, _) = inst.spheres[0];

    let ft = finite_type_check(&inst.matrix, &s)?;
    println!(
        "sphere ({:.3}, {:.3}): finite type {}, multiplicity {:?}",
        s.re, s.rho, ft.is_finite_type, ft.multiplicity
    );

    let r = deflation_check(&inst.matrix, &s, 0.2)?;
    for (name, spec) in [("before", &r.before), ("after", &r.after)] {
        let list: Vec<String> = spec
            .spheres
            .iter()
            .map(|t| format!("({:.3}, {:.3})", t.re, t.rho))
            .collect();
        println!("{name:>6}: {}", list.join(" "));
    }
    println!(
        "Hausdorff to expected {:.2e}, rest moved by {:.2e}",
        r.hausdorff, r.complement_drift
    );
    Ok(())
}
