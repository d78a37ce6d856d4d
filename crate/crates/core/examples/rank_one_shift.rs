//! Rank-one perturbation that plants the eigenvalue 1 while the perturbation
//! itself is nilpotent.

use qspectra::analysis::rank_one_shift;
use qspectra::{QMatrix, QVector};

fn main() -> qspectra::Result<()> {
    let t = QMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])?;
    let x = QVector::basis(2, 1);
    let (f, report) = rank_one_shift(&t, &x)?;

    println!("F =");
    for row in f.rows() {
        let cells: Vec<String> = row.iter().map(|q| format!("{q}")).collect();
        println!("  [{}]", cells.join(", "));
    }
    println!("f(x) = {}, f(Tx) = {}", report.f_of_x, report.f_of_y);
    println!("‖(T+F)²x − 2(T+F)x + x‖ = {:.2e}", report.identity_residual);
    println!("1 ∈ σ_S(T+F): {}", report.one_in_sum);
    println!(
        "1 ∈ σ_S(F): {}, 0 ∈ σ_S(F): {}",
        report.one_in_shift, report.zero_in_shift
    );
    println!(
        "F² = 0: {}",
        (&f * &f).max_abs_diff(&QMatrix::zeros(2)) < 1e-14
    );
    Ok(())
}
