//! Division of `q^{2n} − 2Re(sⁿ)qⁿ + |sⁿ|²` by the companion quadratic of `s`.

use qspectra::calculus::{companion, divide_companion, power_polynomial};
use qspectra::Quaternion;

fn main() {
    let s = Quaternion::new(0.5, 1.0, -0.5, 0.25);
    for n in 1..=4 {
        let (quot, rem) = divide_companion(n, s);
        let back = quot
            .mul(&companion(s))
            .max_abs_diff(&power_polynomial(n, s));
        println!(
            "n = {n}: quotient {:?}, remainder {:.1e}, reconstruction {:.1e}",
            quot.coeffs(),
            rem.max_abs_coeff(),
            back
        );
    }
}
