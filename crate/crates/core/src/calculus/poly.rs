use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::quat::Quaternion;

const TRIM_TOL: f64 = 1e-14;

/// Real polynomial, coefficients in ascending degree. Trailing coefficients
/// with magnitude at most `1e-14` are trimmed; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last().is_some_and(|c| c.abs() <= TRIM_TOL) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn mul(&self, other: &RealPolynomial) -> RealPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RealPolynomial::new(Vec::new());
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }

    /// Evaluates at a quaternion. Real coefficients commute with `q`, so
    /// the value lies in the slice of `q`.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, c| acc * q + Quaternion::real(*c))
    }

    /// Largest coefficientwise difference, padding the shorter with zeros.
    pub fn max_abs_diff(&self, other: &RealPolynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(0.0);
                let b = other.coeffs.get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `q² − 2Re(s)·q + |s|²`, whose roots in `C_{I_s}` are `s` and `s̄`.
pub fn companion(s: Quaternion) -> RealPolynomial {
    RealPolynomial::new(vec![s.norm_sqr(), -2.0 * s.re(), 1.0])
}

/// `q^{2n} − 2Re(sⁿ)·qⁿ + |sⁿ|²`, with `sⁿ` computed in the slice of `s`.
pub fn power_polynomial(n: usize, s: Quaternion) -> RealPolynomial {
    let z = Complex::new(s.re(), s.im_norm()).powu(n as u32);
    let mut c = vec![0.0; 2 * n + 1];
    c[0] += z.norm_sqr();
    c[n] += -2.0 * z.re;
    c[2 * n] += 1.0;
    RealPolynomial::new(c)
}

/// Divides the power polynomial by the companion quadratic of `s`.
/// The quotient has degree `2n − 2` and the remainder vanishes up to rounding.
pub fn divide_companion(n: usize, s: Quaternion) -> (RealPolynomial, RealPolynomial) {
    assert!(n >= 1, "power must be at least 1");
    let num = power_polynomial(n, s);
    let mut rem: Vec<f64> = num.coeffs().to_vec();
    rem.resize(2 * n + 1, 0.0);
    let div = [s.norm_sqr(), -2.0 * s.re(), 1.0];
    let qdeg = 2 * n - 2;
    let mut quot = vec![0.0; qdeg + 1];
    for k in (0..=qdeg).rev() {
        let lead = rem[k + 2];
        quot[k] = lead;
        rem[k + 2] = 0.0;
        rem[k + 1] -= lead * div[1];
        rem[k] -= lead * div[0];
    }
    rem.truncate(2);
    (RealPolynomial::new(quot), RealPolynomial::new(rem))
}
