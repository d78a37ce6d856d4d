//! Eigenvalues of dense complex matrices: Householder reduction to upper
//! Hessenberg form followed by single-shift complex QR with Wilkinson
//! shifts and deflation.

use nalgebra::Complex;

use super::matrix::ComplexMatrix;
use crate::error::{Result, SpectralError};

type C64 = Complex<f64>;

const MAX_ITER_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of `m`, in no particular order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(SpectralError::DimensionMismatch {
            expected: n,
            got: m.ncols(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(SpectralError::EigenFailure(
            "matrix has non-finite entries".into(),
        ));
    }
    let mut h: Vec<C64> = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            h.push(m[(r, c)]);
        }
    }
    hessenberg(&mut h, n);
    hessenberg_qr(&mut h, n)
}

#[inline]
fn at(n: usize, r: usize, c: usize) -> usize {
    r * n + c
}

/// In-place Householder reduction. Columns whose entries below the
/// subdiagonal already vanish are left untouched, so triangular input
/// passes through unchanged.
fn hessenberg(h: &mut [C64], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![C64::new(0.0, 0.0); n];
    for k in 0..n - 2 {
        let tail: f64 = (k + 2..n).map(|r| h[at(n, r, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[at(n, k + 1, k)];
        let alpha = (tail + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for r in k + 1..n {
            v[r] = h[at(n, r, k)];
        }
        v[k + 1] += phase * alpha;
        let vnorm2: f64 = (k + 1..n).map(|r| v[r].norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        // H ← (I − β v vᴴ) H
        for c in k..n {
            let mut s = C64::new(0.0, 0.0);
            for r in k + 1..n {
                s += v[r].conj() * h[at(n, r, c)];
            }
            s *= beta;
            for r in k + 1..n {
                h[at(n, r, c)] -= v[r] * s;
            }
        }
        // H ← H (I − β v vᴴ)
        for r in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for c in k + 1..n {
                s += h[at(n, r, c)] * v[c];
            }
            s *= beta;
            for c in k + 1..n {
                h[at(n, r, c)] -= s * v[c].conj();
            }
        }
        for r in k + 2..n {
            h[at(n, r, k)] = C64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalues of the 2×2 block `[[a, b], [c, d]]`, the one nearer `d` first.
fn eig2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let denom = if (p + disc).norm() >= (p - disc).norm() {
        p + disc
    } else {
        p - disc
    };
    let near = if denom.norm() == 0.0 {
        d
    } else {
        d - bc / denom
    };
    let far = a + d - near;
    (near, far)
}

fn hessenberg_qr(h: &mut [C64], n: usize) -> Result<Vec<C64>> {
    let mut eig = vec![C64::new(0.0, 0.0); n];
    let anorm: f64 = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total_iter = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[at(n, 0, 0)];
            break;
        }
        // Find the start of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[at(n, lo, lo - 1)].norm();
            let mut s = h[at(n, lo, lo)].norm() + h[at(n, lo - 1, lo - 1)].norm();
            if s == 0.0 {
                s = anorm;
            }
            if sub <= eps * s {
                h[at(n, lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[at(n, hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        if lo + 1 == hi {
            let (near, far) = eig2(
                h[at(n, lo, lo)],
                h[at(n, lo, hi)],
                h[at(n, hi, lo)],
                h[at(n, hi, hi)],
            );
            eig[hi] = near;
            eig[lo] = far;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total_iter += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(SpectralError::EigenFailure(format!(
                "QR iteration did not converge for eigenvalue {hi} after {MAX_ITER_PER_EIGENVALUE} sweeps ({total_iter} total)"
            )));
        }
        let shift = if iter.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            let d = h[at(n, hi, hi)];
            d + C64::new(
                h[at(n, hi, hi - 1)].norm() + h[at(n, hi - 1, hi - 2)].norm(),
                0.0,
            )
        } else {
            eig2(
                h[at(n, hi - 1, hi - 1)],
                h[at(n, hi - 1, hi)],
                h[at(n, hi, hi - 1)],
                h[at(n, hi, hi)],
            )
            .0
        };
        qr_sweep(h, n, lo, hi, shift);
    }
    Ok(eig)
}

/// One shifted QR step `H − μI = QR`, `H ← RQ + μI` on rows/columns `lo..=hi`.
fn qr_sweep(h: &mut [C64], n: usize, lo: usize, hi: usize, shift: C64) {
    for k in lo..=hi {
        h[at(n, k, k)] -= shift;
    }
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[at(n, k, k)];
        let b = h[at(n, k + 1, k)];
        let (c, s) = givens(a, b);
        for j in k..=hi {
            let x = h[at(n, k, j)];
            let y = h[at(n, k + 1, j)];
            h[at(n, k, j)] = x * c + s * y;
            h[at(n, k + 1, j)] = -s.conj() * x + y * c;
        }
        rots.push((c, s));
    }
    for (off, &(c, s)) in rots.iter().enumerate() {
        let k = lo + off;
        let top = (k + 2).min(hi);
        for i in lo..=top {
            let x = h[at(n, i, k)];
            let y = h[at(n, i, k + 1)];
            h[at(n, i, k)] = x * c + y * s.conj();
            h[at(n, i, k + 1)] = -x * s + y * c;
        }
    }
    for k in lo..=hi {
        h[at(n, k, k)] += shift;
    }
}

/// Rotation `[[c, s], [−s̄, c]]` with real `c` mapping `(a, b)` to `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let norm = an.hypot(bn);
    let alpha = a / an;
    (an / norm, alpha * b.conj() / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_and_triangular_are_exact() {
        let m = ComplexMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 2.0),
                c(5.0, 0.0),
                c(0.0, 1.0),
                c(0.0, 0.0),
                c(-3.0, 0.0),
                c(2.0, 2.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.5, -1.0),
            ],
        );
        let e = sorted(eigenvalues(&m).unwrap());
        assert_eq!(e, vec![c(-3.0, 0.0), c(0.5, -1.0), c(1.0, 2.0)]);
    }

    #[test]
    fn nilpotent_shift_has_zero_spectrum() {
        let n = 12;
        let m = ComplexMatrix::from_fn(n, n, |r, cc| {
            if cc == r + 1 {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!(eigenvalues(&m).unwrap().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn rotation_matrix() {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        );
        let e = sorted(eigenvalues(&m).unwrap());
        assert!((e[0] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((e[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn similarity_of_known_diagonal() {
        // S·D·S⁻¹ with a fixed well-conditioned S.
        let n = 6;
        let d: Vec<C64> = (0..n)
            .map(|k| c(k as f64 - 2.5, (k as f64 * 0.7).sin()))
            .collect();
        let s = ComplexMatrix::from_fn(n, n, |r, cc| {
            let base = if r == cc { c(3.0, 0.0) } else { c(0.0, 0.0) };
            base + c(
                ((r * 7 + cc * 3) % 5) as f64 * 0.1,
                ((r + 2 * cc) % 3) as f64 * 0.2,
            )
        });
        let dm = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(d.clone()));
        let sinv = s.clone().try_inverse().unwrap();
        let m = &s * dm * sinv;
        let e = sorted(eigenvalues(&m).unwrap());
        for (x, y) in e.iter().zip(sorted(d)) {
            assert!((x - y).norm() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn trace_and_determinant_preserved() {
        let n = 9;
        let m = ComplexMatrix::from_fn(n, n, |r, cc| {
            c(
                ((r * 13 + cc * 7) % 11) as f64 / 11.0 - 0.5,
                ((r * 5 + cc * 17) % 7) as f64 / 7.0 - 0.5,
            )
        });
        let e = eigenvalues(&m).unwrap();
        let tr: C64 = e.iter().sum();
        assert!((tr - m.trace()).norm() < 1e-12);
        let det: C64 = e.iter().product();
        assert!((det - m.clone().determinant()).norm() < 1e-11 * (1.0 + det.norm()));
    }
}
