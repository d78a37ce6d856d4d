//! Right-linear operators on `H^n` in the standard basis.
//!
//! An `n×n` [`QMatrix`] acts on column vectors by `(Av)_j = Σ_k A_jk v_k`.
//! Entries multiply vector components from the left, so `A(v·q) = (Av)·q`
//! and the action is right linear.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};
use crate::quat::Quaternion;

/// Complex matrix used for the adjoint embedding.
pub type ComplexMatrix = DMatrix<Complex<f64>>;

/// Relative threshold used by [`qrank`] unless a caller supplies one.
pub const RANK_TOL: f64 = 1e-8;

/// Relative threshold on the smallest singular value used by [`qsolve`].
pub const SOLVE_TOL: f64 = 1e-13;

/// Column vector in `H^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector(pub Vec<Quaternion>);

impl QVector {
    pub fn zeros(n: usize) -> Self {
        QVector(vec![Quaternion::ZERO; n])
    }

    /// Standard basis vector `e_k`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[k] = Quaternion::ONE;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product `⟨u, v⟩ = Σ conj(u_k)·v_k`, conjugate linear in `u`.
    pub fn inner(&self, other: &QVector) -> Quaternion {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Quaternion::ZERO, |acc, (u, v)| acc + u.conj() * *v)
    }

    /// Right scalar multiple `v·q`.
    pub fn scale_right(&self, q: Quaternion) -> QVector {
        QVector(self.0.iter().map(|v| *v * q).collect())
    }

    pub fn scale(&self, s: f64) -> QVector {
        QVector(self.0.iter().map(|v| *v * s).collect())
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| *a + *b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| *a - *b).collect())
    }
}

/// Square quaternionic matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("QMatrix", 2)?;
        st.serialize_field("entries", &self.rows())?;
        st.serialize_field("n", &self.n)?;
        st.end()
    }
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m[(k, k)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_diag(d: &[Quaternion]) -> Self {
        let mut m = Self::zeros(d.len());
        for (k, q) in d.iter().enumerate() {
            m[(k, k)] = *q;
        }
        m
    }

    /// Builds from nested rows; fails unless the grid is square.
    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(SpectralError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    /// Real matrix from nested rows of `f64`.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Quaternion::real(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, data }
    }

    /// Square matrix whose `k`-th column is `cols[k]`.
    pub fn from_columns(cols: &[QVector]) -> Result<Self> {
        let n = cols.len();
        for c in cols {
            if c.len() != n {
                return Err(SpectralError::DimensionMismatch {
                    expected: n,
                    got: c.len(),
                });
            }
        }
        Ok(Self::from_fn(n, |r, c| cols[c].0[r]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Quaternion>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector((0..self.n).map(|r| self[(r, c)]).collect())
    }

    pub fn columns(&self) -> Vec<QVector> {
        (0..self.n).map(|c| self.column(c)).collect()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q * s)
    }

    /// `q·A`: entries multiplied by `q` on the left.
    pub fn left_scalar(&self, q: Quaternion) -> Self {
        self.map(|a| q * a)
    }

    /// `A·q`: entries multiplied by `q` on the right.
    pub fn right_scalar(&self, q: Quaternion) -> Self {
        self.map(|a| a * q)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|q| f(*q)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(v.len(), self.n, "vector length must match matrix dimension");
        QVector(
            (0..self.n)
                .map(|r| {
                    let row = &self.data[r * self.n..(r + 1) * self.n];
                    row.iter()
                        .zip(&v.0)
                        .fold(Quaternion::ZERO, |acc, (a, x)| acc + *a * *x)
                })
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest componentwise difference, for entrywise agreement checks.
    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }

    /// True when every entry lies in `C_i`, making the embedding block diagonal.
    pub fn is_complex_i(&self) -> bool {
        self.data.iter().all(|q| q.y == 0.0 && q.z == 0.0)
    }

    /// Operator norm, the largest singular value of the embedding.
    pub fn op_norm(&self) -> f64 {
        singular_values(self).first().copied().unwrap_or(0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|q| q.to_array().iter().all(|v| v.is_finite()))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.n + c]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = QMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        QMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        QMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.map(|q| -q)
    }
}

/// Rectangular `rows×cols` quaternionic matrix, used for bases and restrictions.
#[derive(Clone, Debug, PartialEq)]
pub struct RectMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Quaternion>,
}

impl RectMatrix {
    pub fn from_columns(rows: usize, cols: &[QVector]) -> Self {
        let mut data = vec![Quaternion::ZERO; rows * cols.len()];
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for r in 0..rows {
                data[r * cols.len() + c] = v.0[r];
            }
        }
        Self {
            rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        self.data[r * self.cols + c]
    }

    /// `Bᴴ·A·B` for a square `A`; the matrix of `A` restricted to an
    /// invariant subspace with orthonormal basis `B`.
    pub fn compress(&self, a: &QMatrix) -> QMatrix {
        assert_eq!(a.dim(), self.rows);
        let k = self.cols;
        let cols: Vec<QVector> = (0..k).map(|c| self.column(c)).collect();
        let images: Vec<QVector> = cols.iter().map(|v| a.mul_vec(v)).collect();
        QMatrix::from_fn(k, |r, c| cols[r].inner(&images[c]))
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector((0..self.rows).map(|r| self.get(r, c)).collect())
    }
}

/// Splits `q = a + b·j` with `a, b ∈ C_i`.
#[inline]
pub fn split_ij(q: Quaternion) -> (Complex<f64>, Complex<f64>) {
    (Complex::new(q.w, q.x), Complex::new(q.y, q.z))
}

#[inline]
fn join_ij(a: Complex<f64>, b: Complex<f64>) -> Quaternion {
    Quaternion::new(a.re, a.im, b.re, b.im)
}

/// Complex adjoint `[[A₁, A₂], [−conj(A₂), conj(A₁)]]` where `A = A₁ + A₂·j`.
pub fn chi(a: &QMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let (p, q) = split_ij(a[(r, c)]);
            m[(r, c)] = p;
            m[(r, n + c)] = q;
            m[(n + r, c)] = -q.conj();
            m[(n + r, n + c)] = p.conj();
        }
    }
    m
}

/// Inverse of [`chi`] on its image. Both block rows are averaged.
pub fn unchi(m: &ComplexMatrix) -> QMatrix {
    let n = m.nrows() / 2;
    QMatrix::from_fn(n, |r, c| {
        let a = (m[(r, c)] + m[(n + r, n + c)].conj()) * 0.5;
        let b = (m[(r, n + c)] - m[(n + r, c)].conj()) * 0.5;
        join_ij(a, b)
    })
}

/// The `C_i` block `A₁` of a matrix whose entries all lie in `C_i`.
fn complex_block(a: &QMatrix) -> ComplexMatrix {
    let n = a.dim();
    ComplexMatrix::from_fn(n, n, |r, c| split_ij(a[(r, c)]).0)
}

/// Singular values of `chi(a)`, sorted descending. Each appears twice.
pub fn singular_values(a: &QMatrix) -> Vec<f64> {
    if a.dim() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = if a.is_complex_i() {
        // chi is block diagonal with blocks A₁ and conj(A₁).
        let s = complex_block(a).singular_values();
        s.iter().flat_map(|v| [*v, *v]).collect()
    } else {
        chi(a).singular_values().iter().copied().collect()
    };
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Rank over `H`: half the number of singular values of `chi(a)` above
/// `tol·σ_max`.
pub fn qrank(a: &QMatrix, tol: f64) -> usize {
    assert!(tol > 0.0, "rank tolerance must be positive");
    let sv = singular_values(a);
    let smax = match sv.first() {
        Some(&s) if s > 0.0 => s,
        _ => return 0,
    };
    let count = sv.iter().filter(|&&s| s > tol * smax).count();
    count.div_ceil(2)
}

/// `A² − 2Re(q)·A + |q|²·I`.
pub fn apply_qq(a: &QMatrix, q: Quaternion) -> QMatrix {
    apply_qq_real(a, q.re(), q.norm_sqr())
}

/// `A² − 2·re·A + norm_sqr·I`, the real-coefficient core of [`apply_qq`].
pub fn apply_qq_real(a: &QMatrix, re: f64, norm_sqr: f64) -> QMatrix {
    let mut out = &(a * a) - &a.scale(2.0 * re);
    for k in 0..a.dim() {
        out[(k, k)] += Quaternion::real(norm_sqr);
    }
    out
}

/// Solves `A·X = B` in the adjoint picture with the default tolerance.
pub fn qsolve(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    qsolve_tol(a, b, SOLVE_TOL)
}

/// Solves `A·X = B`; fails when `σ_min(chi(A)) ≤ tol·σ_max(chi(A))`.
pub fn qsolve_tol(a: &QMatrix, b: &QMatrix, tol: f64) -> Result<QMatrix> {
    if a.dim() != b.dim() {
        return Err(SpectralError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if a.dim() == 0 {
        return Ok(QMatrix::zeros(0));
    }
    let sv = singular_values(a);
    let smax = sv[0];
    let smin = *sv.last().unwrap();
    if !(smin > tol * smax) {
        return Err(SpectralError::SingularOperator {
            sigma_min: smin,
            tol: tol * smax,
        });
    }
    solve_unchecked(a, b).ok_or(SpectralError::SingularOperator {
        sigma_min: smin,
        tol: tol * smax,
    })
}

/// LU solve without the singular-value gate. `None` on an exactly zero pivot.
pub(crate) fn solve_unchecked(a: &QMatrix, b: &QMatrix) -> Option<QMatrix> {
    if a.is_complex_i() && b.is_complex_i() {
        let x = complex_block(a).lu().solve(&complex_block(b))?;
        let n = a.dim();
        return Some(QMatrix::from_fn(n, |r, c| {
            let z = x[(r, c)];
            Quaternion::new(z.re, z.im, 0.0, 0.0)
        }));
    }
    let x = chi(a).lu().solve(&chi(b))?;
    Some(unchi(&x))
}

/// Unit vector `x` minimizing `‖Ax‖`, with that minimum. A complex null
/// vector `[w₁; w₂]` of `chi(A)` corresponds to `x = w₁ − conj(w₂)·j`.
pub fn null_vector(a: &QMatrix) -> (QVector, f64) {
    let n = a.dim();
    let svd = chi(a).svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let k = (0..svd.singular_values.len())
        .min_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]))
        .expect("nonempty matrix");
    let x = QVector(
        (0..n)
            .map(|r| {
                let w1 = vt[(k, r)].conj();
                let w2 = vt[(k, n + r)].conj();
                Quaternion::new(w1.re, w1.im, -w2.re, w2.im)
            })
            .collect(),
    );
    let norm = x.norm();
    (x.scale(1.0 / norm), svd.singular_values[k])
}

/// Right Gram–Schmidt with one reorthogonalization pass.
///
/// The output spans the same right subspace and satisfies
/// `⟨u_i, u_j⟩ = δ_ij`. A vector whose residual after projection falls to
/// `tol` times its own norm is rejected as dependent.
pub fn gram_schmidt(vectors: &[QVector], tol: f64) -> Result<Vec<QVector>> {
    let mut out: Vec<QVector> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let original = v.norm();
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = u.inner(&w);
                w = &w - &u.scale_right(c);
            }
        }
        let residual = w.norm();
        if !(residual > tol * original.max(f64::MIN_POSITIVE)) {
            return Err(SpectralError::DependentInput { index, residual });
        }
        out.push(w.scale(1.0 / residual));
    }
    Ok(out)
}

/// Columns of `a` chosen greedily by largest residual norm, then
/// orthonormalized: an orthonormal basis of the column range.
pub fn range_basis(a: &QMatrix, tol: f64) -> Vec<QVector> {
    let scale = a.columns().iter().map(QVector::norm).fold(0.0, f64::max);
    range_basis_scaled(a, tol, scale)
}

/// As [`range_basis`], with residuals compared against `tol·scale` for a
/// caller-supplied `scale`, so that a numerically zero matrix has an empty range.
pub fn range_basis_scaled(a: &QMatrix, tol: f64, scale: f64) -> Vec<QVector> {
    let n = a.dim();
    if scale == 0.0 {
        return Vec::new();
    }
    let mut residuals = a.columns();
    let mut basis: Vec<QVector> = Vec::new();
    let mut used = vec![false; n];
    loop {
        let (best, norm) = residuals
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, v)| (k, v.norm()))
            .fold(
                (usize::MAX, 0.0),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
        if best == usize::MAX || norm <= tol * scale {
            break;
        }
        used[best] = true;
        let u = residuals[best].scale(1.0 / norm);
        // Reorthogonalize the pick against earlier basis vectors.
        let mut u2 = u.clone();
        for b in &basis {
            let c = b.inner(&u2);
            u2 = &u2 - &b.scale_right(c);
        }
        let u = u2.scale(1.0 / u2.norm());
        for (k, r) in residuals.iter_mut().enumerate() {
            if !used[k] {
                let c = u.inner(r);
                *r = &*r - &u.scale_right(c);
            }
        }
        basis.push(u);
    }
    basis
}
