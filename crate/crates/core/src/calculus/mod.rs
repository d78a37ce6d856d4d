//! S-resolvents, slice contours, Riesz projections and the polynomial
//! S-functional calculus.
//!
//! All contour integrals are evaluated by the trapezoid rule on circles in a
//! single slice `C_I`. On a circle `q(θ) = c + r·exp(Iθ)` the measure
//! `dq_I = −dq·I` reduces to `r·exp(Iθ)·dθ` because every factor lies in
//! `C_I`. Operator–scalar products are entrywise: `S·dq_I` multiplies each
//! entry of `S` on the right, `dq_I·S` on the left.

mod contour;
mod poly;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};
use crate::linalg::{
    apply_qq_real, qrank, s_spectrum, singular_values, solve_unchecked, QMatrix, SpectrumResult,
    RANK_TOL,
};
use crate::quat::{ImaginaryUnit, Quaternion, Sphere};

pub use contour::{
    build_contour, complement_gap, full_contour, match_targets, Circle, Contour, ContourOptions,
    Node, DEFAULT_NODES, ISOLATION_TOL, MATCH_TOL, MIN_NODES,
};
pub use poly::{companion, divide_companion, power_polynomial, RealPolynomial};

/// Relative singularity threshold for [`s_resolvent`].
pub const RESOLVENT_TOL: f64 = 1e-12;

/// Which S-resolvent, and on which side the scalar measure multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Precomputed pieces shared by every resolvent evaluation of one matrix.
struct ResolventKernel<'a> {
    a: &'a QMatrix,
    a2: QMatrix,
}

impl<'a> ResolventKernel<'a> {
    fn new(a: &'a QMatrix) -> Self {
        Self { a, a2: a * a }
    }

    fn qq(&self, q: Quaternion) -> QMatrix {
        let mut out = &self.a2 - &self.a.scale(2.0 * q.re());
        for k in 0..self.a.dim() {
            out[(k, k)] += Quaternion::real(q.norm_sqr());
        }
        out
    }

    /// `A − q̄·I`, the scalar acting entrywise on the identity.
    fn shifted(&self, q: Quaternion) -> QMatrix {
        let mut out = self.a.clone();
        let qc = q.conj();
        for k in 0..self.a.dim() {
            out[(k, k)] -= qc;
        }
        out
    }

    fn eval(&self, q: Quaternion, side: Side) -> Option<QMatrix> {
        let qq = self.qq(q);
        let shifted = self.shifted(q);
        let x = match side {
            Side::Left => solve_unchecked(&qq, &shifted)?,
            Side::Right => &shifted * &solve_unchecked(&qq, &QMatrix::identity(self.a.dim()))?,
        };
        x.is_finite().then(|| -&x)
    }
}

/// `S_L⁻¹(q, A) = −Q_q(A)⁻¹(A − q̄I)` or `S_R⁻¹(q, A) = −(A − q̄I)Q_q(A)⁻¹`.
pub fn s_resolvent(q: Quaternion, a: &QMatrix, side: Side) -> Result<QMatrix> {
    let n = a.dim();
    let qq = apply_qq_real(a, q.re(), q.norm_sqr());
    let sv = singular_values(&qq);
    if n > 0 {
        let (smax, smin) = (sv[0], sv[sv.len() - 1]);
        if !(smin > RESOLVENT_TOL * smax.max(1.0)) {
            return Err(SpectralError::OnSpectrum {
                q: q.to_string(),
                mu: smin,
            });
        }
    }
    ResolventKernel::new(a)
        .eval(q, side)
        .ok_or(SpectralError::OnSpectrum {
            q: q.to_string(),
            mu: 0.0,
        })
}

/// Sums in a fixed binary tree so the result does not depend on how node
/// evaluations were scheduled.
fn pairwise_sum(mut terms: Vec<QMatrix>, n: usize) -> QMatrix {
    if terms.is_empty() {
        return QMatrix::zeros(n);
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}

/// `(1/2π)∮ S⁻¹(q, A)·dq_I·f(q)` (left) or `(1/2π)∮ f(q)·dq_I·S⁻¹(q, A)` (right)
/// by the trapezoid rule. `f = None` stands for `f ≡ 1`.
fn contour_integral(
    a: &QMatrix,
    contour: &Contour,
    side: Side,
    f: Option<&(dyn Fn(Quaternion) -> Quaternion + Sync)>,
) -> Result<QMatrix> {
    let kernel = ResolventKernel::new(a);
    let nodes = contour.nodes();
    let terms: Vec<Option<QMatrix>> = nodes
        .par_iter()
        .map(|node| {
            let s = kernel.eval(node.q, side)?;
            let fq = f.map_or(Quaternion::ONE, |f| f(node.q));
            Some(match side {
                Side::Left => s.right_scalar(node.weight * fq),
                Side::Right => s.left_scalar(fq * node.weight),
            })
        })
        .collect();
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        // A node on the spectrum makes Q_q(A) exactly singular.
        out.push(t.ok_or(SpectralError::SingularOperator {
            sigma_min: 0.0,
            tol: 0.0,
        })?);
    }
    Ok(pairwise_sum(out, a.dim()))
}

/// Riesz projector with its quality diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionResult {
    #[serde(rename = "P")]
    pub p: QMatrix,
    /// `‖P² − P‖_F`
    pub idempotency_residual: f64,
    /// `‖PA − AP‖_F`
    pub commutator_residual: f64,
    pub rank: usize,
    pub slice_unit: ImaginaryUnit,
    pub nodes: usize,
    pub contour: Contour,
}

impl ProjectionResult {
    fn new(a: &QMatrix, p: QMatrix, contour: Contour) -> Self {
        let idempotency_residual = (&(&p * &p) - &p).norm_fro();
        let commutator_residual = (&(&p * a) - &(a * &p)).norm_fro();
        let rank = qrank(&p, RANK_TOL);
        ProjectionResult {
            p,
            idempotency_residual,
            commutator_residual,
            rank,
            slice_unit: contour.unit,
            nodes: contour.nodes_per_circle,
            contour,
        }
    }
}

/// Options shared by projection and calculus routines.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureOptions {
    pub unit: Option<ImaginaryUnit>,
    pub nodes: usize,
    pub side: Side,
    pub contour: ContourOptions,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            unit: None,
            nodes: DEFAULT_NODES,
            side: Side::Left,
            contour: ContourOptions::default(),
        }
    }
}

impl QuadratureOptions {
    pub fn with_unit(mut self, unit: ImaginaryUnit) -> Self {
        self.unit = Some(unit);
        self
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }
}

/// Spectral spheres are stored as points of `C_i`, so the default slice is `i`.
pub fn default_slice_unit(_target: &[Sphere]) -> ImaginaryUnit {
    ImaginaryUnit::I
}

/// Riesz projection onto the isolated part `target` of `σ_S(A)`.
pub fn riesz_projection(
    a: &QMatrix,
    target: &[Sphere],
    unit: ImaginaryUnit,
    nodes: usize,
    side: Side,
) -> Result<ProjectionResult> {
    let spectrum = s_spectrum(a)?;
    riesz_projection_with(
        a,
        &spectrum,
        target,
        QuadratureOptions::default()
            .with_unit(unit)
            .with_nodes(nodes)
            .with_side(side),
    )
}

/// As [`riesz_projection`] with a precomputed spectrum.
pub fn riesz_projection_with(
    a: &QMatrix,
    spectrum: &SpectrumResult,
    target: &[Sphere],
    opts: QuadratureOptions,
) -> Result<ProjectionResult> {
    let unit = opts.unit.unwrap_or_else(|| default_slice_unit(target));
    let contour = build_contour(target, spectrum, unit, opts.nodes, opts.contour)?;
    let p = contour_integral(a, &contour, opts.side, None)?;
    Ok(ProjectionResult::new(a, p, contour))
}

/// Integral of the S-resolvent over a given contour, without building one.
pub fn projection_over(a: &QMatrix, contour: &Contour, side: Side) -> Result<ProjectionResult> {
    let p = contour_integral(a, contour, side, None)?;
    Ok(ProjectionResult::new(a, p, contour.clone()))
}

/// `f(q) = Σ_m q^m·a_m` with right coefficients.
pub fn eval_poly(coeffs: &[Quaternion], q: Quaternion) -> Quaternion {
    let mut power = Quaternion::ONE;
    let mut acc = Quaternion::ZERO;
    for c in coeffs {
        acc += power * *c;
        power *= q;
    }
    acc
}

/// Direct evaluation `Σ_m A^m·a_m`, each coefficient multiplying entries on the right.
pub fn poly_direct(a: &QMatrix, coeffs: &[Quaternion]) -> QMatrix {
    let n = a.dim();
    let mut acc = QMatrix::zeros(n);
    let mut power = QMatrix::identity(n);
    for (m, c) in coeffs.iter().enumerate() {
        if m > 0 {
            power = &power * a;
        }
        acc = &acc + &power.right_scalar(*c);
    }
    acc
}

/// `f(A) = (1/2π)∮ S_L⁻¹(q, A)·dq_I·f(q)` over circles enclosing `σ_S(A)`.
pub fn poly_calculus(
    a: &QMatrix,
    coeffs: &[Quaternion],
    unit: ImaginaryUnit,
    nodes: usize,
) -> Result<QMatrix> {
    let spectrum = s_spectrum(a)?;
    let contour = full_contour(&spectrum, unit, nodes)?;
    let f = |q: Quaternion| eval_poly(coeffs, q);
    contour_integral(a, &contour, Side::Left, Some(&f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, random_quaternion, seeded, separated_instance};

    fn diag(d: &[Quaternion]) -> QMatrix {
        QMatrix::from_diag(d)
    }

    #[test]
    fn resolvent_of_zero_is_scalar_inverse() {
        let q = Quaternion::new(0.5, -1.0, 2.0, 0.25);
        let s = s_resolvent(q, &QMatrix::zeros(2), Side::Left).unwrap();
        let expect = QMatrix::identity(2).left_scalar(q.inv());
        assert!(s.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn resolvent_real_case() {
        let s = s_resolvent(
            Quaternion::real(3.0),
            &diag(&[Quaternion::real(2.0)]),
            Side::Left,
        )
        .unwrap();
        assert!((s[(0, 0)] - Quaternion::ONE).norm() < 1e-15);
    }

    #[test]
    fn resolvent_defining_products() {
        let mut rng = seeded(12);
        let a = random_matrix(3, &mut rng);
        let q = Quaternion::new(6.0, 2.0, -3.0, 1.0);
        let qq = apply_qq_real(&a, q.re(), q.norm_sqr());
        let shifted = &a - &QMatrix::identity(3).left_scalar(q.conj());
        let sl = s_resolvent(q, &a, Side::Left).unwrap();
        let sr = s_resolvent(q, &a, Side::Right).unwrap();
        assert!((&(&qq * &sl) + &shifted).norm_fro() <= 1e-10);
        assert!((&(&sr * &qq) + &shifted).norm_fro() <= 1e-10);
    }

    #[test]
    fn resolvent_on_spectrum_fails() {
        let err = s_resolvent(Quaternion::J, &diag(&[Quaternion::I]), Side::Left).unwrap_err();
        assert!(matches!(err, SpectralError::OnSpectrum { .. }));
    }

    #[test]
    fn block_projector() {
        let a = diag(&[Quaternion::I, Quaternion::new(1.0, 0.0, 2.0, 0.0)]);
        let target = [Sphere::new(0.0, 1.0)];
        let expect = diag(&[Quaternion::ONE, Quaternion::ZERO]);
        for unit in [
            ImaginaryUnit::I,
            ImaginaryUnit::J,
            ImaginaryUnit::new(1.0, 2.0, -0.5).unwrap(),
        ] {
            let r = riesz_projection(&a, &target, unit, 256, Side::Left).unwrap();
            assert!(r.p.max_abs_diff(&expect) <= 1e-8, "{:?}", r.p);
            assert!(r.idempotency_residual <= 1e-8 && r.commutator_residual <= 1e-8);
            assert_eq!(r.rank, 1);
        }
    }

    #[test]
    fn full_and_empty_contours() {
        let mut rng = seeded(30);
        let inst = separated_instance(4, 0.5, &mut rng);
        let spec = s_spectrum(&inst.matrix).unwrap();
        let full = riesz_projection(
            &inst.matrix,
            &spec.sphere_list(),
            ImaginaryUnit::K,
            256,
            Side::Left,
        )
        .unwrap();
        assert!(full.p.max_abs_diff(&QMatrix::identity(4)) <= 1e-8);
        let empty = riesz_projection(&inst.matrix, &[], ImaginaryUnit::K, 256, Side::Left).unwrap();
        assert!(empty.p.norm_fro() <= 1e-10);
    }

    #[test]
    fn left_right_and_slice_agree() {
        let mut rng = seeded(31);
        let inst = separated_instance(4, 0.5, &mut rng);
        let target = [inst.spheres[0].0];
        let l = riesz_projection(&inst.matrix, &target, ImaginaryUnit::I, 256, Side::Left).unwrap();
        let r =
            riesz_projection(&inst.matrix, &target, ImaginaryUnit::J, 256, Side::Right).unwrap();
        assert!(l.p.max_abs_diff(&r.p) <= 1e-8);
        assert!(l.idempotency_residual <= 1e-8);
        assert_eq!(l.rank, inst.spheres[0].1);
    }

    #[test]
    fn polynomial_examples() {
        let a = diag(&[Quaternion::I, Quaternion::J]);
        let one = poly_calculus(&a, &[Quaternion::ONE], ImaginaryUnit::I, 256).unwrap();
        assert!(one.max_abs_diff(&QMatrix::identity(2)) <= 1e-10);
        let id = poly_calculus(
            &a,
            &[Quaternion::ZERO, Quaternion::ONE],
            ImaginaryUnit::I,
            256,
        )
        .unwrap();
        assert!(id.max_abs_diff(&a) <= 1e-10);

        let a = diag(&[Quaternion::I]);
        let coeffs = [Quaternion::ZERO, Quaternion::real(-2.0), Quaternion::ONE];
        let f = poly_calculus(&a, &coeffs, ImaginaryUnit::K, 256).unwrap();
        assert!(f[(0, 0)].max_abs_diff(Quaternion::new(-1.0, -2.0, 0.0, 0.0)) <= 1e-10);
    }

    #[test]
    fn quaternion_coefficients_match_direct() {
        let mut rng = seeded(33);
        let inst = separated_instance(3, 0.5, &mut rng);
        let coeffs: Vec<Quaternion> = (0..3).map(|_| random_quaternion(&mut rng)).collect();
        let f = poly_calculus(&inst.matrix, &coeffs, ImaginaryUnit::J, 256).unwrap();
        let d = poly_direct(&inst.matrix, &coeffs);
        assert!(f.max_abs_diff(&d) <= 1e-8, "{}", f.max_abs_diff(&d));
    }
}
