//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Oracles are computed here from first principles where possible: the
//! complex adjoint is rebuilt from quaternion components, spectra of
//! constructed instances are known by construction, and polynomial values
//! come from plain matrix products.

use std::time::{Duration, Instant};

use nalgebra::{Complex, DMatrix};
use rand::Rng;

use qspectra::analysis::{
    deflate_sphere, deflation_check, multiplicity_sum_check, projector_uniqueness_check,
    rank_one_shift, resolvent_neighborhood, riesz_decompose, IsolatedPart,
};
use qspectra::calculus::{
    divide_companion, full_contour, poly_calculus, projection_over, riesz_projection_with, Contour,
    QuadratureOptions, Side,
};
use qspectra::linalg::{apply_qq, qrank, qsolve, s_spectrum, RANK_TOL};
use qspectra::random::{
    random_matrix, random_quaternion, random_unit, seeded, standard_instances, Instance,
};
use qspectra::shift::{approx_eigvector, exterior_margin, truncated_shift};
use qspectra::verify::{mu_perturbation_violations, sphere_property_residual};
use qspectra::{ImaginaryUnit, QMatrix, QVector, Quaternion, Sphere};

const SEED: u64 = 20_240_917;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

/// Complex adjoint from components: `q = (w + x·i) + (y + z·i)·j`.
fn chi_oracle(a: &QMatrix) -> DMatrix<Complex<f64>> {
    let n = a.dim();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let q = a[(r, c)];
            let z1 = Complex::new(q.w, q.x);
            let z2 = Complex::new(q.y, q.z);
            m[(r, c)] = z1;
            m[(r, c + n)] = z2;
            m[(r + n, c)] = -z2.conj();
            m[(r + n, c + n)] = z1.conj();
        }
    }
    m
}

fn sigma_min(a: &QMatrix) -> f64 {
    chi_oracle(a).singular_values().min()
}

fn sphere_distance(a: &Sphere, b: &Sphere) -> f64 {
    (a.re - b.re).hypot(a.rho - b.rho)
}

fn hausdorff_oracle(a: &[Sphere], b: &[Sphere]) -> f64 {
    let one_way = |x: &[Sphere], y: &[Sphere]| {
        x.iter()
            .map(|s| {
                y.iter()
                    .map(|t| sphere_distance(s, t))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    one_way(a, b).max(one_way(b, a))
}

/// Multiplicity of `s` in a computed spectrum, zero if absent.
fn mult_in(spec: &qspectra::SpectrumResult, s: &Sphere, tol: f64) -> usize {
    spec.spheres
        .iter()
        .filter(|t| sphere_distance(&t.sphere(), s) <= tol)
        .map(|t| t.mult)
        .sum()
}

fn max_entry(a: &QMatrix) -> f64 {
    a.entries().iter().map(|q| q.norm()).fold(0.0, f64::max)
}

fn instances() -> Vec<Instance> {
    standard_instances(SEED, 25)
}

fn projector(inst: &Instance, target: &[Sphere], opts: QuadratureOptions) -> QMatrix {
    let spec = s_spectrum(&inst.matrix).expect("spectrum");
    riesz_projection_with(&inst.matrix, &spec, target, opts)
        .expect("projection")
        .p
}

fn sphere_property() -> Outcome {
    let start = Instant::now();
    let worst = sphere_property_residual(SEED, 50, 10);
    let elapsed = start.elapsed();
    // Cross-check a handful of spheres with the independent adjoint.
    let mut rng = seeded(SEED ^ 0x51);
    let mut oracle: f64 = 0.0;
    for k in 0..10 {
        let a = random_matrix(1 + k % 8, &mut rng);
        let norm = chi_oracle(&a).singular_values().max();
        for s in s_spectrum(&a).unwrap().spheres {
            let q = s.sphere().point(random_unit(&mut rng));
            oracle = oracle.max(sigma_min(&apply_qq(&a, q)) / norm);
        }
    }
    let passed = worst <= 1e-6 && oracle <= 1e-6 && elapsed < Duration::from_secs(10);
    outcome(
        passed,
        format!(
            "max σ_min/‖chi(A)‖ = {worst:.2e} (oracle {oracle:.2e}), {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn projector_quality() -> Outcome {
    let mut rng = seeded(SEED ^ 0x52);
    let units = [
        ImaginaryUnit::I,
        ImaginaryUnit::J,
        ImaginaryUnit::K,
        random_unit(&mut rng),
    ];
    let (mut quality, mut sides, mut slices, mut refine): (f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0);
    for inst in instances() {
        for (s, _) in &inst.spheres {
            let target = [*s];
            let base = projector(&inst, &target, QuadratureOptions::default());
            let a = &inst.matrix;
            quality = quality.max(max_entry(&(&(&base * &base) - &base)));
            quality = quality.max(max_entry(&(&(&base * a) - &(a * &base))));
            let right = projector(
                &inst,
                &target,
                QuadratureOptions::default().with_side(Side::Right),
            );
            sides = sides.max(base.max_abs_diff(&right));
            for u in units {
                slices = slices.max(base.max_abs_diff(&projector(
                    &inst,
                    &target,
                    QuadratureOptions::default().with_unit(u),
                )));
            }
            let p128 = projector(&inst, &target, QuadratureOptions::default().with_nodes(128));
            let p256 = projector(&inst, &target, QuadratureOptions::default().with_nodes(256));
            refine = refine.max(p128.max_abs_diff(&p256));
        }
    }
    let passed = quality <= 1e-8 && sides <= 1e-8 && slices <= 1e-8 && refine <= 1e-10;
    outcome(
        passed,
        format!("residuals {quality:.2e}, left/right {sides:.2e}, slices {slices:.2e}, 128→256 {refine:.2e}"),
    )
}

fn riesz_decomposition() -> Outcome {
    let mut rng = seeded(SEED ^ 0x53);
    let mut worst: f64 = 0.0;
    let mut mult_ok = true;
    for inst in instances() {
        let spec = s_spectrum(&inst.matrix).unwrap();
        let m = inst.spheres.len();
        let mask: u32 = rng.random_range(1..(1u32 << m));
        let (part, rest): (Vec<_>, Vec<_>) = inst
            .spheres
            .iter()
            .enumerate()
            .partition(|(k, _)| mask & (1 << k) != 0);
        let part: Vec<(Sphere, usize)> = part.into_iter().map(|(_, s)| *s).collect();
        let rest: Vec<(Sphere, usize)> = rest.into_iter().map(|(_, s)| *s).collect();
        let spheres: Vec<Sphere> = part.iter().map(|(s, _)| *s).collect();
        let report =
            riesz_decompose(&inst.matrix, &IsolatedPart::of(&spec, &spheres).unwrap()).unwrap();
        for (computed, expected) in [(&report.spectra1, &part), (&report.spectra2, &rest)] {
            let want: Vec<Sphere> = expected.iter().map(|(s, _)| *s).collect();
            worst = worst.max(hausdorff_oracle(&computed.sphere_list(), &want));
            mult_ok &=
                computed.total_multiplicity() == expected.iter().map(|(_, k)| k).sum::<usize>();
            mult_ok &= expected
                .iter()
                .all(|(s, k)| mult_in(computed, s, 1e-6) == *k);
        }
        mult_ok &= report.holds();
    }
    outcome(
        worst <= 1e-6 && mult_ok,
        format!("split Hausdorff {worst:.2e}, multiplicities match: {mult_ok}"),
    )
}

fn block_instance(rng: &mut impl Rng, k: usize, n: usize) -> (QMatrix, QMatrix) {
    let b1 = random_matrix(k, rng);
    let b2 = &random_matrix(n - k, rng) + &QMatrix::identity(n - k).scale(12.0);
    let a = QMatrix::from_fn(n, |r, c| match (r < k, c < k) {
        (true, true) => b1[(r, c)],
        (false, false) => b2[(r - k, c - k)],
        _ => Quaternion::ZERO,
    });
    let p = QMatrix::from_fn(n, |r, c| {
        if r == c && r < k {
            Quaternion::ONE
        } else {
            Quaternion::ZERO
        }
    });
    (a, p)
}

fn uniqueness() -> Outcome {
    let mut rng = seeded(SEED ^ 0x54);
    let mut worst: f64 = 0.0;
    for t in 0..12 {
        let n = 2 + t % 5;
        let k = 1 + t % (n - 1);
        let (a, p) = block_instance(&mut rng, k, n);
        worst = worst.max(projector_uniqueness_check(&a, &p).unwrap_or(f64::INFINITY));
        // The same pair after a well-conditioned similarity.
        let g = random_matrix(n, &mut rng);
        let s = &QMatrix::identity(n) + &g.scale(0.2 / g.op_norm());
        let sinv = qsolve(&s, &QMatrix::identity(n)).unwrap();
        let (a2, p2) = (&(&s * &a) * &sinv, &(&s * &p) * &sinv);
        worst = worst.max(projector_uniqueness_check(&a2, &p2).unwrap_or(f64::INFINITY));
    }
    outcome(worst <= 1e-8, format!("max ‖P − P_σ1‖ = {worst:.2e}"))
}

fn multiplicity_sum() -> Outcome {
    let mut mismatches = 0;
    for inst in instances() {
        let spec = s_spectrum(&inst.matrix).unwrap();
        for (s, m) in &inst.spheres {
            let p = projector(&inst, &[*s], QuadratureOptions::default());
            if qrank(&p, RANK_TOL) != *m || mult_in(&spec, s, 1e-6) != *m {
                mismatches += 1;
            }
        }
        let (rank, sum) =
            multiplicity_sum_check(&inst.matrix, &IsolatedPart::whole(&spec)).unwrap();
        if rank != sum || sum != inst.matrix.dim() {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{mismatches} rank/multiplicity mismatches"),
    )
}

fn rank_one_construction() -> Outcome {
    let t = QMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
    let x = QVector::basis(2, 1);
    let (f, report) = rank_one_shift(&t, &x).unwrap();
    let sum = &t + &f;
    let sx = sum.mul_vec(&x);
    let lhs = &sum.mul_vec(&sx) - &sx.scale(2.0);
    let residual = (&lhs + &x).norm();
    // F has rank one and trace f(x − y) = 0, so F² = 0 and σ_S(F) = {0}.
    let nilpotent = max_entry(&(&f * &f));
    let one_in_sum = sigma_min(&apply_qq(&sum, Quaternion::ONE)) <= 1e-12;
    let one_not_in_f = sigma_min(&apply_qq(&f, Quaternion::ONE)) > 1e-3;
    let zero_in_f = sigma_min(&f) <= 1e-12;
    let agrees = report.one_in_sum && !report.one_in_shift && report.zero_in_shift;
    let passed = residual <= 1e-12
        && report.identity_residual <= 1e-12
        && one_in_sum
        && one_not_in_f
        && zero_in_f
        && agrees
        && nilpotent <= 1e-12;
    outcome(
        passed,
        format!("identity residual {residual:.2e}, 1∈σ(T+F) {one_in_sum}, 1∉σ(F) {one_not_in_f}, 0∈σ(F) {zero_in_f}"),
    )
}

fn deflation() -> Outcome {
    const ALPHA: f64 = 0.2;
    let mut worst: f64 = 0.0;
    let mut mult_ok = true;
    for (t, inst) in instances().iter().enumerate() {
        let k = t % inst.spheres.len();
        let target = inst.spheres[k].0;
        let expected: Vec<(Sphere, usize)> = inst
            .spheres
            .iter()
            .enumerate()
            .map(|(j, (s, m))| {
                if j == k {
                    (Sphere::new(s.re + ALPHA, s.rho), *m)
                } else {
                    (*s, *m)
                }
            })
            .collect();
        let after = s_spectrum(&deflate_sphere(&inst.matrix, &target, ALPHA).unwrap()).unwrap();
        let want: Vec<Sphere> = expected.iter().map(|(s, _)| *s).collect();
        worst = worst.max(hausdorff_oracle(&after.sphere_list(), &want));
        mult_ok &= expected.iter().all(|(s, m)| mult_in(&after, s, 1e-6) == *m);
        let report = deflation_check(&inst.matrix, &target, ALPHA).unwrap();
        mult_ok &= report.holds(1e-6);
    }
    outcome(
        worst <= 1e-6 && mult_ok,
        format!("Hausdorff to shifted spectrum {worst:.2e}, multiplicities match: {mult_ok}"),
    )
}

fn power_image_oracle(spec: &qspectra::SpectrumResult, n: u32) -> Vec<Sphere> {
    spec.spheres
        .iter()
        .map(|s| {
            let z = Complex::new(s.re, s.rho).powu(n);
            Sphere::new(z.re, z.im.abs())
        })
        .collect()
}

fn power_mapping() -> Outcome {
    let mut rng = seeded(SEED ^ 0x58);
    let mut worst: f64 = 0.0;
    for k in 0..25 {
        let a = random_matrix(1 + k % 8, &mut rng);
        let spec = s_spectrum(&a).unwrap();
        for n in [2, 3] {
            let lhs = s_spectrum(&a.pow(n)).unwrap();
            worst = worst.max(hausdorff_oracle(
                &lhs.sphere_list(),
                &power_image_oracle(&spec, n),
            ));
        }
    }
    outcome(worst <= 1e-6, format!("max Hausdorff {worst:.2e}"))
}

fn companion_division() -> Outcome {
    let mut rng = seeded(SEED ^ 0x59);
    let (mut remainder, mut reconstruct): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let s = random_quaternion(&mut rng);
        for n in 1..=6usize {
            let (quot, rem) = divide_companion(n, s);
            remainder = remainder.max(rem.max_abs_coeff());
            // q^{2n} − 2Re(sⁿ)qⁿ + |sⁿ|² must equal quot·(q² − 2Re(s)q + |s|²).
            let sn = s.powi(n as u32);
            let mut target = vec![0.0; 2 * n + 1];
            target[0] += sn.norm_sqr();
            target[n] -= 2.0 * sn.w;
            target[2 * n] += 1.0;
            let div = [s.norm_sqr(), -2.0 * s.w, 1.0];
            let mut prod = vec![0.0; 2 * n + 1];
            for (i, c) in quot.coeffs().iter().enumerate() {
                for (j, d) in div.iter().enumerate() {
                    prod[i + j] += c * d;
                }
            }
            let diff = target
                .iter()
                .zip(&prod)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            reconstruct = reconstruct.max(diff);
        }
    }
    outcome(
        remainder <= 1e-10 && reconstruct <= 1e-10,
        format!("max remainder coefficient {remainder:.2e}, reconstruction {reconstruct:.2e}"),
    )
}

fn perturbation_probes() -> Outcome {
    let violations = mu_perturbation_violations(SEED, 100);
    // Neighbourhood probes, recomputed with the independent adjoint.
    let mut rng = seeded(SEED ^ 0x5A);
    let a = random_matrix(4, &mut rng);
    let q0 = Quaternion::new(3.0, 1.0, -2.0, 0.5);
    let report = resolvent_neighborhood(&a, q0, 100, SEED).unwrap();
    let mut oracle_violations = 0;
    let mut probe_rng = seeded(SEED ^ 0x5B);
    let norm = chi_oracle(&a).singular_values().max();
    let eps = sigma_min(&apply_qq(&a, q0));
    for _ in 0..100 {
        match qspectra::analysis::sample_neighborhood(norm, q0, eps, &mut probe_rng) {
            Some((q, _)) if sigma_min(&apply_qq(&a, q)) > 0.0 => {}
            _ => oracle_violations += 1,
        }
    }
    let total = violations + report.violations + report.skipped + oracle_violations;
    outcome(
        total == 0,
        format!("μ-perturbation violations {violations}, neighbourhood violations {} (+{} skipped), oracle {oracle_violations}", report.violations, report.skipped),
    )
}

/// `‖Q_q(T_N)v‖/‖v‖` from dense matrices.
fn dense_residual(q: Quaternion, n: usize) -> f64 {
    let t = truncated_shift(n).unwrap().matrix;
    let v = QVector((0..n).map(|i| q.powi(i as u32)).collect());
    apply_qq(&t, q).mul_vec(&v).norm() / v.norm()
}

fn shift_example() -> Outcome {
    let mut rng = seeded(SEED ^ 0x5C);
    let mut ok = true;
    let mut notes = Vec::new();
    let mut small: f64 = 0.0;
    let mut large: f64 = 0.0;
    for _ in 0..5 {
        let unit = random_unit(&mut rng);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let q = unit.exp(theta) * 0.5;
        let r = approx_eigvector(q, 64).unwrap().1;
        ok &= (r - dense_residual(q, 64)).abs() <= 1e-15;
        small = small.max(r);
        let q = unit.exp(theta) * 0.9;
        let r = approx_eigvector(q, 128).unwrap().1;
        ok &= (r - dense_residual(q, 128)).abs() <= 1e-12;
        large = large.max(r);
    }
    let bound = 4.0 * 0.9f64.powi(127);
    ok &= small <= 1e-15 && large <= bound;
    notes.push(format!(
        "|q|=0.5 N=64 r={small:.2e}; |q|=0.9 N=128 r={large:.2e} (bound {bound:.2e})"
    ));
    let mut margin = f64::INFINITY;
    for n in [8, 9, 16, 31, 32, 64, 100, 128, 255, 256] {
        let m = exterior_margin(Quaternion::real(2.0), n).unwrap();
        let oracle = sigma_min(&apply_qq(
            &truncated_shift(n).unwrap().matrix,
            Quaternion::real(2.0),
        ));
        ok &= (m - oracle).abs() <= 1e-10;
        margin = margin.min(m);
    }
    ok &= margin > 0.5;
    notes.push(format!("min exterior margin {margin:.4}"));
    outcome(ok, notes.join("; "))
}

fn polynomial_calculus() -> Outcome {
    let mut rng = seeded(SEED ^ 0x5D);
    let polys: [&[f64]; 3] = [&[1.0], &[0.0, 1.0], &[1.0, -2.0, 1.0]];
    let (mut calc, mut full, mut empty): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for inst in instances() {
        let a = &inst.matrix;
        let n = a.dim();
        let id = QMatrix::identity(n);
        let a2 = a * a;
        let direct = [id.clone(), a.clone(), &(&a2 - &a.scale(2.0)) + &id];
        let unit = random_unit(&mut rng);
        for (coeffs, want) in polys.iter().zip(&direct) {
            let coeffs: Vec<Quaternion> = coeffs.iter().map(|c| Quaternion::real(*c)).collect();
            let got = poly_calculus(a, &coeffs, unit, 256).unwrap();
            calc = calc.max(got.max_abs_diff(want));
        }
        let spec = s_spectrum(a).unwrap();
        let whole =
            projection_over(a, &full_contour(&spec, unit, 256).unwrap(), Side::Left).unwrap();
        full = full.max(whole.p.max_abs_diff(&id));
        let none = projection_over(a, &Contour::empty(unit, 256), Side::Left).unwrap();
        empty = empty.max(max_entry(&none.p));
    }
    outcome(
        calc <= 1e-8 && full <= 1e-8 && empty <= 1e-10,
        format!(
            "contour vs direct {calc:.2e}, full contour vs I {full:.2e}, empty contour {empty:.2e}"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("sphere property", sphere_property),
        ("Riesz projector quality", projector_quality),
        ("Riesz decomposition", riesz_decomposition),
        ("projector uniqueness", uniqueness),
        ("multiplicity sum", multiplicity_sum),
        ("rank-one spectral shift", rank_one_construction),
        ("finite-type removal", deflation),
        ("power spectral mapping", power_mapping),
        ("companion division", companion_division),
        ("μ-perturbation and neighbourhood", perturbation_probes),
        ("truncated shift", shift_example),
        ("polynomial calculus", polynomial_calculus),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {}", k + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );

    let start = Instant::now();
    let records = qspectra::verify::run(SEED);
    let elapsed = start.elapsed();
    let suite_ok = records.iter().all(|r| r.passed) && elapsed < Duration::from_secs(60);
    println!(
        "{} verify suite: {} checks in {:.1} s",
        if suite_ok { "PASS" } else { "FAIL" },
        records.len(),
        elapsed.as_secs_f64()
    );
    if failed > 0 || !suite_ok {
        std::process::exit(1);
    }
}
