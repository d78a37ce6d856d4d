use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};
use crate::linalg::SpectrumResult;
use crate::quat::{ImaginaryUnit, Quaternion, Sphere};

/// Default trapezoid nodes per circle.
pub const DEFAULT_NODES: usize = 256;
/// Smallest accepted node count per circle.
pub const MIN_NODES: usize = 16;
/// Relative gap below which a target is not an isolated part.
pub const ISOLATION_TOL: f64 = 1e-6;
/// Relative distance within which a requested sphere matches a spectral one.
pub const MATCH_TOL: f64 = 1e-6;

/// Counterclockwise circle in a slice `C_I`, centre given as `(re, im)`
/// coordinates of `re + I·im`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: [f64; 2],
    pub radius: f64,
}

/// Union of disjoint circles in one slice, each sampled with the same
/// number of trapezoid nodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    #[serde(rename = "I")]
    pub unit: ImaginaryUnit,
    pub circles: Vec<Circle>,
    #[serde(rename = "nodes")]
    pub nodes_per_circle: usize,
    /// Minimum distance from any circle to any spectral point.
    #[serde(skip)]
    pub clearance: f64,
}

/// A quadrature node on a contour: the point `q` and the weight
/// `dq_I = r·exp(Iθ)·dθ/2π`, both in `C_I`.
#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub q: Quaternion,
    pub weight: Quaternion,
}

impl Contour {
    pub fn empty(unit: ImaginaryUnit, nodes_per_circle: usize) -> Self {
        Self {
            unit,
            circles: Vec::new(),
            nodes_per_circle,
            clearance: f64::INFINITY,
        }
    }

    /// Trapezoid nodes with weights already divided by `2π`.
    pub fn nodes(&self) -> Vec<Node> {
        let n = self.nodes_per_circle;
        let mut out = Vec::with_capacity(n * self.circles.len());
        for c in &self.circles {
            let center = self.unit.slice_point(c.center[0], c.center[1]);
            for k in 0..n {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let e = self.unit.exp(theta);
                out.push(Node {
                    q: center + e * c.radius,
                    weight: e * (c.radius / n as f64),
                });
            }
        }
        out
    }

    /// Smallest distance from a node to the slice points of `spectrum`.
    pub fn node_clearance(&self, spectrum: &SpectrumResult) -> f64 {
        let points: Vec<(f64, f64)> = spectrum
            .spheres
            .iter()
            .flat_map(|s| s.sphere().slice_points())
            .collect();
        let mut best = f64::INFINITY;
        for c in &self.circles {
            for p in &points {
                let d = (p.0 - c.center[0]).hypot(p.1 - c.center[1]);
                best = best.min((d - c.radius).abs());
            }
        }
        best
    }
}

/// Options for [`build_contour`]; tolerances scale with `max(1, spectral radius)`.
#[derive(Clone, Copy, Debug)]
pub struct ContourOptions {
    pub isolation_tol: f64,
    pub match_tol: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self {
            isolation_tol: ISOLATION_TOL,
            match_tol: MATCH_TOL,
        }
    }
}

/// Replaces each requested sphere by the matching sphere of `spectrum`,
/// dropping duplicates.
pub fn match_targets(
    target: &[Sphere],
    spectrum: &SpectrumResult,
    match_tol: f64,
) -> Result<Vec<usize>> {
    let tol = match_tol * spectrum.radius().max(1.0);
    let mut idx: Vec<usize> = Vec::new();
    for s in target {
        let k = spectrum
            .find(s, tol)
            .ok_or(SpectralError::NotInSpectrum { sphere: *s, tol })?;
        if !idx.contains(&k) {
            idx.push(k);
        }
    }
    idx.sort_unstable();
    Ok(idx)
}

/// Slice-plane distance from the `target` spheres to the remaining spheres;
/// infinite when nothing remains.
pub fn complement_gap(spectrum: &SpectrumResult, target: &[usize]) -> f64 {
    let mut gap = f64::INFINITY;
    for &t in target {
        let ts = spectrum.spheres[t].sphere();
        for (k, s) in spectrum.spheres.iter().enumerate() {
            if !target.contains(&k) {
                gap = gap.min(slice_distance(&ts, &s.sphere()));
            }
        }
    }
    gap
}

/// Minimum distance between the slice points of two spheres. For spheres
/// in the upper half-plane this equals their `(re, rho)` distance.
fn slice_distance(a: &Sphere, b: &Sphere) -> f64 {
    a.slice_points()
        .iter()
        .flat_map(|p| {
            b.slice_points()
                .into_iter()
                .map(move |q| (p.0 - q.0).hypot(p.1 - q.1))
        })
        .fold(f64::INFINITY, f64::min)
}

/// One circle per slice point of each target sphere: centres `re ± I·rho`,
/// common radius `min(g/2, 0.9·rho)` where `g` is the smallest distance from
/// a target point to any other spectral point, conjugate partners included.
pub fn build_contour(
    target: &[Sphere],
    spectrum: &SpectrumResult,
    unit: ImaginaryUnit,
    nodes: usize,
    opts: ContourOptions,
) -> Result<Contour> {
    if nodes < MIN_NODES {
        return Err(SpectralError::InvalidArgument(format!(
            "nodes per circle must be at least {MIN_NODES}, got {nodes}"
        )));
    }
    let idx = match_targets(target, spectrum, opts.match_tol)?;
    if idx.is_empty() {
        return Ok(Contour::empty(unit, nodes));
    }
    let scale = spectrum.radius().max(1.0);
    let iso = opts.isolation_tol * scale;
    for &t in &idx {
        let ts = spectrum.spheres[t].sphere();
        // Distance to every other sphere: the complement must be separated,
        // and two targets closer than tolerance cannot get disjoint circles.
        let gap = spectrum
            .spheres
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != t)
            .map(|(_, s)| slice_distance(&ts, &s.sphere()))
            .fold(f64::INFINITY, f64::min);
        if gap <= iso {
            return Err(SpectralError::NotIsolated {
                sphere: ts,
                gap,
                tol: iso,
            });
        }
    }

    let all_points: Vec<(usize, (f64, f64))> = spectrum
        .spheres
        .iter()
        .enumerate()
        .flat_map(|(k, s)| s.sphere().slice_points().into_iter().map(move |p| (k, p)))
        .collect();
    let target_points: Vec<(usize, (f64, f64))> = all_points
        .iter()
        .copied()
        .filter(|(k, _)| idx.contains(k))
        .collect();

    let mut g = f64::INFINITY;
    for (_, p) in &target_points {
        for (_, q) in &all_points {
            if p != q {
                g = g.min((p.0 - q.0).hypot(p.1 - q.1));
            }
        }
    }
    let mut radius = if g.is_finite() { g / 2.0 } else { 0.5 * scale };
    for &t in &idx {
        let rho = spectrum.spheres[t].rho;
        if rho > 0.0 {
            radius = radius.min(0.9 * rho);
        }
    }
    let circles: Vec<Circle> = target_points
        .iter()
        .map(|(_, p)| Circle {
            center: [p.0, p.1],
            radius,
        })
        .collect();
    let mut contour = Contour {
        unit,
        circles,
        nodes_per_circle: nodes,
        clearance: 0.0,
    };
    contour.clearance = contour.node_clearance(spectrum);
    Ok(contour)
}

/// One circle about the origin of radius `2·r + 1`, `r` the spectral radius.
/// Nothing lies outside, so clustered spheres need no separation, and the
/// trapezoid error decays like `((r/(2r+1))^N)`.
pub fn full_contour(
    spectrum: &SpectrumResult,
    unit: ImaginaryUnit,
    nodes: usize,
) -> Result<Contour> {
    if nodes < MIN_NODES {
        return Err(SpectralError::InvalidArgument(format!(
            "nodes per circle must be at least {MIN_NODES}, got {nodes}"
        )));
    }
    if spectrum.is_empty() {
        return Ok(Contour::empty(unit, nodes));
    }
    let radius = 2.0 * spectrum.radius() + 1.0;
    let mut contour = Contour {
        unit,
        circles: vec![Circle {
            center: [0.0, 0.0],
            radius,
        }],
        nodes_per_circle: nodes,
        clearance: 0.0,
    };
    contour.clearance = contour.node_clearance(spectrum);
    Ok(contour)
}
