//! Quaternion arithmetic, imaginary units, slices and spheres.
//!
//! A quaternion is stored scalar-first as `[w, x, y, z]` over the basis
//! `1, i, j, k` with `i² = j² = k² = ijk = -1`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Default absolute tolerance for comparing spheres in `(re, rho)`.
pub const SPHERE_TOL: f64 = 1e-8;

/// Element of the skew field of quaternions.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Real part `Re(q)`.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part `Im(q)` as a pure quaternion.
    #[inline]
    pub fn im(self) -> Quaternion {
        Self::new(0.0, self.x, self.y, self.z)
    }

    /// `|Im(q)|`.
    #[inline]
    pub fn im_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Multiplicative inverse `q̄ / |q|²`. Returns non-finite components for zero.
    #[inline]
    pub fn inv(self) -> Self {
        self.conj() * (1.0 / self.norm_sqr())
    }

    #[inline]
    pub fn is_real(self, tol: f64) -> bool {
        self.im_norm() <= tol
    }

    pub fn powi(self, n: u32) -> Self {
        let mut acc = Quaternion::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    /// Norm of the part of `self` orthogonal to the slice `C_I`.
    pub fn distance_to_slice(self, unit: ImaginaryUnit) -> f64 {
        let along = self.x * unit.x + self.y * unit.y + self.z * unit.z;
        let ox = self.x - along * unit.x;
        let oy = self.y - along * unit.y;
        let oz = self.z - along * unit.z;
        (ox * ox + oy * oy + oz * oz).sqrt()
    }

    /// Sphere `[q]` and, for nonreal `q`, the unit `I_q = Im(q)/|Im(q)|`.
    pub fn canonical(self) -> (Sphere, Option<ImaginaryUnit>) {
        canonical(self)
    }
}

/// Hamilton product.
#[inline]
pub fn qmul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, rhs: Quaternion) {
        *self = qmul(*self, rhs);
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Quaternion) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Quaternion::from_array)
    }
}

/// A unit pure-imaginary quaternion `I`, so `I² = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit {
    x: f64,
    y: f64,
    z: f64,
}

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const J: ImaginaryUnit = ImaginaryUnit {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const K: ImaginaryUnit = ImaginaryUnit {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Normalizes `(x, y, z)`; `None` if its norm is below `1e-6`.
    pub fn new(x: f64, y: f64, z: f64) -> Option<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n < 1e-6 {
            return None;
        }
        Some(Self {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    pub fn components(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    /// The slice element `a + I·b`.
    #[inline]
    pub fn slice_point(self, a: f64, b: f64) -> Quaternion {
        Quaternion::new(a, b * self.x, b * self.y, b * self.z)
    }

    /// `exp(I·θ) = cos θ + I sin θ`.
    #[inline]
    pub fn exp(self, theta: f64) -> Quaternion {
        let (s, c) = theta.sin_cos();
        self.slice_point(c, s)
    }
}

impl Serialize for ImaginaryUnit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ImaginaryUnit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(d)?;
        ImaginaryUnit::new(x, y, z)
            .ok_or_else(|| serde::de::Error::custom("imaginary unit has norm below 1e-6"))
    }
}

/// Canonical representative `(Re q, |Im q|)` of the similarity class `[q]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub re: f64,
    pub rho: f64,
}

impl Sphere {
    pub fn new(re: f64, rho: f64) -> Self {
        Self { re, rho: rho.abs() }
    }

    pub fn is_real(&self) -> bool {
        self.rho == 0.0
    }

    /// Euclidean distance in the `(re, rho)` half-plane.
    pub fn distance(&self, other: &Sphere) -> f64 {
        (self.re - other.re).hypot(self.rho - other.rho)
    }

    pub fn approx_eq(&self, other: &Sphere, tol: f64) -> bool {
        (self.re - other.re).abs() <= tol && (self.rho - other.rho).abs() <= tol
    }

    /// The point `re + I·rho` of the sphere lying in `C_I`.
    pub fn point(&self, unit: ImaginaryUnit) -> Quaternion {
        sphere_point(*self, unit)
    }

    /// The intersection of the sphere with a slice, as complex coordinates
    /// `(re, ±rho)`; one point for real spheres.
    pub fn slice_points(&self) -> Vec<(f64, f64)> {
        if self.rho > 0.0 {
            vec![(self.re, self.rho), (self.re, -self.rho)]
        } else {
            vec![(self.re, 0.0)]
        }
    }
}

impl fmt::Display for Sphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.rho)
    }
}

/// Sphere of `q` and its unit `I_q`, absent for real `q`.
pub fn canonical(q: Quaternion) -> (Sphere, Option<ImaginaryUnit>) {
    let rho = q.im_norm();
    let unit = if rho > 0.0 {
        Some(ImaginaryUnit {
            x: q.x / rho,
            y: q.y / rho,
            z: q.z / rho,
        })
    } else {
        None
    };
    (Sphere { re: q.w, rho }, unit)
}

/// `s.re + I·s.rho`.
pub fn sphere_point(s: Sphere, unit: ImaginaryUnit) -> Quaternion {
    unit.slice_point(s.re, s.rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn multiplication_table() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(j * i, -k);
        assert_eq!(i * i, -Quaternion::ONE);
        assert_eq!(i * j * k, -Quaternion::ONE);
    }

    #[test]
    fn expanded_product() {
        let p = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        let q = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(p * q, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn norm_identity() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q * q.conj(), Quaternion::real(30.0));
        assert!(close(q * q.inv(), Quaternion::ONE, 1e-15));
    }

    #[test]
    fn canonical_examples() {
        let (s, u) = canonical(Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!(s.re, 1.0);
        assert!((s.rho - 29f64.sqrt()).abs() < 1e-15);
        let u = u.unwrap().components();
        let r = 29f64.sqrt();
        assert!((u[0] - 2.0 / r).abs() < 1e-15 && (u[1] - 3.0 / r).abs() < 1e-15);
        assert!((u[2] - 4.0 / r).abs() < 1e-15);

        let (s, u) = canonical(Quaternion::real(5.0));
        assert_eq!(s, Sphere::new(5.0, 0.0));
        assert!(u.is_none());

        let (s, u) = canonical(Quaternion::I);
        assert_eq!(s, Sphere::new(0.0, 1.0));
        assert_eq!(u, Some(ImaginaryUnit::I));
    }

    #[test]
    fn sphere_point_examples() {
        assert_eq!(
            sphere_point(Sphere::new(0.0, 1.0), ImaginaryUnit::J),
            Quaternion::J
        );
        assert_eq!(
            sphere_point(Sphere::new(1.0, 2.0), ImaginaryUnit::K),
            Quaternion::new(1.0, 0.0, 0.0, 2.0)
        );
        let u = ImaginaryUnit::new(1.0, -2.0, 0.5).unwrap();
        assert_eq!(
            sphere_point(Sphere::new(3.0, 0.0), u),
            Quaternion::real(3.0)
        );
    }

    #[test]
    fn unit_squares_to_minus_one() {
        let u = ImaginaryUnit::new(0.3, -1.2, 2.0).unwrap().to_quaternion();
        assert!(close(u * u, -Quaternion::ONE, 1e-15));
        assert!(ImaginaryUnit::new(1e-7, 0.0, 0.0).is_none());
    }

    #[test]
    fn powers_match_repeated_product() {
        let q = Quaternion::new(0.3, -0.2, 0.5, 0.1);
        let mut acc = Quaternion::ONE;
        for n in 0..8 {
            assert!(close(q.powi(n), acc, 1e-15));
            acc = acc * q;
        }
    }

    #[test]
    fn serde_as_four_array() {
        let q = Quaternion::new(1.0, -2.0, 0.5, 0.0);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[1.0,-2.0,0.5,0.0]");
        let back: Quaternion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Quaternion>("[1.0,2.0,3.0]").is_err());
    }
}
