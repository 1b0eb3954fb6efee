//! Scalar quaternion arithmetic, imaginary units and sphere geometry.
//!
//! A quaternion is written `s = s0 + s1 i + s2 j + s3 k`; the unit sphere
//! of purely imaginary quaternions is denoted by 𝕊 and its elements square
//! to -1. Every nonreal quaternion `q` determines the 2-sphere
//! `[q] = { Re(q) + I |Im(q)| : I ∈ 𝕊 }`, which is the geometric carrier of
//! the S-spectrum.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Components below this magnitude count as exactly zero when classifying
/// a quaternion as real.
pub const EPS_REAL: f64 = 1e-12;

/// A quaternion `w + x i + y j + z k` with double-precision components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Real part `Re(s) = s0`.
    pub fn re(&self) -> f64 {
        self.w
    }

    /// Conjugate `s̄ = s0 - s1 i - s2 j - s3 k`.
    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared norm `|s|² = s0² + s1² + s2² + s3²`.
    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Norm of the imaginary part `|Im(s)|`.
    pub fn im_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.im_norm() <= tol
    }

    /// Multiplicative inverse `s̄ / |s|²`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        let c = self.conj();
        Ok(Quaternion::new(c.w / n2, c.x / n2, c.y / n2, c.z / n2))
    }

    pub fn scale(&self, t: f64) -> Self {
        Self::new(self.w * t, self.x * t, self.y * t, self.z * t)
    }

    /// The distinguished complex part under `s = z1 + z2 j` with
    /// `z1, z2 ∈ ℂ_i`: returns `(z1, z2)` as `(re, im)` pairs.
    pub fn complex_split(&self) -> ((f64, f64), (f64, f64)) {
        ((self.w, self.x), (self.y, self.z))
    }

    /// Rebuilds a quaternion from its `ℂ_i` split `z1 + z2 j`.
    pub fn from_complex_split(z1: (f64, f64), z2: (f64, f64)) -> Self {
        Self::new(z1.0, z1.1, z2.0, z2.1)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (*self - *other).norm() <= tol
    }
}

impl std::ops::Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl std::ops::Mul for Quaternion {
    type Output = Quaternion;

    /// Hamilton product.
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl std::ops::AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl std::ops::SubAssign for Quaternion {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

// JSON form [w, x, y, z].
impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = ser.serialize_tuple(4)?;
        t.serialize_element(&self.w)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.serialize_element(&self.z)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Quaternion;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                write!(f, "an array [w, x, y, z] of four numbers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Quaternion, A::Error> {
                let w = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let x = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let y = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(2, &self))?;
                let z = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(3, &self))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(5, &self));
                }
                Ok(Quaternion::new(w, x, y, z))
            }
        }
        de.deserialize_tuple(4, V)
    }
}

/// A point of the unit sphere 𝕊 of purely imaginary quaternions.
///
/// As a quaternion (with zero real part) it squares to -1, so it plays the
/// role of a complex imaginary unit for the slice `ℂ_I = ℝ + Iℝ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitImaginary {
    x: f64,
    y: f64,
    z: f64,
}

pub const UNIT_I: UnitImaginary = UnitImaginary { x: 1.0, y: 0.0, z: 0.0 };
pub const UNIT_J: UnitImaginary = UnitImaginary { x: 0.0, y: 1.0, z: 0.0 };
pub const UNIT_K: UnitImaginary = UnitImaginary { x: 0.0, y: 0.0, z: 1.0 };

impl UnitImaginary {
    /// Normalizes the 3-vector `(x, y, z)`; errors on the zero vector.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self { x: x / n, y: y / n, z: z / n })
    }

    pub fn components(&self) -> (f64, f64, f64) {
        (self.x, self.y, self.z)
    }

    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    /// Euclidean inner product of the underlying 3-vectors; zero iff the
    /// two units anticommute as quaternions.
    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Extracts `Im(q)/|Im(q)|`; errors when `q` is real within `EPS_REAL`.
    pub fn from_imaginary_part(q: &Quaternion) -> Result<Self> {
        if q.is_real(EPS_REAL) {
            return Err(Error::ZeroDivisor);
        }
        Self::new(q.x, q.y, q.z)
    }
}

impl Serialize for UnitImaginary {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = ser.serialize_tuple(3)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.serialize_element(&self.z)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for UnitImaginary {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = <[f64; 3]>::deserialize(de)?;
        UnitImaginary::new(v[0], v[1], v[2]).map_err(|_| de::Error::custom("zero vector is not a unit"))
    }
}

/// A point `u + I v` of the slice `ℂ_I`, stored with `v ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePoint {
    pub u: f64,
    pub v: f64,
    pub unit: UnitImaginary,
}

impl SlicePoint {
    /// Flips the unit when `v < 0` so the stored `v` is nonnegative.
    pub fn new(u: f64, v: f64, unit: UnitImaginary) -> Self {
        if v < 0.0 {
            let (x, y, z) = unit.components();
            Self { u, v: -v, unit: UnitImaginary { x: -x, y: -y, z: -z } }
        } else {
            Self { u, v, unit }
        }
    }

    pub fn to_quaternion(&self) -> Quaternion {
        Quaternion::real(self.u) + self.unit.as_quaternion().scale(self.v)
    }
}

/// The 2-sphere `[u + v𝕊]` together with a multiplicity, the atom of an
/// S-spectrum. `v = 0` degenerates to the real point `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenSphere {
    pub u: f64,
    pub v: f64,
    #[serde(rename = "mult")]
    pub multiplicity: usize,
}

impl EigenSphere {
    pub fn new(u: f64, v: f64, multiplicity: usize) -> Self {
        Self { u, v, multiplicity }
    }

    /// Half-plane distance to another sphere, the metric used by all
    /// spectral-separation guards.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }

    /// The point of `[self] ∩ ℂ_I` in the upper half of the given plane.
    pub fn point_in_plane(&self, unit: &UnitImaginary) -> Quaternion {
        Quaternion::real(self.u) + unit.as_quaternion().scale(self.v)
    }
}

/// The sphere `[q] = { Re(q) + I |Im(q)| : I ∈ 𝕊 }` with multiplicity one.
///
/// Imaginary parts below `EPS_REAL` collapse to the real point `Re(q)`.
pub fn sphere_of(q: &Quaternion) -> EigenSphere {
    let v = q.im_norm();
    if v < EPS_REAL {
        EigenSphere::new(q.re(), 0.0, 1)
    } else {
        EigenSphere::new(q.re(), v, 1)
    }
}

/// `e^{I t} = cos t + I sin t`, the circle parameterization along `ℂ_I`.
pub fn exp_unit(unit: &UnitImaginary, t: f64) -> Quaternion {
    Quaternion::real(t.cos()) + unit.as_quaternion().scale(t.sin())
}

/// A deterministic unit `J` orthogonal to `I`, so that `IJ = -JI`.
///
/// Gram-Schmidt against a seeded random direction keeps the choice
/// reproducible while exercising the full circle of admissible `J`.
pub fn orthogonal_unit(unit: &UnitImaginary, seed: u64) -> UnitImaginary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ix, iy, iz) = unit.components();
    loop {
        let rx: f64 = rng.sample(StandardNormal);
        let ry: f64 = rng.sample(StandardNormal);
        let rz: f64 = rng.sample(StandardNormal);
        let d = rx * ix + ry * iy + rz * iz;
        let (px, py, pz) = (rx - d * ix, ry - d * iy, rz - d * iz);
        let n = (px * px + py * py + pz * pz).sqrt();
        if n > 1e-6 {
            return UnitImaginary { x: px / n, y: py / n, z: pz / n };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn unit_products() {
        assert!((I * J).approx_eq(&K, 0.0));
        assert!((J * K).approx_eq(&I, 0.0));
        assert!((K * I).approx_eq(&J, 0.0));
        assert!((I * I).approx_eq(&(-ONE), 0.0));
    }

    #[test]
    fn mul_expansion() {
        let a = ONE + I;
        let b = ONE + J;
        assert!((a * b).approx_eq(&Quaternion::new(1.0, 1.0, 1.0, 1.0), TOL));
    }

    #[test]
    fn conj_antihomomorphism() {
        assert!((I * J).conj().approx_eq(&(-K), 0.0));
        assert!((J.conj() * I.conj()).approx_eq(&(-K), 0.0));
    }

    #[test]
    fn inverses() {
        assert!(I.inverse().unwrap().approx_eq(&(-I), TOL));
        assert!(Quaternion::real(2.0).inverse().unwrap().approx_eq(&Quaternion::real(0.5), TOL));
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        let expect = Quaternion::new(0.25, -0.25, -0.25, -0.25);
        assert!(q.inverse().unwrap().approx_eq(&expect, TOL));
        assert!((q * q.inverse().unwrap()).approx_eq(&ONE, TOL));
        assert!(Quaternion::zero().inverse().is_err());
    }

    #[test]
    fn sphere_examples() {
        let s = sphere_of(&Quaternion::new(1.0, 2.0, 2.0, 1.0));
        assert!((s.u - 1.0).abs() < TOL && (s.v - 3.0).abs() < TOL);
        let s = sphere_of(&Quaternion::real(3.0));
        assert!((s.u - 3.0).abs() < TOL && s.v == 0.0);
        let s = sphere_of(&(I + J));
        assert!(s.u.abs() < TOL && (s.v - 2f64.sqrt()).abs() < TOL);
    }

    #[test]
    fn sphere_reconstruction() {
        // q = u + v * Im(q)/|Im(q)| for nonreal q.
        let q = Quaternion::new(0.3, -0.2, 0.7, 0.1);
        let s = sphere_of(&q);
        let unit = UnitImaginary::from_imaginary_part(&q).unwrap();
        let back = Quaternion::real(s.u) + unit.as_quaternion().scale(s.v);
        assert!(back.approx_eq(&q, 1e-14));
    }

    #[test]
    fn exp_unit_examples() {
        use std::f64::consts::PI;
        assert!(exp_unit(&UNIT_I, PI / 2.0).approx_eq(&I, 1e-14));
        assert!(exp_unit(&UNIT_J, PI).approx_eq(&(-ONE), 1e-14));
        assert!(exp_unit(&UNIT_I, 0.0).approx_eq(&ONE, 0.0));
    }

    #[test]
    fn exp_unit_group_law() {
        let unit = UnitImaginary::new(1.0, 2.0, -1.0).unwrap();
        for (t, s) in [(0.3, 1.1), (-2.0, 0.7), (4.0, 4.0)] {
            let lhs = exp_unit(&unit, t) * exp_unit(&unit, s);
            let rhs = exp_unit(&unit, t + s);
            assert!(lhs.approx_eq(&rhs, 1e-14));
            assert!((exp_unit(&unit, t).norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn orthogonal_unit_anticommutes() {
        for (unit, seed) in [
            (UNIT_I, 7u64),
            (UNIT_J, 11),
            (UnitImaginary::new(1.0, 1.0, 0.0).unwrap(), 13),
        ] {
            let j = orthogonal_unit(&unit, seed);
            let a = unit.as_quaternion();
            let b = j.as_quaternion();
            assert!((a * b + b * a).norm() < 1e-12);
            assert!((b * b + ONE).norm() < 1e-12);
            // deterministic
            let j2 = orthogonal_unit(&unit, seed);
            assert_eq!(j.components(), j2.components());
        }
    }

    #[test]
    fn slice_point_embedding() {
        let p = SlicePoint::new(1.5, -2.0, UNIT_J);
        assert!(p.v >= 0.0);
        assert!(p.to_quaternion().approx_eq(&Quaternion::new(1.5, 0.0, -2.0, 0.0), TOL));
    }

    #[test]
    fn json_round_trip() {
        let q = Quaternion::new(1.0, -2.5, 3.0, 0.25);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[1.0,-2.5,3.0,0.25]");
        let back: Quaternion = serde_json::from_str(&s).unwrap();
        assert_eq!(q, back);
        let u = UNIT_K;
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, "[0.0,0.0,1.0]");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_quat() -> impl Strategy<Value = Quaternion> {
            (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
                .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
        }

        proptest! {
            #[test]
            fn norm_multiplicative(a in arb_quat(), b in arb_quat()) {
                prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-12);
            }

            #[test]
            fn conj_reverses_products(a in arb_quat(), b in arb_quat()) {
                prop_assert!((a * b).conj().approx_eq(&(b.conj() * a.conj()), 1e-12));
            }

            #[test]
            fn conj_recovers_real_part(a in arb_quat()) {
                let two_re = a + a.conj();
                prop_assert!(two_re.approx_eq(&Quaternion::real(2.0 * a.re()), 1e-13));
                prop_assert!(((a.conj() * a).w - a.norm_sqr()).abs() < 1e-12);
                prop_assert!((a.conj() * a).im_norm() < 1e-12);
            }

            #[test]
            fn associativity(a in arb_quat(), b in arb_quat(), c in arb_quat()) {
                prop_assert!(((a * b) * c).approx_eq(&(a * (b * c)), 1e-12));
            }
        }
    }
}
