//! Exact single-qubit model: amplitudes, Bloch vectors, Born-rule sampling and
//! the singlet's joint outcome distribution.
//!
//! Outcome convention: bit 0 is the outcome along `+axis` (or `|0⟩` for the
//! computational basis). Measuring a state with Bloch vector `s` along axis
//! `a` yields 0 with probability `(1 + s·a) / 2`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::bit::Bit;
use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::tolerance::NORMALIZATION;

/// A pure single-qubit state `amp0|0⟩ + amp1|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    amp0: Complex64,
    amp1: Complex64,
}

impl QubitState {
    pub const ZERO: QubitState = QubitState {
        amp0: Complex64::new(1.0, 0.0),
        amp1: Complex64::new(0.0, 0.0),
    };
    pub const ONE: QubitState = QubitState {
        amp0: Complex64::new(0.0, 0.0),
        amp1: Complex64::new(1.0, 0.0),
    };

    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let s = Self::raw(amp0, amp1);
        s.check_normalized()?;
        Ok(s)
    }

    pub fn real(amp0: f64, amp1: f64) -> Result<Self> {
        Self::new(Complex64::new(amp0, 0.0), Complex64::new(amp1, 0.0))
    }

    /// Builds a state without checking normalization. Operations on the
    /// result still validate it.
    pub fn raw(amp0: Complex64, amp1: Complex64) -> Self {
        Self { amp0, amp1 }
    }

    pub fn amp0(&self) -> Complex64 {
        self.amp0
    }

    pub fn amp1(&self) -> Complex64 {
        self.amp1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }

    fn check_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() <= NORMALIZATION {
            Ok(())
        } else {
            Err(Error::NotNormalized(n))
        }
    }

    /// Bloch vector `(2 Re(a0* a1), 2 Im(a0* a1), |a0|² − |a1|²)`.
    pub fn bloch(&self) -> Result<BlochVector> {
        self.check_normalized()?;
        let cross = self.amp0.conj() * self.amp1;
        let v = Vec3::new(
            2.0 * cross.re,
            2.0 * cross.im,
            self.amp0.norm_sqr() - self.amp1.norm_sqr(),
        );
        BlochVector::normalize(v).ok_or(Error::NotUnit(0.0))
    }
}

/// Real-plane rotation `(a0, a1) ↦ (cos φ·a0 − sin φ·a1, sin φ·a0 + cos φ·a1)`.
pub fn rotate(s: &QubitState, phi: f64) -> Result<QubitState> {
    s.check_normalized()?;
    let (sin, cos) = phi.sin_cos();
    Ok(QubitState::raw(
        s.amp0 * cos - s.amp1 * sin,
        s.amp0 * sin + s.amp1 * cos,
    ))
}

pub fn hadamard(s: &QubitState) -> Result<QubitState> {
    s.check_normalized()?;
    Ok(QubitState::raw(
        (s.amp0 + s.amp1) * FRAC_1_SQRT_2,
        (s.amp0 - s.amp1) * FRAC_1_SQRT_2,
    ))
}

/// Probability `|amp0|²` of outcome 0 in the computational basis.
pub fn born_probability_zero(s: &QubitState) -> f64 {
    s.amp0.norm_sqr().clamp(0.0, 1.0)
}

/// Samples a computational-basis measurement. Consumes one uniform draw.
pub fn measure_computational(s: &QubitState, rng: &mut RandomSource) -> Bit {
    Bit::from_bool(rng.uniform() >= born_probability_zero(s))
}

/// Probability that the state `state` measured along `axis` gives outcome 0.
pub fn probability_along(state: &BlochVector, axis: &BlochVector) -> f64 {
    ((1.0 + state.dot(axis)) / 2.0).clamp(0.0, 1.0)
}

/// Samples a projective measurement of `state` along `axis`.
pub fn measure_along(state: &BlochVector, axis: &BlochVector, rng: &mut RandomSource) -> Bit {
    Bit::from_bool(rng.uniform() >= probability_along(state, axis))
}

/// Exact `P(x, y)` for measuring the singlet along `a` (first qubit) and `b`
/// (second qubit): `(1 − (a·b)(1−2x)(1−2y)) / 4`.
pub fn singlet_joint_probability(a: &BlochVector, b: &BlochVector, x: Bit, y: Bit) -> f64 {
    (1.0 - a.dot(b) * x.sign() * y.sign()) / 4.0
}

/// Samples the singlet's joint outcomes along `a` and `b`.
///
/// The first outcome is a fair coin; the second agrees with it with
/// probability `(1 − a·b) / 2`.
pub fn singlet_sample(a: &BlochVector, b: &BlochVector, rng: &mut RandomSource) -> (Bit, Bit) {
    let x = rng.bit();
    let p_equal = ((1.0 - a.dot(b)) / 2.0).clamp(0.0, 1.0);
    let equal = rng.bernoulli(p_equal);
    (x, x ^ !equal)
}

/// Uniform point on the unit sphere (uniform height, uniform azimuth).
pub fn random_bloch(rng: &mut RandomSource) -> BlochVector {
    let z = rng.uniform_in(-1.0, 1.0);
    let azimuth = rng.uniform_in(0.0, TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    BlochVector(Vec3::new(r * azimuth.cos(), r * azimuth.sin(), z))
}

/// Plain real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

/// Unit vector on the Bloch (Poincaré) sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(Vec3);

impl BlochVector {
    pub const PLUS_Z: BlochVector = BlochVector(Vec3::new(0.0, 0.0, 1.0));
    pub const PLUS_X: BlochVector = BlochVector(Vec3::new(1.0, 0.0, 0.0));
    pub const PLUS_Y: BlochVector = BlochVector(Vec3::new(0.0, 1.0, 0.0));

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        let n = v.norm();
        if (n - 1.0).abs() <= NORMALIZATION {
            Ok(BlochVector(v))
        } else {
            Err(Error::NotUnit(n))
        }
    }

    /// Scales `v` onto the sphere; `None` for the zero vector.
    pub fn normalize(v: Vec3) -> Option<Self> {
        let n = v.norm();
        (n > 0.0 && n.is_finite()).then(|| BlochVector(v * (1.0 / n)))
    }

    /// Point at polar angle `theta` from +z and azimuth `azimuth` from +x.
    pub fn from_spherical(theta: f64, azimuth: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sa, ca) = azimuth.sin_cos();
        BlochVector(Vec3::new(st * ca, st * sa, ct))
    }

    /// Point on the x–y equator at `angle` from +x.
    pub fn equatorial(angle: f64) -> Self {
        Self::from_spherical(std::f64::consts::FRAC_PI_2, angle)
    }

    pub fn vec(&self) -> Vec3 {
        self.0
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn dot_vec(&self, other: &Vec3) -> f64 {
        self.0.dot(other)
    }
}

impl Neg for BlochVector {
    type Output = BlochVector;
    fn neg(self) -> BlochVector {
        BlochVector(-self.0)
    }
}
