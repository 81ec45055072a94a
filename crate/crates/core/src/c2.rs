//! The skewed norm family on a single copy of ℂ².
//!
//! For a real `r` and `sigma >= 1` the matrix
//!
//! ```text
//! T = [  1      r   ]
//!     [ -σ·r    σ   ]
//! ```
//!
//! defines the norm `‖v‖ = ‖T v‖_max = max(|x + r y|, σ |y - r x|)`. The
//! constants [`d_constant`] and [`c_constant`] measure how far this norm is from
//! the max-norm and from being submultiplicative under the pointwise product.
//! Multiplying the norm by `2σ` ([`scaled_c2_norm`]) gives a submultiplicative
//! norm that dominates the max-norm.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One block `(x, y)` of the ℂ² decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: Complex64,
    pub y: Complex64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 {
        x: Complex64::new(0.0, 0.0),
        y: Complex64::new(0.0, 0.0),
    };

    pub const fn new(x: Complex64, y: Complex64) -> Self {
        Vec2 { x, y }
    }

    pub const fn real(x: f64, y: f64) -> Self {
        Vec2 {
            x: Complex64::new(x, 0.0),
            y: Complex64::new(y, 0.0),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        *self == Vec2::ZERO
    }

    /// `max(|x|, |y|)`, the C*-norm of ℂ².
    pub fn max_norm(&self) -> f64 {
        self.x.norm().max(self.y.norm())
    }

    /// Pointwise (algebra) product.
    pub fn pointwise(&self, other: &Vec2) -> Vec2 {
        Vec2::new(self.x * other.x, self.y * other.y)
    }

    pub fn conj(&self) -> Vec2 {
        Vec2::new(self.x.conj(), self.y.conj())
    }

    pub fn scale(&self, s: Complex64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// The parameter pair `(r, σ)` selecting one member of the norm family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct NormParams {
    r: f64,
    sigma: f64,
}

#[derive(Deserialize)]
struct RawParams {
    r: f64,
    sigma: f64,
}

impl TryFrom<RawParams> for NormParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        NormParams::new(raw.r, raw.sigma)
    }
}

impl NormParams {
    pub fn new(r: f64, sigma: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidR(r));
        }
        if !sigma.is_finite() || sigma < 1.0 {
            return Err(Error::InvalidSigma(sigma));
        }
        let p = NormParams { r, sigma };
        debug_assert!(p.determinant() > 0.0);
        Ok(p)
    }

    /// Caller guarantees `r` finite and `sigma >= 1`.
    pub(crate) fn new_unchecked(r: f64, sigma: f64) -> Self {
        debug_assert!(r.is_finite() && sigma >= 1.0);
        NormParams { r, sigma }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `det T = σ (1 + r²)`.
    pub fn determinant(&self) -> f64 {
        self.sigma * (1.0 + self.r * self.r)
    }
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2 {
            a11: a11.into(),
            a12: a12.into(),
            a21: a21.into(),
            a22: a22.into(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2::new(
            self.a11 * v.x + self.a12 * v.y,
            self.a21 * v.x + self.a22 * v.y,
        )
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2 {
            a11: self.a11 * s,
            a12: self.a12 * s,
            a21: self.a21 * s,
            a22: self.a22 * s,
        }
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 * rhs.a11 + self.a12 * rhs.a21,
            a12: self.a11 * rhs.a12 + self.a12 * rhs.a22,
            a21: self.a21 * rhs.a11 + self.a22 * rhs.a21,
            a22: self.a21 * rhs.a12 + self.a22 * rhs.a22,
        }
    }
}

/// `T = [[1, r], [-σr, σ]]`.
pub fn t_matrix(p: NormParams) -> Mat2 {
    let (r, s) = (p.r, p.sigma);
    Mat2::real(1.0, r, -s * r, s)
}

/// `T⁻¹ = (1/Δ) [[σ, -r], [σr, 1]]` with `Δ = σ(1 + r²)`.
pub fn inv_t_matrix(p: NormParams) -> Mat2 {
    let (r, s) = (p.r, p.sigma);
    Mat2::real(s, -r, s * r, 1.0).scale(1.0 / p.determinant())
}

/// `max(|x + r y|, σ |y - r x|)`.
pub fn c2_norm(v: &Vec2, p: NormParams) -> f64 {
    let (r, s) = (p.r, p.sigma);
    let first = (v.x + v.y * r).norm();
    let second = s * (v.y - v.x * r).norm();
    first.max(second)
}

/// `2σ · c2_norm(v, p)`. Submultiplicative, and at least `‖v‖_max`.
pub fn scaled_c2_norm(v: &Vec2, p: NormParams) -> f64 {
    2.0 * p.sigma * c2_norm(v, p)
}

/// Operator norm induced by the max-norm on ℂ²: the largest absolute row sum.
pub fn maxnorm_op_norm(m: &Mat2) -> f64 {
    let row1 = m.a11.norm() + m.a12.norm();
    let row2 = m.a21.norm() + m.a22.norm();
    row1.max(row2)
}

/// Smallest `D` with `‖v‖_max <= D ‖v‖_{r,σ}`:
/// `max(σ + |r|, σ|r| + 1) / (σ (1 + r²))`.
pub fn d_constant(p: NormParams) -> f64 {
    let (r, s) = (p.r.abs(), p.sigma);
    (s + r).max(s * r + 1.0) / p.determinant()
}

/// The envelope `(1 + |r|) / (1 + r²)` that dominates `d_constant` for every `σ >= 1`.
pub fn d_envelope(r: f64) -> f64 {
    (1.0 + r.abs()) / (1.0 + r * r)
}

/// Max-row-sum norm of the bilinear map `u₁ ⊗ u₂ ↦ T (T⁻¹u₁ * T⁻¹u₂)`.
///
/// This is the exact expression, not the σ-free upper estimate, and it bounds
/// `‖v₁ * v₂‖_{r,σ} / (‖v₁‖_{r,σ} ‖v₂‖_{r,σ})` from above. It is not claimed to
/// be the least such constant.
pub fn c_constant(p: NormParams) -> f64 {
    let (r, s) = (p.r, p.sigma);
    let r2 = r * r;
    let r3 = r2 * r;
    let one_plus_r3 = (1.0 + r3).abs();
    let one_minus_r3 = (1.0 - r3).abs();
    let r2_minus_r = (r2 - r).abs();
    let r2_plus_r = (r2 + r).abs();

    let row1 = one_plus_r3 / s + 2.0 * r2_minus_r / (s * s) + r2_plus_r / (s * s * s);
    let row2 = r2_minus_r + 2.0 * r2_plus_r / s + one_minus_r3 / (s * s);
    let denom = (1.0 + r2) * (1.0 + r2);
    s * row1.max(row2) / denom
}

/// The 2×4 coefficient matrix of the bilinear map, already divided by `Δ²`,
/// acting on `(u₁₁u₂₁, u₁₁u₂₂, u₁₂u₂₁, u₁₂u₂₂)`.
pub fn bilinear_coefficients(p: NormParams) -> [[f64; 4]; 2] {
    let (r, s) = (p.r, p.sigma);
    let r2 = r * r;
    let r3 = r2 * r;
    let d2 = p.determinant() * p.determinant();
    [
        [
            s * s * (1.0 + r3) / d2,
            s * (r2 - r) / d2,
            s * (r2 - r) / d2,
            (r2 + r) / d2,
        ],
        [
            s * s * s * (r2 - r) / d2,
            s * s * (r2 + r) / d2,
            s * s * (r2 + r) / d2,
            s * (1.0 - r3) / d2,
        ],
    ]
}
