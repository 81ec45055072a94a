//! Finitely supported null sequences stored as ℂ² blocks, and the algebra norm
//! `‖f‖ = sup_n 2σ(n) ‖(f(2n), f(2n+1))‖_{r,σ(n)}`.
//!
//! Block `n` holds the coordinates `(f(2n), f(2n+1))`. Indices that are not
//! stored are zero, so every [`BlockSequence`] lies in `c_f(ℕ)`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::c2::{c2_norm, NormParams, Vec2};
use crate::error::{Error, Result};
use crate::weights::WeightFamily;

/// Distance to 1 below which a coordinate counts as numerically quasi-singular.
pub const QUASI_SINGULAR_TOL: f64 = 1e-9;

/// A finitely supported element of `c₀(ℕ)`. Zero blocks are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BlockSequence {
    blocks: BTreeMap<usize, Vec2>,
}

impl BlockSequence {
    pub fn zero() -> Self {
        BlockSequence::default()
    }

    pub fn from_blocks<I>(blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Vec2)>,
    {
        let mut seq = BlockSequence::zero();
        for (n, v) in blocks {
            if !v.is_finite() {
                return Err(Error::NonFiniteBlock { block: n });
            }
            seq.set_block(n, v);
        }
        Ok(seq)
    }

    /// Builds a sequence from `(coordinate, value)` pairs under `k ↦ (k / 2, k % 2)`.
    pub fn from_coords<I>(coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Complex64)>,
    {
        let mut seq = BlockSequence::zero();
        for (k, z) in coords {
            if !z.is_finite() {
                return Err(Error::NonFiniteBlock { block: k / 2 });
            }
            seq.set_coord(k, z);
        }
        Ok(seq)
    }

    /// The unit step `e_k` at coordinate `k`.
    pub fn unit(k: usize) -> Self {
        let mut seq = BlockSequence::zero();
        seq.set_coord(k, Complex64::new(1.0, 0.0));
        seq
    }

    pub fn single(n: usize, v: Vec2) -> Self {
        let mut seq = BlockSequence::zero();
        seq.set_block(n, v);
        seq
    }

    pub fn block(&self, n: usize) -> Vec2 {
        self.blocks.get(&n).copied().unwrap_or(Vec2::ZERO)
    }

    pub fn set_block(&mut self, n: usize, v: Vec2) {
        if v.is_zero() {
            self.blocks.remove(&n);
        } else {
            self.blocks.insert(n, v);
        }
    }

    pub fn coord(&self, k: usize) -> Complex64 {
        let b = self.block(k / 2);
        if k.is_multiple_of(2) {
            b.x
        } else {
            b.y
        }
    }

    pub fn set_coord(&mut self, k: usize, z: Complex64) {
        let mut b = self.block(k / 2);
        if k.is_multiple_of(2) {
            b.x = z;
        } else {
            b.y = z;
        }
        self.set_block(k / 2, b);
    }

    /// Stored (nonzero) blocks in increasing index order.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, &Vec2)> + '_ {
        self.blocks.iter().map(|(n, v)| (*n, v))
    }

    /// Coordinates of all stored blocks, in increasing order. May include zeros
    /// that share a block with a nonzero coordinate.
    pub fn coords(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.blocks
            .iter()
            .flat_map(|(n, v)| [(2 * n, v.x), (2 * n + 1, v.y)])
    }

    pub fn support_len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    fn map_blocks(&self, f: impl Fn(&Vec2) -> Vec2) -> Self {
        let mut out = BlockSequence::zero();
        for (n, v) in &self.blocks {
            out.set_block(*n, f(v));
        }
        out
    }

    fn zip_union(&self, other: &Self, f: impl Fn(Vec2, Vec2) -> Vec2) -> Self {
        let mut out = BlockSequence::zero();
        for n in self.blocks.keys().chain(other.blocks.keys()) {
            if out.blocks.contains_key(n) {
                continue;
            }
            out.set_block(*n, f(self.block(*n), other.block(*n)));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_union(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_union(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_blocks(|v| v.scale(s))
    }

    /// JSON wire form `{"blocks": {"n": [[re_x, im_x], [re_y, im_y]], ...}}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("block sequences always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    blocks: BTreeMap<usize, [[f64; 2]; 2]>,
}

impl Serialize for BlockSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let blocks = self
            .blocks
            .iter()
            .map(|(n, v)| (*n, [[v.x.re, v.x.im], [v.y.re, v.y.im]]))
            .collect();
        Wire { blocks }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlockSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        BlockSequence::from_blocks(wire.blocks.into_iter().map(|(n, [x, y])| {
            (
                n,
                Vec2::new(Complex64::new(x[0], x[1]), Complex64::new(y[0], y[1])),
            )
        }))
        .map_err(serde::de::Error::custom)
    }
}

/// `r` together with the block weights `σ(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraParams {
    r: f64,
    weights: WeightFamily,
}

impl AlgebraParams {
    pub fn new(r: f64, weights: WeightFamily) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidR(r));
        }
        Ok(AlgebraParams { r, weights })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn weights(&self) -> WeightFamily {
        self.weights
    }

    pub fn sigma(&self, n: usize) -> f64 {
        self.weights.sigma(n)
    }

    /// The ℂ² norm parameters of block `n`.
    pub fn block_params(&self, n: usize) -> NormParams {
        NormParams::new_unchecked(self.r, self.weights.sigma(n))
    }
}

/// `‖f‖_∞`.
pub fn sup_norm(f: &BlockSequence) -> f64 {
    f.blocks().map(|(_, v)| v.max_norm()).fold(0.0, f64::max)
}

/// Weighted norm of a single block, `2σ(n) ‖v‖_{r,σ(n)}`.
pub fn block_a_norm(n: usize, v: &Vec2, p: &AlgebraParams) -> f64 {
    let sigma = p.sigma(n);
    2.0 * sigma * c2_norm(v, NormParams::new_unchecked(p.r, sigma))
}

/// The algebra norm: max over stored blocks of `2σ(n) ‖block(n)‖_{r,σ(n)}`.
pub fn a_norm(f: &BlockSequence, p: &AlgebraParams) -> f64 {
    f.blocks()
        .map(|(n, v)| block_a_norm(n, v, p))
        .fold(0.0, f64::max)
}

pub fn pointwise_product(f: &BlockSequence, g: &BlockSequence) -> BlockSequence {
    let (small, large) = if f.blocks.len() <= g.blocks.len() {
        (f, g)
    } else {
        (g, f)
    };
    let mut out = BlockSequence::zero();
    for (n, v) in small.blocks() {
        if let Some(w) = large.blocks.get(&n) {
            out.set_block(n, v.pointwise(w));
        }
    }
    out
}

/// Pointwise complex conjugation.
pub fn star(f: &BlockSequence) -> BlockSequence {
    f.map_blocks(Vec2::conj)
}

/// `a ∘ b = a + b - ab`.
pub fn quasi_circle(a: &BlockSequence, b: &BlockSequence) -> BlockSequence {
    a.add(b).sub(&pointwise_product(a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum QuasiInverseError {
    /// `a(index) = 1` exactly, so no quasi-inverse exists in `c₀`.
    #[error("not quasi-invertible: coordinate {index} equals 1")]
    NotQuasiInvertible { index: usize },
    /// `0 < |a(index) - 1| < QUASI_SINGULAR_TOL`.
    #[error("coordinate {index} is within {distance:e} of 1 (numerically quasi-singular)")]
    QuasiSingular { index: usize, distance: f64 },
}

impl QuasiInverseError {
    pub fn index(&self) -> usize {
        match *self {
            QuasiInverseError::NotQuasiInvertible { index }
            | QuasiInverseError::QuasiSingular { index, .. } => index,
        }
    }
}

/// Solves `a + b - ab = 0` coordinatewise: `b(k) = a(k) / (a(k) - 1)`.
///
/// Coordinates are scanned in increasing order and the first obstruction is
/// reported.
pub fn quasi_inverse_c0(a: &BlockSequence) -> Result<BlockSequence, QuasiInverseError> {
    let one = Complex64::new(1.0, 0.0);
    for (k, z) in a.coords() {
        if z == one {
            return Err(QuasiInverseError::NotQuasiInvertible { index: k });
        }
        let distance = (z - one).norm();
        if distance < QUASI_SINGULAR_TOL {
            return Err(QuasiInverseError::QuasiSingular { index: k, distance });
        }
    }
    Ok(a.map_blocks(|v| Vec2::new(v.x / (v.x - one), v.y / (v.y - one))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub quasi_invertible_in_c0: bool,
    pub quasi_invertible_in_a: bool,
    /// The quasi-inverse, when it exists.
    pub inverse: Option<BlockSequence>,
    pub inverse_sup_norm: Option<f64>,
    pub inverse_a_norm: Option<f64>,
    /// `max(‖a∘b‖_∞, ‖b∘a‖_∞)`.
    pub residual: Option<f64>,
    pub obstruction: Option<QuasiInverseError>,
}

impl SpectralReport {
    /// Quasi-invertibility agrees between `c₀` and the subalgebra.
    pub fn consistent(&self) -> bool {
        self.quasi_invertible_in_c0 == self.quasi_invertible_in_a
    }
}

impl Serialize for QuasiInverseError {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("QuasiInverseError", 3)?;
        match *self {
            QuasiInverseError::NotQuasiInvertible { index } => {
                st.serialize_field("kind", "not_quasi_invertible")?;
                st.serialize_field("index", &index)?;
                st.serialize_field("distance", &0.0)?;
            }
            QuasiInverseError::QuasiSingular { index, distance } => {
                st.serialize_field("kind", "quasi_singular")?;
                st.serialize_field("index", &index)?;
                st.serialize_field("distance", &distance)?;
            }
        }
        st.end()
    }
}

/// Checks on one element that quasi-invertibility in `c₀` and in the algebra
/// coincide.
///
/// A quasi-inverse of a finitely supported element is again finitely
/// supported, hence lies in the algebra; an element that is not quasi-invertible
/// in `c₀` cannot be quasi-invertible in a subalgebra. A quasi-singular
/// coordinate is reported as an obstruction in both.
pub fn spectral_invariance_check(a: &BlockSequence, p: &AlgebraParams) -> SpectralReport {
    match quasi_inverse_c0(a) {
        Ok(b) => {
            let residual = sup_norm(&quasi_circle(a, &b)).max(sup_norm(&quasi_circle(&b, a)));
            // `b` is finitely supported, so it is an element of the algebra.
            let in_a = a_norm(&b, p).is_finite();
            SpectralReport {
                quasi_invertible_in_c0: true,
                quasi_invertible_in_a: in_a,
                inverse_sup_norm: Some(sup_norm(&b)),
                inverse_a_norm: Some(a_norm(&b, p)),
                residual: Some(residual),
                inverse: Some(b),
                obstruction: None,
            }
        }
        Err(e) => SpectralReport {
            quasi_invertible_in_c0: false,
            quasi_invertible_in_a: false,
            inverse: None,
            inverse_sup_norm: None,
            inverse_a_norm: None,
            residual: None,
            obstruction: Some(e),
        },
    }
}
