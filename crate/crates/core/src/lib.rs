//! Dense Banach subalgebras of the null sequence algebra `c₀(ℕ)` built from a
//! skewed family of norms on ℂ².
//!
//! A sequence `f` is read as the blocks `(f(2n), f(2n+1))`. Each block is
//! measured with `2σ(n) ‖T_{r,σ(n)} v‖_max`, where `T` is the 2×2 matrix
//! `[[1, r], [-σr, σ]]` and `σ` is an unbounded weight. The crate computes:
//!
//! - the block norms and their constants `D` and `C` ([`c2`]),
//! - the sequence algebra norm, products, involution and quasi-inverses
//!   ([`sequence`]),
//! - witness scans showing that no D1 constant exists for `r ∉ {0, 1}`,
//!   sampled D1 and ideal constants ([`d1`]),
//! - the envelope bounds `D <= 1.21` and `C <= 2σ` by grid search with
//!   golden-section refinement ([`optimize`]).
//!
//! Runnable walkthroughs live under `examples/`; the `banach-seq` binary wraps
//! the same functionality as CSV/JSON reports ([`cli`]).

pub mod c2;
pub mod cli;
pub mod d1;
pub mod error;
pub mod optimize;
pub mod report;
pub mod sampling;
pub mod sequence;
pub mod weights;

pub use c2::{
    c2_norm, c_constant, d_constant, inv_t_matrix, maxnorm_op_norm, scaled_c2_norm, t_matrix, Mat2,
    NormParams, Vec2,
};
pub use d1::{
    d1_constant_estimate, d1_scan, d1_violation_scan, ideal_check, k_lower_bound, witness, D1Estimate,
    D1ScanReport,
};
pub use error::{Error, Result};
pub use optimize::{bilinear_norm_sample, maximize_over_r, verify_c_bound, verify_d_bound, BoundCheckResult, Interval};
pub use sequence::{
    a_norm, pointwise_product, quasi_circle, quasi_inverse_c0, spectral_invariance_check, star, sup_norm,
    AlgebraParams, BlockSequence, QuasiInverseError,
};
pub use weights::WeightFamily;

pub use num_complex::Complex64;
