//! Deterministic random draws of complex scalars, ℂ² blocks and finitely
//! supported sequences.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::c2::Vec2;
use crate::sequence::BlockSequence;

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// How magnitudes of sampled components are distributed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Magnitude {
    /// Uniform on `[0, 1]`.
    Unit,
    /// `10^u` with `u` uniform on `[log10 lo, log10 hi]`.
    LogUniform { lo: f64, hi: f64 },
}

impl Magnitude {
    /// Log-uniform on `[1e-3, 1e3]`.
    pub const WIDE: Magnitude = Magnitude::LogUniform { lo: 1e-3, hi: 1e3 };

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Magnitude::Unit => rng.gen::<f64>(),
            Magnitude::LogUniform { lo, hi } => {
                10f64.powf(rng.gen_range(lo.log10()..=hi.log10()))
            }
        }
    }
}

/// A complex number with uniform phase.
pub fn complex<R: Rng + ?Sized>(rng: &mut R, mag: Magnitude) -> Complex64 {
    Complex64::from_polar(mag.draw(rng), rng.gen_range(0.0..TAU))
}

pub fn vec2<R: Rng + ?Sized>(rng: &mut R, mag: Magnitude) -> Vec2 {
    Vec2::new(complex(rng, mag), complex(rng, mag))
}

/// A nonzero block normalised to `norm(v) == 1`.
pub fn unit_vec2<R, F>(rng: &mut R, norm: F) -> Vec2
where
    R: Rng + ?Sized,
    F: Fn(&Vec2) -> f64,
{
    loop {
        let v = vec2(rng, Magnitude::Unit);
        let n = norm(&v);
        if n > 1e-12 {
            return v.scale(Complex64::new(1.0 / n, 0.0));
        }
    }
}

/// A sequence with between 1 and `max_blocks` nonzero blocks drawn from
/// indices `0..=max_block`.
pub fn sequence<R: Rng + ?Sized>(
    rng: &mut R,
    max_block: usize,
    max_blocks: usize,
    mag: Magnitude,
) -> BlockSequence {
    let count = rng.gen_range(1..=max_blocks.max(1));
    let mut f = BlockSequence::zero();
    for _ in 0..count {
        let n = rng.gen_range(0..=max_block);
        f.set_block(n, vec2(rng, mag));
    }
    f
}

/// A sequence supported on the given block indices.
pub fn sequence_on<R: Rng + ?Sized>(rng: &mut R, support: &[usize], mag: Magnitude) -> BlockSequence {
    let mut f = BlockSequence::zero();
    for &n in support {
        f.set_block(n, vec2(rng, mag));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<Vec2> = {
            let mut r = rng(7);
            (0..10).map(|_| vec2(&mut r, Magnitude::WIDE)).collect()
        };
        let b: Vec<Vec2> = {
            let mut r = rng(7);
            (0..10).map(|_| vec2(&mut r, Magnitude::WIDE)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn log_uniform_stays_in_range() {
        let mut r = rng(1);
        for _ in 0..10_000 {
            let z = complex(&mut r, Magnitude::WIDE);
            let m = z.norm();
            assert!((1e-3 * (1.0 - 1e-12)..=1e3 * (1.0 + 1e-12)).contains(&m));
        }
    }

    #[test]
    fn unit_vectors_have_unit_norm() {
        let mut r = rng(3);
        for _ in 0..100 {
            let v = unit_vec2(&mut r, Vec2::max_norm);
            assert!((v.max_norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn sequences_respect_bounds() {
        let mut r = rng(11);
        for _ in 0..200 {
            let f = sequence(&mut r, 9, 4, Magnitude::Unit);
            assert!(!f.is_zero() && f.support_len() <= 4);
            assert!(f.blocks().all(|(n, _)| n <= 9));
        }
    }
}
