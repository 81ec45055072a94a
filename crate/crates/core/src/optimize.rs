//! One-dimensional maximisation over `r` for the envelope bounds on `D` and
//! `C`, and a random sampler that bounds the multiplicative constant from below.

use std::fmt::Write as _;

use serde::Serialize;

use crate::c2::{c2_norm, c_constant, d_constant, d_envelope, NormParams, Vec2};
use crate::error::{Error, Result};
use crate::report::fmt_float;
use crate::sampling;

pub const DEFAULT_GRID: usize = 10_000;
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;
pub const DEFAULT_SIGMA_GRID: [f64; 6] = [1.0, 2.0, 5.0, 10.0, 50.0, 100.0];
/// Claimed envelope bound on `D`.
pub const D_BOUND: f64 = 1.21;
/// Claimed bound on `C / σ`.
pub const C_OVER_SIGMA_BOUND: f64 = 2.0;
/// `|r|` at which the tails of the envelope objectives are checked.
pub const TAIL_R: f64 = 1e3;
/// Relative slack allowed when comparing a maximum with its claimed bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// Points where `|·|` in the objectives creates kinks.
const KINKS: [f64; 3] = [-1.0, 0.0, 1.0];

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Values this close (relative) to the running maximum count as ties.
const TIE_RTOL: f64 = 1e-12;

fn ties_or_beats(y: f64, best: f64) -> bool {
    y >= best - TIE_RTOL * best.abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidSearch(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, r: f64) -> bool {
        (self.lo..=self.hi).contains(&r)
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval { lo: -50.0, hi: 50.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Maximum {
    pub max_value: f64,
    pub argmax: f64,
    pub grid_points: usize,
    pub refinement_iterations: usize,
}

/// Evenly spaced points over `bracket`, with the kink points inserted exactly.
fn search_grid(bracket: Interval, grid: usize) -> Vec<f64> {
    let step = (bracket.hi - bracket.lo) / (grid - 1) as f64;
    let mut xs: Vec<f64> = (0..grid)
        .map(|i| {
            if i == grid - 1 {
                bracket.hi
            } else {
                bracket.lo + step * i as f64
            }
        })
        .chain(KINKS.iter().copied().filter(|k| bracket.contains(*k)))
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

fn eval<F: Fn(f64) -> f64>(objective: &F, r: f64) -> Result<f64> {
    let y = objective(r);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFiniteObjective { r })
    }
}

/// Golden-section search for a maximum of a unimodal function on `[a, b]`.
fn golden_max<F: Fn(f64) -> f64>(objective: &F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64, usize)> {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(objective, c)?;
    let mut fd = eval(objective, d)?;
    let mut iterations = 0;
    while (b - a).abs() > tol && iterations < 500 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(objective, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(objective, d)?;
        }
        iterations += 1;
    }
    let x = 0.5 * (a + b);
    Ok((x, eval(objective, x)?, iterations))
}

/// Grid scan of `bracket` followed by golden-section refinement inside the
/// two grid cells around the best grid point.
///
/// Near-ties between separate peaks (the envelope objectives are even in `r`)
/// resolve toward the larger `r`.
pub fn maximize_over_r<F>(objective: F, bracket: Interval, grid: usize, refine_tol: f64) -> Result<Maximum>
where
    F: Fn(f64) -> f64,
{
    if grid < 3 {
        return Err(Error::InvalidSearch(format!("grid must have at least 3 points, got {grid}")));
    }
    if refine_tol.is_nan() || refine_tol <= 0.0 {
        return Err(Error::InvalidSearch(format!("refine_tol must be positive, got {refine_tol}")));
    }
    let xs = search_grid(bracket, grid);
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let y = eval(&objective, x)?;
        if ties_or_beats(y, best_val) {
            best = i;
            best_val = best_val.max(y);
        }
    }
    let lo = xs[best.saturating_sub(1)];
    let hi = xs[(best + 1).min(xs.len() - 1)];
    let (x_ref, y_ref, iterations) = golden_max(&objective, lo, hi, refine_tol)?;
    let (max_value, argmax) = if ties_or_beats(y_ref, best_val) {
        (y_ref.max(best_val), x_ref)
    } else {
        (best_val, xs[best])
    };
    Ok(Maximum {
        max_value,
        argmax,
        grid_points: xs.len(),
        refinement_iterations: iterations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaMaximum {
    pub sigma: f64,
    pub max_value: f64,
    pub argmax_r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheckResult {
    pub name: String,
    pub max_value: f64,
    pub argmax_r: f64,
    pub grid_points: usize,
    pub refinement_iterations: usize,
    pub claimed_bound: f64,
    /// Largest objective value at `|r| = TAIL_R`.
    pub tail_value: f64,
    /// Per-σ maxima of the σ-dependent objective.
    pub per_sigma: Vec<SigmaMaximum>,
    pub satisfied: bool,
}

pub const BOUNDS_CSV_HEADER: &str =
    "name,max_value,argmax_r,grid_points,refinement_iterations,claimed_bound,tail_value,satisfied";

impl BoundCheckResult {
    fn within(&self, x: f64) -> bool {
        x <= self.claimed_bound * (1.0 + BOUND_SLACK)
    }

    pub fn csv_row(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{}",
            self.name,
            fmt_float(self.max_value),
            fmt_float(self.argmax_r),
            self.grid_points,
            self.refinement_iterations,
            fmt_float(self.claimed_bound),
            fmt_float(self.tail_value),
            self.satisfied
        );
        out
    }
}

fn tail_max(f: impl Fn(f64) -> f64) -> f64 {
    f(TAIL_R).max(f(-TAIL_R))
}

/// σ values on `[1, 100]` at which `d_constant` is checked against the envelope.
fn d_sigma_grid() -> Vec<f64> {
    (0..=20).map(|i| 10f64.powf(i as f64 / 10.0)).collect()
}

/// Maximises the envelope `(1 + |r|) / (1 + r²)` over `bracket` and checks,
/// for σ on a grid in `[1, 100]`, that `d_constant(r, σ)` stays below both the
/// envelope and the claimed bound.
pub fn verify_d_bound(bracket: Interval, grid: usize) -> Result<BoundCheckResult> {
    let envelope = maximize_over_r(d_envelope, bracket, grid, DEFAULT_REFINE_TOL)?;
    let sigmas = d_sigma_grid();

    let mut per_sigma = Vec::with_capacity(sigmas.len());
    for &sigma in &sigmas {
        let m = maximize_over_r(
            |r| d_constant(NormParams::new_unchecked(r, sigma)),
            bracket,
            grid,
            DEFAULT_REFINE_TOL,
        )?;
        per_sigma.push(SigmaMaximum {
            sigma,
            max_value: m.max_value,
            argmax_r: m.argmax,
        });
    }

    let dominated = search_grid(bracket, grid).iter().all(|&r| {
        let env = d_envelope(r);
        sigmas
            .iter()
            .all(|&s| d_constant(NormParams::new_unchecked(r, s)) <= env * (1.0 + 1e-12))
    });

    let mut result = BoundCheckResult {
        name: "d_envelope".into(),
        max_value: envelope.max_value,
        argmax_r: envelope.argmax,
        grid_points: envelope.grid_points,
        refinement_iterations: envelope.refinement_iterations,
        claimed_bound: D_BOUND,
        tail_value: tail_max(d_envelope),
        per_sigma,
        satisfied: false,
    };
    result.satisfied = dominated
        && result.within(result.max_value)
        && result.within(result.tail_value)
        && result.per_sigma.iter().all(|s| result.within(s.max_value));
    Ok(result)
}

/// `c_constant(r, σ) / σ`.
pub fn c_over_sigma(r: f64, sigma: f64) -> f64 {
    c_constant(NormParams::new_unchecked(r, sigma)) / sigma
}

/// Maximises `c_constant(r, σ) / σ` over `bracket` for every σ in `sigma_grid`.
pub fn verify_c_bound(bracket: Interval, grid: usize, sigma_grid: &[f64]) -> Result<BoundCheckResult> {
    if sigma_grid.is_empty() {
        return Err(Error::InvalidSearch("empty sigma grid".into()));
    }
    if let Some(&s) = sigma_grid.iter().find(|s| !(s.is_finite() && **s >= 1.0)) {
        return Err(Error::InvalidSigma(s));
    }
    let mut per_sigma = Vec::with_capacity(sigma_grid.len());
    let mut best: Option<Maximum> = None;
    let mut tail_value = 0.0f64;
    for &sigma in sigma_grid {
        let m = maximize_over_r(|r| c_over_sigma(r, sigma), bracket, grid, DEFAULT_REFINE_TOL)?;
        tail_value = tail_value.max(tail_max(|r| c_over_sigma(r, sigma)));
        per_sigma.push(SigmaMaximum {
            sigma,
            max_value: m.max_value,
            argmax_r: m.argmax,
        });
        if best.is_none_or(|b| m.max_value > b.max_value) {
            best = Some(m);
        }
    }
    let best = best.expect("sigma grid is non-empty");
    let mut result = BoundCheckResult {
        name: "c_over_sigma".into(),
        max_value: best.max_value,
        argmax_r: best.argmax,
        grid_points: best.grid_points,
        refinement_iterations: best.refinement_iterations,
        claimed_bound: C_OVER_SIGMA_BOUND,
        tail_value,
        per_sigma,
        satisfied: false,
    };
    result.satisfied = result.within(result.max_value) && result.within(result.tail_value);
    Ok(result)
}

/// Largest observed `‖v₁ * v₂‖ / (‖v₁‖ ‖v₂‖)` over random pairs normalised in
/// the `(r, σ)` norm. Every returned value is a lower bound on the true
/// multiplicative constant.
pub fn bilinear_norm_sample(p: NormParams, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::ZeroCount("samples"));
    }
    let norm = |v: &Vec2| c2_norm(v, p);
    let mut rng = sampling::rng(seed);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let v1 = sampling::unit_vec2(&mut rng, norm);
        let v2 = sampling::unit_vec2(&mut rng, norm);
        let ratio = norm(&v1.pointwise(&v2)) / (norm(&v1) * norm(&v2));
        best = best.max(ratio);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wide() -> Interval {
        Interval::new(-10.0, 10.0).unwrap()
    }

    #[test]
    fn quadratic_peak() {
        let m = maximize_over_r(|r| -(r - 1.0) * (r - 1.0), wide(), 101, 1e-10).unwrap();
        assert!(m.max_value.abs() < 1e-15);
        assert!((m.argmax - 1.0).abs() < 1e-8);
    }

    #[test]
    fn off_grid_peak_is_refined() {
        let peak = std::f64::consts::E;
        let m = maximize_over_r(|r| -(r - peak).powi(2), wide(), 7, 1e-12).unwrap();
        assert!((m.argmax - peak).abs() < 1e-6);
        assert!(m.refinement_iterations > 0);
    }

    #[test]
    fn envelope_peak_matches_calculus() {
        // d/dr (1+r)/(1+r²) = 0  ⇔  r² + 2r - 1 = 0
        let r_star = 2f64.sqrt() - 1.0;
        let expect = (1.0 + 2f64.sqrt()) / 2.0;
        let m = maximize_over_r(d_envelope, wide(), 1000, 1e-10).unwrap();
        assert!((m.max_value - expect).abs() < 1e-12);
        assert!((m.argmax - r_star).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn rejects_bad_setup() {
        assert!(maximize_over_r(|r| r, wide(), 2, 1e-10).is_err());
        assert!(maximize_over_r(|r| r, wide(), 10, 0.0).is_err());
        assert!(Interval::new(1.0, 1.0).is_err());
        let err = maximize_over_r(|r| 1.0 / r, wide(), 11, 1e-10).unwrap_err();
        assert_eq!(err, Error::NonFiniteObjective { r: 0.0 });
    }

    #[test]
    fn grid_contains_kinks() {
        let xs = search_grid(Interval::new(-3.3, 2.9).unwrap(), 17);
        for k in KINKS {
            assert!(xs.contains(&k));
        }
        assert_eq!(*xs.first().unwrap(), -3.3);
        assert_eq!(*xs.last().unwrap(), 2.9);
    }

    #[test]
    fn d_bound_holds() {
        let res = verify_d_bound(Interval::default(), 2000).unwrap();
        assert!(res.satisfied);
        assert!((res.max_value - 1.2071067811865475).abs() < 1e-9);
        // σ = 100: d_constant(r, 100) = max(1 + |r|/100, |r| + 1/100) / (1 + r²)
        let at_100 = res.per_sigma.last().unwrap();
        assert_eq!(at_100.sigma, 100.0);
        let direct = |r: f64| (1.0 + r.abs() / 100.0).max(r.abs() + 0.01) / (1.0 + r * r);
        assert!((at_100.max_value - direct(at_100.argmax_r)).abs() < 1e-12);
    }

    #[test]
    fn c_bound_examples() {
        for s in [1.0, 3.0, 40.0] {
            assert!((c_over_sigma(0.0, s) - 1.0 / s).abs() < 1e-15);
        }
        let res = verify_c_bound(Interval::default(), 2000, &[1.0, 50.0]).unwrap();
        assert!(res.satisfied);
        assert!(res.per_sigma.iter().all(|s| s.max_value <= 2.0));
        assert!(verify_c_bound(Interval::default(), 100, &[]).is_err());
        assert!(verify_c_bound(Interval::default(), 100, &[0.5]).is_err());
    }

    #[test]
    fn tails_decay() {
        assert!(d_envelope(TAIL_R) < 1e-2);
        for s in [1.0, 10.0, 100.0] {
            assert!(c_over_sigma(TAIL_R, s) < 1e-2);
            assert!(c_over_sigma(-TAIL_R, s) < 1e-2);
        }
    }

    #[test]
    fn sampler_reaches_one_for_max_norm() {
        let p = NormParams::new(0.0, 1.0).unwrap();
        let s = bilinear_norm_sample(p, 2000, 1).unwrap();
        assert!((0.999..=1.0 + 1e-12).contains(&s));
    }

    #[test]
    fn sampler_is_deterministic() {
        let p = NormParams::new(1.0, 1.0).unwrap();
        assert_eq!(
            bilinear_norm_sample(p, 500, 77).unwrap(),
            bilinear_norm_sample(p, 500, 77).unwrap()
        );
        assert!(bilinear_norm_sample(p, 0, 77).is_err());
    }
}
