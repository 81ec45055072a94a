//! D1 diagnostics for the weighted sequence algebra.
//!
//! An algebra `A ⊂ c₀` is D1 when some `K` satisfies
//! `‖fg‖_A <= K (‖f‖_A ‖g‖_∞ + ‖f‖_∞ ‖g‖_A)` for all `f, g`. Evaluating the
//! ratio on the one-block witnesses `a_n = (1, r)` placed in block `n` gives
//! the lower bound
//!
//! ```text
//! K >= max(|1 + r³|, σ(n) |r² - r|) / (2 (1 + r²) max(1, |r|))
//! ```
//!
//! which grows with `σ(n)` unless `r ∈ {0, 1}`.

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::c2::Vec2;
use crate::error::{Error, Result};
use crate::report::fmt_float;
use crate::sampling::{self, Magnitude};
use crate::sequence::{a_norm, pointwise_product, sup_norm, AlgebraParams, BlockSequence};
use crate::weights::WeightFamily;

/// Denominators below this are skipped rather than divided by.
pub const MIN_DENOMINATOR: f64 = 1e-300;

/// Thresholds for which every scan reports its first crossing.
pub const CERTIFICATE_THRESHOLDS: [f64; 3] = [1.0, 10.0, 100.0];

/// Most blocks in a randomly drawn sequence.
const MAX_SAMPLED_BLOCKS: usize = 4;

/// The witness `a_n`: block `n` equal to `(1, r)`, zero elsewhere.
pub fn witness(n: usize, r: f64) -> BlockSequence {
    BlockSequence::single(n, Vec2::real(1.0, r))
}

/// Closed-form lower bound on any D1 constant, from the witness `a_n`.
pub fn k_lower_bound(n: usize, r: f64, w: &WeightFamily) -> f64 {
    let sigma = w.sigma(n);
    let numerator = (1.0 + r * r * r).abs().max(sigma * (r * r - r).abs());
    numerator / (2.0 * (1.0 + r * r) * r.abs().max(1.0))
}

/// `‖fg‖_A / (‖f‖_A ‖g‖_∞ + ‖f‖_∞ ‖g‖_A)`, or `None` for a vanishing denominator.
pub fn d1_ratio(f: &BlockSequence, g: &BlockSequence, p: &AlgebraParams) -> Option<f64> {
    let denom = a_norm(f, p) * sup_norm(g) + sup_norm(f) * a_norm(g, p);
    if denom < MIN_DENOMINATOR {
        return None;
    }
    Some(a_norm(&pointwise_product(f, g), p) / denom)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub n: usize,
    pub sigma_n: f64,
    pub a_norm: f64,
    pub sq_norm: f64,
    pub sup_norm: f64,
    pub k_lower: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub threshold: f64,
    /// First scanned `n` with `k_lower >= threshold`.
    pub n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct D1ScanReport {
    pub r: f64,
    pub weights: WeightFamily,
    pub blocks: usize,
    pub records: Vec<ScanRecord>,
    pub crossings: Vec<Crossing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<D1Estimate>,
}

pub const SCAN_CSV_HEADER: &str = "n,sigma_n,a_norm,sq_norm,sup_norm,k_lower";

impl D1ScanReport {
    pub fn first_crossing(&self, threshold: f64) -> Option<&ScanRecord> {
        self.records.iter().find(|rec| rec.k_lower >= threshold)
    }

    pub fn max_k_lower(&self) -> f64 {
        self.records.iter().map(|rec| rec.k_lower).fold(0.0, f64::max)
    }

    /// First `n` from which the growing branch `σ(n)|r² - r|` strictly
    /// dominates `|1 + r³|`; `None` if it never does within the scan.
    pub fn growth_onset(&self) -> Option<usize> {
        let r = self.r;
        self.records
            .iter()
            .find(|rec| rec.sigma_n * (r * r - r).abs() > (1.0 + r * r * r).abs())
            .map(|rec| rec.n)
    }

    /// Whether `k_lower` is strictly increasing from [`Self::growth_onset`] on.
    pub fn strictly_increasing_after_onset(&self) -> bool {
        let Some(start) = self.growth_onset() else {
            return false;
        };
        self.records[start..]
            .windows(2)
            .all(|w| w[1].k_lower > w[0].k_lower)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SCAN_CSV_HEADER);
        out.push('\n');
        for rec in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                rec.n,
                fmt_float(rec.sigma_n),
                fmt_float(rec.a_norm),
                fmt_float(rec.sq_norm),
                fmt_float(rec.sup_norm),
                fmt_float(rec.k_lower),
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan reports serialize")
    }
}

fn check_r(r: f64) -> Result<()> {
    if r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidR(r))
    }
}

/// Evaluates the witnesses `a_0 .. a_{blocks-1}` through the sequence norms.
/// Any weight family is accepted; see [`d1_violation_scan`] for the
/// certifying variant.
pub fn d1_scan(r: f64, w: &WeightFamily, blocks: usize) -> Result<D1ScanReport> {
    check_r(r)?;
    if blocks == 0 {
        return Err(Error::ZeroCount("N"));
    }
    let p = AlgebraParams::new(r, *w)?;
    let records: Vec<ScanRecord> = (0..blocks)
        .map(|n| {
            let a = witness(n, r);
            let a_sq = pointwise_product(&a, &a);
            let norm = a_norm(&a, &p);
            let sq_norm = a_norm(&a_sq, &p);
            let sup = sup_norm(&a);
            ScanRecord {
                n,
                sigma_n: p.sigma(n),
                a_norm: norm,
                sq_norm,
                sup_norm: sup,
                k_lower: sq_norm / (2.0 * sup * norm),
            }
        })
        .collect();
    let mut report = D1ScanReport {
        r,
        weights: *w,
        blocks,
        records,
        crossings: Vec::new(),
        estimate: None,
    };
    report.crossings = CERTIFICATE_THRESHOLDS
        .iter()
        .map(|&threshold| Crossing {
            threshold,
            n: report.first_crossing(threshold).map(|rec| rec.n),
        })
        .collect();
    Ok(report)
}

/// Scan intended to certify that no D1 constant exists. Bounded weights are
/// rejected since they cannot make the lower bounds grow.
pub fn d1_violation_scan(r: f64, w: &WeightFamily, blocks: usize) -> Result<D1ScanReport> {
    if !w.is_unbounded() {
        return Err(Error::BoundedWeights(w.to_string()));
    }
    d1_scan(r, w, blocks)
}

/// Empirical lower bound on the D1 constant; never an upper bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct D1Estimate {
    pub k_hat: f64,
    /// Ratios evaluated, witnesses included.
    pub sample_count: usize,
    /// Pairs skipped for a vanishing denominator.
    pub skipped: usize,
    pub seed: u64,
    pub max_block: usize,
}

pub const ESTIMATE_CSV_HEADER: &str = "k_hat,sample_count,skipped,seed,max_block";

impl D1Estimate {
    pub fn to_csv(&self) -> String {
        format!(
            "{ESTIMATE_CSV_HEADER}\n{},{},{},{},{}\n",
            fmt_float(self.k_hat),
            self.sample_count,
            self.skipped,
            self.seed,
            self.max_block
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimates serialize")
    }
}

/// Largest D1 ratio over `samples` random pairs supported in blocks
/// `0..=max_block`, plus the witness pairs `(a_n, a_n)` for every such `n`.
///
/// Half of the `g` draws reuse the support of `f` so that products are not
/// trivially zero.
pub fn d1_constant_estimate(
    r: f64,
    w: &WeightFamily,
    samples: usize,
    max_block: usize,
    seed: u64,
) -> Result<D1Estimate> {
    check_r(r)?;
    if samples == 0 {
        return Err(Error::ZeroCount("samples"));
    }
    let p = AlgebraParams::new(r, *w)?;
    let mut rng = sampling::rng(seed);
    let mut k_hat = 0.0f64;
    let mut evaluated = 0;
    let mut skipped = 0;

    let mut record = |ratio: Option<f64>| match ratio {
        Some(x) => {
            evaluated += 1;
            k_hat = k_hat.max(x);
        }
        None => skipped += 1,
    };

    for _ in 0..samples {
        let f = sampling::sequence(&mut rng, max_block, MAX_SAMPLED_BLOCKS, Magnitude::WIDE);
        let g = if rng.gen_bool(0.5) {
            let support: Vec<usize> = f.blocks().map(|(n, _)| n).collect();
            sampling::sequence_on(&mut rng, &support, Magnitude::WIDE)
        } else {
            sampling::sequence(&mut rng, max_block, MAX_SAMPLED_BLOCKS, Magnitude::WIDE)
        };
        record(d1_ratio(&f, &g, &p));
    }
    for n in 0..=max_block {
        let a = witness(n, r);
        record(d1_ratio(&a, &a, &p));
    }

    Ok(D1Estimate {
        k_hat,
        sample_count: evaluated,
        skipped,
        seed,
        max_block,
    })
}

/// `‖gf‖_A / (‖g‖_∞ ‖f‖_A)` for a `c₀` multiplier `g`.
pub fn ideal_ratio(g: &BlockSequence, f: &BlockSequence, p: &AlgebraParams) -> Option<f64> {
    let denom = sup_norm(g) * a_norm(f, p);
    if denom < MIN_DENOMINATOR {
        return None;
    }
    Some(a_norm(&pointwise_product(g, f), p) / denom)
}

/// The deterministic pair `(f, g)` with `f = (1, 1)` and `g = (1, 0)` in block `n`.
pub fn ideal_witness(n: usize) -> (BlockSequence, BlockSequence) {
    (
        BlockSequence::single(n, Vec2::real(1.0, 1.0)),
        BlockSequence::single(n, Vec2::real(1.0, 0.0)),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdealWitness {
    pub n: usize,
    pub sigma_n: f64,
    pub f: BlockSequence,
    pub g: BlockSequence,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdealReport {
    pub r: f64,
    pub weights: WeightFamily,
    /// Largest sampled ratio `‖gf‖_A / (‖g‖_∞ ‖f‖_A)`.
    pub max_ratio: f64,
    pub sample_count: usize,
    pub skipped: usize,
    pub seed: u64,
    pub max_block: usize,
    /// The `(1,1)` / `(1,0)` pair in block `max_block`. Its ratio is unbounded in
    /// `n` when `r = 1`.
    pub witness: IdealWitness,
}

impl IdealReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ideal reports serialize")
    }
}

/// Estimates the best `M` in `‖gf‖_A <= M ‖g‖_∞ ‖f‖_A` with `f` random in
/// `c_f` and `g` a random multiplier on the support of `f`.
pub fn ideal_check(
    r: f64,
    w: &WeightFamily,
    samples: usize,
    max_block: usize,
    seed: u64,
) -> Result<IdealReport> {
    check_r(r)?;
    if samples == 0 {
        return Err(Error::ZeroCount("samples"));
    }
    let p = AlgebraParams::new(r, *w)?;
    let mut rng = sampling::rng(seed);
    let mut max_ratio = 0.0f64;
    let mut evaluated = 0;
    let mut skipped = 0;
    for _ in 0..samples {
        let f = sampling::sequence(&mut rng, max_block, MAX_SAMPLED_BLOCKS, Magnitude::WIDE);
        let support: Vec<usize> = f.blocks().map(|(n, _)| n).collect();
        let g = sampling::sequence_on(&mut rng, &support, Magnitude::Unit);
        match ideal_ratio(&g, &f, &p) {
            Some(x) => {
                evaluated += 1;
                max_ratio = max_ratio.max(x);
            }
            None => skipped += 1,
        }
    }

    let (f, g) = ideal_witness(max_block);
    let ratio = ideal_ratio(&g, &f, &p).unwrap_or(0.0);
    Ok(IdealReport {
        r,
        weights: *w,
        max_ratio,
        sample_count: evaluated,
        skipped,
        seed,
        max_block,
        witness: IdealWitness {
            n: max_block,
            sigma_n: p.sigma(max_block),
            f,
            g,
            ratio,
        },
    })
}
