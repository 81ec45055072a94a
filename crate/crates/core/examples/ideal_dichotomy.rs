//! Multiplying by a bounded sequence: the `r = 0` algebra absorbs it with
//! constant 1, while at `r = 1` the `(1,1)` / `(1,0)` pair gives ratios that grow
//! with `σ(n)`.
//!
//! ```bash
//! cargo run -p banach-seq --example ideal_dichotomy
//! ```

use banach_seq::d1::ideal_check;
use banach_seq::WeightFamily;

fn main() -> banach_seq::Result<()> {
    let w = WeightFamily::default();

    let r0 = ideal_check(0.0, &w, 10_000, 200, 1)?;
    println!("r = 0: max sampled ‖gf‖_A / (‖g‖_∞ ‖f‖_A) = {:.12} over {} samples", r0.max_ratio, r0.sample_count);

    for n in [19, 99, 399, 3999] {
        let rep = ideal_check(1.0, &w, 1_000, n, 1)?;
        println!(
            "r = 1: witness at n = {n:>4}, σ = {:>6}: ratio {:>8} (sampled max {:.4})",
            rep.witness.sigma_n, rep.witness.ratio, rep.max_ratio
        );
    }
    Ok(())
}
