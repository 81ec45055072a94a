//! Lower bounds on the D1 constant from the one-block witnesses, and how they
//! grow with the weight unless `r ∈ {0, 1}`.
//!
//! ```bash
//! cargo run -p banach-seq --example d1_violation
//! ```

use banach_seq::{d1_constant_estimate, d1_violation_scan, k_lower_bound, WeightFamily};

fn main() -> banach_seq::Result<()> {
    let affine = WeightFamily::default();

    for r in [2.0, -1.0, 0.5, 0.0, 1.0] {
        let scan = d1_violation_scan(r, &affine, 10_000)?;
        let crossings: Vec<String> = scan
            .crossings
            .iter()
            .map(|c| match c.n {
                Some(n) => format!("K={} at n={n}", c.threshold),
                None => format!("K={} never", c.threshold),
            })
            .collect();
        println!(
            "r = {r:>4}: k_lower(0) = {:.4}, k_lower(9999) = {:.4}; {}",
            scan.records[0].k_lower,
            scan.records[9999].k_lower,
            crossings.join(", ")
        );
    }

    println!("\nfirst rows of the r = 2 scan (CSV):");
    let scan = d1_violation_scan(2.0, &affine, 6)?;
    print!("{}", scan.to_csv());

    println!("\nsampled D1 ratios (lower bounds on K, witnesses included):");
    for r in [2.0, 0.0, 1.0] {
        for max_block in [10, 100, 1000] {
            let est = d1_constant_estimate(r, &affine, 5_000, max_block, 7)?;
            println!(
                "  r = {r}, blocks <= {max_block:>4}: k_hat = {:>8.4} (closed-form witness bound {:.4})",
                est.k_hat,
                k_lower_bound(max_block, r, &affine)
            );
        }
    }
    Ok(())
}
