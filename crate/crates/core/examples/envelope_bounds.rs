//! Grid search with golden-section refinement for the two envelope bounds:
//! `D <= (1 + |r|) / (1 + r²) <= 1.21` and `C <= 2σ`.
//!
//! ```bash
//! cargo run -p banach-seq --example envelope_bounds
//! ```

use banach_seq::optimize::{maximize_over_r, DEFAULT_GRID, DEFAULT_SIGMA_GRID};
use banach_seq::{verify_c_bound, verify_d_bound, Interval};

fn main() -> banach_seq::Result<()> {
    let bracket = Interval::default();

    let d = verify_d_bound(bracket, DEFAULT_GRID)?;
    println!(
        "D envelope: max {:.12} at r = {:.10} (bound {}, satisfied: {})",
        d.max_value, d.argmax_r, d.claimed_bound, d.satisfied
    );
    println!("  closed form (1 + √2)/2 = {:.12}", (1.0 + 2f64.sqrt()) / 2.0);

    let c = verify_c_bound(bracket, DEFAULT_GRID, &DEFAULT_SIGMA_GRID)?;
    println!("C/σ: overall max {:.8}, satisfied: {}", c.max_value, c.satisfied);
    for s in &c.per_sigma {
        println!("  σ = {:>5}: max C/σ = {:.8} at r = {:.6}", s.sigma, s.max_value, s.argmax_r);
    }

    // any 1-D objective works
    let m = maximize_over_r(|r| -(r - 1.0).powi(2), Interval::new(-10.0, 10.0)?, 101, 1e-10)?;
    println!("\n-(r-1)² peaks at r = {:.10} after {} refinement steps", m.argmax, m.refinement_iterations);
    Ok(())
}
