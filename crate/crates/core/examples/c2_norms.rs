//! The norm family on a single copy of ℂ² and its constants.
//!
//! ```bash
//! cargo run -p banach-seq --example c2_norms
//! ```

use banach_seq::optimize::bilinear_norm_sample;
use banach_seq::{
    c2_norm, c_constant, d_constant, inv_t_matrix, maxnorm_op_norm, scaled_c2_norm, t_matrix, NormParams, Vec2,
};

fn main() -> banach_seq::Result<()> {
    let v = Vec2::real(1.0, 2.0);
    println!("{:>6} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10}", "r", "sigma", "|v|_rs", "2s|v|_rs", "D", "C", "C sampled");
    for &(r, sigma) in &[(0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (2.0, 10.0), (-0.5, 4.0), (0.4142, 1.0)] {
        let p = NormParams::new(r, sigma)?;
        let sampled = bilinear_norm_sample(p, 20_000, 1)?;
        println!(
            "{r:>6} {sigma:>6} {:>10.4} {:>10.4} {:>10.6} {:>10.6} {:>10.6}",
            c2_norm(&v, p),
            scaled_c2_norm(&v, p),
            d_constant(p),
            c_constant(p),
            sampled,
        );
    }

    let p = NormParams::new(2.0, 3.0)?;
    let t = t_matrix(p);
    let t_inv = inv_t_matrix(p);
    println!("\nT(2, 3)    = {t:?}");
    println!("‖T⁻¹‖_op   = {} (= D = {})", maxnorm_op_norm(&t_inv), d_constant(p));
    println!("‖T·T⁻¹ - I‖ = {:e}", (t * t_inv).max_abs_diff(&banach_seq::Mat2::identity()));
    Ok(())
}
