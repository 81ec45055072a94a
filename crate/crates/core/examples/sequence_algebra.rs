//! Finitely supported sequences as ℂ² blocks: norms, products, involution and
//! the JSON file format read by the `banach-seq` binary.
//!
//! ```bash
//! cargo run -p banach-seq --example sequence_algebra
//! ```

use banach_seq::{a_norm, pointwise_product, star, sup_norm, AlgebraParams, BlockSequence, Complex64, Vec2, WeightFamily};

fn main() -> banach_seq::Result<()> {
    let weights: WeightFamily = "affine:1,1".parse()?;
    let p = AlgebraParams::new(2.0, weights)?;

    let f = BlockSequence::from_blocks([
        (0, Vec2::new(Complex64::new(1.0, 1.0), Complex64::new(0.0, -0.5))),
        (3, Vec2::real(1.0, 2.0)),
    ])?;
    // coordinate k lives in block k / 2
    let g = BlockSequence::from_coords([(6, Complex64::new(0.5, 0.0)), (7, Complex64::new(-1.0, 0.0))])?;

    let fg = pointwise_product(&f, &g);
    println!("f        = {}", f.to_json());
    println!("g        = {}", g.to_json());
    println!("f·g      = {}", fg.to_json());
    println!("‖f‖_∞ = {}, ‖f‖_A = {}", sup_norm(&f), a_norm(&f, &p));
    println!("‖g‖_∞ = {}, ‖g‖_A = {}", sup_norm(&g), a_norm(&g, &p));
    println!(
        "‖fg‖_A = {} <= ‖f‖_A ‖g‖_A = {}",
        a_norm(&fg, &p),
        a_norm(&f, &p) * a_norm(&g, &p)
    );
    println!("‖f*‖_A = {} (involution is isometric)", a_norm(&star(&f), &p));

    for label in ["log", "poly:2", "const:3"] {
        let w: WeightFamily = label.parse()?;
        let q = AlgebraParams::new(2.0, w)?;
        println!("weights {label:>8}: σ(3) = {:.4}, ‖f‖_A = {:.4}", w.sigma(3), a_norm(&f, &q));
    }
    Ok(())
}
