//! Quasi-inverses `b = a / (a - 1)` and the element-wise spectral invariance check.
//!
//! ```bash
//! cargo run -p banach-seq --example quasi_inverse
//! ```

use banach_seq::{
    quasi_circle, quasi_inverse_c0, spectral_invariance_check, sup_norm, AlgebraParams, BlockSequence, Complex64,
    Vec2, WeightFamily,
};

fn main() -> banach_seq::Result<()> {
    let p = AlgebraParams::new(2.0, WeightFamily::default())?;

    let a = BlockSequence::from_blocks([
        (0, Vec2::real(2.0, -1.0)),
        (5, Vec2::new(Complex64::new(0.5, 0.5), Complex64::new(3.0, 0.0))),
    ])?;
    let b = quasi_inverse_c0(&a).expect("no coordinate equals 1");
    println!("a      = {}", a.to_json());
    println!("b      = {}", b.to_json());
    println!("‖a∘b‖_∞ = {:e}", sup_norm(&quasi_circle(&a, &b)));

    for (label, a) in [
        ("2·e0", BlockSequence::unit(0).scale(Complex64::new(2.0, 0.0))),
        ("e0", BlockSequence::unit(0)),
        ("e7 + 3·e2", BlockSequence::unit(7).add(&BlockSequence::unit(2).scale(Complex64::new(3.0, 0.0)))),
        ("zero", BlockSequence::zero()),
    ] {
        let rep = spectral_invariance_check(&a, &p);
        match rep.obstruction {
            None => println!(
                "{label:>10}: quasi-invertible in c0 and A, ‖b‖_A = {}, residual {:e}",
                rep.inverse_a_norm.unwrap(),
                rep.residual.unwrap()
            ),
            Some(e) => println!("{label:>10}: {e} (consistent: {})", rep.consistent()),
        }
    }
    Ok(())
}
