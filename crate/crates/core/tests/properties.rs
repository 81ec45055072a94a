use banach_seq::c2::{bilinear_coefficients, d_envelope};
use banach_seq::d1::{d1_ratio, ideal_ratio};
use banach_seq::optimize::{c_over_sigma, maximize_over_r, Interval};
use banach_seq::sequence::block_a_norm;
use banach_seq::*;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, 0.0f64..std::f64::consts::TAU).prop_map(|(log_mag, phase)| {
        Complex64::from_polar(10f64.powf(log_mag), phase)
    })
}

fn vec2() -> impl Strategy<Value = Vec2> {
    (complex(), complex()).prop_map(|(x, y)| Vec2::new(x, y))
}

fn params() -> impl Strategy<Value = NormParams> {
    (-20.0f64..20.0, 0.0f64..2.0).prop_map(|(r, log_s)| NormParams::new(r, 10f64.powf(log_s)).unwrap())
}

fn weights() -> impl Strategy<Value = WeightFamily> {
    prop_oneof![
        (1.0f64..5.0, 0.01f64..3.0).prop_map(|(a, b)| WeightFamily::affine(a, b).unwrap()),
        Just(WeightFamily::Logarithmic),
        (0.1f64..2.5).prop_map(|p| WeightFamily::polynomial(p).unwrap()),
        (1.0f64..50.0).prop_map(|c| WeightFamily::constant(c).unwrap()),
    ]
}

fn algebra() -> impl Strategy<Value = AlgebraParams> {
    (-10.0f64..10.0, weights()).prop_map(|(r, w)| AlgebraParams::new(r, w).unwrap())
}

fn sequence() -> impl Strategy<Value = BlockSequence> {
    proptest::collection::btree_map(0usize..40, vec2(), 1..6)
        .prop_map(|m| BlockSequence::from_blocks(m).unwrap())
}

fn rel_le(a: f64, b: f64, tol: f64) -> bool {
    a <= b * (1.0 + tol) + f64::MIN_POSITIVE
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn c2_norm_is_homogeneous(v in vec2(), s in complex(), p in params()) {
        let lhs = c2_norm(&v.scale(s), p);
        let rhs = s.norm() * c2_norm(&v, p);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn c2_norm_triangle(u in vec2(), v in vec2(), p in params()) {
        prop_assert!(rel_le(c2_norm(&(u + v), p), c2_norm(&u, p) + c2_norm(&v, p), 1e-10));
    }

    #[test]
    fn c2_norm_positive_definite(v in vec2(), p in params()) {
        prop_assert!(c2_norm(&v, p) > 0.0);
    }

    #[test]
    fn max_norm_domination(v in vec2(), p in params()) {
        prop_assert!(rel_le(v.max_norm(), d_constant(p) * c2_norm(&v, p), 1e-12));
        prop_assert!(rel_le(v.max_norm(), scaled_c2_norm(&v, p), 1e-12));
        prop_assert!(d_constant(p) <= d_envelope(p.r()) * (1.0 + 1e-12));
        prop_assert!(d_constant(p) <= 1.21);
    }

    #[test]
    fn scaled_norm_is_submultiplicative(u in vec2(), v in vec2(), p in params()) {
        let lhs = scaled_c2_norm(&u.pointwise(&v), p);
        prop_assert!(rel_le(lhs, scaled_c2_norm(&u, p) * scaled_c2_norm(&v, p), 1e-10));
    }

    #[test]
    fn c_constant_bounds_products(u in vec2(), v in vec2(), p in params()) {
        let lhs = c2_norm(&u.pointwise(&v), p);
        prop_assert!(rel_le(lhs, c_constant(p) * c2_norm(&u, p) * c2_norm(&v, p), 1e-10));
        prop_assert!(c_constant(p) <= 2.0 * p.sigma());
    }

    #[test]
    fn conjugation_invariance(v in vec2(), p in params()) {
        prop_assert_eq!(c2_norm(&v.conj(), p), c2_norm(&v, p));
    }

    #[test]
    fn inverse_consistency(p in params()) {
        let inv = inv_t_matrix(p);
        let d = d_constant(p);
        prop_assert!((maxnorm_op_norm(&inv) - d).abs() <= 1e-12 * d);
        let id = t_matrix(p) * inv;
        prop_assert!(id.max_abs_diff(&Mat2::identity()) <= 1e-12);
    }

    #[test]
    fn bilinear_matrix_reproduces_product(u in vec2(), v in vec2(), p in params()) {
        // T(T⁻¹u * T⁻¹v) equals the 2×4 coefficient matrix applied to u ⊗ v
        let tinv = inv_t_matrix(p);
        let direct = t_matrix(p).apply(&tinv.apply(&u).pointwise(&tinv.apply(&v)));
        let kron = [u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y];
        let rows = bilinear_coefficients(p);
        let via = |row: &[f64; 4]| row.iter().zip(kron.iter()).map(|(c, z)| z * *c).sum::<Complex64>();
        let scale = u.max_norm() * v.max_norm() * c_constant(p).max(1.0);
        prop_assert!((via(&rows[0]) - direct.x).norm() <= 1e-9 * scale);
        prop_assert!((via(&rows[1]) - direct.y).norm() <= 1e-9 * scale);
    }

    #[test]
    fn sup_norm_dominated(f in sequence(), p in algebra()) {
        prop_assert!(rel_le(sup_norm(&f), a_norm(&f, &p), 1e-12));
    }

    #[test]
    fn a_norm_submultiplicative(f in sequence(), g in sequence(), p in algebra()) {
        let lhs = a_norm(&pointwise_product(&f, &g), &p);
        prop_assert!(rel_le(lhs, a_norm(&f, &p) * a_norm(&g, &p), 1e-10));
    }

    #[test]
    fn star_is_isometric(f in sequence(), p in algebra()) {
        prop_assert_eq!(a_norm(&star(&f), &p), a_norm(&f, &p));
        prop_assert_eq!(star(&star(&f)), f);
    }

    #[test]
    fn block_locality(n in 0usize..500, v in vec2(), p in algebra()) {
        let f = BlockSequence::single(n, v);
        let expect = scaled_c2_norm(&v, NormParams::new(p.r(), p.sigma(n)).unwrap());
        prop_assert_eq!(a_norm(&f, &p), expect);
        prop_assert_eq!(block_a_norm(n, &v, &p), expect);
    }

    #[test]
    fn quasi_inverse_round_trip(f in sequence()) {
        let a = f.scale(Complex64::new(0.3, 0.0));
        if let Ok(b) = quasi_inverse_c0(&a) {
            prop_assert!(sup_norm(&quasi_circle(&a, &b)) <= 1e-12);
            prop_assert!(sup_norm(&quasi_circle(&b, &a)) <= 1e-12);
        }
    }

    #[test]
    fn json_round_trip(f in sequence()) {
        prop_assert_eq!(BlockSequence::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn weight_string_round_trip(w in weights(), n in 0usize..10_000) {
        let back: WeightFamily = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
        prop_assert!(w.sigma(n) >= 1.0);
    }

    #[test]
    fn k_lower_cross_check(n in 0usize..5000, r in -30.0f64..30.0, w in weights()) {
        let p = AlgebraParams::new(r, w).unwrap();
        let a = witness(n, r);
        let sq = pointwise_product(&a, &a);
        let assembled = a_norm(&sq, &p) / (2.0 * sup_norm(&a) * a_norm(&a, &p));
        let closed = k_lower_bound(n, r, &w);
        prop_assert!((assembled - closed).abs() <= 1e-12 * closed);
        // the witness pair's D1 ratio is exactly this bound
        let ratio = d1_ratio(&a, &a, &p).unwrap();
        prop_assert!((ratio - closed).abs() <= 1e-12 * closed);
    }

    #[test]
    fn degenerate_r_is_flat(n in 0usize..100_000, w in weights()) {
        prop_assert_eq!(k_lower_bound(n, 0.0, &w), 0.5);
        prop_assert_eq!(k_lower_bound(n, 1.0, &w), 0.5);
    }

    #[test]
    fn r_zero_ideal_bound(f in sequence(), g in sequence(), w in weights()) {
        let p = AlgebraParams::new(0.0, w).unwrap();
        if let Some(m) = ideal_ratio(&g, &f, &p) {
            prop_assert!(m <= 1.0 + 1e-10);
        }
    }
}

#[test]
fn op_norm_matches_unit_vector_sampling() {
    use rand::Rng;
    let mut rng = banach_seq::sampling::rng(21);
    for _ in 0..50 {
        let m = Mat2 {
            a11: banach_seq::sampling::complex(&mut rng, banach_seq::sampling::Magnitude::WIDE),
            a12: banach_seq::sampling::complex(&mut rng, banach_seq::sampling::Magnitude::WIDE),
            a21: banach_seq::sampling::complex(&mut rng, banach_seq::sampling::Magnitude::WIDE),
            a22: banach_seq::sampling::complex(&mut rng, banach_seq::sampling::Magnitude::WIDE),
        };
        let norm = maxnorm_op_norm(&m);
        let mut sampled = 0.0f64;
        for _ in 0..2000 {
            let v = Vec2::new(
                Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)),
                Complex64::from_polar(rng.gen::<f64>(), rng.gen_range(0.0..std::f64::consts::TAU)),
            );
            let v = if rng.gen_bool(0.5) { Vec2::new(v.y, v.x) } else { v };
            sampled = sampled.max(m.apply(&v).max_norm() / v.max_norm());
        }
        assert!(sampled <= norm * (1.0 + 1e-12));
        // aligning phases with the heaviest row attains the row sum
        let (c1, c2) = if m.a11.norm() + m.a12.norm() >= m.a21.norm() + m.a22.norm() {
            (m.a11, m.a12)
        } else {
            (m.a21, m.a22)
        };
        let v = Vec2::new(
            Complex64::from_polar(1.0, -c1.arg()),
            Complex64::from_polar(1.0, -c2.arg()),
        );
        let attained = m.apply(&v).max_norm();
        assert!((attained - norm).abs() <= 1e-12 * norm);
        assert!(sampled >= 0.9 * norm);
    }
}

#[test]
fn c_constant_dominates_sampling() {
    for &(r, s) in &[(0.0, 1.0), (1.0, 1.0), (0.4142, 1.0), (-2.0, 3.0), (5.0, 20.0), (-0.7, 100.0)] {
        let p = NormParams::new(r, s).unwrap();
        let sampled = bilinear_norm_sample(p, 100_000, 8).unwrap();
        assert!(sampled <= c_constant(p) * (1.0 + 1e-10), "r={r} s={s}: {sampled} > {}", c_constant(p));
        assert!(sampled > 0.0);
    }
}

#[test]
fn grid_refinement_is_stable() {
    let bracket = Interval::default();
    let objectives: Vec<Box<dyn Fn(f64) -> f64>> = vec![
        Box::new(d_envelope),
        Box::new(|r| c_over_sigma(r, 1.0)),
        Box::new(|r| c_over_sigma(r, 10.0)),
        Box::new(|r| c_over_sigma(r, 100.0)),
    ];
    for f in &objectives {
        let coarse = maximize_over_r(f, bracket, 5_000, 1e-10).unwrap();
        let fine = maximize_over_r(f, bracket, 10_000, 1e-10).unwrap();
        let rel = (coarse.max_value - fine.max_value).abs() / fine.max_value;
        assert!(rel < 1e-6, "grid doubling moved the maximum by {rel:e}");
    }
}

#[test]
fn unbounded_weights_give_unbounded_lower_bounds() {
    for w in [WeightFamily::default(), WeightFamily::polynomial(1.5).unwrap()] {
        for r in [-1.0, -0.5, 0.5, 2.0, 3.0] {
            let scan = d1_violation_scan(r, &w, 100_000).unwrap();
            for c in &scan.crossings {
                let n = c.n.unwrap_or_else(|| panic!("r={r} {w}: no crossing of {}", c.threshold));
                assert!(scan.records[n].k_lower >= c.threshold);
                assert!(n == 0 || scan.records[n - 1].k_lower < c.threshold);
            }
            assert!(scan.strictly_increasing_after_onset());
        }
    }
    // logarithmic growth is too slow to reach 100 in a desk-sized scan; smaller
    // thresholds are still crossed
    let scan = d1_violation_scan(2.0, &WeightFamily::Logarithmic, 100_000).unwrap();
    assert!(scan.first_crossing(1.0).is_some());
    assert!(scan.strictly_increasing_after_onset());
}

#[test]
fn estimate_dominates_scan() {
    for (r, w) in [
        (2.0, WeightFamily::default()),
        (-1.0, WeightFamily::Logarithmic),
        (0.5, WeightFamily::polynomial(1.5).unwrap()),
        (1.0, WeightFamily::default()),
    ] {
        let max_block = 60;
        let scan = d1_scan(r, &w, max_block + 1).unwrap();
        let est = d1_constant_estimate(r, &w, 500, max_block, 4).unwrap();
        assert!(est.k_hat >= scan.max_k_lower());
    }
}
