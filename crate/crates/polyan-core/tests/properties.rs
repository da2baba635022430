//! Property-based checks of the algebraic and analytic invariants: derivative
//! commutation, conjugation symmetry, Leibniz rule, decomposition round-trips,
//! solver exactness, and agreement between the symbolic derivatives and
//! finite differences of the numerical evaluation.

mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polyan_core::expr::{ExpPoly, Exponents, WirtingerOp};
use polyan_core::solver::{
    analytic_components, holomorphic_remainder, particular_solution, recompose, verify_solution,
};

fn coeff_strategy() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn term_strategy(max_a: u32, max_b: u32) -> impl Strategy<Value = (Exponents, Complex64)> {
    (
        0..=max_a,
        0..=max_b,
        0..=2u32,
        0..=2u32,
        coeff_strategy(),
    )
        .prop_map(|(a, b, c, d, k)| (Exponents::new(a, b, c, d), k))
}

/// Arbitrary expression with total degree ≤ 8 and all three exponential
/// multiplicities exercised (m3 may be negative).
fn exppoly_strategy() -> impl Strategy<Value = ExpPoly> {
    (
        proptest::collection::vec(term_strategy(4, 4), 1..6),
        0..=1i64,
        0..=1i64,
        -1..=1i64,
    )
        .prop_map(|(terms, m1, m2, m3)| ExpPoly::from_terms(m1, m2, m3, terms).unwrap())
}

/// Polyanalytic-in-z expression (finite order, `e^{zw̄}` allowed).
fn datum_strategy() -> impl Strategy<Value = ExpPoly> {
    (
        proptest::collection::vec(term_strategy(8, 6), 1..8),
        0..=1i64,
    )
        .prop_map(|(terms, m1)| {
            let cleaned = terms
                .into_iter()
                .map(|(e, k)| (Exponents::new(e.a, e.b, 0, 0), k));
            ExpPoly::from_terms(m1, 0, 0, cleaned).unwrap()
        })
}

proptest! {
    #[test]
    fn mixed_derivatives_commute(f in exppoly_strategy()) {
        let zx = f.wirtinger(WirtingerOp::DZ).wirtinger(WirtingerOp::DZbar);
        let xz = f.wirtinger(WirtingerOp::DZbar).wirtinger(WirtingerOp::DZ);
        prop_assert!(zx.approx_eq(&xz, 1e-12), "{zx} vs {xz}");
        let ww = f.wirtinger(WirtingerOp::DW).wirtinger(WirtingerOp::DWbar);
        let ww2 = f.wirtinger(WirtingerOp::DWbar).wirtinger(WirtingerOp::DW);
        prop_assert!(ww.approx_eq(&ww2, 1e-12));
    }

    #[test]
    fn conjugation_intertwines_derivatives(f in exppoly_strategy()) {
        let lhs = f.wirtinger(WirtingerOp::DZbar).conjugate();
        let rhs = f.conjugate().wirtinger(WirtingerOp::DZ);
        prop_assert!(lhs.approx_eq(&rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn leibniz_rule(f in exppoly_strategy(), g in exppoly_strategy()) {
        let product_rule = f.mul(&g).wirtinger(WirtingerOp::DZbar);
        let expanded = f
            .wirtinger(WirtingerOp::DZbar)
            .mul(&g)
            .add(&f.mul(&g.wirtinger(WirtingerOp::DZbar)))
            .unwrap();
        prop_assert!(product_rule.approx_eq(&expanded, 1e-11), "{product_rule} vs {expanded}");
    }

    #[test]
    fn conjugation_is_isometric_involution(f in exppoly_strategy()) {
        prop_assert_eq!(f.conjugate().conjugate(), f.clone());
        prop_assert_eq!(f.conjugate().max_coefficient(), f.max_coefficient());
    }

    #[test]
    fn decomposition_round_trip(f in datum_strategy()) {
        let d = analytic_components(&f).unwrap();
        let rebuilt = recompose(&d).unwrap();
        prop_assert!(rebuilt.approx_eq(&f, 1e-12), "{rebuilt} vs {f}");
        for component in &d.components {
            prop_assert!(component.is_z_analytic());
        }
    }

    #[test]
    fn solver_round_trip(f in datum_strategy()) {
        let bundle = particular_solution(&f, None).unwrap();
        let check = verify_solution(&bundle.particular, &f, 1e-10);
        prop_assert!(check.passed, "residual {}", check.max_residual);
    }
}

#[test]
fn evaluate_matches_finite_difference_wirtinger() {
    // central differences in x and y reproduce (∂_x + i∂_y)/2 and
    // (∂_x − i∂_y)/2 to first order
    let mut rng = ChaCha8Rng::seed_from_u64(0x57a7_10e5);
    let step = 1e-5;
    let w = Complex64::new(0.3, -0.6);
    for _ in 0..50 {
        let f = common::random_datum(&mut rng, 4, 4, true);
        let z = common::unit_disc(&mut rng);
        let eval = |z: Complex64| f.evaluate(z, w).unwrap();
        let fx = (eval(z + Complex64::new(step, 0.0)) - eval(z - Complex64::new(step, 0.0)))
            / (2.0 * step);
        let fy = (eval(z + Complex64::new(0.0, step)) - eval(z - Complex64::new(0.0, step)))
            / (2.0 * step);
        let i = Complex64::new(0.0, 1.0);
        let dbar_numeric = (fx + i * fy) / 2.0;
        let dz_numeric = (fx - i * fy) / 2.0;
        let dbar_exact = f.wirtinger(WirtingerOp::DZbar).evaluate(z, w).unwrap();
        let dz_exact = f.wirtinger(WirtingerOp::DZ).evaluate(z, w).unwrap();
        let scale = dbar_exact.norm().max(dz_exact.norm()).max(1.0);
        assert!(
            (dbar_numeric - dbar_exact).norm() <= 1e-6 * scale,
            "∂̄ mismatch: {dbar_numeric} vs {dbar_exact}"
        );
        assert!(
            (dz_numeric - dz_exact).norm() <= 1e-6 * scale,
            "∂ mismatch: {dz_numeric} vs {dz_exact}"
        );

        // same in the parameter variable
        let eval_w = |w: Complex64| f.evaluate(z, w).unwrap();
        let gx = (eval_w(w + Complex64::new(step, 0.0)) - eval_w(w - Complex64::new(step, 0.0)))
            / (2.0 * step);
        let gy = (eval_w(w + Complex64::new(0.0, step)) - eval_w(w - Complex64::new(0.0, step)))
            / (2.0 * step);
        let dwbar_numeric = (gx + i * gy) / 2.0;
        let dw_numeric = (gx - i * gy) / 2.0;
        let dwbar_exact = f.wirtinger(WirtingerOp::DWbar).evaluate(z, w).unwrap();
        let dw_exact = f.wirtinger(WirtingerOp::DW).evaluate(z, w).unwrap();
        let w_scale = dwbar_exact.norm().max(dw_exact.norm()).max(1.0);
        assert!((dwbar_numeric - dwbar_exact).norm() <= 1e-6 * w_scale);
        assert!((dw_numeric - dw_exact).norm() <= 1e-6 * w_scale);
    }
}

#[test]
fn evaluate_respects_ring_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xadd_0112);
    let w = Complex64::new(-0.2, 0.8);
    for _ in 0..50 {
        let f = common::random_datum(&mut rng, 4, 4, false);
        let g = common::random_datum(&mut rng, 4, 4, false);
        let z = common::unit_disc(&mut rng);
        let sum = f.add(&g).unwrap().evaluate(z, w).unwrap();
        let prod = f.mul(&g).evaluate(z, w).unwrap();
        let fz = f.evaluate(z, w).unwrap();
        let gz = g.evaluate(z, w).unwrap();
        assert!((sum - (fz + gz)).norm() < 1e-12);
        assert!((prod - fz * gz).norm() < 1e-12);
        let conj = f.conjugate().evaluate(z, w).unwrap();
        assert!((conj - fz.conj()).norm() < 1e-12);
    }
}

#[test]
fn solution_order_is_datum_order_plus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0d0e_b00c);
    for _ in 0..100 {
        let f = common::random_datum(&mut rng, 6, 5, true);
        let order = f.polyanalytic_order().unwrap();
        let bundle = particular_solution(&f, None).unwrap();
        assert_eq!(
            bundle.particular.polyanalytic_order(),
            Some(order + 1),
            "datum {f}"
        );
    }
}

#[test]
fn general_solution_structure() {
    // u = particular + g solves the problem and g is recovered exactly
    let mut rng = ChaCha8Rng::seed_from_u64(0x009e_0911);
    for _ in 0..50 {
        let f = common::random_datum(&mut rng, 5, 4, false);
        let g = {
            let terms = (0..4).map(|_| {
                (
                    Exponents::new(rng.gen_range(0..=5), 0, 0, 0),
                    common::unit_disc(&mut rng),
                )
            });
            ExpPoly::from_terms(0, 0, 0, terms).unwrap()
        };
        let bundle = particular_solution(&f, None).unwrap();
        let u = bundle.particular.add(&g).unwrap();
        assert!(verify_solution(&u, &f, 1e-10).passed);
        let recovered = holomorphic_remainder(&u, &f).unwrap();
        assert!(
            recovered.approx_eq(&g, 1e-10),
            "remainder {recovered} vs {g}"
        );
    }
}

use rand::Rng;
