//! Frozen-oracle checks: the closed-form Gaussian moment engine against a
//! plain polar-grid quadrature that shares no code with it.

mod common;

use num_complex::Complex64;
use polyan_core::measures::gaussian_moment;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn gaussian_moments_match_polar_quadrature_at_origin() {
    let table = common::gaussian_moment_table_oracle(6, c(0.0, 0.0));
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            let got = gaussian_moment(a, b, c(0.0, 0.0));
            let oracle = table[a as usize][b as usize];
            let scale = oracle.norm().max(1.0);
            assert!(
                (got - oracle).norm() <= 1e-6 * scale,
                "moment({a},{b},0): {got} vs oracle {oracle}"
            );
        }
    }
    // spot values the oracle must itself reproduce: δ_{ab}·a!
    assert!((table[3][3].re - 6.0).abs() < 1e-6);
    assert!(table[4][1].norm() < 1e-6);
}

#[test]
fn gaussian_moments_match_polar_quadrature_shifted() {
    let v = c(0.3, 0.7);
    let table = common::gaussian_moment_table_oracle(6, v);
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            let got = gaussian_moment(a, b, v);
            let oracle = table[a as usize][b as usize];
            let scale = oracle.norm().max(1.0);
            assert!(
                (got - oracle).norm() <= 1e-6 * scale,
                "moment({a},{b},v): {got} vs oracle {oracle}"
            );
        }
    }
    // first moment: v·e^{|v|²}
    let first = v * v.norm_sqr().exp();
    assert!((table[1][0] - first).norm() < 1e-6 * first.norm());
}
