//! Shared generators and independent numerical oracles for the integration
//! tests. Nothing here calls back into the code paths it is used to check.

// each test binary uses a different subset
#![allow(dead_code)]

use num_complex::Complex64;
use polyan_core::expr::{ExpPoly, Exponents};
use rand::Rng;

/// Uniform sample from the closed unit disc.
pub fn unit_disc<R: Rng>(rng: &mut R) -> Complex64 {
    loop {
        let re = rng.gen_range(-1.0..=1.0);
        let im = rng.gen_range(-1.0..=1.0);
        if re * re + im * im <= 1.0 {
            return Complex64::new(re, im);
        }
    }
}

/// Random polyanalytic datum in `z` alone: `z`-degree ≤ `max_a`, `z̄`-degree ≤
/// `max_b`, coefficients in the unit disc, optional `e^{zw̄}` factor.
pub fn random_datum<R: Rng>(rng: &mut R, max_a: u32, max_b: u32, with_kernel_factor: bool) -> ExpPoly {
    let n_terms = rng.gen_range(1..=8);
    let terms: Vec<_> = (0..n_terms)
        .map(|_| {
            (
                Exponents::new(rng.gen_range(0..=max_a), rng.gen_range(0..=max_b), 0, 0),
                unit_disc(rng),
            )
        })
        .collect();
    let m1 = if with_kernel_factor && rng.gen_bool(0.5) {
        1
    } else {
        0
    };
    ExpPoly::from_terms(m1, 0, 0, terms).expect("finite coefficients")
}

/// Independent oracle for the shifted Gaussian moments
/// `(1/π) ∫ z^a z̄^b e^{zv̄+z̄v-|z|²} dλ` up to degree `max_deg` in each
/// variable: plain Simpson-in-radius × trapezoid-in-angle polar quadrature,
/// evaluated for all `(a, b)` in one sweep.
pub fn gaussian_moment_table_oracle(max_deg: u32, v: Complex64) -> Vec<Vec<Complex64>> {
    let n = (max_deg + 1) as usize;
    let mut table = vec![vec![Complex64::new(0.0, 0.0); n]; n];

    let r_steps = 2000usize; // Simpson needs an even count
    let theta_steps = 512usize;
    let r_max = 10.0_f64;
    let dr = r_max / r_steps as f64;
    let dtheta = 2.0 * std::f64::consts::PI / theta_steps as f64;

    for ri in 0..=r_steps {
        let r = ri as f64 * dr;
        let simpson = if ri == 0 || ri == r_steps {
            1.0
        } else if ri % 2 == 1 {
            4.0
        } else {
            2.0
        };
        for ti in 0..theta_steps {
            let theta = ti as f64 * dtheta;
            let z = Complex64::from_polar(r, theta);
            let weight = simpson / 3.0
                * dr
                * dtheta
                * r
                * ((z * v.conj() + z.conj() * v).re - r * r).exp();
            let mut z_pow = Complex64::new(1.0, 0.0);
            for row in table.iter_mut() {
                let mut zb_pow = Complex64::new(1.0, 0.0);
                for entry in row.iter_mut() {
                    *entry += weight * z_pow * zb_pow;
                    zb_pow *= z.conj();
                }
                z_pow *= z;
            }
        }
    }
    let inv_pi = 1.0 / std::f64::consts::PI;
    for row in &mut table {
        for entry in row {
            *entry *= inv_pi;
        }
    }
    table
}
