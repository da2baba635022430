//! Complex Hermite polynomials, generalized Laguerre polynomials, and
//! polyanalytic Fock kernels, with their closed-form d-bar particular
//! solutions.
//!
//! Combinatorial coefficients are accumulated in 128-bit integers and
//! converted to floating point at the last step. Indices are capped at
//! [`MAX_INDEX`]; within the cap every intermediate fits in `i128`.

use num_complex::Complex64;

use crate::expr::{ExpPoly, Exponents, WirtingerOp};
use crate::solver::{particular_solution, SolverError};

/// Largest supported Hermite/Laguerre/kernel index.
pub const MAX_INDEX: u32 = 20;

fn check_index(value: u32, what: &str) {
    assert!(
        value <= MAX_INDEX,
        "{what} = {value} exceeds the supported range (≤ {MAX_INDEX})"
    );
}

/// `n!` in exact integer arithmetic (valid for n ≤ 33).
pub fn factorial_i128(n: u32) -> i128 {
    assert!(n <= 33, "factorial overflows i128 beyond 33!");
    (1..=n as i128).product()
}

/// Binomial coefficient in exact integer arithmetic.
pub fn binomial_i128(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Univariate polynomial with complex coefficients, index = degree.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coefficients: Vec<Complex64>,
}

impl UniPoly {
    pub fn new(coefficients: Vec<Complex64>) -> Self {
        let mut p = UniPoly { coefficients };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coefficients.last().is_some_and(|k| k.norm() == 0.0) {
            self.coefficients.pop();
        }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn degree(&self) -> Option<u32> {
        self.coefficients.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, k| acc * x + k)
    }

    /// Substitute an expression for the variable (Horner form). Fails only if
    /// the argument carries an exponential factor, making powers un-addable.
    pub fn compose(&self, arg: &ExpPoly) -> Result<ExpPoly, SolverError> {
        let mut acc = ExpPoly::zero();
        for k in self.coefficients.iter().rev() {
            acc = acc.mul(arg).add(&ExpPoly::constant(*k))?;
        }
        Ok(acc)
    }
}

/// Complex Hermite polynomial
/// `H_{m,n} = Σ_{k=0}^{min(m,n)} (-1)^k k! C(m,k) C(n,k) z^{m-k} z̄^{n-k}`.
pub fn hermite(m: u32, n: u32) -> ExpPoly {
    check_index(m, "m");
    check_index(n, "n");
    let mut terms = Vec::new();
    for k in 0..=m.min(n) {
        let coeff = factorial_i128(k) * binomial_i128(m, k) * binomial_i128(n, k);
        let signed = if k % 2 == 0 { coeff } else { -coeff };
        terms.push((
            Exponents::new(m - k, n - k, 0, 0),
            Complex64::new(signed as f64, 0.0),
        ));
    }
    ExpPoly::from_terms(0, 0, 0, terms).expect("finite integer coefficients")
}

/// The same polynomials through the Rodrigues formula
/// `H_{m,n} = (-1)^{m+n} e^{|z|²} ∂̄^m ∂^n e^{-|z|²}`, carried out symbolically
/// on the `e^{zz̄}` multiplicity. The factors cancel exactly, so the result
/// must match [`hermite`] coefficient for coefficient.
pub fn hermite_rodrigues(m: u32, n: u32) -> ExpPoly {
    check_index(m, "m");
    check_index(n, "n");
    let gaussian = ExpPoly::exp_z_zbar(-1);
    let differentiated = gaussian
        .wirtinger_power(WirtingerOp::DZ, n)
        .wirtinger_power(WirtingerOp::DZbar, m);
    let sign = if (m + n).is_multiple_of(2) { 1.0 } else { -1.0 };
    differentiated
        .mul(&ExpPoly::exp_z_zbar(1))
        .scale_re(sign)
}

/// Generalized Laguerre polynomial
/// `L^α_m(x) = Σ_{k=0}^{m} (-x)^k/k! · C(m+α, m-k)`.
pub fn laguerre(m: u32, alpha: u32) -> UniPoly {
    check_index(m, "m");
    check_index(alpha, "alpha");
    let coefficients = (0..=m)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let value =
                sign * binomial_i128(m + alpha, m - k) as f64 / factorial_i128(k) as f64;
            Complex64::new(value, 0.0)
        })
        .collect();
    UniPoly::new(coefficients)
}

fn z_minus_w() -> ExpPoly {
    ExpPoly::var_z()
        .sub(&ExpPoly::var_w())
        .expect("matching factors")
}

fn abs_z_minus_w_squared() -> ExpPoly {
    let t = z_minus_w();
    t.mul(&t.conjugate())
}

/// Reproducing kernel of the order-`n` polyanalytic Fock space,
/// `F_n(z,w) = e^{zw̄} Σ_{k=0}^{n-1} (-1)^k/k! · C(n,k+1) |z-w|^{2k}`,
/// fully expanded into the four-variable monomial basis with `m1 = 1`.
pub fn fock_kernel(n: u32) -> ExpPoly {
    assert!(n >= 1, "kernel order must be at least 1");
    check_index(n, "n");
    let r2 = abs_z_minus_w_squared();
    let mut sum = ExpPoly::zero();
    let mut r2_power = ExpPoly::constant_re(1.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign * binomial_i128(n, k + 1) as f64 / factorial_i128(k) as f64;
        sum = sum
            .add(&r2_power.scale_re(coeff))
            .expect("matching factors");
        r2_power = r2_power.mul(&r2);
    }
    sum.mul(&ExpPoly::exp_z_wbar(1))
}

/// Closed form of `∂̄^s F_n`:
/// `(-1)^s (z-w)^s e^{zw̄} Σ_{u=0}^{n-s-1} (-1)^u/u! · C(n,u+s+1) |z-w|^{2u}`.
///
/// Panics when `s ≥ n` (the derivative order must stay below the kernel
/// order; beyond it the closed form is empty and the derivative is zero).
pub fn fock_kernel_dbar(n: u32, s: u32) -> ExpPoly {
    assert!(n >= 1, "kernel order must be at least 1");
    check_index(n, "n");
    assert!(s < n, "derivative index s = {s} out of range for order {n}");
    let r2 = abs_z_minus_w_squared();
    let mut sum = ExpPoly::zero();
    let mut r2_power = ExpPoly::constant_re(1.0);
    for u in 0..(n - s) {
        let sign = if u % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign * binomial_i128(n, u + s + 1) as f64 / factorial_i128(u) as f64;
        sum = sum
            .add(&r2_power.scale_re(coeff))
            .expect("matching factors");
        r2_power = r2_power.mul(&r2);
    }
    let mut t_power = ExpPoly::constant_re(1.0);
    for _ in 0..s {
        t_power = t_power.mul(&z_minus_w());
    }
    let sign = if s.is_multiple_of(2) { 1.0 } else { -1.0 };
    sum.mul(&t_power)
        .scale_re(sign)
        .mul(&ExpPoly::exp_z_wbar(1))
}

/// Checks that the mixed Wirtinger derivatives collapse the order-`n` kernel
/// onto the order-one kernel: `∂̄_z^{n-1} ∂_w^{n-1} F_n = (n-1)!·F_1`.
///
/// The `(n-1)!` factor comes from `∂_w^{n-1}(z-w)^{n-1} = (-1)^{n-1}(n-1)!`;
/// without it the identity only holds for `n ≤ 2`.
pub fn mixed_derivative_identity(n: u32) -> bool {
    assert!(n >= 1, "kernel order must be at least 1");
    check_index(n, "n");
    let mixed = fock_kernel_dbar(n, n - 1).wirtinger_power(WirtingerOp::DW, n - 1);
    let expected = fock_kernel(1).scale_re(factorial_i128(n - 1) as f64);
    mixed.approx_eq(&expected, 1e-12)
}

/// Closed-form particular solution of `∂̄u = H_{p,q}`:
/// `u = -(1/(q+1)) Σ_{k=1}^{q+1} (-1)^k C(q+1,k) z̄^k H_{p,q+1-k}`.
pub fn hermite_particular_solution(p: u32, q: u32) -> ExpPoly {
    check_index(p, "p");
    check_index(q, "q");
    let mut sum = ExpPoly::zero();
    for k in 1..=(q + 1) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = -sign * binomial_i128(q + 1, k) as f64 / (q + 1) as f64;
        let term = ExpPoly::monomial(0, k, 0, 0, Complex64::new(coeff, 0.0))
            .mul(&hermite(p, q + 1 - k));
        sum = sum.add(&term).expect("matching factors");
    }
    sum
}

/// The finite-order operator `Σ_{k=1}^{order} (-1)^k/k! · z̄^k ∂̄^k` applied to
/// `f`. Scaled by `-1/(q+1)` and fed `H_{p,q+1}` it reproduces
/// [`hermite_particular_solution`].
pub fn correction_operator(order: u32, f: &ExpPoly) -> ExpPoly {
    assert!(order >= 1, "operator order must be at least 1");
    let mut sum = ExpPoly::zero();
    let mut derivative = f.wirtinger(WirtingerOp::DZbar);
    for k in 1..=order {
        if derivative.is_zero() {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign / factorial_i128(k) as f64;
        let term = ExpPoly::monomial(0, k, 0, 0, Complex64::new(coeff, 0.0)).mul(&derivative);
        sum = sum.add(&term).expect("matching factors");
        derivative = derivative.wirtinger(WirtingerOp::DZbar);
    }
    sum
}

/// Laguerre-form particular solution for the kernel datum `F_n`:
/// `u_n = e^{zw̄} Σ_{s=1}^{n} z̄^s/s! · (z-w)^{s-1} L^s_{n-s}(|z-w|²)`.
pub fn fock_particular_solution(n: u32) -> ExpPoly {
    assert!(n >= 1, "kernel order must be at least 1");
    check_index(n, "n");
    let r2 = abs_z_minus_w_squared();
    let mut sum = ExpPoly::zero();
    let mut t_power = ExpPoly::constant_re(1.0);
    for s in 1..=n {
        let lag = laguerre(n - s, s)
            .compose(&r2)
            .expect("polynomial argument");
        let coeff = 1.0 / factorial_i128(s) as f64;
        let term = ExpPoly::monomial(0, s, 0, 0, Complex64::new(coeff, 0.0))
            .mul(&t_power)
            .mul(&lag);
        sum = sum.add(&term).expect("matching factors");
        t_power = t_power.mul(&z_minus_w());
    }
    sum.mul(&ExpPoly::exp_z_wbar(1))
}

/// Generic-solver route to the same solution, for cross-checking.
pub fn fock_particular_solution_generic(n: u32) -> Result<ExpPoly, SolverError> {
    Ok(particular_solution(&fock_kernel(n), Some(n))?.particular)
}
