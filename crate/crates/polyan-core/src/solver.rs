//! Constructive solutions of the d-bar problem `∂̄u = f` for polyanalytic data.
//!
//! For a datum of finite polyanalytic order `n` the particular solution is the
//! finite sum `u = -Σ_{k=1}^{n} (-1)^k/k! · z̄^k ∂̄^{k-1} f`, which telescopes
//! under `∂̄` back to `f`. Every other solution differs from `u` by a
//! holomorphic function, recovered here by adding the correction term
//! `Ψ_f = -u` to the supplied solution.
//!
//! Data carrying an `e^{zw̄}` factor are accepted throughout (the factor is
//! analytic in `z`); `e^{z̄w}` or `e^{zz̄}` factors have no finite order and
//! are rejected.

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::{AlgebraError, ExpPoly, Exponents, WirtingerOp};

/// Tolerance used by the solver for internal consistency checks, relative to
/// the largest coefficient of the datum.
pub const SOLVER_CHECK_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    /// The datum carries an `e^{z̄w}` or `e^{zz̄}` factor and is not
    /// polyanalytic in `z`.
    #[error("datum is not polyanalytic in z (infinite order)")]
    InfiniteOrder,
    /// An explicit order smaller than the detected polyanalytic order.
    #[error("requested order {given} is below the polyanalytic order {required}")]
    OrderTooSmall { given: u32, required: u32 },
    /// The Theodorescu-type extraction and direct grouping disagreed; always a
    /// bug, never expected.
    #[error("component extraction methods disagree (residual {residual:.3e})")]
    InternalMismatch { residual: f64 },
    /// `∂̄u` does not match the datum.
    #[error("supplied function does not solve the problem (residual {residual:.3e})")]
    NotASolution { residual: f64 },
    /// The recovered remainder failed the analyticity check.
    #[error("remainder is not holomorphic (residual {residual:.3e})")]
    NotHolomorphic { residual: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Unique representation `f = Σ_{k<n} z̄^k f_k` with `z`-analytic components.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyDecomposition {
    /// Components `f_0, …, f_{n-1}`, each free of z̄.
    pub components: Vec<ExpPoly>,
    pub order: u32,
}

/// A constructed solution together with the data needed to recover the
/// holomorphic remainder of any other solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionBundle {
    /// The particular solution `u` with `∂̄u = datum`.
    pub particular: ExpPoly,
    /// `Ψ_f = -u`; added to any solution it yields the holomorphic remainder.
    pub correction: ExpPoly,
    /// Order used in the construction (≥ the datum's polyanalytic order).
    pub order: u32,
    pub datum: ExpPoly,
}

/// Outcome of [`verify_solution`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationReport {
    pub passed: bool,
    /// Largest coefficient magnitude of `∂̄u - f` (infinite when the
    /// exponential factors cannot match).
    pub max_residual: f64,
    /// Absolute threshold the residual was compared against.
    pub threshold: f64,
}

fn require_finite_order(f: &ExpPoly) -> Result<u32, SolverError> {
    f.polyanalytic_order().ok_or(SolverError::InfiniteOrder)
}

fn zbar_power(k: u32) -> ExpPoly {
    ExpPoly::monomial(0, k, 0, 0, Complex64::new(1.0, 0.0))
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n as u64).map(|i| i as f64).product()
}

/// `Σ_{k=1}^{n} c_k z̄^k ∂̄^{k-1} f` with `c_k = (-1)^{k+1}/k!`: the particular
/// solution of `∂̄u = f` for a datum of order at most `n`.
///
/// When `order` is omitted the detected polyanalytic order is used, which
/// yields the shortest expression; any larger `n` produces the same function
/// because the extra derivatives vanish.
pub fn particular_solution(f: &ExpPoly, order: Option<u32>) -> Result<SolutionBundle, SolverError> {
    let detected = require_finite_order(f)?;
    let n = match order {
        Some(n) if n < detected => {
            return Err(SolverError::OrderTooSmall {
                given: n,
                required: detected,
            })
        }
        Some(n) => n,
        None => detected,
    };
    let mut u = ExpPoly::zero();
    let mut derivative = f.clone();
    for k in 1..=n {
        if derivative.is_zero() {
            break;
        }
        // c_k = -(-1)^k / k!
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let coeff = sign / factorial_f64(k);
        let term = zbar_power(k).mul(&derivative).scale_re(coeff);
        u = u.add(&term)?;
        derivative = derivative.wirtinger(WirtingerOp::DZbar);
    }
    Ok(SolutionBundle {
        correction: u.neg(),
        particular: u,
        order: n,
        datum: f.clone(),
    })
}

/// Analytic components of a polyanalytic datum, via the derivative-based
/// extraction `f_k = (1/k!) Σ_{s=0}^{n-1-k} (-1)^s/s! · z̄^s ∂̄^{k+s} f`,
/// cross-checked against direct grouping of terms by z̄-degree.
pub fn analytic_components(f: &ExpPoly) -> Result<PolyDecomposition, SolverError> {
    let n = require_finite_order(f)?;
    if n == 0 {
        return Ok(PolyDecomposition {
            components: vec![ExpPoly::zero()],
            order: 1,
        });
    }

    // ∂̄^j f for j = 0..n-1
    let mut derivatives = Vec::with_capacity(n as usize);
    derivatives.push(f.clone());
    for _ in 1..n {
        let next = derivatives.last().unwrap().wirtinger(WirtingerOp::DZbar);
        derivatives.push(next);
    }

    let mut components = Vec::with_capacity(n as usize);
    for k in 0..n {
        let mut fk = ExpPoly::zero();
        for s in 0..=(n - 1 - k) {
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            let coeff = sign / (factorial_f64(k) * factorial_f64(s));
            let term = zbar_power(s)
                .mul(&derivatives[(k + s) as usize])
                .scale_re(coeff);
            fk = fk.add(&term)?;
        }
        components.push(fk);
    }

    // Independent route: group terms of f by their z̄-exponent.
    let grouped = group_by_zbar_degree(f, n)?;
    let tol = SOLVER_CHECK_TOL * 1.0_f64.max(f.max_coefficient());
    for (fk, gk) in components.iter().zip(grouped.iter()) {
        let residual = fk.distance(gk).unwrap_or(f64::INFINITY);
        if residual > tol {
            return Err(SolverError::InternalMismatch { residual });
        }
        if !fk.is_z_analytic() {
            return Err(SolverError::InternalMismatch {
                residual: f64::INFINITY,
            });
        }
    }

    Ok(PolyDecomposition { components, order: n })
}

fn group_by_zbar_degree(f: &ExpPoly, n: u32) -> Result<Vec<ExpPoly>, SolverError> {
    let mut groups = vec![Vec::new(); n as usize];
    for (e, k) in f.terms() {
        groups[e.b as usize].push((Exponents::new(e.a, 0, e.c, e.d), *k));
    }
    groups
        .into_iter()
        .map(|terms| Ok(ExpPoly::from_terms(f.m1(), 0, 0, terms)?))
        .collect()
}

/// Rebuild `Σ z̄^k f_k` from a decomposition.
pub fn recompose(d: &PolyDecomposition) -> Result<ExpPoly, SolverError> {
    let mut out = ExpPoly::zero();
    for (k, fk) in d.components.iter().enumerate() {
        out = out.add(&zbar_power(k as u32).mul(fk))?;
    }
    Ok(out)
}

/// Recover the holomorphic remainder `u_0 = u + Ψ_f` of a solution `u`.
///
/// Verifies both that `u` solves the problem and that the recovered remainder
/// is annihilated by `∂̄` before returning it.
pub fn holomorphic_remainder(u: &ExpPoly, f: &ExpPoly) -> Result<ExpPoly, SolverError> {
    let check = verify_solution(u, f, SOLVER_CHECK_TOL);
    if !check.passed {
        return Err(SolverError::NotASolution {
            residual: check.max_residual,
        });
    }
    let bundle = particular_solution(f, None)?;
    let remainder = u.add(&bundle.correction)?;
    let residual = remainder.wirtinger(WirtingerOp::DZbar).max_coefficient();
    if residual > SOLVER_CHECK_TOL * 1.0_f64.max(f.max_coefficient()) {
        return Err(SolverError::NotHolomorphic { residual });
    }
    Ok(remainder)
}

/// Check `∂̄u = f` coefficient-wise. The tolerance is relative: the residual
/// is compared against `tol · max(1, ‖f‖∞)`.
pub fn verify_solution(u: &ExpPoly, f: &ExpPoly, tol: f64) -> VerificationReport {
    let dbar_u = u.wirtinger(WirtingerOp::DZbar);
    let max_residual = dbar_u.distance(f).unwrap_or(f64::INFINITY);
    let threshold = tol * 1.0_f64.max(f.max_coefficient());
    VerificationReport {
        passed: max_residual <= threshold,
        max_residual,
        threshold,
    }
}
