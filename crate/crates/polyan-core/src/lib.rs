//! Symbolic-numeric toolkit for polyanalytic calculus in one complex variable.
//!
//! The crate is organized around a sparse exponential-polynomial algebra in the
//! four symbols `z`, `z̄`, `w`, `w̄` that is closed under the Wirtinger
//! derivatives, and builds three layers on top of it:
//!
//! - [`expr`]: the [`ExpPoly`] carrier type with exact arithmetic, Wirtinger
//!   differentiation, conjugation, and pointwise evaluation;
//! - [`solver`]: constructive solutions of the d-bar problem `∂̄u = f` for
//!   polyanalytic data, analytic decomposition, and solution verification;
//! - [`special`]: complex Hermite polynomials, generalized Laguerre
//!   polynomials, polyanalytic Fock kernels, and their closed-form particular
//!   solutions;
//! - [`measures`]: Gaussian moment engines, radial ratio-moments,
//!   Hörmander-Fock norms, Sobolev-type seminorms, and numerical certification
//!   of the weighted L² estimates satisfied by the constructed solutions.
//!
//! All norms are normalized by `1/π`, so `‖1‖² = 1` in the Fock space and the
//! Hermite orthogonality constant is `m!·n!`.

pub mod expr;
pub mod io;
pub mod measures;
pub mod quad;
pub mod solver;
pub mod special;

pub use expr::{AlgebraError, ExpPoly, WirtingerOp};
pub use measures::{
    estimate_check, gaussian_moment, hormander_inner_product, hormander_norm,
    hormander_norm_quad, quad2d, radial_moment, remainder_estimate, sobolev_norms,
    weighted_pair_integral, EstimateKind, EstimateReport, MeasureError, NormMethod, NormResult,
    WeightKind, WeightSpec, EXISTENCE_BOUND_NOTE,
};
pub use num_complex::Complex64;
pub use solver::{
    analytic_components, holomorphic_remainder, particular_solution, recompose, verify_solution,
    PolyDecomposition, SolutionBundle, SolverError, VerificationReport,
};
pub use special::{
    correction_operator, fock_kernel, fock_kernel_dbar, fock_particular_solution, hermite,
    hermite_particular_solution, hermite_rodrigues, laguerre, mixed_derivative_identity, UniPoly,
};
