//! Sparse exponential-polynomial algebra in `z`, `z̄`, `w`, `w̄`.
//!
//! An [`ExpPoly`] is a finite sum of monomials `κ·z^a z̄^b w^c w̄^d` multiplied
//! by a common exponential factor `e^{m1·z w̄} · e^{m2·z̄ w} · e^{m3·z z̄}` with
//! integer multiplicities. The class is closed under addition (same factor),
//! multiplication, conjugation, and the four Wirtinger derivatives, which is
//! exactly what the d-bar machinery downstream needs: polyanalytic data,
//! reproducing kernels of the poly-Fock spaces, and Rodrigues-type formulas
//! (`m3 = -1`) all live here.
//!
//! Values are immutable after construction and all operations are pure, so
//! they can be shared freely across threads.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use thiserror::Error;

/// Default magnitude below which coefficients are dropped.
///
/// The identities exercised by the test suite are exact in f64 up to rounding
/// residue; the threshold only scrubs that residue.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-12;

/// Default cap on the exponent magnitude in [`ExpPoly::evaluate`].
pub const DEFAULT_EXPONENT_CAP: f64 = 700.0;

static ZERO_THRESHOLD_BITS: AtomicU64 = AtomicU64::new(0);

/// Current coefficient zero-threshold (process-wide).
pub fn zero_threshold() -> f64 {
    let bits = ZERO_THRESHOLD_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_ZERO_THRESHOLD
    } else {
        f64::from_bits(bits)
    }
}

/// Override the coefficient zero-threshold. Passing a non-finite or
/// non-positive value restores the default.
pub fn set_zero_threshold(threshold: f64) {
    let bits = if threshold.is_finite() && threshold > 0.0 {
        threshold.to_bits()
    } else {
        0
    };
    ZERO_THRESHOLD_BITS.store(bits, Ordering::Relaxed);
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    /// Addition of two expressions carrying different exponential factors.
    #[error("mismatched exponential factors: (m1,m2,m3)=({0},{1},{2}) vs ({3},{4},{5})")]
    MismatchedExponentialFactor(i64, i64, i64, i64, i64, i64),
    /// A coefficient that is NaN or infinite was about to be stored.
    #[error("non-finite coefficient {0}")]
    NonFiniteCoefficient(Complex64),
    /// The exponent of the exponential factor exceeded the evaluation cap.
    #[error("exponent magnitude {magnitude:.3e} exceeds cap {cap:.3e}")]
    Overflow { magnitude: f64, cap: f64 },
}

/// Exponent quadruple `(a, b, c, d)` for `z^a z̄^b w^c w̄^d`.
///
/// The derived `Ord` is lexicographic in field order, which fixes the
/// canonical term ordering used everywhere (iteration, serialization).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Exponents {
    pub const fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Exponents { a, b, c, d }
    }
}

/// The four Wirtinger derivative operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WirtingerOp {
    /// ∂/∂z
    DZ,
    /// ∂/∂z̄ (the Cauchy-Riemann operator)
    DZbar,
    /// ∂/∂w
    DW,
    /// ∂/∂w̄
    DWbar,
}

/// Sparse exponential-polynomial in `(z, z̄, w, w̄)`.
///
/// Invariants: every stored coefficient is finite and has magnitude at least
/// the configured zero-threshold; the zero expression has no terms and all
/// multiplicities zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPoly {
    terms: BTreeMap<Exponents, Complex64>,
    m1: i64,
    m2: i64,
    m3: i64,
}

impl ExpPoly {
    /// The zero expression.
    pub fn zero() -> Self {
        ExpPoly {
            terms: BTreeMap::new(),
            m1: 0,
            m2: 0,
            m3: 0,
        }
    }

    /// Build from raw parts, validating coefficients and normalizing.
    pub fn from_terms<I>(m1: i64, m2: i64, m3: i64, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Exponents, Complex64)>,
    {
        let mut map: BTreeMap<Exponents, Complex64> = BTreeMap::new();
        for (e, k) in terms {
            if !k.re.is_finite() || !k.im.is_finite() {
                return Err(AlgebraError::NonFiniteCoefficient(k));
            }
            let entry = map.entry(e).or_insert(Complex64::new(0.0, 0.0));
            *entry += k;
        }
        let mut p = ExpPoly {
            terms: map,
            m1,
            m2,
            m3,
        };
        p.normalize();
        Ok(p)
    }

    /// Single monomial `coeff · z^a z̄^b w^c w̄^d` (no exponential factor).
    pub fn monomial(a: u32, b: u32, c: u32, d: u32, coeff: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff.norm() >= zero_threshold() {
            terms.insert(Exponents::new(a, b, c, d), coeff);
        }
        let mut p = ExpPoly {
            terms,
            m1: 0,
            m2: 0,
            m3: 0,
        };
        p.normalize();
        p
    }

    /// Constant expression.
    pub fn constant(value: Complex64) -> Self {
        Self::monomial(0, 0, 0, 0, value)
    }

    pub fn constant_re(value: f64) -> Self {
        Self::constant(Complex64::new(value, 0.0))
    }

    pub fn var_z() -> Self {
        Self::monomial(1, 0, 0, 0, Complex64::new(1.0, 0.0))
    }

    pub fn var_zbar() -> Self {
        Self::monomial(0, 1, 0, 0, Complex64::new(1.0, 0.0))
    }

    pub fn var_w() -> Self {
        Self::monomial(0, 0, 1, 0, Complex64::new(1.0, 0.0))
    }

    pub fn var_wbar() -> Self {
        Self::monomial(0, 0, 0, 1, Complex64::new(1.0, 0.0))
    }

    /// The factor `e^{k·z w̄}`.
    pub fn exp_z_wbar(k: i64) -> Self {
        assert!(k >= 0, "e^{{z w̄}} multiplicity must be nonnegative");
        let mut p = Self::constant_re(1.0);
        p.m1 = k;
        p
    }

    /// The factor `e^{k·z̄ w}`.
    pub fn exp_zbar_w(k: i64) -> Self {
        assert!(k >= 0, "e^{{z̄ w}} multiplicity must be nonnegative");
        let mut p = Self::constant_re(1.0);
        p.m2 = k;
        p
    }

    /// The factor `e^{k·z z̄}`; `k` may be negative (Rodrigues formula).
    pub fn exp_z_zbar(k: i64) -> Self {
        let mut p = Self::constant_re(1.0);
        p.m3 = k;
        p
    }

    pub fn m1(&self) -> i64 {
        self.m1
    }

    pub fn m2(&self) -> i64 {
        self.m2
    }

    pub fn m3(&self) -> i64 {
        self.m3
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Exponents) -> Complex64 {
        self.terms
            .get(&e)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Largest coefficient magnitude (0 for the zero expression).
    pub fn max_coefficient(&self) -> f64 {
        self.terms.values().map(|k| k.norm()).fold(0.0, f64::max)
    }

    /// Sum of coefficient magnitudes.
    pub fn coefficient_sum(&self) -> f64 {
        self.terms.values().map(|k| k.norm()).sum()
    }

    /// Maximum of `a + b` over all terms (total degree in `z, z̄`).
    pub fn z_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.a + e.b)
            .max()
            .unwrap_or(0)
    }

    /// Largest z̄-exponent over all terms.
    pub fn zbar_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.b).max().unwrap_or(0)
    }

    fn normalize(&mut self) {
        let tol = zero_threshold();
        self.terms.retain(|_, k| k.norm() >= tol);
        if self.terms.is_empty() {
            self.m1 = 0;
            self.m2 = 0;
            self.m3 = 0;
        }
    }

    fn same_factor(&self, other: &ExpPoly) -> bool {
        self.m1 == other.m1 && self.m2 == other.m2 && self.m3 == other.m3
    }

    /// Coefficient-wise sum. The two operands must carry the same exponential
    /// factor; adding zero is always allowed.
    pub fn add(&self, other: &ExpPoly) -> Result<ExpPoly, AlgebraError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if !self.same_factor(other) {
            return Err(AlgebraError::MismatchedExponentialFactor(
                self.m1, self.m2, self.m3, other.m1, other.m2, other.m3,
            ));
        }
        let mut out = self.clone();
        for (e, k) in &other.terms {
            let entry = out.terms.entry(*e).or_insert(Complex64::new(0.0, 0.0));
            *entry += k;
        }
        out.normalize();
        Ok(out)
    }

    pub fn sub(&self, other: &ExpPoly) -> Result<ExpPoly, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExpPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, factor: Complex64) -> ExpPoly {
        let mut out = ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (*e, k * factor))
                .collect(),
            m1: self.m1,
            m2: self.m2,
            m3: self.m3,
        };
        out.normalize();
        out
    }

    pub fn scale_re(&self, factor: f64) -> ExpPoly {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Product: term convolution, multiplicities add componentwise.
    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        if self.is_zero() || other.is_zero() {
            return ExpPoly::zero();
        }
        let mut terms: BTreeMap<Exponents, Complex64> = BTreeMap::new();
        for (e1, k1) in &self.terms {
            for (e2, k2) in &other.terms {
                let e = Exponents::new(e1.a + e2.a, e1.b + e2.b, e1.c + e2.c, e1.d + e2.d);
                let entry = terms.entry(e).or_insert(Complex64::new(0.0, 0.0));
                *entry += k1 * k2;
            }
        }
        let mut out = ExpPoly {
            terms,
            m1: self.m1 + other.m1,
            m2: self.m2 + other.m2,
            m3: self.m3 + other.m3,
        };
        out.normalize();
        out
    }

    /// Complex conjugate: `(a,b,c,d,κ) ↦ (b,a,d,c,κ̄)`, `m1 ↔ m2`.
    pub fn conjugate(&self) -> ExpPoly {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (Exponents::new(e.b, e.a, e.d, e.c), k.conj()))
                .collect(),
            m1: self.m2,
            m2: self.m1,
            m3: self.m3,
        }
    }

    /// Exact Wirtinger derivative (Leibniz action on terms and exponential
    /// factors).
    pub fn wirtinger(&self, op: WirtingerOp) -> ExpPoly {
        let mut terms: BTreeMap<Exponents, Complex64> = BTreeMap::new();
        let mut push = |e: Exponents, k: Complex64| {
            let entry = terms.entry(e).or_insert(Complex64::new(0.0, 0.0));
            *entry += k;
        };
        for (e, k) in &self.terms {
            match op {
                WirtingerOp::DZbar => {
                    // z̄^b ↦ b z̄^{b-1}; e^{m2 z̄ w} contributes m2·w; e^{m3 z z̄} contributes m3·z.
                    if e.b > 0 {
                        push(
                            Exponents::new(e.a, e.b - 1, e.c, e.d),
                            k * Complex64::new(e.b as f64, 0.0),
                        );
                    }
                    if self.m2 != 0 {
                        push(
                            Exponents::new(e.a, e.b, e.c + 1, e.d),
                            k * Complex64::new(self.m2 as f64, 0.0),
                        );
                    }
                    if self.m3 != 0 {
                        push(
                            Exponents::new(e.a + 1, e.b, e.c, e.d),
                            k * Complex64::new(self.m3 as f64, 0.0),
                        );
                    }
                }
                WirtingerOp::DZ => {
                    if e.a > 0 {
                        push(
                            Exponents::new(e.a - 1, e.b, e.c, e.d),
                            k * Complex64::new(e.a as f64, 0.0),
                        );
                    }
                    if self.m1 != 0 {
                        push(
                            Exponents::new(e.a, e.b, e.c, e.d + 1),
                            k * Complex64::new(self.m1 as f64, 0.0),
                        );
                    }
                    if self.m3 != 0 {
                        push(
                            Exponents::new(e.a, e.b + 1, e.c, e.d),
                            k * Complex64::new(self.m3 as f64, 0.0),
                        );
                    }
                }
                WirtingerOp::DW => {
                    if e.c > 0 {
                        push(
                            Exponents::new(e.a, e.b, e.c - 1, e.d),
                            k * Complex64::new(e.c as f64, 0.0),
                        );
                    }
                    if self.m2 != 0 {
                        push(
                            Exponents::new(e.a, e.b + 1, e.c, e.d),
                            k * Complex64::new(self.m2 as f64, 0.0),
                        );
                    }
                }
                WirtingerOp::DWbar => {
                    if e.d > 0 {
                        push(
                            Exponents::new(e.a, e.b, e.c, e.d - 1),
                            k * Complex64::new(e.d as f64, 0.0),
                        );
                    }
                    if self.m1 != 0 {
                        push(
                            Exponents::new(e.a + 1, e.b, e.c, e.d),
                            k * Complex64::new(self.m1 as f64, 0.0),
                        );
                    }
                }
            }
        }
        let mut out = ExpPoly {
            terms,
            m1: self.m1,
            m2: self.m2,
            m3: self.m3,
        };
        out.normalize();
        out
    }

    /// `k`-fold Wirtinger derivative; `k = 0` returns the input unchanged.
    pub fn wirtinger_power(&self, op: WirtingerOp, k: u32) -> ExpPoly {
        let mut out = self.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = out.wirtinger(op);
        }
        out
    }

    /// Numerical evaluation at `(z, w)`; `z̄`, `w̄` are the conjugates of the
    /// inputs. Errors when the exponential argument exceeds `cap`.
    pub fn evaluate_capped(
        &self,
        z: Complex64,
        w: Complex64,
        cap: f64,
    ) -> Result<Complex64, AlgebraError> {
        let zb = z.conj();
        let wb = w.conj();
        let exponent = Complex64::new(self.m1 as f64, 0.0) * z * wb
            + Complex64::new(self.m2 as f64, 0.0) * zb * w
            + Complex64::new(self.m3 as f64, 0.0) * z * zb;
        if exponent.norm() > cap {
            return Err(AlgebraError::Overflow {
                magnitude: exponent.norm(),
                cap,
            });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, k) in &self.terms {
            sum += k
                * z.powu(e.a)
                * zb.powu(e.b)
                * w.powu(e.c)
                * wb.powu(e.d);
        }
        Ok(sum * exponent.exp())
    }

    /// Numerical evaluation with the default exponent cap.
    pub fn evaluate(&self, z: Complex64, w: Complex64) -> Result<Complex64, AlgebraError> {
        self.evaluate_capped(z, w, DEFAULT_EXPONENT_CAP)
    }

    /// Smallest `n` with `∂̄_z^n f = 0`, or `None` when the expression is not
    /// polyanalytic in `z` (an `e^{z̄w}` or `e^{zz̄}` factor is present). The
    /// zero expression has order 0.
    pub fn polyanalytic_order(&self) -> Option<u32> {
        if self.is_zero() {
            return Some(0);
        }
        if self.m2 > 0 || self.m3 != 0 {
            return None;
        }
        Some(self.zbar_degree() + 1)
    }

    /// True when no term carries a z̄-power and no exponential factor obstructs
    /// analyticity in `z`.
    pub fn is_z_analytic(&self) -> bool {
        matches!(self.polyanalytic_order(), Some(0) | Some(1))
    }

    /// Toleranced comparison: the coefficient-wise difference must stay below
    /// `tol · max(1, ‖f‖∞, ‖g‖∞)`. Expressions with different exponential
    /// factors are never approximately equal unless one side is zero.
    pub fn approx_eq(&self, other: &ExpPoly, tol: f64) -> bool {
        let scale = 1.0_f64
            .max(self.max_coefficient())
            .max(other.max_coefficient());
        self.distance(other).is_some_and(|d| d <= tol * scale)
    }

    /// Largest coefficient magnitude of `self - other`; `None` when the
    /// exponential factors differ (and neither side is zero).
    pub fn distance(&self, other: &ExpPoly) -> Option<f64> {
        if self.is_zero() {
            return Some(other.max_coefficient());
        }
        if other.is_zero() {
            return Some(self.max_coefficient());
        }
        if !self.same_factor(other) {
            return None;
        }
        let mut max = 0.0_f64;
        for (e, k) in &self.terms {
            max = max.max((k - other.coefficient(*e)).norm());
        }
        for (e, k) in &other.terms {
            if !self.terms.contains_key(e) {
                max = max.max(k.norm());
            }
        }
        Some(max)
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, k) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)", k.re, k.im)?;
            for (sym, pow) in [("z", e.a), ("zb", e.b), ("w", e.c), ("wb", e.d)] {
                if pow == 1 {
                    write!(f, "*{sym}")?;
                } else if pow > 1 {
                    write!(f, "*{sym}^{pow}")?;
                }
            }
        }
        for (sym, m) in [("z*wb", self.m1), ("zb*w", self.m2), ("z*zb", self.m3)] {
            if m != 0 {
                write!(f, " * exp({m}·{sym})")?;
            }
        }
        Ok(())
    }
}
