//! Expression file format and stable number formatting.
//!
//! Expressions serialize as
//! `{"m1":int,"m2":int,"m3":int,"terms":[{"a":..,"b":..,"c":..,"d":..,"re":..,"im":..},...]}`
//! with terms in canonical order. Floats are always written with 17
//! significant digits so output is byte-identical across runs and round-trips
//! through any conforming JSON parser without loss.

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::expr::{AlgebraError, ExpPoly, Exponents};
use crate::solver::SolutionBundle;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid expression JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("negative exponent or multiplicity out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Fixed-width float formatting: 17 significant digits, exponent notation.
/// Round-trips every finite f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    // normalize -0.0 so equal values print identically
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.16e}", x)
}

pub fn fmt_complex_pair(k: Complex64) -> String {
    format!("\"re\":{},\"im\":{}", fmt_f64(k.re), fmt_f64(k.im))
}

/// Canonical JSON for an expression.
pub fn expr_to_json(p: &ExpPoly) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\"m1\":{},\"m2\":{},\"m3\":{},\"terms\":[",
        p.m1(),
        p.m2(),
        p.m3()
    ));
    let mut first = true;
    for (e, k) in p.terms() {
        if !first {
            out.push(',');
        }
        first = false;
        out.push_str(&format!(
            "{{\"a\":{},\"b\":{},\"c\":{},\"d\":{},{}}}",
            e.a,
            e.b,
            e.c,
            e.d,
            fmt_complex_pair(*k)
        ));
    }
    out.push_str("]}");
    out
}

#[derive(Deserialize)]
struct TermRecord {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
struct ExprRecord {
    m1: i64,
    m2: i64,
    m3: i64,
    terms: Vec<TermRecord>,
}

fn record_to_expr(rec: ExprRecord) -> Result<ExpPoly, FormatError> {
    if rec.m1 < 0 || rec.m2 < 0 {
        return Err(FormatError::Range(format!(
            "m1 and m2 must be nonnegative (got {}, {})",
            rec.m1, rec.m2
        )));
    }
    let mut terms = Vec::with_capacity(rec.terms.len());
    for t in rec.terms {
        let check = |v: i64, name: &str| -> Result<u32, FormatError> {
            u32::try_from(v).map_err(|_| FormatError::Range(format!("exponent {name}={v}")))
        };
        terms.push((
            Exponents::new(
                check(t.a, "a")?,
                check(t.b, "b")?,
                check(t.c, "c")?,
                check(t.d, "d")?,
            ),
            Complex64::new(t.re, t.im),
        ));
    }
    Ok(ExpPoly::from_terms(rec.m1, rec.m2, rec.m3, terms)?)
}

/// Parse an expression from its JSON form.
pub fn expr_from_json(text: &str) -> Result<ExpPoly, FormatError> {
    let rec: ExprRecord = serde_json::from_str(text)?;
    record_to_expr(rec)
}

/// Parse an expression from an already-parsed JSON value.
pub fn expr_from_value(value: &serde_json::Value) -> Result<ExpPoly, FormatError> {
    let rec: ExprRecord = serde_json::from_value(value.clone())?;
    record_to_expr(rec)
}

/// Canonical JSON for a solution bundle.
pub fn bundle_to_json(b: &SolutionBundle) -> String {
    format!(
        "{{\"particular\":{},\"correction\":{},\"order\":{},\"datum\":{}}}",
        expr_to_json(&b.particular),
        expr_to_json(&b.correction),
        b.order,
        expr_to_json(&b.datum)
    )
}

/// Parse a solution bundle from JSON.
pub fn bundle_from_json(text: &str) -> Result<SolutionBundle, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let field = |name: &str| -> Result<&serde_json::Value, FormatError> {
        value
            .get(name)
            .ok_or_else(|| FormatError::Range(format!("missing field {name}")))
    };
    let order = field("order")?
        .as_u64()
        .ok_or_else(|| FormatError::Range("order must be a nonnegative integer".into()))?;
    Ok(SolutionBundle {
        particular: expr_from_value(field("particular")?)?,
        correction: expr_from_value(field("correction")?)?,
        order: order as u32,
        datum: expr_from_value(field("datum")?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expr_json_round_trip_is_byte_stable() {
        let f = ExpPoly::from_terms(
            1,
            0,
            0,
            [
                (Exponents::new(0, 0, 0, 0), Complex64::new(2.0, 0.0)),
                (Exponents::new(1, 1, 0, 0), Complex64::new(-1.0, 0.25)),
                (Exponents::new(1, 0, 0, 1), Complex64::new(1.0, -3.5)),
            ],
        )
        .unwrap();
        let text = expr_to_json(&f);
        let back = expr_from_json(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(expr_to_json(&back), text);
    }

    #[test]
    fn expr_json_matches_documented_shape() {
        let f = ExpPoly::monomial(0, 2, 0, 0, Complex64::new(1.0, 0.0));
        assert_eq!(
            expr_to_json(&f),
            "{\"m1\":0,\"m2\":0,\"m3\":0,\"terms\":[{\"a\":0,\"b\":2,\"c\":0,\"d\":0,\"re\":1.0000000000000000e0,\"im\":0.0000000000000000e0}]}"
        );
    }

    #[test]
    fn rejects_negative_exponents() {
        let text = "{\"m1\":0,\"m2\":0,\"m3\":0,\"terms\":[{\"a\":-1,\"b\":0,\"c\":0,\"d\":0,\"re\":1.0,\"im\":0.0}]}";
        assert!(matches!(
            expr_from_json(text),
            Err(FormatError::Range(_))
        ));
    }

    #[test]
    fn fmt_f64_round_trips_extremes() {
        for x in [0.0, -0.0, 1.0 / 3.0, -2.5e-17, 6.02e23, f64::MIN_POSITIVE] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            let want = if x == 0.0 { 0.0 } else { x };
            assert_eq!(back.to_bits(), want.to_bits(), "{s}");
        }
    }
}
