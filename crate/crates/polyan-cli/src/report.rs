//! Structured reports: ordered sections of tables, expressions, and notes,
//! emitted as JSON, CSV, or markdown with byte-stable formatting.

use num_complex::Complex64;
use polyan_core::expr::ExpPoly;
#[cfg(test)]
use polyan_core::io::expr_from_value;
use polyan_core::io::{expr_to_json, fmt_f64};
use polyan_core::measures::{
    sobolev_norms, EstimateKind, EstimateReport, NormResult, EXISTENCE_BOUND_NOTE,
};
use polyan_core::solver::{analytic_components, particular_solution, verify_solution};
use polyan_core::MeasureError;

#[derive(Debug, Clone, PartialEq)]
pub enum SectionBody {
    Expression(ExpPoly),
    Table {
        columns: Vec<String>,
        rows: Vec<Vec<String>>,
    },
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub sections: Vec<(String, SectionBody)>,
}

/// RFC 4180 quoting: wrap when the cell contains a comma, quote, or newline;
/// double embedded quotes.
pub fn csv_quote(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') || cell.contains('\r') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn json_quote(text: &str) -> String {
    serde_json::to_string(text).expect("string serialization is infallible")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"sections\":[");
        let mut first = true;
        for (title, body) in &self.sections {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("{{\"title\":{},", json_quote(title)));
            match body {
                SectionBody::Expression(expr) => {
                    out.push_str(&format!(
                        "\"kind\":\"expression\",\"expression\":{}",
                        expr_to_json(expr)
                    ));
                }
                SectionBody::Table { columns, rows } => {
                    out.push_str("\"kind\":\"table\",\"columns\":[");
                    out.push_str(
                        &columns
                            .iter()
                            .map(|c| json_quote(c))
                            .collect::<Vec<_>>()
                            .join(","),
                    );
                    out.push_str("],\"rows\":[");
                    out.push_str(
                        &rows
                            .iter()
                            .map(|row| {
                                format!(
                                    "[{}]",
                                    row.iter()
                                        .map(|cell| json_quote(cell))
                                        .collect::<Vec<_>>()
                                        .join(",")
                                )
                            })
                            .collect::<Vec<_>>()
                            .join(","),
                    );
                    out.push(']');
                }
                SectionBody::Text(text) => {
                    out.push_str(&format!("\"kind\":\"text\",\"text\":{}", json_quote(text)));
                }
            }
            out.push('}');
        }
        out.push_str("]}");
        out
    }

    /// Inverse of [`Report::to_json`]; exists to pin the round-trip contract.
    #[cfg(test)]
    pub fn from_json(text: &str) -> Result<Report, String> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| e.to_string())?;
        let sections = value
            .get("sections")
            .and_then(|s| s.as_array())
            .ok_or("missing sections array")?;
        let mut out = Vec::with_capacity(sections.len());
        for section in sections {
            let title = section
                .get("title")
                .and_then(|t| t.as_str())
                .ok_or("missing title")?
                .to_string();
            let kind = section
                .get("kind")
                .and_then(|k| k.as_str())
                .ok_or("missing kind")?;
            let body = match kind {
                "expression" => SectionBody::Expression(
                    expr_from_value(section.get("expression").ok_or("missing expression")?)
                        .map_err(|e| e.to_string())?,
                ),
                "table" => {
                    let columns = section
                        .get("columns")
                        .and_then(|c| c.as_array())
                        .ok_or("missing columns")?
                        .iter()
                        .map(|c| c.as_str().map(str::to_string).ok_or("bad column"))
                        .collect::<Result<Vec<_>, _>>()?;
                    let rows = section
                        .get("rows")
                        .and_then(|r| r.as_array())
                        .ok_or("missing rows")?
                        .iter()
                        .map(|row| {
                            row.as_array()
                                .ok_or("bad row")?
                                .iter()
                                .map(|cell| cell.as_str().map(str::to_string).ok_or("bad cell"))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    SectionBody::Table { columns, rows }
                }
                "text" => SectionBody::Text(
                    section
                        .get("text")
                        .and_then(|t| t.as_str())
                        .ok_or("missing text")?
                        .to_string(),
                ),
                other => return Err(format!("unknown section kind {other}")),
            };
            out.push((title, body));
        }
        Ok(Report { sections: out })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (title, body) in &self.sections {
            out.push_str(&format!("section,{}\n", csv_quote(title)));
            match body {
                SectionBody::Expression(expr) => {
                    out.push_str(&format!("expression,{}\n", csv_quote(&expr_to_json(expr))));
                }
                SectionBody::Table { columns, rows } => {
                    out.push_str(
                        &columns
                            .iter()
                            .map(|c| csv_quote(c))
                            .collect::<Vec<_>>()
                            .join(","),
                    );
                    out.push('\n');
                    for row in rows {
                        out.push_str(
                            &row.iter()
                                .map(|cell| csv_quote(cell))
                                .collect::<Vec<_>>()
                                .join(","),
                        );
                        out.push('\n');
                    }
                }
                SectionBody::Text(text) => {
                    out.push_str(&format!("note,{}\n", csv_quote(text)));
                }
            }
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        for (title, body) in &self.sections {
            out.push_str(&format!("## {title}\n\n"));
            match body {
                SectionBody::Expression(expr) => {
                    out.push_str(&format!("```json\n{}\n```\n\n", expr_to_json(expr)));
                }
                SectionBody::Table { columns, rows } => {
                    out.push_str(&format!("| {} |\n", columns.join(" | ")));
                    out.push_str(&format!(
                        "|{}\n",
                        " --- |".repeat(columns.len())
                    ));
                    for row in rows {
                        out.push_str(&format!("| {} |\n", row.join(" | ")));
                    }
                    out.push('\n');
                }
                SectionBody::Text(text) => {
                    out.push_str(&format!("{text}\n\n"));
                }
            }
        }
        out
    }

    pub fn render(&self, format: &str) -> String {
        match format {
            "csv" => self.to_csv(),
            "markdown" => self.to_markdown(),
            _ => self.to_json(),
        }
    }
}

fn norm_row(name: &str, norm: &NormResult) -> Vec<String> {
    vec![
        name.to_string(),
        fmt_f64(norm.value),
        fmt_f64(norm.abs_error_bound),
        norm.method.as_str().to_string(),
    ]
}

fn estimate_row(name: &str, report: &EstimateReport) -> Vec<String> {
    vec![
        name.to_string(),
        fmt_f64(report.lhs.value),
        fmt_f64(report.rhs.value),
        fmt_f64(report.ratio),
        fmt_f64(report.bound_constant),
        report.passed.to_string(),
    ]
}

/// Full diagnostic report for one datum: expression, detected order,
/// particular solution, decomposition, Sobolev seminorms, estimate checks,
/// verification residual, and the scope note on the existence bound.
pub fn report_all(f: &ExpPoly, order: u32, w_value: Complex64) -> Result<Report, MeasureError> {
    let bundle = particular_solution(f, Some(order))?;
    let detected = f.polyanalytic_order().unwrap_or(0);
    let mut sections = Vec::new();

    sections.push(("datum".to_string(), SectionBody::Expression(f.clone())));
    sections.push((
        "order".to_string(),
        SectionBody::Table {
            columns: vec!["name".into(), "value".into()],
            rows: vec![
                vec!["detected_order".into(), detected.to_string()],
                vec!["requested_order".into(), order.to_string()],
            ],
        },
    ));
    sections.push((
        "particular solution".to_string(),
        SectionBody::Expression(bundle.particular.clone()),
    ));

    let decomposition = analytic_components(f)?;
    sections.push((
        "decomposition".to_string(),
        SectionBody::Table {
            columns: vec!["k".into(), "component".into()],
            rows: decomposition
                .components
                .iter()
                .enumerate()
                .map(|(k, expr)| vec![k.to_string(), expr_to_json(expr)])
                .collect(),
        },
    ));

    let seminorms = sobolev_norms(f, order.max(1), w_value)?;
    sections.push((
        "sobolev seminorms".to_string(),
        SectionBody::Table {
            columns: vec![
                "name".into(),
                "value".into(),
                "abs_error_bound".into(),
                "method".into(),
            ],
            rows: seminorms
                .iter()
                .enumerate()
                .map(|(k, norm)| norm_row(&format!("M_{k}"), norm))
                .collect(),
        },
    ));

    let order_for_estimates = order.max(1);
    let particular = polyan_core::measures::estimate_check(
        f,
        order_for_estimates,
        w_value,
        EstimateKind::ParticularBound,
        None,
    )?;
    let remainder = polyan_core::measures::estimate_check(
        f,
        order_for_estimates,
        w_value,
        EstimateKind::RemainderBound,
        None,
    )?;
    sections.push((
        "estimates".to_string(),
        SectionBody::Table {
            columns: vec![
                "name".into(),
                "lhs".into(),
                "rhs".into(),
                "ratio".into(),
                "bound_constant".into(),
                "passed".into(),
            ],
            rows: vec![
                estimate_row("particular_bound", &particular),
                estimate_row("remainder_bound", &remainder),
            ],
        },
    ));

    let verification = verify_solution(&bundle.particular, f, 1e-10);
    sections.push((
        "verification".to_string(),
        SectionBody::Table {
            columns: vec!["max_residual".into(), "threshold".into(), "passed".into()],
            rows: vec![vec![
                fmt_f64(verification.max_residual),
                fmt_f64(verification.threshold),
                verification.passed.to_string(),
            ]],
        },
    ));

    sections.push((
        "notes".to_string(),
        SectionBody::Text(EXISTENCE_BOUND_NOTE.to_string()),
    ));

    Ok(Report { sections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyan_core::special::hermite;

    #[test]
    fn json_round_trip() {
        let report = report_all(&hermite(2, 2), 3, Complex64::new(0.0, 0.0)).unwrap();
        let text = report.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn csv_quoting_rules() {
        assert_eq!(csv_quote("plain"), "plain");
        assert_eq!(csv_quote("a,b"), "\"a,b\"");
        assert_eq!(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn report_contains_scope_note() {
        let report = report_all(
            &ExpPoly::constant_re(1.0),
            1,
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        for format in ["json", "csv", "markdown"] {
            let text = report.render(format);
            assert!(
                text.contains("nonconstructive"),
                "{format} output must acknowledge the out-of-scope existence bound"
            );
        }
    }

    #[test]
    fn zero_datum_report_is_trivial() {
        let report = report_all(&ExpPoly::zero(), 0, Complex64::new(0.0, 0.0)).unwrap();
        let text = report.to_json();
        assert!(text.contains("\"detected_order\",\"0\"")
            || text.contains("[\"detected_order\",\"0\"]"));
    }
}
