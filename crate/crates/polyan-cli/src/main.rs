//! Batch command-line front end: parse expression files, dispatch to the
//! solver / special-function / measure operations, and emit machine-readable
//! reports.
//!
//! Exit codes: 0 success, 1 domain error (infinite order, divergent integral,
//! …) with a one-line diagnostic on stderr, 2 usage error.

mod parser;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use polyan_core::expr::ExpPoly;
use polyan_core::io::{bundle_from_json, bundle_to_json, expr_from_json, expr_to_json, fmt_f64};
use polyan_core::measures::{
    estimate_check, hormander_norm, radial_moment, EstimateKind, WeightKind, WeightSpec,
};
use polyan_core::solver::{analytic_components, particular_solution, verify_solution};
use polyan_core::special::{fock_kernel, hermite, hermite_rodrigues, laguerre};
use polyan_core::{AlgebraError, MeasureError, SolverError};

use report::{csv_quote, report_all};

#[derive(Parser)]
#[command(
    name = "polyan",
    about = "Polyanalytic d-bar toolkit: constructive solutions, kernels, and weighted-norm certification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Expression file (canonical JSON or infix syntax, sniffed by content)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline infix expression, alternative to --input
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Args, Clone)]
struct NumericArgs {
    /// Kernel parameter value as RE,IM (defaults to 0, which keeps all
    /// integrals on the exact paths)
    #[arg(long, value_parser = parse_complex, default_value = "0,0")]
    w: Complex64,
    /// Override the quadrature tolerance (same effect as POLYAN_QUAD_TOL)
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve ∂̄u = f; emits the solution bundle as JSON
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Construction order (defaults to the detected polyanalytic order)
        #[arg(long)]
        order: Option<u32>,
    },
    /// Check a solution bundle (or an explicit solution/datum pair)
    Verify {
        /// Solution-bundle JSON file, e.g. the output of `solve`
        #[arg(long)]
        input: Option<PathBuf>,
        /// Solution expression file (with --datum)
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Datum expression file (with --solution)
        #[arg(long)]
        datum: Option<PathBuf>,
        /// Relative verification tolerance
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Split a polyanalytic datum into its analytic components
    Decompose {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Poly-Fock reproducing kernel F_n(z, w)
    Kernel {
        #[arg(long)]
        n: u32,
        /// Emit a CSV table for orders 1..=n instead of one expression
        #[arg(long)]
        table: bool,
    },
    /// Complex Hermite polynomial H_{m,n}
    Hermite {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Generate through the Rodrigues formula instead of the defining sum
        #[arg(long)]
        rodrigues: bool,
        /// Emit a CSV table over the full index grid instead of one expression
        #[arg(long)]
        table: bool,
    },
    /// Generalized Laguerre polynomial L^α_m (variable mapped to z)
    Laguerre {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        alpha: u32,
        /// Emit a CSV table for degrees 0..=m instead of one expression
        #[arg(long)]
        table: bool,
    },
    /// Weighted squared norm of an expression
    Norm {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
        /// Power n of the (1+|z|²)^{2n} divisor
        #[arg(long, default_value_t = 1)]
        denominator_order: u32,
        /// Weight exponent: gaussian (|z|²) or power (|z|^ρ)
        #[arg(long, default_value = "gaussian")]
        weight: String,
        /// ρ for the power weight (must exceed 1)
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
    },
    /// Moment table η_n = ‖z^n‖²_H with the n! bound
    Moments {
        /// Largest index to tabulate
        #[arg(long)]
        eta: u32,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Weighted-inequality checks for the constructed solution
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        order: u32,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Full diagnostic report (datum, solution, decomposition, norms,
    /// estimates, verification)
    Report {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        numeric: NumericArgs,
        /// json, csv, or markdown
        #[arg(long, default_value = "json")]
        format: String,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got `{text}`"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part `{re}`"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part `{im}`"))?;
    Ok(Complex64::new(re, im))
}

fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Load an expression from `--input` (JSON or infix, sniffed) or `--expr`.
fn load_expression(args: &InputArgs) -> Result<ExpPoly, CliError> {
    let text = match (&args.input, &args.expr) {
        (Some(path), None) => read_file(path)?,
        (None, Some(expr)) => expr.clone(),
        _ => {
            return Err(CliError::Usage(
                "provide exactly one of --input or --expr".into(),
            ))
        }
    };
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        expr_from_json(trimmed).map_err(|e| CliError::Usage(e.to_string()))
    } else {
        parser::parse_expression(&text).map_err(CliError::Usage)
    }
}

fn load_expression_file(path: &std::path::Path) -> Result<ExpPoly, CliError> {
    load_expression(&InputArgs {
        input: Some(path.to_path_buf()),
        expr: None,
    })
}

fn apply_tol_override(numeric: &NumericArgs) {
    if let Some(tol) = numeric.tol {
        std::env::set_var("POLYAN_QUAD_TOL", format!("{tol:e}"));
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve { input, order } => {
            let f = load_expression(&input)?;
            let bundle = particular_solution(&f, order)?;
            Ok(format!("{}\n", bundle_to_json(&bundle)))
        }
        Command::Verify {
            input,
            solution,
            datum,
            tol,
        } => {
            let (u, f) = match (input, solution, datum) {
                (Some(path), None, None) => {
                    let bundle = bundle_from_json(&read_file(&path)?)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    (bundle.particular, bundle.datum)
                }
                (None, Some(u_path), Some(f_path)) => (
                    load_expression_file(&u_path)?,
                    load_expression_file(&f_path)?,
                ),
                _ => {
                    return Err(CliError::Usage(
                        "provide --input BUNDLE or both --solution and --datum".into(),
                    ))
                }
            };
            let check = verify_solution(&u, &f, tol);
            Ok(format!(
                "{{\"passed\":{},\"max_residual\":{},\"threshold\":{}}}\n",
                check.passed,
                fmt_f64(check.max_residual),
                fmt_f64(check.threshold)
            ))
        }
        Command::Decompose { input } => {
            let f = load_expression(&input)?;
            let d = analytic_components(&f)?;
            let components = d
                .components
                .iter()
                .map(expr_to_json)
                .collect::<Vec<_>>()
                .join(",");
            Ok(format!(
                "{{\"order\":{},\"components\":[{}]}}\n",
                d.order, components
            ))
        }
        Command::Kernel { n, table } => {
            if n == 0 {
                return Err(CliError::Usage("kernel order must be at least 1".into()));
            }
            if table {
                let mut out = String::from("n,expression\n");
                for k in 1..=n {
                    out.push_str(&format!(
                        "{},{}\n",
                        k,
                        csv_quote(&expr_to_json(&fock_kernel(k)))
                    ));
                }
                Ok(out)
            } else {
                Ok(format!("{}\n", expr_to_json(&fock_kernel(n))))
            }
        }
        Command::Hermite {
            m,
            n,
            rodrigues,
            table,
        } => {
            let generate = |m: u32, n: u32| {
                if rodrigues {
                    hermite_rodrigues(m, n)
                } else {
                    hermite(m, n)
                }
            };
            if table {
                let mut out = String::from("m,n,expression\n");
                for mi in 0..=m {
                    for ni in 0..=n {
                        out.push_str(&format!(
                            "{},{},{}\n",
                            mi,
                            ni,
                            csv_quote(&expr_to_json(&generate(mi, ni)))
                        ));
                    }
                }
                Ok(out)
            } else {
                Ok(format!("{}\n", expr_to_json(&generate(m, n))))
            }
        }
        Command::Laguerre { m, alpha, table } => {
            let as_expr = |m: u32| -> Result<ExpPoly, CliError> {
                Ok(laguerre(m, alpha).compose(&ExpPoly::var_z())?)
            };
            if table {
                let mut out = String::from("m,alpha,expression\n");
                for mi in 0..=m {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        mi,
                        alpha,
                        csv_quote(&expr_to_json(&as_expr(mi)?))
                    ));
                }
                Ok(out)
            } else {
                Ok(format!("{}\n", expr_to_json(&as_expr(m)?)))
            }
        }
        Command::Norm {
            input,
            numeric,
            denominator_order,
            weight,
            rho,
        } => {
            apply_tol_override(&numeric);
            let f = load_expression(&input)?;
            let spec = match weight.as_str() {
                "gaussian" => WeightSpec::gaussian(denominator_order),
                "power" => {
                    if rho <= 1.0 {
                        return Err(CliError::Usage("power weight requires --rho > 1".into()));
                    }
                    WeightSpec {
                        kind: WeightKind::Power,
                        rho,
                        denominator_order,
                    }
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown weight `{other}` (expected gaussian or power)"
                    )))
                }
            };
            let norm = hormander_norm(&f, &spec, numeric.w)?;
            Ok(format!(
                "name,value,abs_error_bound,method\nhormander_norm,{},{},{}\n",
                fmt_f64(norm.value),
                fmt_f64(norm.abs_error_bound),
                norm.method.as_str()
            ))
        }
        Command::Moments { eta, numeric } => {
            apply_tol_override(&numeric);
            let mut out = String::from("n,eta,factorial,eta_le_factorial\n");
            let mut factorial = 1.0_f64;
            for n in 0..=eta {
                if n > 0 {
                    factorial *= n as f64;
                }
                let moment = radial_moment(n, 1);
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    n,
                    fmt_f64(moment.value),
                    fmt_f64(factorial),
                    moment.value <= factorial
                ));
            }
            Ok(out)
        }
        Command::Estimate {
            input,
            order,
            numeric,
        } => {
            apply_tol_override(&numeric);
            let f = load_expression(&input)?;
            let mut out = String::from("name,lhs,rhs,ratio,bound_constant,passed\n");
            for (name, kind) in [
                ("particular_bound", EstimateKind::ParticularBound),
                ("remainder_bound", EstimateKind::RemainderBound),
            ] {
                let check = estimate_check(&f, order, numeric.w, kind, None)?;
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    name,
                    fmt_f64(check.lhs.value),
                    fmt_f64(check.rhs.value),
                    fmt_f64(check.ratio),
                    fmt_f64(check.bound_constant),
                    check.passed
                ));
            }
            Ok(out)
        }
        Command::Report {
            input,
            order,
            numeric,
            format,
        } => {
            apply_tol_override(&numeric);
            if !matches!(format.as_str(), "json" | "csv" | "markdown") {
                return Err(CliError::Usage(format!(
                    "unknown format `{format}` (expected json, csv, or markdown)"
                )));
            }
            let f = load_expression(&input)?;
            let order = match order {
                Some(n) => n,
                None => f.polyanalytic_order().ok_or(SolverError::InfiniteOrder)?,
            };
            let report = report_all(&f, order, numeric.w)?;
            Ok(report.render(&format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(2)
        }
    }
}
