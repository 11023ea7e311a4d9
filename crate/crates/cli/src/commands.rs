//! Subcommand implementations. Each returns () on success or a `CliError`
//! carrying the process exit code: 1 for failed identity checks, 2 for
//! usage and parse problems, 3 for numeric rejections (degeneracy, residual
//! overruns, signature clashes).

use std::fs;

use serde::Serialize;

use gakit_core::deform::{gauge_extensor, gauge_from_metric, GaugeExtensor};
use gakit_core::linalg::jacobi_eigen_sym;
use gakit_core::multivector::DISPLAY_SIG_DIGITS;
use gakit_core::verify::{run_all, CheckConfig};
use gakit_core::{GaError, MetricExtensor, MetricTensor};

use crate::parse::parse;
use crate::session::Session;

const RESIDUAL_GATE: f64 = 1e-8;
const TOLERANCE_ENV: &str = "GAKIT_TOLERANCE";

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

fn numeric(message: impl Into<String>) -> CliError {
    CliError {
        code: 3,
        message: message.into(),
    }
}

fn check_failure(message: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: message.into(),
    }
}

fn load_tensor(path: &str) -> Result<MetricTensor, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read metric file '{path}': {e}")))?;
    MetricTensor::from_json(&text).map_err(|e| usage(format!("metric file '{path}': {e}")))
}

/// Names the offending eigenvalue when a metric fails the degeneracy gate.
fn degeneracy_diagnostic(tensor: &MetricTensor, err: &GaError) -> CliError {
    let n = tensor.dim();
    if let Ok((values, _)) = jacobi_eigen_sym(n, tensor.as_op().flat()) {
        let mut worst = 0usize;
        for (k, v) in values.iter().enumerate() {
            if v.abs() < values[worst].abs() {
                worst = k;
            }
        }
        return numeric(format!(
            "{err}: eigenvalue {} of {n} is {:.3e}, too close to zero",
            worst + 1,
            values[worst]
        ));
    }
    numeric(format!("{err}"))
}

fn metric_extensor(tensor: MetricTensor) -> Result<MetricExtensor, CliError> {
    match MetricExtensor::new(tensor.clone()) {
        Ok(g) => Ok(g),
        Err(e @ GaError::DegenerateMetric { .. }) => Err(degeneracy_diagnostic(&tensor, &e)),
        Err(e) => Err(numeric(format!("{e}"))),
    }
}

/// Resolves the session dimension and metric from `-n` and `--metric`,
/// insisting they agree when both are given. Returns the session plus a
/// stable label for report headers.
fn resolve_session(
    n: Option<usize>,
    metric_path: Option<&str>,
) -> Result<(Session, String), CliError> {
    match metric_path {
        Some(path) => {
            let tensor = load_tensor(path)?;
            if let Some(n) = n {
                if n != tensor.dim() {
                    return Err(usage(format!(
                        "-n {n} disagrees with metric file dimension {}",
                        tensor.dim()
                    )));
                }
            }
            let session = if tensor.is_identity() {
                Session::with_metric(tensor).map_err(|e| usage(format!("{e}")))?
            } else {
                let metric = metric_extensor(tensor)?;
                Session::with_extensor(metric).map_err(|e| usage(format!("{e}")))?
            };
            Ok((session, path.to_string()))
        }
        None => {
            let n = n.unwrap_or(4);
            let session = Session::euclidean(n).map_err(|e| usage(format!("{e}")))?;
            Ok((session, "identity".to_string()))
        }
    }
}

fn tolerance_override() -> Result<Option<f64>, CliError> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(text) => {
            let value: f64 = text
                .parse()
                .map_err(|_| usage(format!("{TOLERANCE_ENV} must be a number, got '{text}'")))?;
            if !(value.is_finite() && value > 0.0) {
                return Err(usage(format!(
                    "{TOLERANCE_ENV} must be a positive finite number, got '{text}'"
                )));
            }
            Ok(Some(value))
        }
        Err(_) => Ok(None),
    }
}

pub fn cmd_eval(
    n: Option<usize>,
    metric_path: Option<&str>,
    expr: &str,
) -> Result<(), CliError> {
    let (session, _) = resolve_session(n, metric_path)?;
    let ast = parse(expr, session.dim()).map_err(|e| usage(format!("{e}")))?;
    println!("{}", session.eval(&ast).display_with(DISPLAY_SIG_DIGITS));
    Ok(())
}

pub fn cmd_hodge(
    n: Option<usize>,
    metric_path: Option<&str>,
    expr: &str,
) -> Result<(), CliError> {
    let (session, _) = resolve_session(n, metric_path)?;
    let ast = parse(expr, session.dim()).map_err(|e| usage(format!("{e}")))?;
    let value = session.dual(&session.eval(&ast));
    println!("{}", value.display_with(DISPLAY_SIG_DIGITS));
    Ok(())
}

pub fn cmd_check(
    n: Option<usize>,
    metric_path: Option<&str>,
    seed: u64,
    trials: usize,
) -> Result<(), CliError> {
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let (session, label) = resolve_session(n, metric_path)?;
    let tensor = match session.metric() {
        Some(g) => g.tensor().clone(),
        None => MetricTensor::identity(session.dim()),
    };
    let cfg = CheckConfig {
        seed,
        trials,
        metric: tensor,
        tolerance_override: tolerance_override()?,
    };
    let outcomes = run_all(&cfg).map_err(|e| numeric(format!("{e}")))?;
    println!(
        "check n={} metric={} seed={} trials={}",
        session.dim(),
        label,
        seed,
        trials
    );
    let mut failed = 0usize;
    for o in &outcomes {
        if !o.pass {
            failed += 1;
        }
        println!(
            "{}  {:<30} max {:>9.3e}  tol {:>6.0e}  {}",
            if o.pass { "pass" } else { "FAIL" },
            o.name,
            o.max_residual,
            o.tolerance,
            o.formula
        );
    }
    println!("result: {} passed, {} failed", outcomes.len() - failed, failed);
    if failed > 0 {
        return Err(check_failure(format!(
            "{failed} of {} identity suites failed",
            outcomes.len()
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct DeformReport {
    h: Vec<Vec<f64>>,
    eta: Vec<Vec<f64>>,
    signature: [usize; 2],
    det_h: f64,
    residual: f64,
}

fn op_rows(op: &gakit_core::LinOp11) -> Vec<Vec<f64>> {
    (0..op.dim()).map(|j| op.row(j).to_vec()).collect()
}

pub fn cmd_deform(metric_path: &str, eta_path: Option<&str>) -> Result<(), CliError> {
    let g = metric_extensor(load_tensor(metric_path)?)?;
    let gauge: GaugeExtensor = match eta_path {
        Some(path) => {
            let eta = metric_extensor(load_tensor(path)?)?;
            gauge_extensor(&g, &eta).map_err(|e| numeric(format!("{e}")))?
        }
        None => gauge_from_metric(&g).map_err(|e| numeric(format!("{e}")))?,
    };
    let (p, q) = g.signature();
    let report = DeformReport {
        h: op_rows(gauge.h()),
        eta: gauge.eta().tensor().rows(),
        signature: [p, q],
        det_h: gauge.det_h(),
        residual: gauge.residual(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    let gate = tolerance_override()?.unwrap_or(RESIDUAL_GATE);
    if gauge.residual() >= gate {
        return Err(numeric(format!(
            "congruence residual {:.3e} is not below {gate:.0e}",
            gauge.residual()
        )));
    }
    Ok(())
}
