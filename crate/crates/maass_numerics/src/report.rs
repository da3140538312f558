use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{EvalConfig, MaassError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// The residual must fall below this.
    pub target: f64,
    pub quad_tol: f64,
    pub series_trunc: usize,
}

/// JSON shape: {check_id, params, residual, tolerances, converged}. `error`
/// is present only when the evaluation itself failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub check_id: String,
    pub params: Value,
    pub residual: Option<f64>,
    pub tolerances: Tolerances,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Numerical failure (non-convergence, quadrature) rather than a bad residual.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub numeric_failure: bool,
}

impl ResidualReport {
    pub fn from_result(check_id: &str, params: Value, residual: Result<f64>, target: f64, cfg: &EvalConfig) -> Self {
        let tolerances = Tolerances { target, quad_tol: cfg.quad_tol, series_trunc: cfg.series_trunc };
        match residual {
            Ok(r) => ResidualReport {
                check_id: check_id.to_string(),
                params,
                residual: Some(r),
                tolerances,
                converged: r.is_finite() && r < target,
                error: None,
                numeric_failure: !r.is_finite(),
            },
            Err(e) => ResidualReport {
                check_id: check_id.to_string(),
                params,
                residual: None,
                tolerances,
                converged: false,
                numeric_failure: matches!(
                    e,
                    MaassError::ConvergenceDomain(_) | MaassError::QuadratureFailure { .. } | MaassError::PoleHit(_)
                ),
                error: Some(e.to_string()),
            },
        }
    }
}
