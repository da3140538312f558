//! Double-precision evaluation of the overpartition rank generating
//! functions O(a/c;q), their auxiliary Lambert series, Mordell integrals and
//! non-holomorphic completions, plus residual checks of the transformation
//! laws they satisfy.
//!
//! Square roots and powers use the principal branch throughout; every
//! argument of the form −iτ with τ in the upper half-plane has positive real
//! part, so no branch cut is ever crossed.
//!
//! ```
//! use maass_numerics::{eta_eval, EvalConfig, UpperHalfPoint};
//!
//! let cfg = EvalConfig::default();
//! let v = eta_eval(UpperHalfPoint::i(), &cfg).unwrap();
//! assert!((v.re - 0.768225422326056659).abs() < 1e-14);
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub mod completion;
pub mod eta;
pub mod lambert;
pub mod laplacian;
pub mod mordell;
pub mod quad;
pub mod report;
pub mod slash;
pub mod suite;
pub mod theta;
pub mod transform;
pub mod u_minus1;
mod util;

pub use completion::{
    fourier_check, fourier_check_with_table, i_z, j_eval, j_lemma, j_series, m_eval, theta_integral_lemma,
};
pub use eta::{eta_eval, eta_product, eta_reduced, omega_hk};
pub use lambert::{o3_eval, o_eval, u3_eval, u_eval, v3_eval, v_eval};
pub use laplacian::{laplacian_residual, LaplacianReport};
pub use mordell::{h_ac, mordell_integral};
pub use report::ResidualReport;
pub use slash::{slash_check, Group, Matrix};
pub use theta::{theta_ac_eval, theta_ac_inv, theta_eval};
pub use transform::{check_transform, inversion, TransformCase, TransformTerms};
pub use util::{e_rat, gcd};

pub type C64 = Complex64;

/// Evaluation knobs shared by every numerical routine.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Cap on the number of terms of any Lambert, theta or eta sum.
    pub series_trunc: usize,
    /// Absolute tolerance handed to the quadrature.
    pub quad_tol: f64,
    /// Half-width X of Mordell integrals; `None` picks it from the Gaussian tail.
    pub quad_cutoff: Option<f64>,
    /// Step for the finite-difference Laplacian.
    pub fd_step: f64,
    /// Smallest Im z accepted by the public `*_eval` functions.
    pub y_min: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { series_trunc: 400, quad_tol: 1e-9, quad_cutoff: None, fd_step: 1e-3, y_min: 0.3 }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.series_trunc > 0
            && self.quad_tol > 0.0
            && self.fd_step > 0.0
            && self.y_min > 0.0
            && self.quad_cutoff.map_or(true, |x| x > 0.0);
        if ok {
            Ok(())
        } else {
            Err(MaassError::BadParams(format!("every EvalConfig field must be positive: {self:?}")))
        }
    }

    pub fn with_quad_tol(&self, tol: f64) -> Self {
        EvalConfig { quad_tol: tol, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MaassError {
    #[error("outside the convergence domain: {0}")]
    ConvergenceDomain(String),
    #[error("pole hit: {0}")]
    PoleHit(String),
    #[error("quadrature failed: error estimate {estimate:e} above tolerance {tol:e}")]
    QuadratureFailure { estimate: f64, tol: f64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("matrix not admissible: {0}")]
    BadMatrix(String),
    #[error("double pole on the contour: {0}")]
    DoublePole(String),
}

pub type Result<T> = std::result::Result<T, MaassError>;

/// A point z with Im z > 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfPoint(C64);

impl UpperHalfPoint {
    pub fn new(z: C64) -> Result<Self> {
        if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
            Ok(UpperHalfPoint(z))
        } else {
            Err(MaassError::BadParams(format!("{z} is not in the upper half-plane")))
        }
    }

    pub fn from_parts(x: f64, y: f64) -> Result<Self> {
        Self::new(C64::new(x, y))
    }

    pub fn i() -> Self {
        UpperHalfPoint(C64::new(0.0, 1.0))
    }

    pub fn z(self) -> C64 {
        self.0
    }

    pub fn y(self) -> f64 {
        self.0.im
    }

    /// Error unless Im z ≥ cfg.y_min.
    pub fn require(self, cfg: &EvalConfig) -> Result<C64> {
        if self.0.im < cfg.y_min {
            return Err(MaassError::ConvergenceDomain(format!("Im z = {} below y_min = {}", self.0.im, cfg.y_min)));
        }
        Ok(self.0)
    }
}

impl From<UpperHalfPoint> for C64 {
    fn from(p: UpperHalfPoint) -> C64 {
        p.0
    }
}
