//! Finite-difference weight-k hyperbolic Laplacian
//! Δ_k = −y²(∂²_x + ∂²_y) + iky(∂_x + i∂_y).

use serde::{Deserialize, Serialize};

use crate::{MaassError, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaplacianReport {
    pub value: C64,
    /// |Δ_k f(z)|
    pub residual: f64,
    /// max(|f|, y²(|f_xx|+|f_yy|), k·y(|f_x|+|f_y|)): the size of the terms that cancel.
    pub scale: f64,
}

impl LaplacianReport {
    pub fn relative(&self) -> f64 {
        self.residual / self.scale
    }
}

/// Δ_k f(z) from fourth-order central differences with step `h`.
pub fn laplacian_residual<F>(f: F, weight: f64, z: C64, h: f64) -> Result<LaplacianReport>
where
    F: Fn(C64) -> Result<C64>,
{
    if !(h > 0.0) || z.im <= 2.0 * h {
        return Err(MaassError::BadParams(format!("step {h} too large for Im z = {}", z.im)));
    }
    let dx = C64::new(h, 0.0);
    let dy = C64::new(0.0, h);
    let f0 = f(z)?;
    let second = |d: C64| -> Result<(C64, C64)> {
        let (p1, m1, p2, m2) = (f(z + d)?, f(z - d)?, f(z + 2.0 * d)?, f(z - 2.0 * d)?);
        let d2 = (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) / (12.0 * h * h);
        let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
        Ok((d1, d2))
    };
    let (fx, fxx) = second(dx)?;
    let (fy, fyy) = second(dy)?;
    let y = z.im;
    let i = C64::new(0.0, 1.0);
    let value = -y * y * (fxx + fyy) + i * weight * y * (fx + i * fy);
    let scale = f0.norm().max(y * y * (fxx.norm() + fyy.norm())).max(weight * y * (fx.norm() + fy.norm()));
    Ok(LaplacianReport { value, residual: value.norm(), scale })
}
