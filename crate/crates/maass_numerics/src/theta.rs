//! Weight 3/2 theta functions θ(α,β;τ) and Θ_{a,c}.

use std::f64::consts::PI;

use crate::util::{bilateral, check_ac, cpow, e_rat, I};
use crate::{EvalConfig, MaassError, Result, C64};

/// θ(α,β;τ) = Σ_{n ≡ α mod β} n·e^{πiτn²/β}.
pub fn theta_eval(alpha: i64, beta: i64, tau: C64, cfg: &EvalConfig) -> Result<C64> {
    if beta <= 0 {
        return Err(MaassError::BadParams(format!("θ needs β > 0, got {beta}")));
    }
    if tau.im <= 0.0 {
        return Err(MaassError::BadParams(format!("θ needs Im τ > 0, got {tau}")));
    }
    let a0 = alpha.rem_euclid(beta);
    bilateral(cfg, "θ(α,β;τ)", |j| {
        let n = (a0 + beta * j) as f64;
        Ok(n * (PI * I * tau * (n * n / beta as f64)).exp())
    })
}

/// Θ_{a,c}(τ) = pre·θ(α,β;τ/m).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaShape {
    pub pre: f64,
    pub alpha: i64,
    pub beta: i64,
    pub m: i64,
}

pub fn theta_shape(a: i64, c: i64) -> ThetaShape {
    if c % 2 == 1 {
        ThetaShape { pre: 1.0, alpha: 4 * a + c, beta: 2 * c, m: 4 * c }
    } else if c % 4 == 2 {
        ThetaShape { pre: 2.0, alpha: 2 * a + c / 2, beta: c, m: 2 * c }
    } else {
        ThetaShape { pre: 4.0, alpha: a + c / 4, beta: c / 2, m: c }
    }
}

/// Θ_{a,c}(τ), by direct summation.
pub fn theta_ac_eval(a: i64, c: i64, tau: C64, cfg: &EvalConfig) -> Result<C64> {
    check_ac(a, c)?;
    let s = theta_shape(a, c);
    Ok(s.pre * theta_eval(s.alpha, s.beta, tau / s.m as f64, cfg)?)
}

/// (−iτ)^{−3/2}·Θ_{a,c}(−1/τ), either directly or through the inversion
/// θ(α,β;−1/τ′) = −iβ^{−1/2}(−iτ′)^{3/2}Σ_{k mod β} e(kα/β)θ(k,β;τ′), whichever
/// sum decays faster.
pub fn theta_ac_inv(a: i64, c: i64, tau: C64, cfg: &EvalConfig) -> Result<C64> {
    check_ac(a, c)?;
    let s = theta_shape(a, c);
    let inv = -tau.inv();
    if inv.im / s.m as f64 >= s.m as f64 * tau.im {
        return Ok(cpow(-I * tau, -1.5) * theta_ac_eval(a, c, inv, cfg)?);
    }
    inverted_side(s, tau, cfg)
}

fn inverted_side(s: ThetaShape, tau: C64, cfg: &EvalConfig) -> Result<C64> {
    let mt = tau * s.m as f64;
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..s.beta {
        if (2 * k) % s.beta == 0 {
            continue; // θ(k,β;·) vanishes identically
        }
        acc += e_rat(k * s.alpha, s.beta) * theta_eval(k, s.beta, mt, cfg)?;
    }
    Ok(s.pre * -I * (s.m as f64).powf(1.5) / (s.beta as f64).sqrt() * acc)
}

/// Both sides of (−4icτ)^{−3/2}Θ_{a,c}(−1/τ) = −i(2c)^{−1/2}Σ_{k mod 2c} e(k(4a+c)/(2c))θ(k,2c;4cτ),
/// c odd; the left side by direct summation.
pub fn shimura_sides(a: i64, c: i64, tau: C64, cfg: &EvalConfig) -> Result<(C64, C64)> {
    check_ac(a, c)?;
    if c % 2 == 0 {
        return Err(MaassError::BadParams(format!("the inversion display is for odd c, got {c}")));
    }
    let lhs = cpow(-I * tau * (4 * c) as f64, -1.5) * theta_ac_eval(a, c, -tau.inv(), cfg)?;
    let mut rhs = C64::new(0.0, 0.0);
    for k in 0..2 * c {
        rhs += e_rat(k * (4 * a + c), 2 * c) * theta_eval(k, 2 * c, tau * (4 * c) as f64, cfg)?;
    }
    Ok((lhs, -I / ((2 * c) as f64).sqrt() * rhs))
}
