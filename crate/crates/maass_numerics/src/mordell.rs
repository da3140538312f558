//! The kernel H_{a,c} and the Mordell integrals I_{a,c,k,ν}(w).

use std::f64::consts::PI;

use crate::quad::integrate_pts;
use crate::util::{check_ac, e_rat, I};
use crate::{EvalConfig, MaassError, Result, C64};

/// H_{a,c}(x) = eˣ/(1 − 2cos(2πa/c)eˣ + e^{2x}), evaluated as 1/(e^{−x} − 2cos(2πa/c) + eˣ).
pub fn h_ac(a: i64, c: i64, x: C64) -> Result<C64> {
    if x.re.abs() > 700.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let d = (-x).exp() - 2.0 * e_rat(a, c).re + x.exp();
    if d.norm() < 1e-12 {
        return Err(MaassError::PoleHit(format!("H_{{{a},{c}}} at x = {x}")));
    }
    Ok(d.inv())
}

fn angle(k: i64, nu: i64) -> f64 {
    // A = 2πν/k − k̃π/(2k)
    2.0 * PI * (4 * nu - k % 2) as f64 / (4 * k) as f64
}

/// True when the integrand of I_{a,c,k,ν} has its (only possible) real pole,
/// at x = 0: A ≡ ±2πa/c (mod 2π).
pub fn mordell_has_pole(a: i64, c: i64, k: i64, nu: i64) -> bool {
    let base = c * (4 * nu - k % 2);
    let m = 4 * k * c;
    (base - 4 * k * a).rem_euclid(m) == 0 || (base + 4 * k * a).rem_euclid(m) == 0
}

/// Residue R of the integrand at x = 0 when it has a pole there: ik/(4πw·sin A).
pub fn mordell_residue(a: i64, c: i64, k: i64, nu: i64, w: C64) -> Option<C64> {
    mordell_has_pole(a, c, k, nu).then(|| I * k as f64 / (4.0 * PI * w * angle(k, nu).sin()))
}

fn integrand(a: i64, c: i64, k: i64, nu: i64, w: C64) -> impl Fn(f64) -> Result<C64> {
    let ia = I * angle(k, nu);
    let kf = k as f64;
    move |x| Ok((-2.0 * PI * w * x * x / kf).exp() * h_ac(a, c, ia - 2.0 * PI * w * x / kf)?)
}

fn cutoff(k: i64, w: C64, cfg: &EvalConfig) -> f64 {
    cfg.quad_cutoff
        .unwrap_or_else(|| (k as f64 * ((1.0 / cfg.quad_tol).ln() + 12.0) / (2.0 * PI * w.re)).sqrt())
}

fn check(a: i64, c: i64, k: i64, w: C64) -> Result<()> {
    check_ac(a, c)?;
    if k < 1 || !(w.re > 0.0) {
        return Err(MaassError::BadParams(format!("need k ≥ 1 and Re w > 0, got k={k}, w={w}")));
    }
    Ok(())
}

/// Principal value with excision radius ρ: the folded integrand f(x)+f(−x)
/// (in which the R/x parts cancel) on [ρ, X], plus a two-point Gauss rule on [0, ρ].
pub fn mordell_pv(a: i64, c: i64, k: i64, nu: i64, w: C64, rho: f64, cfg: &EvalConfig) -> Result<C64> {
    check(a, c, k, w)?;
    let f = integrand(a, c, k, nu, w);
    let g = |x: f64| Ok(f(x)? + f(-x)?);
    let x = cutoff(k, w, cfg);
    let mut pts = vec![rho];
    for p in [x / 8.0, x / 2.0] {
        if p > rho {
            pts.push(p);
        }
    }
    pts.push(x.max(2.0 * rho));
    let outer = integrate_pts(g, &pts, cfg.quad_tol / 4.0)?;
    let d = 0.5 / 3f64.sqrt();
    let inner = rho * 0.5 * (f(rho * (0.5 - d))? + f(-rho * (0.5 - d))? + f(rho * (0.5 + d))? + f(-rho * (0.5 + d))?);
    Ok(outer + inner)
}

/// I_{a,c,k,ν}(w) = ∫_ℝ e^{−2πwx²/k}·H_{a,c}(2πiν/k − 2πwx/k − k̃πi/(2k)) dx, as a
/// principal value when the integrand has a pole at 0.
pub fn mordell_integral(a: i64, c: i64, k: i64, nu: i64, w: C64, cfg: &EvalConfig) -> Result<C64> {
    check(a, c, k, w)?;
    let x = cutoff(k, w, cfg);
    if !mordell_has_pole(a, c, k, nu) {
        let f = integrand(a, c, k, nu, w);
        return integrate_pts(f, &[-x, -x / 2.0, -x / 8.0, 0.0, x / 8.0, x / 2.0, x], cfg.quad_tol);
    }
    let mut rho = (x / 8.0).min(0.05 * (k as f64 / w.norm()).sqrt());
    let mut prev = mordell_pv(a, c, k, nu, w, rho, cfg)?;
    for _ in 0..30 {
        rho /= 2.0;
        let next = mordell_pv(a, c, k, nu, w, rho, cfg)?;
        if (next - prev).norm() < cfg.quad_tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(MaassError::QuadratureFailure { estimate: f64::NAN, tol: cfg.quad_tol })
}
