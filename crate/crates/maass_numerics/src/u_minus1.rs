//! The c = 2 route: O(−1;q), its r-deformation O_r, the series U_r and 𝒰,
//! the integrals I^±, and the completion M(−1;z) = O(−1;q) − I(−1;z).

use std::f64::consts::{PI, SQRT_2};

use crate::eta::{eta_reduced, omega_hk};
use crate::lambert::pbar;
use crate::quad::{integrate_pts, integrate_to_inf};
use crate::transform::h_prime;
use crate::util::{bilateral, cpow, csqrt, e_rat, gcd, inv_one_minus, qpow, I};
use crate::{EvalConfig, MaassError, Result, UpperHalfPoint, C64};

const ONE: C64 = C64::new(1.0, 0.0);

fn sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// e(r) = e^{2πir} for complex r.
fn e_c(r: C64) -> C64 {
    (2.0 * PI * I * r).exp()
}

/// O(−1;q) = 4P̄(q)·Σ_{n∈ℤ} (−1)ⁿq^{n²+n}/(1+qⁿ)².
pub fn o_minus1(z: C64, cfg: &EvalConfig) -> Result<C64> {
    let s = bilateral(cfg, "O(−1;q)", |n| {
        // For n < 0 divide through by q^{2n}.
        let (ex, x) = if n >= 0 { ((n * n + n) as f64, qpow(z, n as f64)) } else { ((n * n - n) as f64, qpow(z, -n as f64)) };
        let d = inv_one_minus(-x, "O(−1;q)")?;
        Ok(sign(n) * qpow(z, ex) * d * d)
    })?;
    Ok(4.0 * pbar(z, cfg)? * s)
}

/// O_r(q) = 4P̄(q)·Σ_{n∈ℤ} (−1)^{n+1}q^{n²}/(1+e(r)qⁿ), r possibly complex.
pub fn o_r(z: C64, r: C64, cfg: &EvalConfig) -> Result<C64> {
    let er = e_c(r);
    let s = bilateral(cfg, "O_r(q)", |n| Ok(-sign(n) * qpow(z, (n * n) as f64) * inv_one_minus(-er * qpow(z, n as f64), "O_r(q)")?))?;
    Ok(4.0 * pbar(z, cfg)? * s)
}

fn eta_over_eta2sq(z: C64, cfg: &EvalConfig) -> Result<C64> {
    let e2 = eta_reduced(2.0 * z, cfg)?;
    Ok(eta_reduced(z, cfg)? / (e2 * e2))
}

/// U_r(z) = e^{πir}·η(z)/η²(2z)·Σ_{m odd} q^{(m²+m)/2}/(1 − e(r)q^m).
pub fn u_r(z: C64, r: C64, cfg: &EvalConfig) -> Result<C64> {
    let er = e_c(r);
    let s = bilateral(cfg, "U_r", |j| {
        let m = 2 * j + 1;
        Ok(qpow(z, ((m * m + m) / 2) as f64) * inv_one_minus(er * qpow(z, m as f64), "U_r")?)
    })?;
    Ok((PI * I * r).exp() * eta_over_eta2sq(z, cfg)? * s)
}

/// 𝒰(z) = 4η(z)/η²(2z)·Σ_{m odd} q^{(m²+m)/2}/(1 − q^m)².
pub fn ucal(z: C64, cfg: &EvalConfig) -> Result<C64> {
    let s = bilateral(cfg, "𝒰", |j| {
        let m = 2 * j + 1;
        let d = inv_one_minus(qpow(z, m as f64), "𝒰")?;
        Ok(qpow(z, ((m * m + m) / 2) as f64) * d * d)
    })?;
    Ok(4.0 * eta_over_eta2sq(z, cfg)? * s)
}

fn cutoff(k: i64, w: C64, cfg: &EvalConfig) -> f64 {
    cfg.quad_cutoff
        .unwrap_or_else(|| (k as f64 * ((1.0 / cfg.quad_tol).ln() + 12.0) / (2.0 * PI * w.re)).sqrt())
}

fn check_w(k: i64, w: C64) -> Result<()> {
    if k < 1 || !(w.re > 0.0) {
        return Err(MaassError::BadParams(format!("need k ≥ 1 and Re w > 0, got k={k}, w={w}")));
    }
    Ok(())
}

/// exponent ±2πiν/k ∓ πik̃/(2k) (without the x- and r-dependent parts)
fn phase(pm: i8, k: i64, nu: i64) -> C64 {
    I * (pm as f64) * 2.0 * PI * (4 * nu - k % 2) as f64 / (4 * k) as f64
}

/// I^±_{k,ν,r}(w) = ∫_ℝ e^{−2πwx²/k}/(1 + exp(±2πiν/k ∓ πik̃/(2k) + 2πir − 2πwx/k)) dx.
pub fn i_pm(w: C64, r: f64, pm: i8, k: i64, nu: i64, cfg: &EvalConfig) -> Result<C64> {
    check_w(k, w)?;
    let ph = phase(pm, k, nu) + 2.0 * PI * I * r;
    let kf = k as f64;
    let f = |x: f64| {
        let e = (ph - 2.0 * PI * w * x / kf).exp();
        if (ONE + e).norm() < 1e-10 {
            return Err(MaassError::PoleHit(format!("I^± denominator vanishes at x = {x}")));
        }
        Ok((-2.0 * PI * w * x * x / kf).exp() * inv_one_minus(-e, "I^±")?)
    };
    let x = cutoff(k, w, cfg);
    integrate_pts(f, &[-x, -x / 2.0, -x / 8.0, 0.0, x / 8.0, x / 2.0, x], cfg.quad_tol)
}

/// True when 1 + E has a (double) zero on the real axis, at x = 0.
pub fn i_pm2_double_pole(k: i64, nu: i64) -> bool {
    (4 * nu - k % 2 - 2 * k).rem_euclid(4 * k) == 0
}

/// ∫_ℝ e^{−2πwx²/k}·E/(1+E)² dx with E = exp(±2πiν/k ∓ πik̃/(2k) − 2πwx/k).
pub fn i_pm2(w: C64, pm: i8, k: i64, nu: i64, cfg: &EvalConfig) -> Result<C64> {
    check_w(k, w)?;
    if i_pm2_double_pole(k, nu) {
        return Err(MaassError::DoublePole(format!("k={k}, ν={nu}: E = −1 at x = 0")));
    }
    let ph = phase(pm, k, nu);
    let kf = k as f64;
    let f = |x: f64| {
        let e = (ph - 2.0 * PI * w * x / kf).exp();
        // E/(1+E)² = E⁻¹/(1+E⁻¹)²
        let e = if e.norm() > 1.0 { e.inv() } else { e };
        Ok((-2.0 * PI * w * x * x / kf).exp() * e / ((ONE + e) * (ONE + e)))
    };
    let x = cutoff(k, w, cfg);
    integrate_pts(f, &[-x, -x / 2.0, -x / 8.0, 0.0, x / 8.0, x / 2.0, x], cfg.quad_tol)
}

/// η²(τ)/η(2τ), with the q^{1/12} prefactors cancelled when the product converges directly.
pub fn eta_sq_over_eta_double(tau: C64, cfg: &EvalConfig) -> Result<C64> {
    if tau.im >= 0.25 {
        let terms = (41.5 / (2.0 * PI * tau.im)).ceil() as i64;
        let mut p = ONE;
        for n in 1..=terms {
            let qn = qpow(tau, n as f64);
            p *= (ONE - qn) / (ONE + qn);
        }
        return Ok(p);
    }
    let e = eta_reduced(tau, cfg)?;
    Ok(e * e / eta_reduced(2.0 * tau, cfg)?)
}

/// η²(iu)/η(iu/2); for u < 1 through (2u)^{−1/2}·η²(i/u)/η(2i/u).
fn eta_ratio_iu(u: f64, cfg: &EvalConfig) -> Result<C64> {
    if u < 1.0 {
        return Ok(eta_sq_over_eta_double(C64::new(0.0, 1.0 / u), cfg)? / (2.0 * u).sqrt());
    }
    let e = eta_reduced(C64::new(0.0, u), cfg)?;
    Ok(e * e / eta_reduced(C64::new(0.0, u / 2.0), cfg)?)
}

/// ∫₀^∞ η²(iu)/(η(iu/2)·(−i(z+iu))^{3/2}) du; u = s² near 0 removes the u^{−1/2} endpoint behaviour.
pub fn eta_ratio_integral(z: C64, cfg: &EvalConfig) -> Result<C64> {
    let g = |u: f64| Ok(eta_ratio_iu(u, cfg)? / cpow(-I * (z + I * u), 1.5));
    let near = integrate_pts(|s: f64| Ok(2.0 * s * g(s * s)?), &[0.0, 0.25, 0.5, 1.0], cfg.quad_tol / 2.0)?;
    let far = integrate_to_inf(g, 1.0, 2.0, cfg.quad_tol / 2.0)?;
    Ok(near + far)
}

/// Both sides of −(I⁺ + I⁻)(i/z) = −((−iz)²/(√2π))·∫₀^∞ η²(iu)/(η(iu/2)(−i(z+iu))^{3/2}) du,
/// the integrals taken at k = 1, ν = 0.
pub fn i_tau_lemma(z: C64, cfg: &EvalConfig) -> Result<(C64, C64)> {
    let w = I / z;
    let lhs = -(i_pm2(w, 1, 1, 0, cfg)? + i_pm2(w, -1, 1, 0, cfg)?);
    let rhs = -((-I * z).powi(2) / (SQRT_2 * PI)) * eta_ratio_integral(z, cfg)?;
    Ok((lhs, rhs))
}

/// Both sides of O(−1;−1/z) = (1/√2)(−iz)^{3/2}𝒰(z/2) + (2/π)(−iz)^{3/2}·∫₀^∞ η²(iu)/(η(iu/2)(−i(z+iu))^{3/2}) du.
pub fn minus1_inversion(z: C64, cfg: &EvalConfig) -> Result<(C64, C64)> {
    let lhs = o_minus1(-z.inv(), cfg)?;
    let p = cpow(-I * z, 1.5);
    let rhs = p / SQRT_2 * ucal(z / 2.0, cfg)? + 2.0 / PI * p * eta_ratio_integral(z, cfg)?;
    Ok((lhs, rhs))
}

/// I(−1;z) = (√2/(πi))·∫_{−z̄}^{i∞} η²(τ)/(η(2τ)(−i(τ+z))^{3/2}) dτ.
pub fn i_minus1(z: C64, cfg: &EvalConfig) -> Result<C64> {
    if z.im <= 0.0 {
        return Err(MaassError::BadParams(format!("{z} is not in the upper half-plane")));
    }
    let y = z.im;
    let base = -z.conj();
    // the ratio tends to 1; that part integrates to 2/√(2y)
    let f = |t: f64| Ok((eta_sq_over_eta_double(base + I * t, cfg)? - ONE) / (2.0 * y + t).powf(1.5));
    let v = integrate_to_inf(f, 0.0, 0.25_f64.min(y.max(1e-3)), cfg.quad_tol)? + 2.0 / (2.0 * y).sqrt();
    // dτ = i dt cancels the 1/i
    Ok(SQRT_2 / PI * v)
}

/// M(−1;z) = O(−1;q) − I(−1;z), unchecked.
pub fn m_minus1(z: C64, cfg: &EvalConfig) -> Result<C64> {
    Ok(o_minus1(z, cfg)? - i_minus1(z, cfg)?)
}

/// |(O_ε − O_{−ε})/(2πi·2ε) − O(−1;q)|.
pub fn derivative_residual(z: C64, eps: f64, cfg: &EvalConfig) -> Result<f64> {
    let d = (o_r(z, C64::new(eps, 0.0), cfg)? - o_r(z, C64::new(-eps, 0.0), cfg)?) / (2.0 * PI * I * 2.0 * eps);
    Ok((d - o_minus1(z, cfg)?).norm())
}

/// |η²(z)/η(2z) − Σ_{n∈ℤ}(−1)ⁿq^{n²}|.
pub fn sump_residual(z: C64, cfg: &EvalConfig) -> Result<f64> {
    let s = bilateral(cfg, "Σ(−1)ⁿq^{n²}", |n| Ok(sign(n) * qpow(z, (n * n) as f64)))?;
    let e = eta_reduced(z, cfg)?;
    Ok((e * e / eta_reduced(2.0 * z, cfg)? - s).norm())
}

/// Terms of the r-deformed transformation law at q = e^{2πi(h+iw)/k}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RTerms {
    pub lhs: C64,
    pub holomorphic: C64,
    pub integral: C64,
}

impl RTerms {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.holomorphic - self.integral).norm()
    }
}

fn check_hk(h: i64, k: i64, w: C64) -> Result<()> {
    if k < 1 || gcd(h, k) != 1 || !(w.re > 0.0) {
        return Err(MaassError::BadParams(format!("need k ≥ 1, gcd(h,k) = 1, Re w > 0; got h={h}, k={k}, w={w}")));
    }
    Ok(())
}

fn omega2(h: i64, k: i64) -> C64 {
    if k % 2 == 0 {
        omega_hk(h, k).powi(2) / omega_hk(h, k / 2)
    } else {
        omega_hk(h, k).powi(2) / omega_hk(2 * h, k)
    }
}

/// O_r at (h+iw)/k against its transformed form; |r| ≤ 1/(8k), and r > 0 for even k.
pub fn r_transform(h: i64, k: i64, w: C64, r: f64, cfg: &EvalConfig) -> Result<RTerms> {
    check_hk(h, k, w)?;
    if r.abs() > 1.0 / (8 * k) as f64 {
        return Err(MaassError::BadParams(format!("|r| = {} exceeds 1/(8k) = {}", r.abs(), 1.0 / (8 * k) as f64)));
    }
    if k % 2 == 0 && r <= 0.0 {
        return Err(MaassError::BadParams("for even k the law holds for r > 0 only".into()));
    }
    let hp = h_prime(h, k);
    let zq = (C64::new(h as f64, 0.0) + I * w) / k as f64;
    let z1 = (C64::new(hp as f64, 0.0) + I / w) / k as f64;
    let lhs = o_r(zq, C64::new(r, 0.0), cfg)?;
    let o2 = omega2(h, k);
    let kf = k as f64;
    let gauss = (2.0 * PI * kf * r * r / w).exp();
    let (hol, integral) = if k % 2 == 1 {
        let a = -2.0 * SQRT_2 * I / csqrt(w) * o2 * e_rat(hp, 16 * k) * gauss * u_r(z1 / 2.0, I * r / w, cfg)?;
        let mut s = C64::new(0.0, 0.0);
        for nu in 0..k {
            s += e_rat(hp * (-2 * nu * nu + nu), 2 * k) * (i_pm(w, r, 1, k, nu, cfg)? + i_pm(w, r, -1, k, nu, cfg)?);
        }
        (a, -2.0 * SQRT_2 * csqrt(w) * o2 / kf * s)
    } else {
        let a = -I * o2 / csqrt(w) * gauss * o_r(z1, r / (I * w), cfg)?;
        let mut s = C64::new(0.0, 0.0);
        for nu in 0..k {
            s += sign(nu) * e_rat(-hp * nu * nu, k) * i_pm(w, r, 1, k, nu, cfg)?;
        }
        (a, -4.0 * o2 * csqrt(w) / kf * s)
    };
    Ok(RTerms { lhs, holomorphic: hol, integral })
}

/// O(−1;q) at (h+iw)/k against 𝒰 at the image point plus the I^±-sum, k odd.
pub fn minus1_transform(h: i64, k: i64, w: C64, cfg: &EvalConfig) -> Result<RTerms> {
    check_hk(h, k, w)?;
    if k % 2 == 0 {
        return Err(MaassError::DoublePole(format!("k={k} is even: the ν = k/2 integral has a double pole")));
    }
    let hp = h_prime(h, k);
    let zq = (C64::new(h as f64, 0.0) + I * w) / k as f64;
    let z1 = (C64::new(hp as f64, 0.0) + I / w) / k as f64;
    let lhs = o_minus1(zq, cfg)?;
    let o2 = omega2(h, k);
    let hol = o2 / SQRT_2 * cpow(w, -1.5) * e_rat(hp, 16 * k) * ucal(z1 / 2.0, cfg)?;
    let mut s = C64::new(0.0, 0.0);
    for nu in 0..k {
        s += e_rat(hp * (-2 * nu * nu + nu), 2 * k) * (i_pm2(w, 1, k, nu, cfg)? + i_pm2(w, -1, k, nu, cfg)?);
    }
    Ok(RTerms { lhs, holomorphic: hol, integral: 2.0 * SQRT_2 * csqrt(w) * o2 / k as f64 * s })
}

pub fn o_minus1_eval(z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    o_minus1(z.require(cfg)?, cfg)
}

pub fn o_r_eval(z: UpperHalfPoint, r: f64, cfg: &EvalConfig) -> Result<C64> {
    o_r(z.require(cfg)?, C64::new(r, 0.0), cfg)
}

pub fn u_r_eval(z: UpperHalfPoint, r: f64, cfg: &EvalConfig) -> Result<C64> {
    u_r(z.require(cfg)?, C64::new(r, 0.0), cfg)
}

/// The weight 3/2 series 𝒰.
pub fn u_w32_eval(z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    ucal(z.require(cfg)?, cfg)
}

pub fn i_pm_eval(k: i64, nu: i64, r: f64, w: C64, pm: i8, cfg: &EvalConfig) -> Result<C64> {
    i_pm(w, r, pm, k, nu, cfg)
}

pub fn i_pm2_eval(k: i64, nu: i64, w: C64, pm: i8, cfg: &EvalConfig) -> Result<C64> {
    i_pm2(w, pm, k, nu, cfg)
}

/// −(I⁺ + I⁻) at k = 1, ν = 0, w = i/z.
pub fn i_tau_eval(z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    let w = I / z.require(cfg)?;
    Ok(-(i_pm2(w, 1, 1, 0, cfg)? + i_pm2(w, -1, 1, 0, cfg)?))
}

/// I(−1;z).
pub fn j_minus1_eval(z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    i_minus1(z.require(cfg)?, cfg)
}

pub fn m_minus1_eval(z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    m_minus1(z.require(cfg)?, cfg)
}
