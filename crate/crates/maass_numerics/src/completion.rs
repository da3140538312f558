//! The non-holomorphic completion J(a/c;z), the completed form M = O − J,
//! and the lemmas relating Mordell integrals to theta integrals.
//!
//! Normalization: J(a/c;z) = (tan(πa/c)/(4c))·∫₀^∞ (−iτ)^{−3/2}Θ_{a,c}(−1/τ)/√(2y+t) dt
//! along τ = −z̄ + it, where 2y + t = −i(τ+z). This is the version for which
//! M is modular.

use std::f64::consts::{PI, SQRT_2};

use num_traits::ToPrimitive;
use overpartition_ranks::{rank_table_lambert, RankTable};
use statrs::function::erf::erfc;

use crate::lambert::o_ac;
use crate::mordell::mordell_integral;
use crate::quad::{integrate_pts, integrate_to_inf};
use crate::theta::{theta_ac_eval, theta_ac_inv};
use crate::util::{check_ac, check_c_not_two, csqrt, e_rat, qpow, sum_until_small, I};
use crate::{EvalConfig, MaassError, Result, UpperHalfPoint, C64};

fn tan_ac(a: i64, c: i64) -> f64 {
    (PI * a as f64 / c as f64).tan()
}

/// I_z = 4√2·sin²(πa/c)/(−iz)·I_{a,c,1,0}(i/z).
pub fn i_z(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    let s2 = (PI * a as f64 / c as f64).sin().powi(2);
    Ok(4.0 * SQRT_2 * s2 / (-I * z) * mordell_integral(a, c, 1, 0, I / z, cfg)?)
}

/// Θ_{a,c}(iu), through the inversion for u < 1.
fn theta_iu(a: i64, c: i64, u: f64, cfg: &EvalConfig) -> Result<C64> {
    if u < 1.0 {
        Ok(theta_ac_inv(a, c, C64::new(0.0, 1.0 / u), cfg)? * u.powf(-1.5))
    } else {
        theta_ac_eval(a, c, C64::new(0.0, u), cfg)
    }
}

/// Both sides of I_z = (tan(πa/c)/(4c))·∫₀^∞ Θ_{a,c}(iu)/√(−i(iu+z)) du.
pub fn theta_integral_lemma(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<(C64, C64)> {
    check_ac(a, c)?;
    check_c_not_two(c)?;
    let lhs = i_z(a, c, z, cfg)?;
    let f = |u: f64| Ok(theta_iu(a, c, u, cfg)? / csqrt(-I * (I * u + z)));
    let tol = cfg.quad_tol / 2.0;
    let near = integrate_pts(f, &[0.0, 0.05, 0.25, 1.0], tol)?;
    let far = integrate_to_inf(f, 1.0, 1.0, tol)?;
    Ok((lhs, tan_ac(a, c) / (4 * c) as f64 * (near + far)))
}

fn j_integral(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    check_ac(a, c)?;
    check_c_not_two(c)?;
    let y = z.im;
    let base = -z.conj();
    let f = |t: f64| Ok(theta_ac_inv(a, c, base + I * t, cfg)? / (2.0 * y + t).sqrt());
    let scale = 0.25_f64.min(y.max(1e-3));
    let v = integrate_to_inf(f, 0.0, scale, cfg.quad_tol)?;
    Ok(tan_ac(a, c) / (4 * c) as f64 * v)
}

/// J(a/c;z) by quadrature, any Im z > 0 the term caps allow.
pub fn j_raw(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    if z.im <= 0.0 {
        return Err(MaassError::BadParams(format!("J needs Im z > 0, got {z}")));
    }
    j_integral(a, c, z, cfg)
}

/// J(a/c;z), the period integral.
pub fn j_eval(a: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    j_raw(a, c, z.require(cfg)?, cfg)
}

/// Γ(1/2;x) = √π·erfc(√x).
pub fn gamma_half(x: f64) -> f64 {
    PI.sqrt() * erfc(x.sqrt())
}

/// J(a/c;z) = −(i·tan(πa/c)/√π)·Σ_{n≥1} (−1)ⁿ(e(2na/c) − e(−2na/c))·Γ(1/2;4πn²y)·q^{−n²}.
pub fn j_series(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    check_ac(a, c)?;
    check_c_not_two(c)?;
    let y = z.im;
    let s = sum_until_small(1, 1, cfg, "J series", |n| {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let g = gamma_half(4.0 * PI * (n * n) as f64 * y);
        if g == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        Ok(sign * (e_rat(2 * n * a, c) - e_rat(-2 * n * a, c)) * g * qpow(z, -(n * n) as f64))
    })?;
    Ok(-I * tan_ac(a, c) / PI.sqrt() * s)
}

/// M(a/c;z) = O(a/c;q) − J(a/c;z), unchecked.
pub fn m_raw(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    Ok(o_ac(a, c, z, cfg)? - j_raw(a, c, z, cfg)?)
}

/// M with J taken from its incomplete-Gamma expansion; usable much closer
/// to the real axis than the quadrature.
pub fn m_series(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    Ok(o_ac(a, c, z, cfg)? - j_series(a, c, z, cfg)?)
}

pub fn m_eval(a: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    check_ac(a, c)?;
    m_raw(a, c, z.require(cfg)?, cfg)
}

/// Both sides of J(−1/z)/√(−iz) = I_z + (i·tan(πa/c)/(4c))·∫_{−z̄}^{i∞} Θ_{a,c}(τ)/√(−i(τ+z)) dτ.
pub fn j_lemma(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<(C64, C64)> {
    let lhs = j_raw(a, c, -z.inv(), cfg)? / csqrt(-I * z);
    let y = z.im;
    let base = -z.conj();
    let f = |t: f64| Ok(theta_ac_eval(a, c, base + I * t, cfg)? / (2.0 * y + t).sqrt());
    let v = integrate_to_inf(f, 0.0, 1.0, cfg.quad_tol / 2.0)?;
    // dτ = i·dt
    let rhs = i_z(a, c, z, cfg)? + I * tan_ac(a, c) / (4 * c) as f64 * I * v;
    Ok((lhs, rhs))
}

/// Smallest table depth N for which the tail Σ_{n>N} p̄(n)|q|ⁿ is negligible.
pub fn fourier_depth(y: f64) -> usize {
    let mut n = 1usize;
    while 2.0 * PI * y * n as f64 - PI * (n as f64).sqrt() < 44.0 {
        n += 1;
    }
    n
}

/// |M(a/c;z) − (Σ_{n,m} N̄(m,n)ζ^{am}qⁿ + (i·tan(πa/c)/√π)·Σ_{n≠0} sgn(n)(−1)ⁿ e(2na/c)Γ(1/2;4πn²y)q^{−n²})|, c odd.
pub fn fourier_check_with_table(a: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig, table: &RankTable) -> Result<f64> {
    check_ac(a, c)?;
    if c % 2 == 0 {
        return Err(MaassError::BadParams(format!("the expansion is stated for odd c, got {c}")));
    }
    let zc = z.require(cfg)?;
    let depth = fourier_depth(zc.im);
    if table.max_n() < depth {
        return Err(MaassError::BadParams(format!("rank table depth {} below the needed {depth}", table.max_n())));
    }
    let mut holo = C64::new(0.0, 0.0);
    for n in 0..=depth {
        let coeff: C64 = table.row(n).map(|(m, v)| e_rat(a * m, c) * v.to_f64().unwrap_or(f64::NAN)).sum();
        holo += coeff * qpow(zc, n as f64);
    }
    let y = zc.im;
    let mut nonholo = C64::new(0.0, 0.0);
    for n in 1..=cfg.series_trunc as i64 {
        let g = gamma_half(4.0 * PI * (n * n) as f64 * y);
        if g == 0.0 {
            break;
        }
        for m in [n, -n] {
            let sgn = m.signum() as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            nonholo += sgn * sign * e_rat(2 * m * a, c) * g * qpow(zc, -(m * m) as f64);
        }
    }
    let rhs = holo + I * tan_ac(a, c) / PI.sqrt() * nonholo;
    Ok((m_raw(a, c, zc, cfg)? - rhs).norm())
}

pub fn fourier_check(a: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<f64> {
    let table = rank_table_lambert(fourier_depth(z.y()));
    fourier_check_with_table(a, c, z, cfg, &table)
}
