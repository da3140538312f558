//! Dedekind's η and the multiplier ω_{h,k}.

use num_rational::Rational64;

use crate::util::{csqrt, e_rat, qpow, sawtooth, I};
use crate::{EvalConfig, MaassError, Result, UpperHalfPoint, C64};

/// q^{1/24}∏(1 − qⁿ), stopping once |qⁿ| < 1e−18. No domain check beyond
/// the term cap.
pub fn eta_product(z: C64, cfg: &EvalConfig) -> Result<C64> {
    if z.im <= 0.0 {
        return Err(MaassError::BadParams(format!("η needs Im z > 0, got {z}")));
    }
    let lq = 2.0 * std::f64::consts::PI * z.im;
    let terms = (41.5 / lq).ceil() as usize;
    if terms > cfg.series_trunc {
        return Err(MaassError::ConvergenceDomain(format!(
            "η product at {z} needs {terms} factors, cap is {}",
            cfg.series_trunc
        )));
    }
    let mut p = qpow(z, 1.0 / 24.0);
    for n in 1..=terms {
        p *= C64::new(1.0, 0.0) - qpow(z, n as f64);
    }
    Ok(p)
}

/// η(z) by the product, for Im z ≥ y_min.
pub fn eta_eval(z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    eta_product(z.require(cfg)?, cfg)
}

/// η(z) after moving z into the standard fundamental domain with
/// η(z+1) = e(1/24)η(z) and η(−1/z) = √(−iz)·η(z).
pub fn eta_reduced(z: C64, cfg: &EvalConfig) -> Result<C64> {
    if z.im <= 0.0 {
        return Err(MaassError::BadParams(format!("η needs Im z > 0, got {z}")));
    }
    let mut z = z;
    let mut fac = C64::new(1.0, 0.0);
    for _ in 0..500 {
        let n = z.re.round();
        if n != 0.0 {
            z -= n;
            fac *= e_rat(n as i64, 24);
        }
        if z.im >= 0.8 || z.norm() >= 1.0 {
            return Ok(fac * eta_product(z, cfg)?);
        }
        fac /= csqrt(-I * z);
        z = -z.inv();
    }
    Err(MaassError::ConvergenceDomain(format!("η reduction did not terminate at {z}")))
}

/// Σ_{μ mod k} ((μ/k))((hμ/k)) as an exact rational.
pub fn dedekind_exponent(h: i64, k: i64) -> Rational64 {
    assert!(k >= 1, "ω_{{h,k}} needs k ≥ 1");
    (0..k)
        .map(|mu| sawtooth(Rational64::new(mu, k)) * sawtooth(Rational64::new(h * mu, k)))
        .sum()
}

/// ω_{h,k} = exp(πi·Σ_{μ mod k} ((μ/k))((hμ/k))).
pub fn omega_hk(h: i64, k: i64) -> C64 {
    let s = dedekind_exponent(h, k);
    e_rat(*s.numer(), 2 * *s.denom())
}

/// The multiplier together with h′ in η((h+iw)/k) = e^{πi(h−h′)/(12k)}·ω_{h,k}⁻¹·w^{−1/2}·η((h′+i/w)/k).
pub fn eta_transform_rhs(h: i64, k: i64, hp: i64, w: C64, cfg: &EvalConfig) -> Result<C64> {
    let z1 = (C64::new(hp as f64, 0.0) + I / w) / k as f64;
    let phase = e_rat(h - hp, 24 * k);
    Ok(phase / omega_hk(h, k) / csqrt(w) * eta_reduced(z1, cfg)?)
}
