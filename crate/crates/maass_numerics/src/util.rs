use std::f64::consts::PI;

use crate::{EvalConfig, MaassError, Result, C64};

pub(crate) const I: C64 = C64::new(0.0, 1.0);

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// e(num/den) = exp(2πi·num/den), with the angle reduced exactly before
/// any floating-point work.
pub fn e_rat(num: i64, den: i64) -> C64 {
    assert!(den != 0, "e_rat with zero denominator");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let mut r = num.rem_euclid(den);
    if 2 * r > den {
        r -= den;
    }
    match (4 * r).checked_rem(den) {
        Some(0) => match 4 * r / den {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            -1 => C64::new(0.0, -1.0),
            _ => C64::new(-1.0, 0.0),
        },
        _ => C64::from_polar(1.0, 2.0 * PI * r as f64 / den as f64),
    }
}

/// exp(2πi·z·a).
pub(crate) fn qpow(z: C64, a: f64) -> C64 {
    (2.0 * PI * I * z * a).exp()
}

pub(crate) fn csqrt(z: C64) -> C64 {
    z.sqrt()
}

/// Principal z^p.
pub(crate) fn cpow(z: C64, p: f64) -> C64 {
    if z == C64::new(1.0, 0.0) {
        return z;
    }
    (z.ln() * p).exp()
}

/// Sum f(start), f(start+step), … until the terms are negligible against
/// the largest partial sum or term seen. At most `cfg.series_trunc` terms.
pub(crate) fn sum_until_small<F>(start: i64, step: i64, cfg: &EvalConfig, what: &str, mut f: F) -> Result<C64>
where
    F: FnMut(i64) -> Result<C64>,
{
    let mut s = C64::new(0.0, 0.0);
    let mut scale: f64 = 0.0;
    let mut quiet = 0;
    for j in 0..cfg.series_trunc {
        let t = f(start + step * j as i64)?;
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(MaassError::ConvergenceDomain(format!("{what}: non-finite term at index {}", start + step * j as i64)));
        }
        s += t;
        scale = scale.max(t.norm()).max(s.norm());
        if j >= 2 && t.norm() <= 1e-18 * scale {
            quiet += 1;
            if quiet >= 2 {
                return Ok(s);
            }
        } else {
            quiet = 0;
        }
    }
    Err(MaassError::ConvergenceDomain(format!("{what}: not converged within {} terms", cfg.series_trunc)))
}

/// Σ_{m∈ℤ} f(m), summed outward in both directions.
pub(crate) fn bilateral<F>(cfg: &EvalConfig, what: &str, mut f: F) -> Result<C64>
where
    F: FnMut(i64) -> Result<C64>,
{
    let up = sum_until_small(0, 1, cfg, what, &mut f)?;
    let down = sum_until_small(-1, -1, cfg, what, &mut f)?;
    Ok(up + down)
}

/// 1/(1 − x) without overflow when |x| is large.
pub(crate) fn inv_one_minus(x: C64, what: &str) -> Result<C64> {
    let d = C64::new(1.0, 0.0) - x;
    if d.norm() < 1e-13 * (1.0 + x.norm()) {
        return Err(MaassError::PoleHit(format!("{what}: 1 − x vanishes at x = {x}")));
    }
    if x.norm() > 1.0 {
        let xi = x.inv();
        Ok(-xi / (C64::new(1.0, 0.0) - xi))
    } else {
        Ok(d.inv())
    }
}

/// (1 + x)/(1 − x), stable for large |x|.
pub(crate) fn cayley(x: C64, what: &str) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    if (one - x).norm() < 1e-13 * (1.0 + x.norm()) {
        return Err(MaassError::PoleHit(format!("{what}: 1 − x vanishes at x = {x}")));
    }
    if x.norm() > 1.0 {
        let xi = x.inv();
        Ok(-(one + xi) / (one - xi))
    } else {
        Ok((one + x) / (one - x))
    }
}

/// Sawtooth ((x)) on an exact rational.
pub(crate) fn sawtooth(x: num_rational::Rational64) -> num_rational::Rational64 {
    use num_traits::Zero;
    let f = x - x.floor();
    if f.is_zero() {
        f
    } else {
        f - num_rational::Rational64::new(1, 2)
    }
}

pub(crate) fn check_ac(a: i64, c: i64) -> Result<()> {
    if !(0 < a && a < c) || gcd(a, c) != 1 {
        return Err(MaassError::BadParams(format!("need 0 < a < c with gcd(a,c) = 1, got a={a}, c={c}")));
    }
    Ok(())
}

pub(crate) fn check_c_not_two(c: i64) -> Result<()> {
    if c == 2 {
        return Err(MaassError::BadParams("c = 2 is excluded here; use the u = −1 family".into()));
    }
    Ok(())
}
