//! The rank generating function O(u;q) and the auxiliary Lambert series
//! U, V and their three-parameter versions.
//!
//! The unchecked functions here take a bare `C64` and accept any point in
//! the upper half-plane the term cap allows; the `*_eval` wrappers enforce
//! `y_min`.

use std::f64::consts::PI;

use crate::eta::eta_reduced;
use crate::util::{bilateral, cayley, check_ac, e_rat, inv_one_minus, qpow, sum_until_small};
use crate::{EvalConfig, MaassError, Result, UpperHalfPoint, C64};

const ONE: C64 = C64::new(1.0, 0.0);

/// P̄(q) = η(2z)/η(z)² = (−q)_∞/(q)_∞.
pub fn pbar(z: C64, cfg: &EvalConfig) -> Result<C64> {
    let e1 = eta_reduced(z, cfg)?;
    Ok(eta_reduced(2.0 * z, cfg)? / (e1 * e1))
}

/// O(u;q) = P̄(q)·(1 + Σ_{n≥1} 2(1−u)(1−u⁻¹)(−1)ⁿq^{n²+n}/((1−uqⁿ)(1−u⁻¹qⁿ))).
pub fn o_u(u: C64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    let coef = 2.0 * (ONE - u) * (ONE - u.inv());
    let mut s = ONE;
    if coef.norm() > 0.0 {
        s += sum_until_small(1, 1, cfg, "O(u;q)", |n| {
            let qn = qpow(z, n as f64);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let d = inv_one_minus(u * qn, "O(u;q)")? * inv_one_minus(qn / u, "O(u;q)")?;
            Ok(coef * sign * qpow(z, (n * n + n) as f64) * d)
        })?;
    }
    Ok(pbar(z, cfg)? * s)
}

/// O(a/c;q) = O(e(a/c);q) for any integer a.
pub fn o_ac(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    o_u(e_rat(a, c), z, cfg)
}

/// s(b,c) for 0 < b/c < 1.
pub fn s_of(b: i64, c: i64) -> i64 {
    if 4 * b <= c {
        0
    } else if 4 * b <= 3 * c {
        1
    } else {
        2
    }
}

/// t(b,c) for 0 < b/c < 1, b/c ≠ 1/2.
pub fn t_of(b: i64, c: i64) -> i64 {
    if 2 * b < c {
        1
    } else {
        3
    }
}

/// U(a/c;q) = sin(πa/c)·η(z/2)/η²(z)·Σ_{n∈ℤ}(1+qⁿ)q^{n²+n/2}/(1 − 2qⁿcos(2πa/c) + q²ⁿ).
pub fn u_ac(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    let cs = e_rat(a, c).re;
    // The summand is even in n.
    let tail = sum_until_small(1, 1, cfg, "U(a/c;q)", |n| {
        let qn = qpow(z, n as f64);
        let d = ONE - 2.0 * cs * qn + qn * qn;
        if d.norm() < 1e-13 {
            return Err(MaassError::PoleHit(format!("U(a/c;q) denominator at n={n}")));
        }
        Ok((ONE + qn) * qpow(z, (n * n) as f64 + n as f64 / 2.0) / d)
    })?;
    if (1.0 - cs).abs() < 1e-15 {
        return Err(MaassError::PoleHit("U(a/c;q) with a ≡ 0 mod c".into()));
    }
    let s = C64::new(1.0 / (1.0 - cs), 0.0) + 2.0 * tail;
    let e1 = eta_reduced(z, cfg)?;
    let sn = (PI * a as f64 / c as f64).sin();
    Ok(sn * eta_reduced(z / 2.0, cfg)? / (e1 * e1) * s)
}

/// V(a/c;q) = η(2z)/η²(z)·q^{1/4}·Σ_m (−1)^m q^{m²+m}(1+ζq^{m+1/2})/(1−ζq^{m+1/2}), ζ = e(−a/c).
pub fn v_ac(a: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    let zeta = e_rat(-a, c);
    let s = bilateral(cfg, "V(a/c;q)", |m| {
        let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let x = zeta * qpow(z, m as f64 + 0.5);
        Ok(sign * qpow(z, (m * m + m) as f64) * cayley(x, "V(a/c;q)")?)
    })?;
    Ok(pbar(z, cfg)? * qpow(z, 0.25) * s)
}

fn check_b(b: i64, c: i64) -> Result<()> {
    if !(0 < b && b < c) {
        return Err(MaassError::BadParams(format!("need 0 < b < c, got b={b}, c={c}")));
    }
    Ok(())
}

fn three_param(
    a: i64,
    b: i64,
    c: i64,
    z: C64,
    shift: i64,
    alternating: bool,
    with_numer: bool,
    cfg: &EvalConfig,
    what: &str,
) -> Result<C64> {
    // shift is 2s for U, V and t for O; the m-exponent is m(2m+1)/2 + m·shift/2.
    let bc = b as f64 / c as f64;
    let zeta = e_rat(-a, c);
    bilateral(cfg, what, |m| {
        let sign = if alternating && m.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        let ex = (m * (2 * m + 1)) as f64 / 2.0 + (m * shift) as f64 / 2.0;
        let x = zeta * qpow(z, m as f64 + bc);
        let f = if with_numer { cayley(x, what)? } else { inv_one_minus(x, what)? };
        Ok(sign * qpow(z, ex) * f)
    })
    .map(|s| s * e_rat(a * (4 * b - c - shift * c), 2 * c * c) * qpow(z, shift as f64 * bc / 2.0 + bc / 2.0 - bc * bc))
}

/// U(a,b,c;q) = η(z/2)/η²(z)·e^{πi(a/c)(4b/c−1−2s)}·q^{sb/c + b/(2c) − b²/c²}·Σ_m q^{m(2m+1)/2+ms}/(1−ζq^{m+b/c}),
/// s = s(b,c), ζ = e(−a/c).
pub fn u3(a: i64, b: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    check_b(b, c)?;
    let s = s_of(b, c);
    let e1 = eta_reduced(z, cfg)?;
    Ok(eta_reduced(z / 2.0, cfg)? / (e1 * e1) * three_param(a, b, c, z, 2 * s, false, false, cfg, "U(a,b,c;q)")?)
}

/// V(a,b,c;q): as U(a,b,c;q) with summand numerator 1 + ζq^{m+b/c}.
pub fn v3(a: i64, b: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    check_b(b, c)?;
    let s = s_of(b, c);
    let e1 = eta_reduced(z, cfg)?;
    Ok(eta_reduced(z / 2.0, cfg)? / (e1 * e1) * three_param(a, b, c, z, 2 * s, false, true, cfg, "V(a,b,c;q)")?)
}

/// O(a,b,c;q) = η(2z)/η²(z)·e^{πi(a/c)(4b/c−1−t)}·q^{tb/(2c)+b/(2c)−b²/c²}·Σ_m (−1)^m q^{m(2m+1)/2+mt/2}/(1−ζq^{m+b/c}),
/// t = t(b,c).
pub fn o3(a: i64, b: i64, c: i64, z: C64, cfg: &EvalConfig) -> Result<C64> {
    check_b(b, c)?;
    if 2 * b == c {
        return Err(MaassError::BadParams("t(b,c) is undefined at b/c = 1/2".into()));
    }
    let t = t_of(b, c);
    Ok(pbar(z, cfg)? * three_param(a, b, c, z, t, true, false, cfg, "O(a,b,c;q)")?)
}

pub fn o_eval(a: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    check_ac(a, c)?;
    o_ac(a, c, z.require(cfg)?, cfg)
}

pub fn u_eval(a: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    check_ac(a, c)?;
    u_ac(a, c, z.require(cfg)?, cfg)
}

pub fn v_eval(a: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    check_ac(a, c)?;
    v_ac(a, c, z.require(cfg)?, cfg)
}

pub fn u3_eval(a: i64, b: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    u3(a, b, c, z.require(cfg)?, cfg)
}

pub fn v3_eval(a: i64, b: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    v3(a, b, c, z.require(cfg)?, cfg)
}

pub fn o3_eval(a: i64, b: i64, c: i64, z: UpperHalfPoint, cfg: &EvalConfig) -> Result<C64> {
    o3(a, b, c, z.require(cfg)?, cfg)
}
