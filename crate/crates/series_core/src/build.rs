use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::frac::{Exp, FracSeries};
use crate::SeriesError;

/// Dense `∏_{n≥1} (1 − q^{step·n})` as integer coefficients of `q^0..q^{len-1}`.
fn euler_product(step: i64, len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len];
    if len == 0 {
        return p;
    }
    p[0] = BigInt::one();
    let mut k = step;
    while (k as usize) < len {
        for e in (k as usize..len).rev() {
            let v = p[e - k as usize].clone();
            if !v.is_zero() {
                p[e] -= v;
            }
        }
        k += step;
    }
    p
}

/// η(mz) = q^{m/24} ∏_{n≥1}(1 − q^{mn}), known at least below `q^trunc`.
pub fn eta_expansion(m: i64, trunc: Exp) -> Result<FracSeries, SeriesError> {
    if m < 1 {
        return Err(SeriesError::BadParams(format!("eta scale must be positive, got {m}")));
    }
    let lead = Exp::new(m, 24);
    let len = (trunc - lead).ceil().to_integer().max(0);
    let p = euler_product(m, len as usize);
    let d = *lead.denom();
    let off = *lead.numer();
    Ok(FracSeries::from_terms(
        d,
        off + len * d,
        p.into_iter().enumerate().map(|(i, c)| (off + i as i64 * d, c)),
    ))
}

/// `(sign·q^j; q)_n = ∏_{r=0}^{n-1} (1 − sign·q^{j+r})`; `n = None` is the infinite product.
pub fn pochhammer_expansion(j: Exp, sign: i64, n: Option<u64>, trunc: Exp) -> Result<FracSeries, SeriesError> {
    if sign != 1 && sign != -1 {
        return Err(SeriesError::BadParams(format!("sign must be ±1, got {sign}")));
    }
    let factors = move |r: u64| j + Exp::from_integer(r as i64);
    let count = |r: u64| n.map_or(true, |n| r < n);
    // negative exponents lower the valuation; widen every factor by that much
    let mut low = Exp::zero();
    let mut r = 0u64;
    while count(r) && factors(r) < Exp::zero() {
        low += factors(r);
        r += 1;
    }
    let wide = trunc - low;
    let mut acc = FracSeries::from_terms_rational(wide, vec![(Exp::zero(), BigInt::one())]);
    let mut r = 0u64;
    while count(r) {
        let e = factors(r);
        if e >= wide && e > Exp::zero() {
            break;
        }
        let f = FracSeries::from_terms_rational(
            wide - low.min(e),
            vec![(Exp::zero(), BigInt::one()), (e, BigInt::from(-sign))],
        );
        acc = acc.mul_series(&f);
        r += 1;
    }
    Ok(acc.truncate(trunc))
}

/// B(x) = x² − x + 1/6.
pub fn bernoulli2(x: Exp) -> Exp {
    x * x - x + Exp::new(1, 6)
}

/// Generalized eta E_{g,h}(scale·z) for `h ≡ 0 mod N`:
/// `q^{scale·B(g/N)/2} ∏_{m≥1} (1 − q^{scale(m−1+g/N)})(1 − q^{scale(m−g/N)})`.
pub fn generalized_eta(n_mod: i64, g: i64, h: i64, scale: i64, trunc: Exp) -> Result<FracSeries, SeriesError> {
    if n_mod < 1 || scale < 1 {
        return Err(SeriesError::BadParams(format!("need N ≥ 1 and scale ≥ 1, got N={n_mod}, scale={scale}")));
    }
    if g.mod_floor(&n_mod) == 0 && h.mod_floor(&n_mod) == 0 {
        return Err(SeriesError::BadParams(format!("(g,h)=({g},{h}) both ≡ 0 mod {n_mod}")));
    }
    if h.mod_floor(&n_mod) != 0 {
        return Err(SeriesError::Unsupported(format!(
            "h={h} ≢ 0 mod {n_mod}: coefficients would involve ζ_N^h"
        )));
    }
    let x = Exp::new(g, n_mod);
    let s = Exp::from_integer(scale);
    let lead = s * bernoulli2(x) / Exp::from_integer(2);
    let mut exps = Vec::new();
    let mut low = Exp::zero();
    let mut m = 1i64;
    loop {
        let e1 = s * (Exp::from_integer(m - 1) + x);
        let e2 = s * (Exp::from_integer(m) - x);
        let lo = e1.min(e2);
        if lo > Exp::zero() && lo >= trunc - lead - low {
            break;
        }
        for e in [e1, e2] {
            if e == Exp::zero() {
                return Err(SeriesError::BadParams("a product factor vanishes identically".into()));
            }
            if e < Exp::zero() {
                low += e;
            }
            exps.push(e);
        }
        m += 1;
    }
    let wide = trunc - lead - low;
    let mut acc = FracSeries::from_terms_rational(wide, vec![(Exp::zero(), BigInt::one())]);
    for e in exps {
        let f = FracSeries::from_terms_rational(
            wide - low.min(e),
            vec![(Exp::zero(), BigInt::one()), (e, BigInt::from(-1))],
        );
        acc = acc.mul_series(&f);
    }
    Ok(acc.shift(lead).truncate(trunc))
}
