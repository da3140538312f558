use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::frac::FracSeries;
use crate::SeriesError;

/// Laurent polynomial in `u` with integer coefficients; zeros are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn new() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(c: BigInt, m: i64) -> Self {
        let mut p = LaurentPoly::new();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.coeffs.remove(&m);
                }
            }
            None => {
                self.coeffs.insert(m, c);
            }
        }
    }

    /// `self += c · u^shift · other`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &BigInt, shift: i64) {
        if c.is_zero() {
            return;
        }
        for (&m, v) in &other.coeffs {
            self.add_term(m + shift, v * c);
        }
    }

    pub fn coeff(&self, m: i64) -> BigInt {
        self.coeffs.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    /// Smallest and largest u-exponents present.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.coeffs.keys().next()?;
        let hi = *self.coeffs.keys().next_back()?;
        Some((lo, hi))
    }

    /// Value at `u = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Substitute `u -> 1/u`.
    pub fn reflect(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&m, c)| (-m, c.clone())).collect() }
    }
}

/// Truncated series in integer powers of `q` whose coefficients are Laurent
/// polynomials in `u`. Known below `q^trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    trunc: i64,
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl BiSeries {
    pub fn zero(trunc: i64) -> Self {
        BiSeries { trunc, coeffs: BTreeMap::new() }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(BigInt::one(), 0, 0, trunc)
    }

    /// `c·u^m·q^n`.
    pub fn monomial(c: BigInt, m: i64, n: i64, trunc: i64) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(n, m, c);
        s
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    fn add_term(&mut self, n: i64, m: i64, c: BigInt) {
        if n >= self.trunc || c.is_zero() {
            return;
        }
        let p = self.coeffs.entry(n).or_default();
        p.add_term(m, c);
        if p.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    fn add_poly(&mut self, n: i64, p: &LaurentPoly, c: &BigInt, shift: i64) {
        if n >= self.trunc || p.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(n).or_default();
        slot.add_scaled(p, c, shift);
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    /// Coefficient polynomial of `q^n`.
    pub fn coeff(&self, n: i64) -> LaurentPoly {
        assert!(n < self.trunc, "coefficient of q^{n} is past the truncation point");
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.coeffs.iter().map(|(&n, p)| (n, p))
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let mut out = BiSeries::zero(self.trunc.min(other.trunc));
        let one = BigInt::one();
        for (&n, p) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_poly(n, p, &one, 0);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> BiSeries {
        let mut out = BiSeries::zero(self.trunc);
        for (&n, p) in &self.coeffs {
            out.add_poly(n, p, c, 0);
        }
        out
    }

    /// Multiply by `c·u^m·q^n`; the truncation point moves by `n`.
    pub fn mul_monomial(&self, c: &BigInt, m: i64, n: i64) -> BiSeries {
        let mut out = BiSeries::zero(self.trunc + n);
        for (&k, p) in &self.coeffs {
            out.add_poly(k + n, p, c, m);
        }
        out
    }

    /// Multiply in place by `(1 + c·u^m·q^n)`, `n ≥ 1`.
    pub fn mul_binomial(&mut self, c: i64, m: i64, n: i64) {
        assert!(n >= 1);
        let c = BigInt::from(c);
        let keys: Vec<i64> = self.coeffs.keys().rev().copied().collect();
        for k in keys {
            if k + n < self.trunc {
                let p = self.coeffs[&k].clone();
                self.add_poly(k + n, &p, &c, m);
            }
        }
    }

    /// Divide in place by `(1 − c·u^m·q^n)`, `n ≥ 1`, via the geometric series.
    pub fn div_binomial(&mut self, c: i64, m: i64, n: i64) {
        assert!(n >= 1);
        let c = BigInt::from(c);
        let start = match self.coeffs.keys().next() {
            Some(&k) => k,
            None => return,
        };
        let mut k = start;
        while k + n < self.trunc {
            if let Some(p) = self.coeffs.get(&k).cloned() {
                self.add_poly(k + n, &p, &c, m);
            }
            k += 1;
        }
    }

    /// Product with a u-free integer-exponent series.
    pub fn mul_series(&self, s: &FracSeries<BigInt>) -> Result<BiSeries, SeriesError> {
        let s = s.normalize();
        if s.denom() != 1 && !s.is_zero() {
            return Err(SeriesError::LatticeMismatch(format!("denominator {}", s.denom())));
        }
        let (st, sv) = if s.denom() == 1 {
            (s.trunc(), s.terms().next().map(|(e, _)| e).unwrap_or(s.trunc()))
        } else {
            let t = s.trunc() / s.denom();
            (t, t)
        };
        let my_v = self.coeffs.keys().next().copied().unwrap_or(self.trunc);
        let t = (self.trunc + sv).min(st + my_v);
        let mut out = BiSeries::zero(t);
        for (&k, p) in &self.coeffs {
            for (e, c) in s.terms() {
                if k + e >= t {
                    break;
                }
                out.add_poly(k + e, p, c, 0);
            }
        }
        Ok(out)
    }

    /// Specialize `u = 1`.
    pub fn at_u_one(&self) -> FracSeries<BigInt> {
        FracSeries::from_terms(1, self.trunc, self.coeffs.iter().map(|(&n, p)| (n, p.at_one())))
    }

    /// Substitute `u -> 1/u`.
    pub fn reflect_u(&self) -> BiSeries {
        BiSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(&n, p)| (n, p.reflect())).collect(),
        }
    }

    /// For each residue `r mod t`, the series `Σ_n (Σ_{m ≡ r} c_{m,n}) qⁿ`.
    pub fn residue_classes(&self, t: i64) -> Vec<FracSeries<BigInt>> {
        assert!(t >= 1);
        let mut out: Vec<Vec<(i64, BigInt)>> = vec![Vec::new(); t as usize];
        for (&n, p) in &self.coeffs {
            let mut acc = vec![BigInt::zero(); t as usize];
            for (m, c) in p.terms() {
                acc[m.rem_euclid(t) as usize] += c;
            }
            for (r, c) in acc.into_iter().enumerate() {
                out[r].push((n, c));
            }
        }
        out.into_iter().map(|v| FracSeries::from_terms(1, self.trunc, v)).collect()
    }
}
