use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;

use crate::coeff::Coeff;
use crate::SeriesError;

/// Exponent as an exact rational.
pub type Exp = Ratio<i64>;

/// A truncated series `Σ c_e q^{e/denom}` with every exponent `e/denom < trunc/denom`.
///
/// Exponents are stored as numerators over `denom`. Zero coefficients are
/// never stored. Equality ignores the lattice: two series are equal when they
/// have the same truncation point and the same terms.
#[derive(Clone, Debug)]
pub struct FracSeries<C = BigInt> {
    denom: i64,
    trunc: i64,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> PartialEq for FracSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.trunc_exp() == other.trunc_exp()
            && self.coeffs.len() == other.coeffs.len()
            && self.terms_rational().zip(other.terms_rational()).all(|(a, b)| a == b)
    }
}

/// Valuation used for truncation bookkeeping; a zero series counts as `trunc`.
fn val_num<C>(s: &FracSeries<C>) -> i64 {
    s.coeffs.keys().next().copied().unwrap_or(s.trunc)
}

/// Smallest `n` with `n/d >= x`.
fn ceil_on_lattice(x: Exp, d: i64) -> i64 {
    let v = x * Exp::from_integer(d);
    v.ceil().to_integer()
}

impl<C: Coeff> FracSeries<C> {
    /// The zero series on lattice `(1/denom)Z`, known below `trunc/denom`.
    pub fn zero(denom: i64, trunc: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        FracSeries { denom, trunc, coeffs: BTreeMap::new() }
    }

    /// The constant `1` with integer exponents, known below `q^trunc`.
    pub fn one(trunc: i64) -> Self {
        Self::monomial(C::one(), Exp::from_integer(0), Exp::from_integer(trunc))
    }

    /// `c·q^e`, known below `q^trunc`.
    pub fn monomial(c: C, e: Exp, trunc: Exp) -> Self {
        Self::from_terms_rational(trunc, vec![(e, c)])
    }

    /// Build from numerator terms on a fixed lattice. Terms at or past `trunc`
    /// are dropped and repeated exponents are summed.
    pub fn from_terms<I>(denom: i64, trunc: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut s = Self::zero(denom, trunc);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Build from rational exponents; the lattice is the lcm of all denominators.
    pub fn from_terms_rational(trunc: Exp, terms: Vec<(Exp, C)>) -> Self {
        let mut d = *trunc.denom();
        for (e, _) in &terms {
            d = d.lcm(e.denom());
        }
        let t = ceil_on_lattice(trunc, d);
        let mut s = Self::zero(d, t);
        for (e, c) in terms {
            let n = (e * Exp::from_integer(d)).to_integer();
            s.add_term(n, c);
        }
        s
    }

    /// Dense integer-exponent series `Σ coeffs[i] q^{i+offset}`, known below
    /// `q^{offset+len}`.
    pub fn from_dense(offset: i64, coeffs: Vec<C>) -> Self {
        let trunc = offset + coeffs.len() as i64;
        Self::from_terms(1, trunc, coeffs.into_iter().enumerate().map(|(i, c)| (i as i64 + offset, c)))
    }

    fn add_term(&mut self, e: i64, c: C) {
        if e >= self.trunc || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.coeffs.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Truncation numerator over `denom`.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Truncation point as a rational exponent.
    pub fn trunc_exp(&self) -> Exp {
        Exp::new(self.trunc, self.denom)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<Exp> {
        self.coeffs.keys().next().map(|&e| Exp::new(e, self.denom))
    }

    /// Coefficient of `q^e`; zero for exponents off the lattice.
    ///
    /// Panics if `e` is at or past the truncation point, since that
    /// coefficient is unknown.
    pub fn coeff(&self, e: Exp) -> C {
        assert!(e < self.trunc_exp(), "coefficient of q^{e} is past the truncation point");
        let scaled = e * Exp::from_integer(self.denom);
        if !scaled.is_integer() {
            return C::zero();
        }
        self.coeffs.get(&scaled.to_integer()).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the integer power `q^n`.
    pub fn coeff_int(&self, n: i64) -> C {
        self.coeff(Exp::from_integer(n))
    }

    /// Stored `(numerator, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Stored terms with rational exponents.
    pub fn terms_rational(&self) -> impl Iterator<Item = (Exp, &C)> {
        let d = self.denom;
        self.coeffs.iter().map(move |(&e, c)| (Exp::new(e, d), c))
    }

    /// Same series on the finer lattice `(1/new_denom)Z`.
    pub fn rescale(&self, new_denom: i64) -> Self {
        assert!(new_denom % self.denom == 0, "new lattice must refine the old one");
        let f = new_denom / self.denom;
        FracSeries {
            denom: new_denom,
            trunc: self.trunc * f,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * f, c.clone())).collect(),
        }
    }

    /// Coarsest lattice carrying every stored exponent.
    ///
    /// The truncation is rounded down so no unknown coefficient is claimed.
    pub fn normalize(&self) -> Self {
        let mut g = self.denom;
        for &e in self.coeffs.keys() {
            g = g.gcd(&e);
            if g == 1 {
                return self.clone();
            }
        }
        if g == 1 {
            return self.clone();
        }
        FracSeries {
            denom: self.denom / g,
            trunc: Integer::div_floor(&self.trunc, &g),
            coeffs: self.coeffs.iter().map(|(&e, c)| (e / g, c.clone())).collect(),
        }
    }

    /// True when every stored exponent is an integer.
    pub fn has_integer_exponents(&self) -> bool {
        self.normalize().denom == 1
    }

    /// Lower the truncation point to `t` (never raises it).
    pub fn truncate(&self, t: Exp) -> Self {
        let d = self.denom.lcm(t.denom());
        let s = self.rescale(d);
        let tn = ceil_on_lattice(t, d).min(s.trunc);
        FracSeries {
            denom: d,
            trunc: tn,
            coeffs: s.coeffs.into_iter().filter(|(e, _)| *e < tn).collect(),
        }
        .normalize_keep(self.denom)
    }

    /// Return to lattice `d0` if that loses nothing.
    fn normalize_keep(self, d0: i64) -> Self {
        if self.denom == d0 {
            return self;
        }
        let f = self.denom / d0;
        if self.denom % d0 == 0 && self.trunc % f == 0 && self.coeffs.keys().all(|e| e % f == 0) {
            FracSeries {
                denom: d0,
                trunc: self.trunc / f,
                coeffs: self.coeffs.into_iter().map(|(e, c)| (e / f, c)).collect(),
            }
        } else {
            self
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let d = a.denom.lcm(&b.denom);
        (a.rescale(d), b.rescale(d))
    }

    /// Multiply by `q^e`; the truncation point moves with the series.
    pub fn shift(&self, e: Exp) -> Self {
        let d = self.denom.lcm(e.denom());
        let s = self.rescale(d);
        let k = (e * Exp::from_integer(d)).to_integer();
        FracSeries {
            denom: d,
            trunc: s.trunc + k,
            coeffs: s.coeffs.into_iter().map(|(x, c)| (x + k, c)).collect(),
        }
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.denom, self.trunc);
        }
        FracSeries {
            denom: self.denom,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v.clone() * c.clone())).collect(),
        }
    }

    pub fn add_series(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let t = a.trunc.min(b.trunc);
        let mut out = Self::zero(a.denom, t);
        for (e, c) in a.coeffs.into_iter().chain(b.coeffs) {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub_series(&self, other: &Self) -> Self {
        self.add_series(&other.neg_series())
    }

    pub fn neg_series(&self) -> Self {
        FracSeries {
            denom: self.denom,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    /// Product, known below `min(Ta + v(b), Tb + v(a))`.
    pub fn mul_series(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let t = (a.trunc + val_num(&b)).min(b.trunc + val_num(&a));
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (&ea, ca) in &a.coeffs {
            if ea + val_num(&b) >= t {
                break;
            }
            for (&eb, cb) in b.coeffs.range(..t - ea) {
                let p = ca.clone() * cb.clone();
                let e = ea + eb;
                match acc.get_mut(&e) {
                    Some(v) => *v = v.clone() + p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        FracSeries { denom: a.denom, trunc: t, coeffs: acc }
    }

    /// Multiplicative inverse, known below `Ta − 2·v(a)`.
    ///
    /// Needs a leading coefficient that is a unit of `C`; over `BigInt` that
    /// means `±1` (promote with [`FracSeries::to_rational`] otherwise).
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let (&v, lead) = self.coeffs.iter().next().ok_or(SeriesError::ZeroSeries)?;
        let inv = lead.unit_inverse().ok_or_else(|| SeriesError::NonUnitLeading(lead.to_string()))?;
        // a = q^v (lead + Σ_{i>0} a_i q^i), i over the lattice
        let n = (self.trunc - v).max(0) as usize;
        let tail: Vec<(usize, C)> = self
            .coeffs
            .iter()
            .skip(1)
            .map(|(&e, c)| ((e - v) as usize, c.clone()))
            .filter(|(i, _)| *i < n)
            .collect();
        let mut b: Vec<C> = vec![C::zero(); n];
        if n > 0 {
            b[0] = inv.clone();
        }
        for k in 1..n {
            let mut s = C::zero();
            for (i, ai) in &tail {
                if *i > k {
                    break;
                }
                if !b[k - i].is_zero() {
                    s = s + ai.clone() * b[k - i].clone();
                }
            }
            b[k] = -(s * inv.clone());
        }
        Ok(Self::from_terms(
            self.denom,
            self.trunc - 2 * v,
            b.into_iter().enumerate().map(|(k, c)| (k as i64 - v, c)),
        ))
    }

    /// `self^k` for any integer k (negative powers go through [`Self::invert`]).
    pub fn pow(&self, k: i64) -> Result<Self, SeriesError> {
        if k < 0 {
            return self.invert()?.pow(-k);
        }
        let mut result = Self::one_like(self);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_series(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_series(&base);
            }
        }
        Ok(result)
    }

    /// The constant 1 with enough known terms not to cut `s` when multiplied.
    fn one_like(s: &Self) -> Self {
        let t = (s.trunc - val_num(s)).max(1).max(s.trunc);
        Self::from_terms(s.denom, t, [(0, C::one())])
    }

    /// Keep only the terms whose rational exponent satisfies `keep`.
    pub fn filter_exponents<F: Fn(Exp) -> bool>(&self, keep: F) -> Self {
        let d = self.denom;
        FracSeries {
            denom: d,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| keep(Exp::new(e, d)))
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> FracSeries<D> {
        FracSeries::from_terms(self.denom, self.trunc, self.coeffs.iter().map(|(&e, c)| (e, f(c))))
    }
}

impl FracSeries<BigInt> {
    /// Promote integer coefficients to rationals.
    pub fn to_rational(&self) -> FracSeries<BigRational> {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Integer coefficients `a_0..a_{n-1}` of an integer-exponent series.
    ///
    /// Errors if the series has fractional exponents or is not known that far.
    pub fn dense_integer(&self, n: usize) -> Result<Vec<BigInt>, SeriesError> {
        let s = self.normalize();
        if s.denom != 1 && !s.coeffs.is_empty() {
            return Err(SeriesError::LatticeMismatch(format!("denominator {}", s.denom)));
        }
        let s = if s.denom == 1 { s } else { FracSeries { denom: 1, trunc: s.trunc / s.denom, coeffs: s.coeffs } };
        if (n as i64) > s.trunc {
            return Err(SeriesError::Truncated { wanted: n as i64, known: s.trunc });
        }
        Ok((0..n as i64).map(|i| s.coeffs.get(&i).cloned().unwrap_or_else(BigInt::zero)).collect())
    }
}

impl<'a, C: Coeff> Add for &'a FracSeries<C> {
    type Output = FracSeries<C>;
    fn add(self, rhs: Self) -> FracSeries<C> {
        self.add_series(rhs)
    }
}

impl<'a, C: Coeff> Sub for &'a FracSeries<C> {
    type Output = FracSeries<C>;
    fn sub(self, rhs: Self) -> FracSeries<C> {
        self.sub_series(rhs)
    }
}

impl<'a, C: Coeff> Mul for &'a FracSeries<C> {
    type Output = FracSeries<C>;
    fn mul(self, rhs: Self) -> FracSeries<C> {
        self.mul_series(rhs)
    }
}

impl<'a, C: Coeff> Neg for &'a FracSeries<C> {
    type Output = FracSeries<C>;
    fn neg(self) -> FracSeries<C> {
        self.neg_series()
    }
}

impl<C: Coeff> FracSeries<C> {
    /// Equality of the two series on their common known range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        let t = a.trunc.min(b.trunc);
        let ka: Vec<_> = a.coeffs.range(..t).collect();
        let kb: Vec<_> = b.coeffs.range(..t).collect();
        ka == kb
    }

}
