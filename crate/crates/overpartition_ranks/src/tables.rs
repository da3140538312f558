use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use series_core::{eta_expansion, BiSeries, Exp, FracSeries, LaurentPoly};

use crate::overpartition::bruteforce_row;
use crate::RankError;

/// P̄(q) = η(2z)/η²(z), known below `q^trunc`.
pub fn pbar_series(trunc: i64) -> FracSeries {
    let t = Exp::from_integer(trunc);
    let num = eta_expansion(2, t).expect("positive scale");
    let den = eta_expansion(1, t).expect("positive scale").pow(-2).expect("unit leading coefficient");
    let p = (&num * &den).truncate(t).normalize();
    debug_assert!(p.has_integer_exponents());
    p
}

/// p̄(0), …, p̄(max_n).
pub fn pbar_values(max_n: usize) -> Vec<BigInt> {
    let p = pbar_series(max_n as i64 + 1);
    (0..=max_n as i64).map(|n| p.coeff_int(n)).collect()
}

/// How a rank table was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lambert,
    Eulerian,
    Bruteforce,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Lambert, Method::Eulerian, Method::Bruteforce];

    pub fn name(self) -> &'static str {
        match self {
            Method::Lambert => "lambert",
            Method::Eulerian => "eulerian",
            Method::Bruteforce => "bruteforce",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?} (expected lambert, eulerian or bruteforce)"))
    }
}

/// Exact counts N̄(m,n) for `0 ≤ n ≤ max_n`, `|m| ≤ n`, together with p̄(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    max_n: usize,
    // rows[n][m + n]
    rows: Vec<Vec<BigInt>>,
    pbar: Vec<BigInt>,
}

impl RankTable {
    fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let max_n = rows.len() - 1;
        RankTable { max_n, rows, pbar: pbar_values(max_n) }
    }

    fn from_bi(s: &BiSeries, max_n: usize) -> Self {
        let rows = (0..=max_n)
            .map(|n| {
                let p = s.coeff(n as i64);
                let w = n as i64;
                let mut row = vec![BigInt::zero(); 2 * n + 1];
                for (m, c) in p.terms() {
                    assert!(m.abs() <= w, "rank {m} outside [-{n}, {n}]");
                    row[(m + w) as usize] = c.clone();
                }
                row
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// N̄(m,n); zero for `|m| > n`.
    pub fn count(&self, m: i64, n: usize) -> BigInt {
        assert!(n <= self.max_n, "n={n} beyond table depth {}", self.max_n);
        let w = n as i64;
        if m.abs() > w {
            return BigInt::zero();
        }
        self.rows[n][(m + w) as usize].clone()
    }

    /// `(m, N̄(m,n))` for `m = −n..=n`.
    pub fn row(&self, n: usize) -> impl Iterator<Item = (i64, &BigInt)> {
        let w = n as i64;
        self.rows[n].iter().enumerate().map(move |(i, c)| (i as i64 - w, c))
    }

    pub fn pbar(&self, n: usize) -> &BigInt {
        &self.pbar[n]
    }

    pub fn pbar_all(&self) -> &[BigInt] {
        &self.pbar
    }

    /// Cells where the two tables differ, as `(m, n, self, other)`, over the common depth.
    pub fn diff(&self, other: &RankTable) -> Vec<(i64, usize, BigInt, BigInt)> {
        let mut out = Vec::new();
        for n in 0..=self.max_n.min(other.max_n) {
            for ((m, a), (_, b)) in self.row(n).zip(other.row(n)) {
                if a != b {
                    out.push((m, n, a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RankWire {
            max_n: self.max_n,
            pbar: self.pbar.iter().map(|c| c.to_string()).collect(),
            counts: self.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, RankError> {
        let w: RankWire = serde_json::from_value(v.clone()).map_err(|e| RankError::Parse(e.to_string()))?;
        if w.counts.len() != w.max_n + 1 || w.pbar.len() != w.max_n + 1 {
            return Err(RankError::Parse("row count does not match max_n".into()));
        }
        let rows = w
            .counts
            .iter()
            .enumerate()
            .map(|(n, r)| {
                if r.len() != 2 * n + 1 {
                    return Err(RankError::Parse(format!("row {n} has {} entries", r.len())));
                }
                r.iter().map(|s| parse_big(s)).collect()
            })
            .collect::<Result<_, _>>()?;
        let pbar = w.pbar.iter().map(|s| parse_big(s)).collect::<Result<_, _>>()?;
        Ok(RankTable { max_n: w.max_n, rows, pbar })
    }
}

pub(crate) fn parse_big(s: &str) -> Result<BigInt, RankError> {
    s.parse().map_err(|_| RankError::Parse(format!("bad integer {s:?}")))
}

#[derive(Serialize, Deserialize)]
struct RankWire {
    max_n: usize,
    pbar: Vec<String>,
    counts: Vec<Vec<String>>,
}

fn monomial_poly(terms: &[(i64, i64)]) -> LaurentPoly {
    let mut p = LaurentPoly::new();
    for &(m, c) in terms {
        p.add_term(m, BigInt::from(c));
    }
    p
}

fn sum_all(parts: Vec<BiSeries>, trunc: i64) -> BiSeries {
    parts.into_iter().fold(BiSeries::zero(trunc), |acc, s| acc.add(&s))
}

/// Σ N̄(m,n) uᵐ qⁿ from
/// `(−q)_∞/(q)_∞ (1 + 2Σ_{n≥1} (1−u)(1−u⁻¹)(−1)ⁿ q^{n²+n} / ((1−uqⁿ)(1−u⁻¹qⁿ)))`.
pub fn rank_series_lambert(max_n: usize) -> BiSeries {
    let trunc = max_n as i64 + 1;
    let ns: Vec<i64> = (1..).take_while(|n| n * n + n < trunc).collect();
    let parts: Vec<BiSeries> = ns
        .par_iter()
        .map(|&n| {
            let sign = if n % 2 == 0 { 2 } else { -2 };
            // 2(−1)ⁿ(1−u)(1−u⁻¹) = 2(−1)ⁿ(2 − u − u⁻¹)
            let p = monomial_poly(&[(0, 2 * sign), (1, -sign), (-1, -sign)]);
            let mut s = BiSeries::zero(trunc);
            for (m, c) in p.terms() {
                s = s.add(&BiSeries::monomial(c.clone(), m, n * n + n, trunc));
            }
            s.div_binomial(1, 1, n);
            s.div_binomial(1, -1, n);
            s
        })
        .collect();
    let inner = sum_all(parts, trunc).add(&BiSeries::one(trunc));
    inner.mul_series(&pbar_series(trunc)).expect("integer lattice")
}

/// Σ N̄(m,n) uᵐ qⁿ from `Σ_{n≥0} (−1)_n q^{n(n+1)/2} / ((uq)_n (q/u)_n)`.
pub fn rank_series_eulerian(max_n: usize) -> BiSeries {
    let trunc = max_n as i64 + 1;
    let ns: Vec<i64> = (0..).take_while(|n| n * (n + 1) / 2 < trunc).collect();
    let parts: Vec<BiSeries> = ns
        .par_iter()
        .map(|&n| {
            // (−1)_n = 2(−q)_{n−1} for n ≥ 1
            let lead = if n == 0 { BigInt::one() } else { BigInt::from(2) };
            let mut s = BiSeries::monomial(lead, 0, n * (n + 1) / 2, trunc);
            for r in 1..n {
                s.mul_binomial(1, 0, r);
            }
            for r in 1..=n {
                s.div_binomial(1, 1, r);
                s.div_binomial(1, -1, r);
            }
            s
        })
        .collect();
    sum_all(parts, trunc)
}

pub fn rank_table_lambert(max_n: usize) -> RankTable {
    RankTable::from_bi(&rank_series_lambert(max_n), max_n)
}

pub fn rank_table_eulerian(max_n: usize) -> RankTable {
    RankTable::from_bi(&rank_series_eulerian(max_n), max_n)
}

/// Counts by listing every overpartition; `max_n` ≤ [`crate::BRUTE_FORCE_BOUND`].
pub fn rank_table_bruteforce(max_n: usize) -> Result<RankTable, RankError> {
    if max_n > crate::BRUTE_FORCE_BOUND as usize {
        return Err(RankError::TooLarge { n: max_n.min(u32::MAX as usize) as u32, bound: crate::BRUTE_FORCE_BOUND });
    }
    let rows: Vec<Vec<BigInt>> = (0..=max_n as u32)
        .into_par_iter()
        .map(|n| bruteforce_row(n).map(|r| r.into_iter().map(BigInt::from).collect()))
        .collect::<Result<_, _>>()?;
    Ok(RankTable::from_rows(rows))
}

pub fn rank_table(method: Method, max_n: usize) -> Result<RankTable, RankError> {
    match method {
        Method::Lambert => Ok(rank_table_lambert(max_n)),
        Method::Eulerian => Ok(rank_table_eulerian(max_n)),
        Method::Bruteforce => rank_table_bruteforce(max_n),
    }
}
