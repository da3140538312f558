use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::tables::{parse_big, pbar_values, RankTable};
use crate::RankError;

/// N̄(r,t;n) for `0 ≤ r < t`, `0 ≤ n ≤ max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTable {
    t: u32,
    max_n: usize,
    // counts[r][n]
    counts: Vec<Vec<BigInt>>,
}

impl ResidueTable {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// N̄(r,t;n); `r` is reduced mod t.
    pub fn count(&self, r: i64, n: usize) -> &BigInt {
        assert!(n <= self.max_n, "n={n} beyond table depth {}", self.max_n);
        &self.counts[r.rem_euclid(self.t as i64) as usize][n]
    }

    pub fn class(&self, r: u32) -> &[BigInt] {
        &self.counts[r as usize]
    }

    /// Σ_r N̄(r,t;n), which is p̄(n).
    pub fn total(&self, n: usize) -> BigInt {
        self.counts.iter().map(|c| &c[n]).sum()
    }

    /// The same table cut to depth `max_n`.
    pub fn truncated(&self, max_n: usize) -> Result<ResidueTable, RankError> {
        if max_n > self.max_n {
            return Err(RankError::Insufficient { wanted: max_n, have: self.max_n });
        }
        Ok(ResidueTable {
            t: self.t,
            max_n,
            counts: self.counts.iter().map(|c| c[..=max_n].to_vec()).collect(),
        })
    }

    /// Rectangular rows `n, N̄(0,t;n), …, N̄(t−1,t;n)` as decimal strings, with a header.
    pub fn csv_records(&self) -> Vec<Vec<String>> {
        let mut out = vec![std::iter::once("n".to_string()).chain((0..self.t).map(|r| format!("r{r}"))).collect()];
        for n in 0..=self.max_n {
            out.push(std::iter::once(n.to_string()).chain(self.counts.iter().map(|c| c[n].to_string())).collect());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ResidueWire {
            t: self.t,
            max_n: self.max_n,
            counts: self.counts.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, RankError> {
        let w: ResidueWire = serde_json::from_value(v.clone()).map_err(|e| RankError::Parse(e.to_string()))?;
        if w.t == 0 || w.counts.len() != w.t as usize || w.counts.iter().any(|c| c.len() != w.max_n + 1) {
            return Err(RankError::Parse("table shape does not match t and max_n".into()));
        }
        let counts = w
            .counts
            .iter()
            .map(|c| c.iter().map(|s| parse_big(s)).collect())
            .collect::<Result<_, _>>()?;
        Ok(ResidueTable { t: w.t, max_n: w.max_n, counts })
    }
}

#[derive(Serialize, Deserialize)]
struct ResidueWire {
    t: u32,
    max_n: usize,
    counts: Vec<Vec<String>>,
}

/// Aggregate a rank table by `m mod t`.
pub fn residue_table(t: u32, max_n: usize, source: &RankTable) -> Result<ResidueTable, RankError> {
    if t == 0 {
        return Err(RankError::BadParams("modulus t must be positive".into()));
    }
    if source.max_n() < max_n {
        return Err(RankError::Insufficient { wanted: max_n, have: source.max_n() });
    }
    let mut counts = vec![vec![BigInt::zero(); max_n + 1]; t as usize];
    for n in 0..=max_n {
        for (m, c) in source.row(n) {
            counts[m.rem_euclid(t as i64) as usize][n] += c;
        }
    }
    Ok(ResidueTable { t, max_n, counts })
}

/// Residue table without the full rank table, from the per-rank series
/// `Σ_n N̄(m,n)qⁿ = P̄(q)·2Σ_{n≥1}(−1)^{n+1} q^{n²+|m|n}(1−qⁿ)/(1+qⁿ)` for m ≠ 0 and
/// `P̄(q)·(1 + 4Σ_{n≥1}(−1)ⁿ q^{n²+n}/(1+qⁿ))` for m = 0.
/// The inner sums are summed per class before the single multiplication by P̄.
pub fn residue_table_direct(t: u32, max_n: usize) -> Result<ResidueTable, RankError> {
    if t == 0 {
        return Err(RankError::BadParams("modulus t must be positive".into()));
    }
    let len = max_n + 1;
    let tt = t as i64;
    let mut inner = vec![vec![0i64; len]; t as usize];
    inner[0][0] += 1;
    // (1−qⁿ)/(1+qⁿ) = 1 + 2Σ_{j≥1}(−1)^j q^{jn}; 1/(1+qⁿ) = Σ_{j≥0}(−1)^j q^{jn}
    let add_geometric = |class: &mut Vec<i64>, start: usize, n: usize, lead: i64, rest: i64| {
        let mut e = start;
        let mut j = 0i64;
        while e < len {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            class[e] += sign * if j == 0 { lead } else { rest };
            e += n;
            j += 1;
        }
    };
    for n in 1..len {
        let sq = n * n;
        if sq + n >= len {
            break;
        }
        let sgn = if n % 2 == 0 { 1 } else { -1 };
        add_geometric(&mut inner[0], sq + n, n, 4 * sgn, 4 * sgn);
        for m in 1.. {
            let start = sq + m * n;
            if start >= len {
                break;
            }
            // coefficient 2(−1)^{n+1} for both m and −m
            for mm in [m as i64, -(m as i64)] {
                let r = mm.rem_euclid(tt) as usize;
                add_geometric(&mut inner[r], start, n, -2 * sgn, -4 * sgn);
            }
        }
    }
    let pbar = pbar_values(max_n);
    let counts = inner
        .par_iter()
        .map(|s| {
            (0..len)
                .map(|n| (0..=n).filter(|&i| s[i] != 0).map(|i| BigInt::from(s[i]) * &pbar[n - i]).sum())
                .collect()
        })
        .collect();
    Ok(ResidueTable { t, max_n, counts })
}
