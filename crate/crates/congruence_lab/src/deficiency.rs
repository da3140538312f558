use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use overpartition_ranks::ResidueTable;
use series_core::FracSeries;

use crate::{is_prime, CongruenceError};

fn covers(table: &ResidueTable, max_n: usize) -> Result<(), CongruenceError> {
    if table.max_n() < max_n {
        return Err(CongruenceError::InsufficientTable { wanted: max_n, have: table.max_n() });
    }
    Ok(())
}

/// Σ_{n ≤ max_n} (N̄(r,t;n) − p̄(n)/t) qⁿ with t taken from the table.
pub fn deficiency_series(r: u32, max_n: usize, table: &ResidueTable) -> Result<FracSeries<BigRational>, CongruenceError> {
    covers(table, max_n)?;
    if r >= table.t() {
        return Err(CongruenceError::BadParams(format!("r={r} not below t={}", table.t())));
    }
    let t = BigInt::from(table.t());
    let terms = (0..=max_n).map(|n| {
        let c = BigRational::from_integer(table.count(r as i64, n).clone())
            - BigRational::new(table.total(n), t.clone());
        (n as i64, c)
    });
    Ok(FracSeries::from_terms(1, max_n as i64 + 1, terms))
}

/// R_{s₁,s₂}(d) = Σ (N̄(s₁,ℓ,ℓn+d) − N̄(s₂,ℓ,ℓn+d)) q^{ℓn+d}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankDifferenceSeries {
    pub ell: u32,
    pub s1: u32,
    pub s2: u32,
    pub d: u32,
    pub series: FracSeries,
}

/// Exponents up to `max_n`; the table's modulus must be ℓ.
pub fn rank_difference(
    ell: u32,
    s1: u32,
    s2: u32,
    d: u32,
    max_n: usize,
    table: &ResidueTable,
) -> Result<RankDifferenceSeries, CongruenceError> {
    if !is_prime(ell as u64) {
        return Err(CongruenceError::BadParams(format!("ℓ={ell} is not prime")));
    }
    if s1 >= ell || s2 >= ell || d >= ell {
        return Err(CongruenceError::BadParams(format!("s1={s1}, s2={s2}, d={d} must lie in [0,{ell})")));
    }
    if table.t() != ell {
        return Err(CongruenceError::BadParams(format!("table modulus {} is not ℓ={ell}", table.t())));
    }
    covers(table, max_n)?;
    let terms = (d as usize..=max_n)
        .step_by(ell as usize)
        .map(|n| (n as i64, table.count(s1 as i64, n) - table.count(s2 as i64, n)));
    let series = FracSeries::from_terms(1, max_n as i64 + 1, terms);
    Ok(RankDifferenceSeries { ell, s1, s2, d, series })
}
