use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use overpartition_ranks::ResidueTable;

use crate::{is_prime, legendre, CongruenceError};

/// The claim N̄(r,t;An+B) ≡ 0 (mod ℓ^j) for every r in `r_set`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClaim {
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    pub t: u32,
    pub ell: u64,
    pub j: u32,
    pub r_set: Vec<u32>,
}

impl CongruenceClaim {
    /// A claim over every residue `0 ≤ r < t`.
    pub fn all_residues(a: u64, b: u64, t: u32, ell: u64, j: u32) -> Result<Self, CongruenceError> {
        Self::new(a, b, t, ell, j, (0..t).collect())
    }

    pub fn new(a: u64, b: u64, t: u32, ell: u64, j: u32, r_set: Vec<u32>) -> Result<Self, CongruenceError> {
        let c = CongruenceClaim { a, b, t, ell, j, r_set };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), CongruenceError> {
        let bad = |s: String| Err(CongruenceError::BadParams(s));
        if self.a == 0 || self.b >= self.a {
            return bad(format!("need 0 ≤ B < A, got A={}, B={}", self.a, self.b));
        }
        if !is_prime(self.ell) {
            return bad(format!("ℓ={} is not prime", self.ell));
        }
        if self.j == 0 {
            return bad("j must be at least 1".into());
        }
        if self.t == 0 || self.r_set.iter().any(|&r| r >= self.t) {
            return bad(format!("residues {:?} must lie in [0,{})", self.r_set, self.t));
        }
        Ok(())
    }

    pub fn ell_power(&self) -> BigInt {
        BigInt::from(self.ell).pow(self.j)
    }
}

/// Outcome of a bounded check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    PassToBound,
    /// First failing progression index n₀.
    Fail(usize),
    /// A scan hit: passes to the bound, nothing more.
    Empirical,
}

impl Status {
    pub fn passed(self) -> bool {
        !matches!(self, Status::Fail(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::PassToBound => write!(f, "PASS_TO_BOUND"),
            Status::Fail(n) => write!(f, "FAIL({n})"),
            Status::Empirical => write!(f, "EMPIRICAL"),
        }
    }
}

impl FromStr for Status {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "PASS_TO_BOUND" => Ok(Status::PassToBound),
            "EMPIRICAL" => Ok(Status::Empirical),
            _ => s
                .strip_prefix("FAIL(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .map(Status::Fail)
                .ok_or_else(|| format!("unknown status {s:?}")),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Status {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Progression index; the overpartition size is A·n + B.
    pub n: usize,
    pub r: u32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: CongruenceClaim,
    pub n_max: usize,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    /// The implied p̄(An+B) ≡ 0 (mod ℓ^j), checked on the same range.
    pub aggregate: Status,
}

fn need(table: &ResidueTable, wanted: usize) -> Result<(), CongruenceError> {
    if table.max_n() < wanted {
        return Err(CongruenceError::InsufficientTable { wanted, have: table.max_n() });
    }
    Ok(())
}

/// Check the claim for `0 ≤ n ≤ n_max`.
pub fn verify_claim(claim: &CongruenceClaim, table: &ResidueTable, n_max: usize) -> Result<ClaimReport, CongruenceError> {
    claim.validate()?;
    if table.t() != claim.t {
        return Err(CongruenceError::BadParams(format!("table modulus {} differs from t={}", table.t(), claim.t)));
    }
    need(table, claim.a as usize * n_max + claim.b as usize)?;
    Ok(check(claim, table, n_max))
}

fn check(claim: &CongruenceClaim, table: &ResidueTable, n_max: usize) -> ClaimReport {
    let modulus = claim.ell_power();
    let mut status = Status::PassToBound;
    let mut counterexample = None;
    let mut aggregate = Status::PassToBound;
    for n in 0..=n_max {
        let idx = claim.a as usize * n + claim.b as usize;
        if status == Status::PassToBound {
            if let Some(&r) = claim.r_set.iter().find(|&&r| !table.count(r as i64, idx).is_multiple_of(&modulus)) {
                status = Status::Fail(n);
                counterexample = Some(Counterexample { n, r, value: table.count(r as i64, idx).to_string() });
            }
        }
        if aggregate == Status::PassToBound && !table.total(idx).is_multiple_of(&modulus) {
            aggregate = Status::Fail(n);
        }
        if !status.passed() && !aggregate.passed() {
            break;
        }
    }
    ClaimReport { claim: claim.clone(), n_max, status, counterexample, aggregate }
}

/// All progressions `An+B`, `A ≤ a_max`, for which every residue class
/// passes to `n_max`. Hits are flagged [`Status::Empirical`], ordered by (A, B).
pub fn scan_progressions(
    t: u32,
    ell: u64,
    j: u32,
    a_max: u64,
    n_max: usize,
    table: &ResidueTable,
) -> Result<Vec<ClaimReport>, CongruenceError> {
    if table.t() != t {
        return Err(CongruenceError::BadParams(format!("table modulus {} differs from t={t}", table.t())));
    }
    if a_max == 0 {
        return Ok(Vec::new());
    }
    need(table, a_max as usize * n_max + a_max as usize - 1)?;
    let pairs: Vec<(u64, u64)> = (1..=a_max).flat_map(|a| (0..a).map(move |b| (a, b))).collect();
    let claims = pairs
        .iter()
        .map(|&(a, b)| CongruenceClaim::all_residues(a, b, t, ell, j))
        .collect::<Result<Vec<_>, _>>()?;
    let mut hits: Vec<ClaimReport> = claims
        .par_iter()
        .map(|c| check(c, table, n_max))
        .filter(|r| r.status == Status::PassToBound)
        .map(|mut r| {
            r.status = Status::Empirical;
            r
        })
        .collect();
    hits.sort_by_key(|r| (r.claim.a, r.claim.b));
    Ok(hits)
}

/// Σ_r N̄(r,t;An+B) = p̄(An+B) for `0 ≤ n ≤ n_max`, with p̄ supplied independently.
pub fn decomposition_holds(table: &ResidueTable, a: u64, b: u64, n_max: usize, pbar: &[BigInt]) -> bool {
    (0..=n_max).all(|n| {
        let idx = a as usize * n + b as usize;
        idx < pbar.len() && idx <= table.max_n() && table.total(idx) == pbar[idx]
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTemplateReport {
    pub ell: u64,
    pub m: u32,
    pub u: u32,
    pub beta: u64,
    pub p: u64,
    /// How many n were within reach of the table.
    pub checked: usize,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

/// N̄(r,ℓ^m;p³n) ≡ 0 (mod ℓ^u) for all r and all n ≡ β (mod ℓ), p ∤ n,
/// with p³n inside the table. Hypotheses: ℓ ≥ 5 prime, p ≡ −1 (mod ℓ) prime,
/// (−β/ℓ) = −1.
pub fn verify_prime_template(
    ell: u64,
    m: u32,
    u: u32,
    beta: u64,
    p: u64,
    table: &ResidueTable,
) -> Result<PrimeTemplateReport, CongruenceError> {
    let bad = |s: String| Err(CongruenceError::BadParams(s));
    if ell < 5 || !is_prime(ell) {
        return bad(format!("ℓ={ell} must be a prime ≥ 5"));
    }
    if m == 0 || u == 0 {
        return bad("m and u must be positive".into());
    }
    if !is_prime(p) || (p + 1) % ell != 0 {
        return bad(format!("p={p} must be a prime ≡ −1 mod {ell}"));
    }
    if legendre(-(beta as i64), ell) != -1 {
        return bad(format!("(−{beta}/{ell}) ≠ −1"));
    }
    let t = ell.pow(m);
    if table.t() as u64 != t {
        return bad(format!("table modulus {} is not ℓ^m = {t}", table.t()));
    }
    let modulus = BigInt::from(ell).pow(u);
    let p3 = p.pow(3) as usize;
    let mut checked = 0;
    let mut status = Status::PassToBound;
    let mut counterexample = None;
    let mut n = (beta % ell) as usize;
    while p3 * n <= table.max_n() {
        if n >= 1 && n as u64 % p != 0 {
            checked += 1;
            if let Some(r) = (0..t as u32).find(|&r| !table.count(r as i64, p3 * n).is_multiple_of(&modulus)) {
                status = Status::Fail(n);
                counterexample = Some(Counterexample { n, r, value: table.count(r as i64, p3 * n).to_string() });
                break;
            }
        }
        n += ell as usize;
    }
    Ok(PrimeTemplateReport { ell, m, u, beta, p, checked, status, counterexample })
}
