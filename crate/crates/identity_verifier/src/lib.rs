//! Rank-difference identities for overpartitions, checked coefficient by
//! coefficient against products of η and generalized η functions.
//!
//! ```
//! use identity_verifier::{verify, IdentitySpec};
//!
//! let spec = IdentitySpec::builtin(5).unwrap();
//! assert_eq!(spec.recipe.to_string(), "2·η(9z)·η(18z)/η(3z)");
//! assert!(verify(&spec, 20).unwrap().passed());
//! ```

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use congruence_lab::{rank_difference, CongruenceError};
use overpartition_ranks::{residue_table_direct, RankError, ResidueTable};
use series_core::{bernoulli2, eta_expansion, generalized_eta, Exp, FracSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("no identity with id {0}")]
    UnknownId(u8),
    #[error("table covers n ≤ {have} but n = {wanted} is needed")]
    InsufficientTable { wanted: usize, have: usize },
    #[error("right-hand side has non-integral exponents: {0}")]
    LatticeMismatch(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Other(String),
}

impl From<CongruenceError> for IdentityError {
    fn from(e: CongruenceError) -> Self {
        match e {
            CongruenceError::InsufficientTable { wanted, have } => IdentityError::InsufficientTable { wanted, have },
            e => IdentityError::Other(e.to_string()),
        }
    }
}

impl From<RankError> for IdentityError {
    fn from(e: RankError) -> Self {
        IdentityError::Other(e.to_string())
    }
}

/// One factor of a product recipe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    /// η(scale·z).
    Eta { scale: i64 },
    /// E_{g,0}(scale·z) with modulus `n`.
    GenEta { n: i64, g: i64, scale: i64 },
}

impl Factor {
    /// Exponent of the leading term q^{…}.
    pub fn leading_exponent(self) -> Exp {
        match self {
            Factor::Eta { scale } => Exp::new(scale, 24),
            Factor::GenEta { n, g, scale } => Exp::from_integer(scale) * bernoulli2(Exp::new(g, n)) / Exp::from_integer(2),
        }
    }

    fn expand(self, trunc: Exp) -> Result<FracSeries, SeriesError> {
        match self {
            Factor::Eta { scale } => eta_expansion(scale, trunc),
            Factor::GenEta { n, g, scale } => generalized_eta(n, g, 0, scale, trunc),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::Eta { scale } => write!(f, "η({scale}z)"),
            Factor::GenEta { g, scale, .. } => write!(f, "E_{{{g},0}}({scale}z)"),
        }
    }
}

/// `coeff · ∏ factor^power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub coeff: i64,
    pub factors: Vec<(Factor, i64)>,
}

impl Recipe {
    pub fn negated(&self) -> Recipe {
        Recipe { coeff: -self.coeff, factors: self.factors.clone() }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, fac: &Factor, p: i64| {
            if p.abs() == 1 {
                write!(f, "{fac}")
            } else {
                write!(f, "{fac}^{}", p.abs())
            }
        };
        write!(f, "{}", self.coeff)?;
        for (fac, p) in self.factors.iter().filter(|(_, p)| *p > 0) {
            write!(f, "·")?;
            part(f, fac, *p)?;
        }
        for (fac, p) in self.factors.iter().filter(|(_, p)| *p < 0) {
            write!(f, "/")?;
            part(f, fac, *p)?;
        }
        Ok(())
    }
}

/// Σ_n (N̄(s₁,ℓ,ℓn+d) − N̄(s₂,ℓ,ℓn+d)) q^{ℓn+d} = recipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub id: u8,
    pub ell: u32,
    pub s1: u32,
    pub s2: u32,
    pub d: u32,
    pub recipe: Recipe,
}

impl IdentitySpec {
    /// The five built-in identities, numbered 1–5.
    pub fn builtin(id: u8) -> Result<IdentitySpec, IdentityError> {
        let eta = |scale| Factor::Eta { scale };
        let e5 = |g| Factor::GenEta { n: 5, g, scale: 25 };
        let spec = |ell, s1, s2, d, coeff, factors| IdentitySpec { id, ell, s1, s2, d, recipe: Recipe { coeff, factors } };
        Ok(match id {
            1 => spec(5, 1, 2, 2, 2, vec![(eta(50), 1), (e5(1), -1)]),
            2 => spec(5, 1, 2, 3, -2, vec![(eta(50), 1), (e5(2), -1)]),
            3 => spec(5, 0, 2, 3, 2, vec![(eta(50), 1), (e5(2), -1)]),
            4 => spec(5, 0, 2, 2, 0, vec![]),
            5 => spec(3, 0, 1, 1, 2, vec![(eta(9), 1), (eta(18), 1), (eta(3), -1)]),
            _ => return Err(IdentityError::UnknownId(id)),
        })
    }

    pub fn all() -> Vec<IdentitySpec> {
        (1..=5).map(|i| Self::builtin(i).expect("built-in id")).collect()
    }

    /// Exponents strictly below this bound cover `depth` terms of the progression.
    pub fn trunc_for(&self, depth: usize) -> i64 {
        self.ell as i64 * depth as i64
    }

    pub fn with_recipe(&self, recipe: Recipe) -> IdentitySpec {
        IdentitySpec { recipe, ..self.clone() }
    }
}

/// Left side for the first `depth` terms of the progression.
pub fn build_lhs(spec: &IdentitySpec, depth: usize, table: &ResidueTable) -> Result<FracSeries, IdentityError> {
    let t = spec.trunc_for(depth);
    if depth == 0 {
        return Ok(FracSeries::zero(1, 0));
    }
    let r = rank_difference(spec.ell, spec.s1, spec.s2, spec.d, t as usize - 1, table)?;
    Ok(r.series)
}

/// Right side, known below `q^trunc`; exponents must be integral.
pub fn build_rhs(spec: &IdentitySpec, trunc: i64) -> Result<FracSeries, IdentityError> {
    let t = Exp::from_integer(trunc);
    let r = &spec.recipe;
    if r.coeff == 0 {
        return Ok(FracSeries::zero(1, trunc));
    }
    // every factor needs relative precision t − lead for the product to be exact below q^t
    let mut lead = Exp::zero();
    let mut vals = Vec::new();
    for &(f, p) in &r.factors {
        let v = f.leading_exponent();
        lead += v * Exp::from_integer(p);
        vals.push(v);
    }
    let rel = t - lead;
    if rel <= Exp::zero() {
        return Ok(FracSeries::zero(1, trunc));
    }
    let mut acc = FracSeries::<BigInt>::monomial(BigInt::from(r.coeff), Exp::zero(), rel);
    for (&(f, p), v) in r.factors.iter().zip(vals) {
        acc = &acc * &f.expand(rel + v)?.pow(p)?;
    }
    let acc = acc.truncate(t).normalize();
    if !acc.has_integer_exponents() {
        return Err(IdentityError::LatticeMismatch(format!("{} has exponent denominator {}", r, acc.denom())));
    }
    if acc.trunc_exp() < t {
        return Err(IdentityError::Other(format!("product only known below q^{}", acc.trunc_exp())));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: u8,
    pub identity: String,
    pub depth: usize,
    pub status: String,
    pub mismatch: Option<Mismatch>,
    /// Wall time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub millis: u128,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn describe(spec: &IdentitySpec) -> String {
    format!(
        "Σ (N̄({},{},{}n+{}) − N̄({},{},{}n+{})) q^({}n+{}) = {}",
        spec.s1, spec.ell, spec.ell, spec.d, spec.s2, spec.ell, spec.ell, spec.d, spec.ell, spec.d, spec.recipe
    )
}

/// First exponent below the common truncation where the two series differ.
pub fn first_mismatch(lhs: &FracSeries, rhs: &FracSeries) -> Option<Mismatch> {
    let t = lhs.trunc().min(rhs.trunc());
    let exps: std::collections::BTreeSet<i64> =
        lhs.terms().chain(rhs.terms()).map(|(e, _)| e).filter(|&e| e < t).collect();
    exps.into_iter().find_map(|e| {
        let (a, b) = (lhs.coeff_int(e), rhs.coeff_int(e));
        (a != b).then(|| Mismatch { exponent: e, lhs: a.to_string(), rhs: b.to_string() })
    })
}

/// Compare both sides for `depth` progression terms using a prepared table.
pub fn verify_with_table(spec: &IdentitySpec, depth: usize, table: &ResidueTable) -> Result<IdentityReport, IdentityError> {
    let start = Instant::now();
    let lhs = build_lhs(spec, depth, table)?;
    let rhs = build_rhs(spec, spec.trunc_for(depth))?;
    let mismatch = first_mismatch(&lhs, &rhs);
    let status = if mismatch.is_none() { format!("PASS({depth})") } else { "FAIL".to_string() };
    Ok(IdentityReport {
        id: spec.id,
        identity: describe(spec),
        depth,
        status,
        mismatch,
        millis: start.elapsed().as_millis(),
    })
}

pub fn verify(spec: &IdentitySpec, depth: usize) -> Result<IdentityReport, IdentityError> {
    let max_n = (spec.trunc_for(depth) as usize).max(1) - 1;
    let table = residue_table_direct(spec.ell, max_n)?;
    verify_with_table(spec, depth, &table)
}

/// All five identities; one residue table per modulus, identities checked in parallel.
pub fn verify_all(depth: usize) -> Result<Vec<IdentityReport>, IdentityError> {
    let specs = IdentitySpec::all();
    let tables: Vec<(u32, ResidueTable)> = [3u32, 5]
        .par_iter()
        .map(|&ell| residue_table_direct(ell, (ell as usize * depth).max(1) - 1).map(|t| (ell, t)))
        .collect::<Result<_, _>>()?;
    specs
        .par_iter()
        .map(|s| {
            let table = &tables.iter().find(|(l, _)| *l == s.ell).expect("table per modulus").1;
            verify_with_table(s, depth, table)
        })
        .collect()
}

/// Coefficients of Σ_i c_i·LHS_i and Σ_i c_i·RHS_i agree; used for derived
/// consistency checks between identities sharing a progression.
pub fn verify_combination(
    parts: &[(i64, &IdentitySpec)],
    depth: usize,
    table: &ResidueTable,
) -> Result<Option<Mismatch>, IdentityError> {
    let mut lhs: Option<FracSeries> = None;
    let mut rhs: Option<FracSeries> = None;
    for &(c, spec) in parts {
        let c = BigInt::from(c);
        let l = build_lhs(spec, depth, table)?.scale(&c);
        let r = build_rhs(spec, spec.trunc_for(depth))?.scale(&c);
        lhs = Some(match lhs {
            Some(a) => &a + &l,
            None => l,
        });
        rhs = Some(match rhs {
            Some(a) => &a + &r,
            None => r,
        });
    }
    match (lhs, rhs) {
        (Some(l), Some(r)) => Ok(first_mismatch(&l, &r)),
        _ => Ok(None),
    }
}
