//! Exact truncated q-series.
//!
//! [`FracSeries`] holds `Σ c_e q^{e/D}` with big-integer (or big-rational)
//! coefficients below a truncation point; [`BiSeries`] adds a Laurent
//! variable `u` to each coefficient. Builders expand η(mz), q-Pochhammer
//! symbols and generalized eta products.
//!
//! ```
//! use series_core::{eta_expansion, Exp};
//!
//! let t = Exp::from_integer(6);
//! let pbar = &eta_expansion(2, t).unwrap() * &eta_expansion(1, t).unwrap().pow(-2).unwrap();
//! let c: Vec<i64> = (0..5).map(|n| pbar.coeff_int(n).try_into().unwrap()).collect();
//! assert_eq!(c, [1, 2, 4, 8, 14]);
//! ```

mod bi;
mod build;
mod coeff;
mod frac;
mod json;

pub use bi::{BiSeries, LaurentPoly};
pub use build::{bernoulli2, eta_expansion, generalized_eta, pochhammer_expansion};
pub use coeff::Coeff;
pub use frac::{Exp, FracSeries};
pub use json::{from_json, to_json};

/// Errors from series arithmetic and builders.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series has no nonzero term below its truncation point")]
    ZeroSeries,
    #[error("leading coefficient {0} is not a unit; promote to rationals first")]
    NonUnitLeading(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("exponent lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("wanted {wanted} coefficients but the series is known only below {known}")]
    Truncated { wanted: i64, known: i64 },
    #[error("malformed series: {0}")]
    Parse(String),
}
