//! Overpartitions and their Dyson rank statistics.
//!
//! Rank counts N̄(m,n) come from three independent routes: the Lambert form
//! of the two-variable generating function, its Eulerian form, and direct
//! enumeration. Residue tables N̄(r,t;n) aggregate ranks mod t.
//!
//! ```
//! use overpartition_ranks::{enumerate_overpartitions, rank_table_lambert};
//!
//! let four = enumerate_overpartitions(4).unwrap();
//! assert_eq!(four.len(), 14);
//! let tab = rank_table_lambert(4);
//! assert_eq!(tab.count(3, 4), 2u32.into());
//! ```

mod overpartition;
mod residue;
mod tables;

pub use overpartition::{enumerate_overpartitions, Overpartition, BRUTE_FORCE_BOUND};
pub use residue::{residue_table, residue_table_direct, ResidueTable};
pub use tables::{
    pbar_series, pbar_values, rank_series_eulerian, rank_series_lambert, rank_table, rank_table_bruteforce,
    rank_table_eulerian, rank_table_lambert, Method, RankTable,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RankError {
    #[error("n={n} exceeds the enumeration bound {bound}")]
    TooLarge { n: u32, bound: u32 },
    #[error("table depth {have} is below the requested {wanted}")]
    Insufficient { wanted: usize, have: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("malformed table: {0}")]
    Parse(String),
}
