//! The book chapters, compiled as doctests. Nothing here is meant to be used.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/ranks.md")]
pub mod ranks {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/congruences.md")]
pub mod congruences {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/identities.md")]
pub mod identities {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/numerics.md")]
pub mod numerics {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
