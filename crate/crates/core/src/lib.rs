//! Exact coefficients of multiplicative sequences of polynomials, such as the
//! Hirzebruch L-polynomials and the A-hat polynomials, together with the
//! machinery to check their relation to (alternating) multiple zeta values.

pub mod error;
pub mod exact;
pub mod formal;
pub mod genus;
pub mod partitions;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

/// The guide's snippets, compiled and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/genus.md")]
    mod genus {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/formal.md")]
    mod formal {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
}
