//! Exact computation of excedance statistics over symmetric groups, Eulerian
//! polynomials, and the tangent, Bernoulli and Genocchi numbers, together
//! with a registry of identities between them that are checked mechanically.
//!
//! All arithmetic is exact: integers are arbitrary precision and rationals
//! are kept in lowest terms.
//!
//! ```
//! use excedance::sequences::{tangent, Route};
//!
//! let t7 = tangent(7, Route::Bernoulli).unwrap();
//! assert_eq!(t7, tangent(7, Route::Counting).unwrap());
//! assert_eq!(t7.to_string(), "272");
//! ```
//!
//! The `book/` directory holds a longer guide; its code blocks are compiled
//! and run as doc-tests of this crate.

pub mod arith;
pub mod claims;
pub mod cli;
pub mod perm;
pub mod sequences;
pub mod series;

pub use arith::{binomial, factorial, Integer, Rational};
pub use claims::{ClaimResult, Registry, Report, Verdict};
pub use perm::{Convention, Permutation};
pub use series::Series;

// Chapters of the guide, compiled only so rustdoc runs their examples.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/excedances.md")]
    mod excedances {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/claims.md")]
    mod claims {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
