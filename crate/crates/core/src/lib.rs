//! Exact verification toolkit for the crystal route to the second
//! Rogers-Ramanujan identity.
//!
//! The crate has four layers:
//!
//! - [`series`]: truncated Laurent series in q with exact big-integer
//!   coefficients, bivariate x/q series, q-Pochhammer and q-binomial
//!   constructors;
//! - [`partitions`]: partitions, strict partitions, Kleshchev
//!   multipartitions, and verifiers for the finite partition lemmas and the
//!   bivariate generating-function identity they assemble into;
//! - [`crystal`]: the Misra-Miwa crystal on strict partitions, Kashiwara
//!   tensor products, and the highest-weight component generator;
//! - [`identity`]: the series F and G, their q-difference equations, the
//!   certificate recurrence operator, and the chain of identities ending in
//!   the Rogers-Ramanujan products.
//!
//! Everything is exact: integer coefficients, explicit truncation orders,
//! and verifiers that report the minimal-degree mismatch on failure.

pub mod crystal;
pub mod identity;
pub mod partitions;
pub mod report;
pub mod series;

pub use partitions::{MultiPartition, Partition, StrictPartition};
pub use report::{Status, VerificationReport, Witness};
pub use series::{PochOrder, QLaurent, SeriesError, XQSeries, XValBound};
