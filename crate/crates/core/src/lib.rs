//! Decision engine and witness construction for simultaneous generalized
//! majorization of integer partitions.
//!
//! Given partitions `a, b, c, d` with `|d| + |a| = |c| + |b|` and no value
//! shared by `c` and `d`, [`engine::decide`] answers whether some partition `g`
//! is majorized by both `(d, a)` and `(c, b)`, in the weak or the exact sense,
//! and returns a verified witness when one exists. [`oracle`] answers the same
//! question by exhaustive search on small instances.

pub mod cli;
pub mod document;
pub mod engine;
pub mod error;
pub mod instance;
pub mod invariants;
pub mod json;
pub mod majorization;
pub mod oracle;
pub mod partition;
pub mod random;
pub mod sd;

pub use engine::{decide, exists_exact, exists_weak, homogenize, Certificate, Mode};
pub use error::{Error, Result};
pub use instance::Instance;
pub use majorization::{check_exact, check_weak, Verdict};
pub use partition::{merge_union, ExtendedInt, MergedSequence, Partition};
pub use sd::{classify, derived_tables, DerivedTables, SdResult};
