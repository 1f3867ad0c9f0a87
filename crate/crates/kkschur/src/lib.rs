//! Exact combinatorics of k-Schur and K-k-Schur functions.
//!
//! The crate realizes the dictionary between k-bounded partitions,
//! (k+1)-cores and affine Grassmannian elements, the weak and strong orders,
//! the affine set-valued Pieri rule, triangular basis change and exact
//! division in Z[h_1, ..., h_k], and a harness that mechanically verifies
//! factorization identities and scans conjectures over bounded ranges.

pub mod context;
pub mod cores;
pub mod error;
pub mod num;
pub mod partition;
pub mod ring;
pub mod strips;
pub mod tables;
pub mod theorems;

pub use context::LevelContext;
pub use error::{Error, Result};
pub use partition::{Cell, Partition};
pub use ring::{Basis, RectangleMultiset, SymFunc};
