//! Online hitting-set algorithms for geometric objects.
//!
//! * [`hypercube_online`]: randomized layered algorithm for axis-aligned
//!   hypercubes with widths in `[1, M]`.
//! * [`fat_online`]: deterministic rounding algorithm for alpha-fat objects.
//! * [`kgon_online`]: deterministic algorithm for unit-scale homothetic regular
//!   k-gons and its randomized layered extension.
//! * [`adversary`]: random hard instances for any online hypercube hitter.
//! * [`offline_opt`]: exact minimum hitting set over a finite candidate set.
//! * [`harness`]: instance files, trial runner and invariant checks.

pub mod adversary;
pub mod error;
pub mod fat_online;
pub mod geometry;
pub mod harness;
pub mod hypercube_online;
pub mod kgon_online;
pub mod lattice;
pub mod offline_opt;

pub use error::{Error, Result};
pub use geometry::{AxisHypercube, FatObject, GeomObject, Point, RegularKGon, P2};
