//! Online hitting of translates ([`EsState`]) and homothets ([`Hhr`]) of a
//! regular k-gon with a fixed point set.
//!
//! Lengths in [`prototype_constants`] assume diameter 2. A prototype of
//! diameter `D` scales tile and super-square sides by `D / 2`.

pub mod es;
pub mod extreme;
pub mod hhr;
pub mod partition;
pub mod ranking;
pub mod shrunk;

pub use es::{EsOutcome, EsState, EsStatus, TileTables};
pub use extreme::{extreme_points, is_extreme};
pub use hhr::{Hhr, HhrOutcome};
pub use partition::{
    build_partition, cone_angle, prototype_constants, quadrant_centers, type_of,
    PrototypeConstants, TileId, TilePartition,
};
pub use ranking::{is_vertex_ranking, vertex_ranking};
pub use shrunk::shrunk_set;

/// Competitive bound for translates: `4 m floor(log2 2n)`.
pub fn es_bound(max_tiles: u32, n: usize) -> f64 {
    4.0 * max_tiles as f64 * (2 * n.max(1)).ilog2() as f64
}

/// Competitive bound for homothets: `4 m (k+1)^2 floor(log2 2M) floor(log2 2n)`.
pub fn hhr_bound(max_tiles: u32, k: u32, max_diameter: f64, n: usize) -> f64 {
    let lm = crate::lattice::floor_log2(2.0 * max_diameter) as f64;
    es_bound(max_tiles, n) * ((k + 1) * (k + 1)) as f64 * lm
}
