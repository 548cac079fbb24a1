//! Covering a homothet by copies whose diameter is a power of two.

use crate::geometry::{RegularKGon, EPS};
use crate::lattice::floor_log2;

/// For diameter `w` in `[2^j, 2^{j+1})`: `{σ}` when `w = 2^j`, otherwise the
/// concentric copy of diameter `2^j` followed by one copy per corner, each
/// shrunk towards that corner.
pub fn shrunk_set(g: &RegularKGon) -> Vec<RegularKGon> {
    let w = g.diameter();
    let target = 2f64.powi(floor_log2(w));
    if (w - target).abs() <= EPS * target {
        return vec![g.clone()];
    }
    let ratio = target / w;
    std::iter::once(g.homothety(g.center(), ratio))
        .chain(g.vertices().into_iter().map(|v| g.homothety(v, ratio)))
        .collect()
}
