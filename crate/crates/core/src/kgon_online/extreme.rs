//! Extreme points of a tile.
//!
//! `p` is extreme for quadrant center `o` when some translate of the
//! prototype contains `o`, has `p` on its boundary and no other point of the
//! tile. The set of possible centers of such a translate is
//! `(-σ)(o) ∩ ∂(-σ)(p)` minus `(-σ)(q)` for every other tile point `q`, which
//! is evaluated edge by edge on `∂(-σ)(p)` as a union of clip intervals.

use crate::geometry::{ConvexPolygon, EPS, P2};

/// `neg` is the reflected prototype (any center); it is re-centered as
/// needed.
pub fn is_extreme(neg: &ConvexPolygon, p: P2, others: &[P2], o: P2) -> bool {
    let grow = 1.0 + EPS;
    let around_o = neg.translated_to(o).scaled(grow);
    let around_p = neg.translated_to(p);
    let blockers: Vec<ConvexPolygon> = others
        .iter()
        .map(|&q| neg.translated_to(q).scaled(grow))
        .collect();
    let found = around_p.edges().any(|(a, b)| {
        let Some((t0, t1)) = around_o.clip_segment(a, b) else {
            return false;
        };
        let mut cuts: Vec<(f64, f64)> = blockers
            .iter()
            .filter_map(|q| q.clip_segment(a, b))
            .filter(|&(u0, u1)| u1 > t0 && u0 < t1)
            .collect();
        cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
        // walk the interval [t0, t1] looking for an uncovered stretch
        let mut reach = t0;
        for (u0, u1) in cuts {
            if u0 > reach {
                return true;
            }
            reach = reach.max(u1);
            if reach >= t1 {
                return false;
            }
        }
        reach < t1 || (t0 == t1 && reach == t0 && !covered(&blockers, a.lerp(b, t0)))
    });
    found
}

fn covered(blockers: &[ConvexPolygon], x: P2) -> bool {
    blockers.iter().any(|q| q.contains(x))
}

/// Angle of `p` seen from `o`, measured from the direction `o -> reference`.
/// The tile subtends less than a right angle from `o`, so this never wraps.
pub fn theta(o: P2, reference: P2, p: P2) -> f64 {
    let base = (reference - o).angle();
    let mut a = (p - o).angle() - base;
    while a <= -std::f64::consts::PI {
        a += 2.0 * std::f64::consts::PI;
    }
    while a > std::f64::consts::PI {
        a -= 2.0 * std::f64::consts::PI;
    }
    a
}

/// Indices into `pts` of the extreme points for quadrant center `o`, sorted
/// by increasing angle about `o`.
pub fn extreme_points(neg: &ConvexPolygon, pts: &[P2], o: P2, tile_center: P2) -> Vec<usize> {
    let mut out: Vec<(f64, usize)> = (0..pts.len())
        .filter(|&i| {
            let others: Vec<P2> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &q)| q)
                .collect();
            is_extreme(neg, pts[i], &others, o)
        })
        .map(|i| (theta(o, tile_center, pts[i]), i))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    out.into_iter().map(|(_, i)| i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RegularKGon;

    fn neg_square() -> ConvexPolygon {
        RegularKGon::new(4, P2::new(0.0, 0.0), 2f64.sqrt())
            .unwrap()
            .reflected()
    }

    #[test]
    fn empty_tile_has_no_extremes() {
        assert!(
            extreme_points(&neg_square(), &[], P2::new(0.0, 0.0), P2::new(1.0, 1.0)).is_empty()
        );
    }

    #[test]
    fn singleton_is_extreme_when_reachable() {
        // unit square of half-side 1: a translate through o and p exists iff
        // the L∞ distance is at most 2
        let neg = neg_square();
        assert!(is_extreme(&neg, P2::new(0.0, 0.0), &[], P2::new(1.5, 1.5)));
        assert!(!is_extreme(&neg, P2::new(0.0, 0.0), &[], P2::new(2.5, 0.0)));
    }

    #[test]
    fn shadowed_point_is_not_extreme() {
        // o at the origin; v sits between o and u on the same line, so any
        // square holding o and u also holds v
        let neg = neg_square();
        let o = P2::new(0.0, 0.0);
        let v = P2::new(0.9, 0.9);
        let u = P2::new(1.4, 1.4);
        assert!(is_extreme(&neg, v, &[u], o));
        assert!(!is_extreme(&neg, u, &[v], o));
    }
}
