//! Square tiling of the plane, super-squares and quadrant types.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{angle_at, ConvexPolygon, Point, RegularKGon, EPS, P2};

/// Tile side, super-square side and tile bound for a prototype of diameter 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrototypeConstants {
    pub tile_side: f64,
    pub super_side: f64,
    pub max_tiles: u32,
}

pub fn prototype_constants(k: u32) -> Result<PrototypeConstants> {
    match k {
        0..=3 => Err(Error::InvalidK { k, min: 4 }),
        4 => Ok(PrototypeConstants {
            tile_side: 0.5,
            super_side: 2.5,
            max_tiles: 25,
        }),
        5 | 6 => Ok(PrototypeConstants {
            tile_side: 0.25,
            super_side: 2.25,
            max_tiles: 63,
        }),
        _ => Ok(PrototypeConstants {
            tile_side: 0.5,
            super_side: 2.5,
            max_tiles: 23,
        }),
    }
}

pub type TileId = (i64, i64);

/// Grid of square tiles of side `side` whose lines sit at `offset + side * Z`
/// on each axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TilePartition {
    pub side: f64,
    pub offset: P2,
}

impl TilePartition {
    pub fn tile_of(&self, p: P2) -> TileId {
        (
            ((p.x - self.offset.x) / self.side).floor() as i64,
            ((p.y - self.offset.y) / self.side).floor() as i64,
        )
    }

    pub fn tile_center(&self, t: TileId) -> P2 {
        P2::new(
            self.offset.x + (t.0 as f64 + 0.5) * self.side,
            self.offset.y + (t.1 as f64 + 0.5) * self.side,
        )
    }

    pub fn tile_polygon(&self, t: TileId) -> ConvexPolygon {
        square(self.tile_center(t), self.side / 2.0)
    }

    /// True when `p` is farther than the slack from every grid line.
    pub fn is_interior(&self, p: P2) -> bool {
        let tol = EPS * self.side.max(1.0);
        [(p.x, self.offset.x), (p.y, self.offset.y)]
            .iter()
            .all(|&(v, o)| {
                let f = (v - o).rem_euclid(self.side);
                f > tol && self.side - f > tol
            })
    }

    /// Tiles whose interiors overlap the polygon.
    pub fn tiles_meeting(&self, g: &RegularKGon) -> Vec<TileId> {
        let (lo, hi) = g.bounding_box();
        let (a, b) = (self.tile_of(lo), self.tile_of(hi));
        let poly = g.polygon();
        let mut out = Vec::new();
        for i in a.0..=b.0 {
            for j in a.1..=b.1 {
                if polygons_overlap(&poly, &self.tile_polygon((i, j))) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub(crate) fn square(c: P2, half: f64) -> ConvexPolygon {
    ConvexPolygon::new(
        c,
        vec![
            P2::new(c.x - half, c.y - half),
            P2::new(c.x + half, c.y - half),
            P2::new(c.x + half, c.y + half),
            P2::new(c.x - half, c.y + half),
        ],
    )
    .expect("square is a valid polygon")
}

/// Separating-axis test for overlapping interiors.
pub(crate) fn polygons_overlap(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    let project = |p: &ConvexPolygon, n: P2| -> (f64, f64) {
        p.vertices()
            .iter()
            .map(|v| v.dot(n))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                (lo.min(x), hi.max(x))
            })
    };
    a.normals().iter().chain(b.normals()).all(|&n| {
        let (alo, ahi) = project(a, n);
        let (blo, bhi) = project(b, n);
        ahi > blo + EPS && bhi > alo + EPS
    })
}

/// Picks a grid offset so that no point lies on a grid line. The zero offset
/// is kept when it already works; otherwise each axis puts its lines in the
/// middle of the widest circular gap between the points' positions modulo
/// `side`.
pub fn build_partition(side: f64, points: &[P2]) -> TilePartition {
    let zero = TilePartition {
        side,
        offset: P2::new(0.0, 0.0),
    };
    if points.iter().all(|&p| zero.is_interior(p)) {
        return zero;
    }
    let axis_offset = |vals: Vec<f64>| -> f64 {
        let mut f: Vec<f64> = vals.iter().map(|v| v.rem_euclid(side)).collect();
        f.sort_by(f64::total_cmp);
        f.dedup();
        let n = f.len();
        let (mut best, mut at) = (side - f[n - 1] + f[0], (f[n - 1] + side + f[0]) / 2.0);
        for w in f.windows(2) {
            if w[1] - w[0] > best {
                best = w[1] - w[0];
                at = (w[0] + w[1]) / 2.0;
            }
        }
        at.rem_euclid(side)
    };
    TilePartition {
        side,
        offset: P2::new(
            axis_offset(points.iter().map(|p| p.x).collect()),
            axis_offset(points.iter().map(|p| p.y).collect()),
        ),
    }
}

/// Quadrant centers of the super-square of side `super_side` around
/// `tile_center`, in type order NW, NE, SW, SE.
pub fn quadrant_centers(tile_center: P2, super_side: f64) -> [P2; 4] {
    let q = super_side / 4.0;
    [
        P2::new(tile_center.x - q, tile_center.y + q),
        P2::new(tile_center.x + q, tile_center.y + q),
        P2::new(tile_center.x - q, tile_center.y - q),
        P2::new(tile_center.x + q, tile_center.y - q),
    ]
}

/// Smallest type (1-based) whose quadrant center lies in `g`.
pub fn type_of(g: &RegularKGon, centers: &[P2; 4]) -> Result<u8> {
    centers
        .iter()
        .position(|&o| g.contains(o))
        .map(|i| i as u8 + 1)
        .ok_or_else(|| {
            Error::InvariantViolation(format!(
                "translate at ({}, {}) contains no quadrant center",
                g.center().x,
                g.center().y
            ))
        })
}

/// Opening angle of the cone with apex `apex` spanned by a square tile.
pub fn cone_angle(apex: P2, tile: &ConvexPolygon) -> f64 {
    let a = Point::new(vec![apex.x, apex.y]).expect("finite apex");
    let vs: Vec<Point> = tile
        .vertices()
        .iter()
        .map(|v| Point::new(vec![v.x, v.y]).expect("finite vertex"))
        .collect();
    let mut best: f64 = 0.0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            best = best.max(angle_at(&a, &vs[i], &vs[j]).expect("apex outside the tile"));
        }
    }
    debug_assert!(best < PI);
    best
}
