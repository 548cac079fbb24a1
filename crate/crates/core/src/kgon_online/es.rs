//! Deterministic online hitting of translates of one regular k-gon.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::extreme::extreme_points;
use super::partition::{
    build_partition, prototype_constants, quadrant_centers, type_of, PrototypeConstants, TileId,
    TilePartition,
};
use super::ranking::vertex_ranking;
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, RegularKGon, EPS, P2};

/// Preprocessed data of one occupied tile.
#[derive(Clone, Debug)]
pub struct TileTables {
    /// Indices of the input points inside the tile.
    pub points: Vec<usize>,
    /// Quadrant centers in type order.
    pub quadrants: [P2; 4],
    /// Extreme points per type, in angle order.
    pub extremes: [Vec<usize>; 4],
    /// Vertex-ranking colors aligned with `extremes`.
    pub colors: [Vec<u32>; 4],
}

impl TileTables {
    /// Positions within `extremes[tau - 1]` of the extreme points inside `g`.
    pub fn extreme_positions_in(&self, pts: &[P2], tau: u8, g: &RegularKGon) -> Vec<usize> {
        self.extremes[tau as usize - 1]
            .iter()
            .enumerate()
            .filter(|(_, &i)| g.contains(pts[i]))
            .map(|(pos, _)| pos)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EsStatus {
    AlreadyHit,
    /// The translate contains no input point.
    Ignored,
    Placed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EsOutcome {
    pub status: EsStatus,
    /// Indices of the input points added to the hitting set.
    pub added: Vec<usize>,
}

pub fn check_distinct(points: &[P2]) -> Result<()> {
    let mut seen = HashSet::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if !(p.x.is_finite() && p.y.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !seen.insert((p.x.to_bits(), p.y.to_bits())) {
            return Err(Error::DuplicatePoint(i));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct EsState {
    proto: RegularKGon,
    constants: PrototypeConstants,
    partition: TilePartition,
    points: Arc<[P2]>,
    tiles: HashMap<TileId, TileTables>,
    chosen: BTreeSet<usize>,
    order: Vec<usize>,
    // (tile, type, point) -> colors placed for unstabbed translates holding it
    color_log: HashMap<(TileId, u8, usize), BTreeSet<u32>>,
}

impl EsState {
    /// Preprocesses translates of the regular `k`-gon of the given diameter
    /// against `points`. Tile and super-square sizes scale with
    /// `diameter / 2`.
    pub fn new(k: u32, diameter: f64, points: Arc<[P2]>) -> Result<Self> {
        let base = prototype_constants(k)?;
        crate::geometry::check_positive("diameter", diameter)?;
        check_distinct(&points)?;
        let scale = diameter / 2.0;
        let constants = PrototypeConstants {
            tile_side: base.tile_side * scale,
            super_side: base.super_side * scale,
            max_tiles: base.max_tiles,
        };
        let proto = RegularKGon::new(k, P2::new(0.0, 0.0), diameter / 2.0)?;
        let partition = build_partition(constants.tile_side, &points);
        let neg = proto.reflected();

        let mut by_tile: HashMap<TileId, Vec<usize>> = HashMap::new();
        for (i, &p) in points.iter().enumerate() {
            by_tile.entry(partition.tile_of(p)).or_default().push(i);
        }
        let tiles = by_tile
            .into_iter()
            .map(|(id, idx)| {
                let t = build_tile(&partition, &constants, &neg, &points, id, idx);
                (id, t)
            })
            .collect();
        Ok(EsState {
            proto,
            constants,
            partition,
            points,
            tiles,
            chosen: BTreeSet::new(),
            order: Vec::new(),
            color_log: HashMap::new(),
        })
    }

    pub fn prototype(&self) -> &RegularKGon {
        &self.proto
    }

    pub fn constants(&self) -> &PrototypeConstants {
        &self.constants
    }

    pub fn partition(&self) -> &TilePartition {
        &self.partition
    }

    pub fn points(&self) -> &[P2] {
        &self.points
    }

    pub fn tile(&self, id: TileId) -> Option<&TileTables> {
        self.tiles.get(&id)
    }

    pub fn tiles(&self) -> impl Iterator<Item = (&TileId, &TileTables)> {
        self.tiles.iter()
    }

    /// Hitting set as point indices, in insertion order.
    pub fn chosen(&self) -> &[usize] {
        &self.order
    }

    pub fn cost(&self) -> usize {
        self.order.len()
    }

    fn check_translate(&self, g: &RegularKGon) -> Result<()> {
        let r = self.proto.circumradius();
        if g.k() != self.proto.k() || (g.circumradius() - r).abs() > EPS * r.max(1.0) {
            return Err(Error::NotTranslates);
        }
        Ok(())
    }

    /// Input points inside `g`, grouped by occupied tile.
    pub fn points_by_tile(&self, g: &RegularKGon) -> Vec<(TileId, Vec<usize>)> {
        let (lo, hi) = g.bounding_box();
        let (a, b) = (self.partition.tile_of(lo), self.partition.tile_of(hi));
        let mut out = Vec::new();
        for i in a.0..=b.0 {
            for j in a.1..=b.1 {
                if let Some(t) = self.tiles.get(&(i, j)) {
                    let inside: Vec<usize> = t
                        .points
                        .iter()
                        .copied()
                        .filter(|&p| g.contains(self.points[p]))
                        .collect();
                    if !inside.is_empty() {
                        out.push(((i, j), inside));
                    }
                }
            }
        }
        out
    }

    pub fn step(&mut self, g: &RegularKGon) -> Result<EsOutcome> {
        self.check_translate(g)?;
        let groups = self.points_by_tile(g);
        if groups.is_empty() {
            return Ok(EsOutcome {
                status: EsStatus::Ignored,
                added: Vec::new(),
            });
        }
        if groups
            .iter()
            .any(|(_, idx)| idx.iter().any(|i| self.chosen.contains(i)))
        {
            return Ok(EsOutcome {
                status: EsStatus::AlreadyHit,
                added: Vec::new(),
            });
        }
        let mut added = Vec::with_capacity(groups.len());
        for (id, inside) in groups {
            let t = &self.tiles[&id];
            let tau = type_of(g, &t.quadrants)?;
            let pos = t.extreme_positions_in(&self.points, tau, g);
            if pos.is_empty() {
                return Err(Error::InvariantViolation(format!(
                    "translate holds points of tile {id:?} but none of its type-{tau} extreme points"
                )));
            }
            if pos.last().unwrap() - pos[0] + 1 != pos.len() {
                return Err(Error::InvariantViolation(format!(
                    "extreme points of tile {id:?}, type {tau} inside a translate are not contiguous: {pos:?}"
                )));
            }
            let colors = &t.colors[tau as usize - 1];
            // first position with the largest color, i.e. smallest angle on ties
            let best = pos
                .iter()
                .copied()
                .reduce(|a, b| if colors[b] > colors[a] { b } else { a })
                .unwrap();
            let color = colors[best];
            let v = t.extremes[tau as usize - 1][best];
            for p in inside {
                if !self
                    .color_log
                    .entry((id, tau, p))
                    .or_default()
                    .insert(color)
                {
                    return Err(Error::InvariantViolation(format!(
                        "two unstabbed type-{tau} translates sharing point {p} of tile {id:?} got color {color}"
                    )));
                }
            }
            added.push(v);
        }
        for &v in &added {
            if self.chosen.insert(v) {
                self.order.push(v);
            }
        }
        Ok(EsOutcome {
            status: EsStatus::Placed,
            added,
        })
    }
}

fn build_tile(
    partition: &TilePartition,
    constants: &PrototypeConstants,
    neg: &ConvexPolygon,
    points: &[P2],
    id: TileId,
    idx: Vec<usize>,
) -> TileTables {
    let center = partition.tile_center(id);
    let quadrants = quadrant_centers(center, constants.super_side);
    let local: Vec<P2> = idx.iter().map(|&i| points[i]).collect();
    let extremes: [Vec<usize>; 4] = std::array::from_fn(|tau| {
        extreme_points(neg, &local, quadrants[tau], center)
            .into_iter()
            .map(|j| idx[j])
            .collect()
    });
    let colors = std::array::from_fn(|tau| vertex_ranking(extremes[tau].len()));
    TileTables {
        points: idx,
        quadrants,
        extremes,
        colors,
    }
}
