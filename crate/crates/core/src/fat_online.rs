//! Deterministic online hitting of alpha-fat objects with widths in `[1, M]`.
//!
//! An unhit object of width `w` is hit with the point of `(2^{i+1}Z)^d`
//! nearest to its center (per [`anc_round`]), where `i = floor(log2 w)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::{check_dim, linf, FatObject, Point, EPS};
use crate::lattice::{anc_round, floor_log2};

/// Worst-case competitive ratio `floor(2/alpha + 2)^d * (floor(log2 M) + 1)`.
pub fn anc_bound(alpha: f64, d: u32, max_width: f64) -> f64 {
    let base = (2.0 / alpha + 2.0 + 1e-12).floor();
    let layers = (max_width.log2() + 1e-12).floor() + 1.0;
    base.powi(d as i32) * layers
}

#[derive(Clone, Debug)]
pub struct AncState {
    dim: usize,
    max_width: f64,
    chosen: Vec<Point>,
    keys: BTreeSet<Vec<i64>>,
    per_layer: BTreeMap<i32, usize>,
}

impl AncState {
    pub fn new(dim: usize, max_width: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyPoint);
        }
        if !(max_width.is_finite() && max_width >= 1.0) {
            return Err(Error::OutOfRange {
                width: max_width,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        Ok(AncState {
            dim,
            max_width,
            chosen: Vec::new(),
            keys: BTreeSet::new(),
            per_layer: BTreeMap::new(),
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.chosen
    }

    pub fn cost(&self) -> usize {
        self.chosen.len()
    }

    /// Number of points placed per layer `i`.
    pub fn per_layer(&self) -> &BTreeMap<i32, usize> {
        &self.per_layer
    }

    pub fn is_hit(&self, sigma: &FatObject) -> bool {
        self.chosen.iter().any(|p| sigma.contains(p.coords()))
    }

    pub fn step(&mut self, sigma: &FatObject) -> Result<Option<Point>> {
        check_dim(self.dim, sigma.dim())?;
        let w = sigma.width();
        if w < 1.0 - EPS || w > self.max_width + EPS {
            return Err(Error::OutOfRange {
                width: w,
                min: 1.0,
                max: self.max_width,
            });
        }
        if self.is_hit(sigma) {
            return Ok(None);
        }
        let i = floor_log2(w.max(1.0));
        let r = anc_round(sigma.center(), i);
        if linf(r.coords(), sigma.center().coords()) > 2f64.powi(i) + EPS {
            return Err(Error::InvariantViolation(format!(
                "rounded point {:?} farther than 2^{i} from the center",
                r.coords()
            )));
        }
        if !sigma.contains(r.coords()) {
            return Err(Error::InconsistentFatObject {
                point: r.into_vec(),
            });
        }
        // Points are integers, so the rounded coordinates are exact keys.
        let key: Vec<i64> = r.coords().iter().map(|&x| x as i64).collect();
        if self.keys.insert(key) {
            self.chosen.push(r.clone());
            *self.per_layer.entry(i).or_insert(0) += 1;
        }
        Ok(Some(r))
    }
}
