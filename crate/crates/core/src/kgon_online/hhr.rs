//! Randomized online hitting of homothets of a regular k-gon with diameters
//! in `[1, M]`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::es::{check_distinct, EsState, EsStatus};
use super::shrunk::shrunk_set;
use crate::error::{Error, Result};
use crate::geometry::{RegularKGon, EPS, P2};
use crate::lattice::floor_log2;

#[derive(Clone, Debug, PartialEq)]
pub struct HhrOutcome {
    /// Layer `j` of the object; `None` when it was hit already or holds no
    /// input point.
    pub layer: Option<i32>,
    /// Shrunk copies that were unstabbed on arrival at the layer.
    pub placed_members: usize,
    /// Indices of the input points added.
    pub added: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Hhr {
    k: u32,
    max_diameter: f64,
    points: Arc<[P2]>,
    rng: ChaCha8Rng,
    layers: BTreeMap<i32, EsState>,
    chosen: BTreeSet<usize>,
    order: Vec<usize>,
}

impl Hhr {
    pub fn new(k: u32, max_diameter: f64, points: Arc<[P2]>, seed: u64) -> Result<Self> {
        super::partition::prototype_constants(k)?;
        if !(max_diameter.is_finite() && max_diameter >= 1.0) {
            return Err(Error::OutOfRange {
                width: max_diameter,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        check_distinct(&points)?;
        Ok(Hhr {
            k,
            max_diameter,
            points,
            rng: ChaCha8Rng::seed_from_u64(seed),
            layers: BTreeMap::new(),
            chosen: BTreeSet::new(),
            order: Vec::new(),
        })
    }

    pub fn points(&self) -> &[P2] {
        &self.points
    }

    pub fn layers(&self) -> &BTreeMap<i32, EsState> {
        &self.layers
    }

    /// Hitting set as point indices, in insertion order.
    pub fn chosen(&self) -> &[usize] {
        &self.order
    }

    pub fn cost(&self) -> usize {
        self.order.len()
    }

    pub fn is_hit(&self, g: &RegularKGon) -> bool {
        self.chosen.iter().any(|&i| g.contains(self.points[i]))
    }

    pub fn step(&mut self, g: &RegularKGon) -> Result<HhrOutcome> {
        if g.k() != self.k {
            return Err(Error::NotTranslates);
        }
        let w = g.diameter();
        if w < 1.0 - EPS || w > self.max_diameter + EPS {
            return Err(Error::OutOfRange {
                width: w,
                min: 1.0,
                max: self.max_diameter,
            });
        }
        let none = HhrOutcome {
            layer: None,
            placed_members: 0,
            added: Vec::new(),
        };
        if self.is_hit(g) || !self.points.iter().any(|&p| g.contains(p)) {
            return Ok(none);
        }
        let j = floor_log2(w.max(1.0));
        let es = match self.layers.entry(j) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(EsState::new(self.k, 2f64.powi(j), self.points.clone())?)
            }
        };
        let mut members = shrunk_set(g);
        members.shuffle(&mut self.rng);
        let mut out = HhrOutcome {
            layer: Some(j),
            placed_members: 0,
            added: Vec::new(),
        };
        for m in &members {
            let step = es.step(m)?;
            if step.status == EsStatus::Placed {
                out.placed_members += 1;
            }
            for v in step.added {
                if self.chosen.insert(v) {
                    self.order.push(v);
                    out.added.push(v);
                }
            }
        }
        if !self.is_hit(g) {
            return Err(Error::InvariantViolation(
                "homothet holding input points left unhit".into(),
            ));
        }
        Ok(out)
    }
}
