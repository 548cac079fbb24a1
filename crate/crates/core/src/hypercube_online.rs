//! Randomized online hitting of axis-aligned hypercubes.
//!
//! [`RirState`] handles cubes of one fixed width `s` with points of `(sZ)^d`.
//! [`Lir`] splits widths in `[1, M]` into layers, replaces each cube by a
//! core cube of the layer's width with the same lattice points, and runs one
//! `RirState` per layer.
//!
//! Weights are kept as tripling counts: a point tripled `t` times has weight
//! `3^(t - d - 1)`. Weight sums are then exact integers scaled by `3^(d+1)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{AxisHypercube, Point, EPS};
use crate::lattice::{floor_log2, LatticeSpec};

/// Grid spacing of layer `k`: `2^(k/2)` for even `k`, `1.5 * 2^((k-1)/2)` for
/// odd `k`.
pub fn layer_spacing(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        2f64.powi((k / 2) as i32)
    } else {
        1.5 * 2f64.powi(((k - 1) / 2) as i32)
    }
}

/// Upper end (exclusive) of the width interval of layer `k`.
pub fn layer_upper(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.5 * layer_spacing(k)
    } else {
        layer_spacing(k) * 4.0 / 3.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LayerAssignment {
    pub k: u32,
    pub spacing: f64,
}

/// Layer whose half-open width interval contains `w`.
pub fn layer_of(w: f64) -> Result<LayerAssignment> {
    if !(w.is_finite() && w >= 1.0) {
        return Err(Error::OutOfRange {
            width: w,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let e = floor_log2(w);
    let k = if w < 1.5 * 2f64.powi(e) {
        2 * e as u32
    } else {
        2 * e as u32 + 1
    };
    Ok(LayerAssignment {
        k,
        spacing: layer_spacing(k),
    })
}

/// Closed cube of width `s(k)` with the same `(s(k)Z)^d` points as the input.
#[derive(Clone, Debug, PartialEq)]
pub struct Core {
    pub cube: AxisHypercube,
    pub lattice: Vec<Vec<i64>>,
}

pub fn core_of(sigma: &AxisHypercube, layer: LayerAssignment) -> Result<Core> {
    let s = layer.spacing;
    let lat = LatticeSpec::new(s, sigma.dim())?;
    let q = lat.indices_in(sigma)?;
    if q.is_empty() {
        return Err(Error::EmptyLatticeSet);
    }
    let d = sigma.dim();
    // an open cube of width exactly s centered on a lattice coordinate falls short
    let (min, max) = (1usize << d, 3usize.pow(d as u32));
    if !(min..=max).contains(&q.len()) {
        return Err(Error::LatticeWindow {
            count: q.len(),
            min,
            max,
        });
    }
    let center: Vec<f64> = (0..d)
        .map(|j| {
            let lo = q.iter().map(|v| v[j]).min().unwrap();
            let hi = q.iter().map(|v| v[j]).max().unwrap();
            (lo + hi) as f64 * s / 2.0
        })
        .collect();
    let cube = AxisHypercube::closed(Point::from_vec(center), s)?;
    let qh = lat.indices_in(&cube)?;
    if qh != q {
        return Err(Error::InvariantViolation(format!(
            "core lattice set differs from the input's ({} vs {} points)",
            qh.len(),
            q.len()
        )));
    }
    Ok(Core { cube, lattice: q })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RirBranch {
    AlreadyHit,
    FromB,
    Heavy,
    Sampled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RirOutcome {
    pub branch: RirBranch,
    /// Lattice indices newly added to A.
    pub added: Vec<Vec<i64>>,
    /// Indices drawn in the sampling branch, in draw order.
    pub draws: Vec<Vec<i64>>,
}

/// Number of independent draws in the sampling branch: `ceil(5d/2)`.
pub fn sample_count(d: usize) -> usize {
    (5 * d).div_ceil(2)
}

#[derive(Clone, Debug)]
pub struct RirState {
    lattice: LatticeSpec,
    a1: BTreeSet<Vec<i64>>,
    a2: BTreeSet<Vec<i64>>,
    b: BTreeSet<Vec<i64>>,
    presented: usize,
    triplings: HashMap<Vec<i64>, u32>,
    rng: ChaCha8Rng,
}

impl RirState {
    pub fn new(spacing: f64, dim: usize, rng: ChaCha8Rng) -> Result<Self> {
        Ok(RirState {
            lattice: LatticeSpec::new(spacing, dim)?,
            a1: BTreeSet::new(),
            a2: BTreeSet::new(),
            b: BTreeSet::new(),
            presented: 0,
            triplings: HashMap::new(),
            rng,
        })
    }

    pub fn seeded(spacing: f64, dim: usize, seed: u64) -> Result<Self> {
        Self::new(spacing, dim, ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn spacing(&self) -> f64 {
        self.lattice.spacing()
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn a1(&self) -> &BTreeSet<Vec<i64>> {
        &self.a1
    }

    pub fn a2(&self) -> &BTreeSet<Vec<i64>> {
        &self.a2
    }

    pub fn b(&self) -> &BTreeSet<Vec<i64>> {
        &self.b
    }

    pub fn presented(&self) -> usize {
        self.presented
    }

    pub fn cost(&self) -> usize {
        self.a1.len() + self.a2.len()
    }

    /// Current weight of the lattice point with the given index.
    pub fn weight(&self, index: &[i64]) -> f64 {
        let t = self.triplings.get(index).copied().unwrap_or(0) as i32;
        3f64.powi(t - self.dim() as i32 - 1)
    }

    /// All points of A as coordinates.
    pub fn points(&self) -> Vec<Point> {
        self.a1
            .iter()
            .chain(&self.a2)
            .map(|i| self.lattice.point(i))
            .collect()
    }

    fn in_a(&self, i: &Vec<i64>) -> bool {
        self.a1.contains(i) || self.a2.contains(i)
    }

    pub fn step(&mut self, sigma: &AxisHypercube) -> Result<RirOutcome> {
        let s = self.spacing();
        if (sigma.width() - s).abs() > EPS * s.max(1.0) {
            return Err(Error::WidthMismatch {
                width: sigma.width(),
                spacing: s,
            });
        }
        let d = self.dim();
        let q = self.lattice.indices_in(sigma)?;
        let (min, max) = (1usize << d, 3usize.pow(d as u32));
        if q.len() < min || q.len() > max {
            return Err(Error::LatticeWindow {
                count: q.len(),
                min,
                max,
            });
        }
        self.presented += 1;
        let mut out = RirOutcome {
            branch: RirBranch::AlreadyHit,
            added: Vec::new(),
            draws: Vec::new(),
        };
        if q.iter().any(|i| self.in_a(i)) {
            return Ok(out);
        }
        // q is lexicographic, so the first match is the smallest
        if let Some(p) = q.iter().find(|i| self.b.contains(*i)) {
            self.a1.insert(p.clone());
            out.branch = RirBranch::FromB;
            out.added.push(p.clone());
            return Ok(out);
        }
        let scaled: Vec<u128> = q
            .iter()
            .map(|i| 3u128.pow(self.triplings.get(i).copied().unwrap_or(0)))
            .collect();
        if scaled.iter().sum::<u128>() >= 3u128.pow(d as u32 + 1) {
            let p = q[0].clone();
            self.a2.insert(p.clone());
            out.branch = RirBranch::Heavy;
            out.added.push(p);
            return Ok(out);
        }
        let dist = WeightedIndex::new(scaled.iter().map(|&w| w as f64))
            .expect("lattice weights are positive");
        for _ in 0..sample_count(d) {
            let p = q[dist.sample(&mut self.rng)].clone();
            self.b.insert(p.clone());
            out.draws.push(p);
        }
        let p = q
            .iter()
            .find(|i| self.b.contains(*i))
            .expect("sampled points lie in the cube")
            .clone();
        self.a1.insert(p.clone());
        out.added.push(p);
        for i in &q {
            *self.triplings.entry(i.clone()).or_insert(0) += 1;
        }
        out.branch = RirBranch::Sampled;
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LirOutcome {
    /// Layer that handled the cube; `None` when it was already hit.
    pub layer: Option<u32>,
    pub branch: RirBranch,
    pub added: Vec<Point>,
}

/// Layered randomized algorithm for hypercubes with widths in `[1, M]`.
#[derive(Clone, Debug)]
pub struct Lir {
    dim: usize,
    max_width: f64,
    seed: u64,
    layers: BTreeMap<u32, RirState>,
    chosen: Vec<Point>,
}

impl Lir {
    pub fn new(dim: usize, max_width: f64, seed: u64) -> Result<Self> {
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
        Ok(Lir {
            dim,
            max_width,
            seed,
            layers: BTreeMap::new(),
            chosen: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn layers(&self) -> &BTreeMap<u32, RirState> {
        &self.layers
    }

    /// Union of A over all layers, in insertion order.
    pub fn points(&self) -> &[Point] {
        &self.chosen
    }

    pub fn cost(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_hit(&self, sigma: &AxisHypercube) -> bool {
        self.chosen.iter().any(|p| sigma.contains(p.coords()))
    }

    pub fn step(&mut self, sigma: &AxisHypercube) -> Result<LirOutcome> {
        crate::geometry::check_dim(self.dim, sigma.dim())?;
        let w = sigma.width();
        if w < 1.0 - EPS || w > self.max_width + EPS {
            return Err(Error::OutOfRange {
                width: w,
                min: 1.0,
                max: self.max_width,
            });
        }
        if self.is_hit(sigma) {
            return Ok(LirOutcome {
                layer: None,
                branch: RirBranch::AlreadyHit,
                added: Vec::new(),
            });
        }
        let layer = layer_of(w.max(1.0))?;
        let core = core_of(sigma, layer)?;
        let (dim, seed) = (self.dim, self.seed);
        let state = match self.layers.entry(layer.k) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(layer.k as u64);
                e.insert(RirState::new(layer.spacing, dim, rng)?)
            }
        };
        let out = state.step(&core.cube)?;
        let added: Vec<Point> = out.added.iter().map(|i| state.lattice.point(i)).collect();
        self.chosen.extend(added.iter().cloned());
        if !self.is_hit(sigma) {
            return Err(Error::InvariantViolation(
                "cube not hit after its layer step".into(),
            ));
        }
        Ok(LirOutcome {
            layer: Some(layer.k),
            branch: out.branch,
            added,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(c: &[f64], w: f64) -> AxisHypercube {
        AxisHypercube::new(Point::new(c.to_vec()).unwrap(), w).unwrap()
    }

    /// Scans the explicit interval table.
    fn layer_table_oracle(w: f64) -> u32 {
        (0..64)
            .find(|&k| w >= layer_spacing(k) && w < layer_upper(k))
            .unwrap()
    }

    #[test]
    fn layer_examples() {
        assert_eq!(
            layer_of(1.0).unwrap(),
            LayerAssignment { k: 0, spacing: 1.0 }
        );
        assert_eq!(
            layer_of(2.5).unwrap(),
            LayerAssignment { k: 2, spacing: 2.0 }
        );
        assert_eq!(
            layer_of(3.0).unwrap(),
            LayerAssignment { k: 3, spacing: 3.0 }
        );
        assert!(layer_of(0.5).is_err());
        for w in [
            1.0, 1.49, 1.5, 1.99, 2.0, 2.999, 3.0, 4.0, 6.0, 7.9, 8.0, 1000.0,
        ] {
            assert_eq!(layer_of(w).unwrap().k, layer_table_oracle(w), "w = {w}");
        }
    }

    #[test]
    fn layer_intervals_tile_the_line() {
        for k in 0..20 {
            assert_eq!(layer_upper(k), layer_spacing(k + 1));
        }
    }

    #[test]
    fn first_cube_takes_sampling_branch() {
        let mut st = RirState::seeded(1.0, 3, 1).unwrap();
        let sigma = cube(&[1.25; 3], 1.0);
        let out = st.step(&sigma).unwrap();
        assert_eq!(out.branch, RirBranch::Sampled);
        assert_eq!(out.draws.len(), 8);
        assert_eq!(out.added.len(), 1);
        assert!(st.a1().is_subset(st.b()));
        for i in LatticeSpec::new(1.0, 3)
            .unwrap()
            .indices_in(&sigma)
            .unwrap()
        {
            assert!((st.weight(&i) - 3f64.powi(-3)).abs() < 1e-15);
        }
        assert!((st.weight(&[100, 100, 100]) - 3f64.powi(-4)).abs() < 1e-15);
        let again = st.step(&sigma).unwrap();
        assert_eq!(again.branch, RirBranch::AlreadyHit);
        assert_eq!(st.cost(), 1);
    }

    #[test]
    fn width_and_window_errors() {
        let mut st = RirState::seeded(1.0, 2, 0).unwrap();
        assert!(matches!(
            st.step(&cube(&[0.5, 0.5], 1.2)),
            Err(Error::WidthMismatch { .. })
        ));
        // open cube of width s centered on a lattice point: one point per axis
        assert!(matches!(
            st.step(&cube(&[0.0, 0.0], 1.0)),
            Err(Error::LatticeWindow { count: 1, .. })
        ));
        let mut lir = Lir::new(2, 8.0, 0).unwrap();
        assert!(matches!(
            lir.step(&cube(&[0.0, 3.0], 1.0)),
            Err(Error::LatticeWindow { count: 1, .. })
        ));
    }

    #[test]
    fn core_examples() {
        let sigma = AxisHypercube::closed(Point::new(vec![2.5, 2.5]).unwrap(), 2.2).unwrap();
        let core = core_of(&sigma, LayerAssignment { k: 2, spacing: 2.0 }).unwrap();
        assert_eq!(core.cube.center().coords(), &[3.0, 3.0]);
        assert_eq!(core.cube.width(), 2.0);
        assert_eq!(
            core.lattice,
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );

        let fixed = AxisHypercube::closed(Point::new(vec![2.0, 4.0]).unwrap(), 2.0).unwrap();
        let core = core_of(&fixed, LayerAssignment { k: 2, spacing: 2.0 }).unwrap();
        assert_eq!(core.cube, fixed);

        // 2 x 3 pattern
        let sigma = AxisHypercube::closed(Point::new(vec![1.0, 2.0]).unwrap(), 2.2).unwrap();
        let l = LayerAssignment { k: 2, spacing: 2.0 };
        let core = core_of(&sigma, l).unwrap();
        assert_eq!(core.lattice.len(), 6);
        assert_eq!(core.cube.center().coords(), &[1.0, 2.0]);
    }

    #[test]
    fn lir_repeat_adds_nothing() {
        let mut lir = Lir::new(2, 8.0, 3).unwrap();
        let sigma = cube(&[0.3, 0.4], 2.7);
        let first = lir.step(&sigma).unwrap();
        assert_eq!(lir.layers().len(), 1);
        assert!(!first.added.is_empty());
        let second = lir.step(&sigma).unwrap();
        assert!(second.added.is_empty());
        assert!(lir.step(&cube(&[0.0, 0.0], 9.0)).is_err());
    }
}
