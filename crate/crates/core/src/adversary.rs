//! Random hard sequences of nested hypercubes for online hitters.
//!
//! The tree has `log4 M` block levels; each block is a complete binary tree
//! of depth `d` whose level-`i` split moves the center by `±w e_i`, where
//! `w = M / 4^(k-1)` is the block's cube width. A block leaf's children start
//! the next block at the midpoint of the block root and leaf centers, moved
//! by `±(w/2) e_d`. Only the sampled path is ever built.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{AxisHypercube, Point, EPS};
use crate::hypercube_online::Lir;

/// `N^{k,l}_{i,j}`; all indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NodeId {
    pub k: u32,
    pub l: u64,
    pub i: u32,
    pub j: u64,
}

impl NodeId {
    pub const ROOT: NodeId = NodeId {
        k: 1,
        l: 1,
        i: 1,
        j: 1,
    };
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdversaryCube {
    pub node: NodeId,
    pub center: Point,
    pub width: f64,
    pub shrink: f64,
    /// Center of the sibling not taken (absent for the root).
    pub sibling: Option<Point>,
}

impl AdversaryCube {
    /// The closed cube as constructed.
    pub fn exact(&self) -> AxisHypercube {
        AxisHypercube::closed(self.center.clone(), self.width).expect("positive width")
    }

    /// The shrunk closed cube shown to online algorithms.
    pub fn presented(&self) -> AxisHypercube {
        AxisHypercube::closed(self.center.clone(), self.width - self.shrink)
            .expect("shrink is below the width")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdversaryTree {
    dim: usize,
    max_width: u64,
    blocks: u32,
    shrink: f64,
}

const LEAF_WIDTH: f64 = 4.0;

impl AdversaryTree {
    pub fn new(dim: usize, max_width: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyPoint);
        }
        if max_width < 4
            || !max_width.is_power_of_two()
            || !max_width.trailing_zeros().is_multiple_of(2)
        {
            return Err(Error::NotPowerOfFour(max_width));
        }
        let blocks = max_width.trailing_zeros() / 2;
        if dim as u64 * (blocks as u64 - 1) >= 63 {
            return Err(Error::InvalidInstance(
                "tree too large to index block nodes".into(),
            ));
        }
        Ok(AdversaryTree {
            dim,
            max_width,
            blocks,
            shrink: 1e-6 * LEAF_WIDTH,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_width(&self) -> u64 {
        self.max_width
    }

    /// Number of block levels, `log4 M`.
    pub fn blocks(&self) -> u32 {
        self.blocks
    }

    /// Path length `d log4 M`.
    pub fn height(&self) -> usize {
        self.dim * self.blocks as usize
    }

    /// Width of every cube in block level `k`.
    pub fn width(&self, k: u32) -> f64 {
        self.max_width as f64 / 4f64.powi(k as i32 - 1)
    }

    /// Expected cost floor `1 + (h - 1) / 2`.
    pub fn cost_floor(&self) -> f64 {
        1.0 + (self.height() as f64 - 1.0) / 2.0
    }

    pub fn root(&self) -> AdversaryCube {
        AdversaryCube {
            node: NodeId::ROOT,
            center: Point::origin(self.dim),
            width: self.width(1),
            shrink: self.shrink,
            sibling: None,
        }
    }

    /// Left and right children of `node` (centered at `center`, whose block
    /// root is centered at `block_root`).
    pub fn child_centers(
        &self,
        node: NodeId,
        center: &Point,
        block_root: &Point,
    ) -> Result<((NodeId, Point), (NodeId, Point))> {
        let d = self.dim as u32;
        let w = self.width(node.k);
        if node.i < d {
            let axis = node.i as usize - 1;
            let left = NodeId {
                i: node.i + 1,
                j: 2 * node.j - 1,
                ..node
            };
            let right = NodeId {
                j: 2 * node.j,
                ..left
            };
            return Ok((
                (left, center.translated(axis, w)),
                (right, center.translated(axis, -w)),
            ));
        }
        if node.k >= self.blocks {
            return Err(Error::LeafNode);
        }
        let mid = Point::from_vec(
            block_root
                .coords()
                .iter()
                .zip(center.coords())
                .map(|(a, b)| (a + b) / 2.0)
                .collect(),
        );
        let step = self.max_width as f64 / 2f64.powi(2 * node.k as i32 - 1);
        let base = (1u64 << (self.dim as u64)) * (node.l - 1);
        let left = NodeId {
            k: node.k + 1,
            l: base + 2 * node.j - 1,
            i: 1,
            j: 1,
        };
        let right = NodeId {
            l: base + 2 * node.j,
            ..left
        };
        Ok((
            (left, mid.translated(self.dim - 1, step)),
            (right, mid.translated(self.dim - 1, -step)),
        ))
    }

    /// Walks from the root taking the right child where `choices` is true.
    /// `choices` must have length `h - 1`.
    pub fn path_from_choices(&self, choices: &[bool]) -> Result<Vec<AdversaryCube>> {
        if choices.len() + 1 != self.height() {
            return Err(Error::InvalidInstance(format!(
                "expected {} choices, got {}",
                self.height() - 1,
                choices.len()
            )));
        }
        let mut path = vec![self.root()];
        let mut block_root = Point::origin(self.dim);
        for &right in choices {
            let cur = path.last().unwrap();
            let ((ln, lc), (rn, rc)) = self.child_centers(cur.node, &cur.center, &block_root)?;
            let (node, center, sibling) = if right { (rn, rc, lc) } else { (ln, lc, rc) };
            if node.i == 1 {
                block_root = center.clone();
            }
            path.push(AdversaryCube {
                node,
                center,
                width: self.width(node.k),
                shrink: self.shrink,
                sibling: Some(sibling),
            });
        }
        Ok(path)
    }

    /// Uniformly random root-to-leaf path.
    pub fn sample_path<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<AdversaryCube> {
        let choices: Vec<bool> = (1..self.height()).map(|_| rng.random_bool(0.5)).collect();
        self.path_from_choices(&choices)
            .expect("choice count matches")
    }

    /// [`Self::sample_path`] driven by ChaCha8 seeded with `seed`.
    pub fn seeded_path(&self, seed: u64) -> Vec<AdversaryCube> {
        self.sample_path(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Every root-to-leaf path, for trees of height at most 20.
    pub fn all_paths(&self) -> Result<Vec<Vec<AdversaryCube>>> {
        let h = self.height();
        if h > 20 {
            return Err(Error::InvalidInstance(format!(
                "height {h} too large to enumerate"
            )));
        }
        (0u64..1 << (h - 1))
            .map(|bits| {
                let choices: Vec<bool> = (0..h - 1).map(|b| bits >> b & 1 == 1).collect();
                self.path_from_choices(&choices)
            })
            .collect()
    }
}

/// Checks the construction along `path` and returns an integer point inside
/// every presented cube.
pub fn verify_path(tree: &AdversaryTree, path: &[AdversaryCube]) -> Result<Point> {
    let d = tree.dim();
    if path.len() != tree.height() {
        return Err(Error::InvariantViolation(format!(
            "path length {} differs from tree height {}",
            path.len(),
            tree.height()
        )));
    }
    let fail = |msg: String| Err(Error::InvariantViolation(msg));
    let last = path.last().unwrap();
    if (last.width - LEAF_WIDTH).abs() > EPS {
        return fail(format!("leaf width {} is not 4", last.width));
    }
    // siblings are interior-disjoint
    for c in path.iter().skip(1) {
        let sib = c.sibling.as_ref().expect("non-root cubes carry a sibling");
        let gap = crate::geometry::linf(c.center.coords(), sib.coords());
        if gap < 2.0 * c.width - EPS {
            return fail(format!("siblings at {:?} overlap", c.node));
        }
    }
    let mut lo = vec![f64::NEG_INFINITY; d];
    let mut hi = vec![f64::INFINITY; d];
    let intersect = |lo: &mut [f64], hi: &mut [f64], h: &AxisHypercube| {
        for j in 0..d {
            lo[j] = lo[j].max(h.lo(j));
            hi[j] = hi[j].min(h.hi(j));
        }
    };
    for (b, block) in path.chunks(d).enumerate() {
        // each cube of this block lies in the previous blocks' intersection
        for c in block {
            let h = c.exact();
            if (0..d).any(|j| h.lo(j) < lo[j] - EPS || h.hi(j) > hi[j] + EPS) {
                return fail(format!(
                    "cube {:?} leaves the enclosing block intersection",
                    c.node
                ));
            }
        }
        let mut blo = vec![f64::NEG_INFINITY; d];
        let mut bhi = vec![f64::INFINITY; d];
        for c in block {
            intersect(&mut blo, &mut bhi, &c.exact());
        }
        // the block intersection holds two half-width cubes split along e_d
        let w = block[0].width;
        let mid: Vec<f64> = block[0]
            .center
            .coords()
            .iter()
            .zip(block[d - 1].center.coords())
            .map(|(a, b)| (a + b) / 2.0)
            .collect();
        for sign in [1.0, -1.0] {
            for j in 0..d {
                let c = mid[j] + if j == d - 1 { sign * w / 2.0 } else { 0.0 };
                if c - w / 2.0 < blo[j] - EPS || c + w / 2.0 > bhi[j] + EPS {
                    return fail(format!(
                        "block {} intersection misses a half-width cube",
                        b + 1
                    ));
                }
            }
        }
        lo = blo;
        hi = bhi;
    }
    for j in 0..d {
        if hi[j] - lo[j] < 4.0 - EPS {
            return fail(format!("intersection too thin on axis {j}"));
        }
    }
    let witness = Point::from_vec((0..d).map(|j| ((lo[j] + hi[j]) / 2.0).round()).collect());
    if !path
        .iter()
        .all(|c| c.presented().contains(witness.coords()))
    {
        return fail("integer witness misses a presented cube".into());
    }
    Ok(witness)
}

/// An online algorithm that can be fed adversary cubes.
pub trait CubeHitter {
    /// Presents one cube and returns the number of points placed for it.
    fn present(&mut self, cube: &AxisHypercube) -> Result<usize>;
}

/// Places the integer point nearest to the center of each unhit cube.
#[derive(Clone, Debug, Default)]
pub struct NearestCenterGreedy {
    points: Vec<Point>,
}

impl CubeHitter for NearestCenterGreedy {
    fn present(&mut self, cube: &AxisHypercube) -> Result<usize> {
        if self.points.iter().any(|p| cube.contains(p.coords())) {
            return Ok(0);
        }
        let p = Point::from_vec(cube.center().coords().iter().map(|x| x.round()).collect());
        if !cube.contains(p.coords()) {
            return Err(Error::EmptyLatticeSet);
        }
        self.points.push(p);
        Ok(1)
    }
}

/// Knows the path in advance and places its witness once.
#[derive(Clone, Debug)]
pub struct OfflineWitness {
    witness: Point,
    placed: bool,
}

impl OfflineWitness {
    pub fn new(witness: Point) -> Self {
        OfflineWitness {
            witness,
            placed: false,
        }
    }
}

impl CubeHitter for OfflineWitness {
    fn present(&mut self, cube: &AxisHypercube) -> Result<usize> {
        if self.placed && cube.contains(self.witness.coords()) {
            return Ok(0);
        }
        if !cube.contains(self.witness.coords()) {
            return Err(Error::InvariantViolation("witness misses a cube".into()));
        }
        self.placed = true;
        Ok(1)
    }
}

impl CubeHitter for Lir {
    fn present(&mut self, cube: &AxisHypercube) -> Result<usize> {
        Ok(self.step(cube)?.added.len())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostEstimate {
    pub trials: usize,
    pub height: usize,
    pub mean: f64,
    pub std_error: f64,
    pub floor: f64,
}

/// Independent 64-bit seed for trial `t` under a master seed.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    rng.random()
}

/// Mean cost of a fresh hitter on `trials` random paths. `make` builds the
/// hitter for a trial given its seed and the (already sampled) path.
pub fn measure_expected_cost<H, F>(
    tree: &AdversaryTree,
    trials: usize,
    seed: u64,
    mut make: F,
) -> Result<CostEstimate>
where
    H: CubeHitter,
    F: FnMut(u64, &[AdversaryCube]) -> Result<H>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut costs = Vec::with_capacity(trials);
    for t in 0..trials as u64 {
        let path = tree.sample_path(&mut rng);
        let mut hitter = make(trial_seed(seed, t), &path)?;
        let mut cost = 0usize;
        for c in &path {
            cost += hitter.present(&c.presented())?;
        }
        costs.push(cost as f64);
    }
    let n = costs.len().max(1) as f64;
    let mean = costs.iter().sum::<f64>() / n;
    let var = if costs.len() > 1 {
        costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(CostEstimate {
        trials,
        height: tree.height(),
        mean,
        std_error: (var / n).sqrt(),
        floor: tree.cost_floor(),
    })
}
