//! Scaled integer lattices `(βZ)^d`.
//!
//! Lattice points are addressed by integer index vectors; the point itself is
//! `β * index`. Enumeration scans each axis with one index of slack and then
//! filters with [`axis_within`], the same predicate used for hit checks.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{axis_within, check_dim, check_positive, AxisHypercube, Point};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    spacing: f64,
    dim: usize,
}

impl LatticeSpec {
    pub fn new(spacing: f64, dim: usize) -> Result<Self> {
        check_positive("spacing", spacing)?;
        if dim == 0 {
            return Err(crate::Error::EmptyPoint);
        }
        Ok(LatticeSpec { spacing, dim })
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, index: &[i64]) -> Point {
        Point::from_vec(index.iter().map(|&z| z as f64 * self.spacing).collect())
    }

    /// Per-axis index ranges of lattice points inside `h`.
    fn axis_ranges(&self, h: &AxisHypercube) -> Vec<Vec<i64>> {
        let s = self.spacing;
        (0..self.dim)
            .map(|j| {
                let c = h.center()[j];
                let lo = ((c - h.width()) / s).floor() as i64 - 1;
                let hi = ((c + h.width()) / s).ceil() as i64 + 1;
                (lo..=hi)
                    .filter(|&z| axis_within(z as f64 * s - c, h.width(), h.is_closed()))
                    .collect()
            })
            .collect()
    }

    /// Index vectors of the lattice points inside `h`, lexicographically.
    pub fn indices_in(&self, h: &AxisHypercube) -> Result<Vec<Vec<i64>>> {
        check_dim(self.dim, h.dim())?;
        Ok(cartesian(&self.axis_ranges(h)))
    }

    /// Number of lattice points inside `h` without materializing them.
    pub fn count_in(&self, h: &AxisHypercube) -> Result<usize> {
        check_dim(self.dim, h.dim())?;
        Ok(self.axis_ranges(h).iter().map(Vec::len).product())
    }
}

/// Cartesian product of per-axis value lists, in lexicographic order.
pub fn cartesian(axes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if axes.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = vec![Vec::with_capacity(axes.len())];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&z| {
                    let mut v = prefix.clone();
                    v.push(z);
                    v
                })
            })
            .collect();
    }
    out
}

/// Points of `(βZ)^d` inside `h`, respecting its closed flag, in
/// lexicographic order.
pub fn enumerate_in_box(lattice: &LatticeSpec, h: &AxisHypercube) -> Result<Vec<Point>> {
    Ok(lattice
        .indices_in(h)?
        .iter()
        .map(|i| lattice.point(i))
        .collect())
}

/// Lower and upper bounds on the number of lattice points in a cube whose
/// side is between `l * β` and `r * β`.
pub fn count_bounds(l: f64, r: f64, d: u32) -> (u64, u64) {
    let lo = (l.floor().max(0.0) as u64).pow(d);
    let hi = ((r + 1.0).floor() as u64).pow(d);
    (lo, hi)
}

/// `floor(log2 w)` for positive finite `w`, exact at powers of two.
pub fn floor_log2(w: f64) -> i32 {
    let mut e = w.log2().floor() as i32;
    if 2f64.powi(e) > w {
        e -= 1;
    } else if 2f64.powi(e + 1) <= w {
        e += 1;
    }
    e
}

/// Rounds `c` to a point of `(2^{i+1} Z)^d`: per axis, write
/// `c_j = z_j + f_j` with `f_j` in `[0, 2^{i+1})` and round up iff
/// `f_j >= 2^i`.
pub fn anc_round(c: &Point, i: i32) -> Point {
    Point::from_vec(
        anc_round_index(c, i)
            .iter()
            .map(|&z| z as f64 * 2f64.powi(i + 1))
            .collect(),
    )
}

/// Multipliers `m_j` with `anc_round(c, i)_j = m_j * 2^{i+1}`.
pub fn anc_round_index(c: &Point, i: i32) -> Vec<i64> {
    let step = 2f64.powi(i + 1);
    let half = 2f64.powi(i);
    c.coords()
        .iter()
        .map(|&x| {
            let q = (x / step).floor();
            let f = x - q * step;
            let q = q as i64;
            if f >= half {
                q + 1
            } else {
                q
            }
        })
        .collect()
}
