//! Points, axis-aligned hypercubes and the shared geometric predicates.
//!
//! Every containment test in the crate goes through [`axis_within`] or a
//! polygon gauge compared against `1 + EPS`, so lattice enumeration and
//! hit checks never disagree about boundary points.

pub mod fat;
pub mod polygon;

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fat::{FatObject, FatShape};
pub use polygon::{
    boundary_intersection_components, convex_distance, kgon_metrics, reflect_through_origin,
    BoundaryComponent, ConvexPolygon, RegularKGon, P2,
};

/// Slack used by every geometric predicate.
pub const EPS: f64 = 1e-9;

/// A point in R^d.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Point(coords))
    }

    pub fn origin(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Point(vec![0.0; dim])
    }

    /// Builds a point from coordinates the caller already knows are finite.
    pub(crate) fn from_vec(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn translated(&self, axis: usize, delta: f64) -> Point {
        let mut c = self.0.clone();
        c[axis] += delta;
        Point(c)
    }
}

impl Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Vec<f64> {
        p.0
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn check_positive(what: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::NonPositive { what, value });
    }
    Ok(())
}

/// max_j |p_j - q_j|
pub fn linf_distance(p: &Point, q: &Point) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    Ok(linf(p.coords(), q.coords()))
}

pub(crate) fn linf(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// One-axis containment: is an offset `delta` from the center inside a slab
/// of half-width `width`?
#[inline]
pub fn axis_within(delta: f64, width: f64, closed: bool) -> bool {
    if closed {
        delta.abs() <= width + EPS
    } else {
        delta.abs() < width - EPS
    }
}

/// Axis-aligned hypercube. `width` is half the side length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisHypercube {
    center: Point,
    width: f64,
    #[serde(default)]
    closed: bool,
}

impl AxisHypercube {
    /// An open cube (interior hitting).
    pub fn new(center: Point, width: f64) -> Result<Self> {
        check_positive("width", width)?;
        Ok(AxisHypercube {
            center,
            width,
            closed: false,
        })
    }

    pub fn closed(center: Point, width: f64) -> Result<Self> {
        Ok(Self::new(center, width)?.with_closed(true))
    }

    pub fn with_closed(mut self, closed: bool) -> Self {
        self.closed = closed;
        self
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn side(&self) -> f64 {
        2.0 * self.width
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn lo(&self, axis: usize) -> f64 {
        self.center[axis] - self.width
    }

    pub fn hi(&self, axis: usize) -> f64 {
        self.center[axis] + self.width
    }

    /// Same center, width reduced by `eps`.
    pub fn shrunk(&self, eps: f64) -> Result<Self> {
        Ok(Self::new(self.center.clone(), self.width - eps)?.with_closed(self.closed))
    }

    /// Containment for coordinates of matching dimension.
    pub fn contains(&self, p: &[f64]) -> bool {
        debug_assert_eq!(p.len(), self.dim());
        self.center
            .coords()
            .iter()
            .zip(p)
            .all(|(c, x)| axis_within(x - c, self.width, self.closed))
    }

    /// True when the interiors of the two cubes overlap.
    pub fn interiors_overlap(&self, other: &AxisHypercube) -> bool {
        (0..self.dim())
            .all(|j| (self.center[j] - other.center[j]).abs() < self.width + other.width - EPS)
    }

    /// True when `other` lies inside `self` (closed, with slack).
    pub fn contains_cube(&self, other: &AxisHypercube) -> bool {
        (0..self.dim()).all(|j| other.lo(j) >= self.lo(j) - EPS && other.hi(j) <= self.hi(j) + EPS)
    }
}

pub fn hypercube_contains(h: &AxisHypercube, p: &Point) -> Result<bool> {
    check_dim(h.dim(), p.dim())?;
    Ok(h.contains(p.coords()))
}

/// Interior angle at `p` between the rays towards `x` and `y`, in [0, pi].
pub fn angle_at(p: &Point, x: &Point, y: &Point) -> Result<f64> {
    check_dim(p.dim(), x.dim())?;
    check_dim(p.dim(), y.dim())?;
    let u: Vec<f64> = x
        .coords()
        .iter()
        .zip(p.coords())
        .map(|(a, b)| a - b)
        .collect();
    let v: Vec<f64> = y
        .coords()
        .iter()
        .zip(p.coords())
        .map(|(a, b)| a - b)
        .collect();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroLengthLeg);
    }
    let dot = u.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>();
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0).acos())
}

/// The online inputs handled by the algorithms in this crate.
#[derive(Clone, Debug)]
pub enum GeomObject {
    Hypercube(AxisHypercube),
    Fat(FatObject),
    KGon(RegularKGon),
}

impl GeomObject {
    pub fn dim(&self) -> usize {
        match self {
            GeomObject::Hypercube(h) => h.dim(),
            GeomObject::Fat(f) => f.center().dim(),
            GeomObject::KGon(_) => 2,
        }
    }

    /// Closed containment (with slack), used for offline incidence.
    pub fn contains_closed(&self, p: &[f64]) -> bool {
        match self {
            GeomObject::Hypercube(h) => h
                .center()
                .coords()
                .iter()
                .zip(p)
                .all(|(c, x)| axis_within(x - c, h.width(), true)),
            GeomObject::Fat(f) => f.contains(p),
            GeomObject::KGon(g) => g.contains(P2::new(p[0], p[1])),
        }
    }

    /// Containment under the object's own semantics (open cubes stay open).
    pub fn contains(&self, p: &[f64]) -> bool {
        match self {
            GeomObject::Hypercube(h) => h.contains(p),
            _ => self.contains_closed(p),
        }
    }

    /// Axis-aligned bounding box as (lo, hi) corners.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            GeomObject::Hypercube(h) => (
                (0..h.dim()).map(|j| h.lo(j)).collect(),
                (0..h.dim()).map(|j| h.hi(j)).collect(),
            ),
            GeomObject::Fat(f) => f.bounding_box(),
            GeomObject::KGon(g) => {
                let (lo, hi) = g.bounding_box();
                (vec![lo.x, lo.y], vec![hi.x, hi.y])
            }
        }
    }
}

impl From<AxisHypercube> for GeomObject {
    fn from(h: AxisHypercube) -> Self {
        GeomObject::Hypercube(h)
    }
}

impl From<FatObject> for GeomObject {
    fn from(f: FatObject) -> Self {
        GeomObject::Fat(f)
    }
}

impl From<RegularKGon> for GeomObject {
    fn from(g: RegularKGon) -> Self {
        GeomObject::KGon(g)
    }
}
