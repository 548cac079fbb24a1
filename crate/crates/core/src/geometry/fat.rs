//! Alpha-fat objects: a center, an inner L∞ radius (width) and an outer one
//! (height).

use std::fmt;
use std::sync::Arc;

use super::{check_positive, linf, Point, EPS};
use crate::error::{Error, Result};

pub type Membership = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum FatShape {
    /// Axis-aligned cube of half-side `width`; alpha = 1.
    LinfBall,
    /// Euclidean ball; the stored radius equals `height`.
    L2Ball,
    /// Axis-aligned box with the given half-extents.
    Box(Vec<f64>),
    /// Arbitrary membership predicate; width and height are taken on trust.
    Custom(Membership),
}

impl fmt::Debug for FatShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FatShape::LinfBall => write!(f, "LinfBall"),
            FatShape::L2Ball => write!(f, "L2Ball"),
            FatShape::Box(h) => f.debug_tuple("Box").field(h).finish(),
            FatShape::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FatObject {
    center: Point,
    width: f64,
    height: f64,
    shape: FatShape,
}

impl FatObject {
    /// Closed L∞ ball (axis-aligned cube) of half-side `width`.
    pub fn linf_ball(center: Point, width: f64) -> Result<Self> {
        check_positive("width", width)?;
        Ok(FatObject {
            center,
            width,
            height: width,
            shape: FatShape::LinfBall,
        })
    }

    /// Closed Euclidean ball. Its nearest boundary point in L∞ is along a
    /// diagonal, so `width = radius / sqrt(d)` and `height = radius`.
    pub fn l2_ball(center: Point, radius: f64) -> Result<Self> {
        check_positive("radius", radius)?;
        let d = center.dim() as f64;
        Ok(FatObject {
            center,
            width: radius / d.sqrt(),
            height: radius,
            shape: FatShape::L2Ball,
        })
    }

    /// Closed axis-aligned box with per-axis half-extents.
    pub fn boxed(center: Point, half_extents: Vec<f64>) -> Result<Self> {
        super::check_dim(center.dim(), half_extents.len())?;
        for &h in &half_extents {
            check_positive("half extent", h)?;
        }
        let width = half_extents.iter().cloned().fold(f64::INFINITY, f64::min);
        let height = half_extents.iter().cloned().fold(0.0, f64::max);
        Ok(FatObject {
            center,
            width,
            height,
            shape: FatShape::Box(half_extents),
        })
    }

    pub fn custom(center: Point, width: f64, height: f64, membership: Membership) -> Result<Self> {
        check_positive("width", width)?;
        check_positive("height", height)?;
        if width > height {
            return Err(Error::InvalidInstance(format!(
                "fat object width {width} exceeds height {height}"
            )));
        }
        if !membership(center.coords()) {
            return Err(Error::InvalidInstance(
                "fat object does not contain its center".into(),
            ));
        }
        Ok(FatObject {
            center,
            width,
            height,
            shape: FatShape::Custom(membership),
        })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn alpha(&self) -> f64 {
        self.width / self.height
    }

    pub fn shape(&self) -> &FatShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Closed membership with the global slack.
    pub fn contains(&self, p: &[f64]) -> bool {
        let c = self.center.coords();
        match &self.shape {
            FatShape::LinfBall => linf(c, p) <= self.width + EPS,
            FatShape::L2Ball => {
                let r2: f64 = c.iter().zip(p).map(|(a, b)| (a - b) * (a - b)).sum();
                r2.sqrt() <= self.height + EPS
            }
            FatShape::Box(h) => c
                .iter()
                .zip(p)
                .zip(h)
                .all(|((a, b), h)| (a - b).abs() <= h + EPS),
            FatShape::Custom(f) => f(p),
        }
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let c = self.center.coords();
        match &self.shape {
            FatShape::Box(h) => (
                c.iter().zip(h).map(|(a, h)| a - h).collect(),
                c.iter().zip(h).map(|(a, h)| a + h).collect(),
            ),
            _ => (
                c.iter().map(|a| a - self.height).collect(),
                c.iter().map(|a| a + self.height).collect(),
            ),
        }
    }

    /// L∞ distance from the center to the boundary along direction `dir`,
    /// found by bisection on the membership predicate.
    pub fn boundary_distance(&self, dir: &[f64]) -> f64 {
        let n = dir.iter().map(|a| a.abs()).fold(0.0, f64::max);
        assert!(n > 0.0, "direction must be nonzero");
        let u: Vec<f64> = dir.iter().map(|a| a / n).collect();
        let c = self.center.coords();
        let at = |t: f64| -> Vec<f64> { c.iter().zip(&u).map(|(a, b)| a + t * b).collect() };
        let (mut lo, mut hi) = (0.0, self.height * 2.0 + 1.0);
        while self.contains(&at(hi)) {
            hi *= 2.0;
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if self.contains(&at(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}
