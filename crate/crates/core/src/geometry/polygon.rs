//! Planar convex polygons, regular k-gons and the convex distance function.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::EPS;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct P2 {
    pub x: f64,
    pub y: f64,
}

impl P2 {
    pub const fn new(x: f64, y: f64) -> Self {
        P2 { x, y }
    }

    pub fn dot(self, o: P2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: P2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: P2) -> f64 {
        (self - o).norm()
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        P2::new(r * theta.cos(), r * theta.sin())
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn lerp(self, o: P2, t: f64) -> P2 {
        self + (o - self) * t
    }
}

impl Add for P2 {
    type Output = P2;
    fn add(self, o: P2) -> P2 {
        P2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for P2 {
    type Output = P2;
    fn sub(self, o: P2) -> P2 {
        P2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for P2 {
    type Output = P2;
    fn mul(self, s: f64) -> P2 {
        P2::new(self.x * s, self.y * s)
    }
}

impl Neg for P2 {
    type Output = P2;
    fn neg(self) -> P2 {
        P2::new(-self.x, -self.y)
    }
}

/// A convex polygon with a designated interior center.
///
/// Vertices are stored counter-clockwise. For every edge `e` we keep its unit
/// outward normal `n_e` and the support value `h_e = n_e . (v_e - center)`,
/// which is positive because the center is interior.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    center: P2,
    verts: Vec<P2>,
    normals: Vec<P2>,
    support: Vec<f64>,
}

impl ConvexPolygon {
    pub fn new(center: P2, mut verts: Vec<P2>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::DegeneratePolygon("fewer than three vertices"));
        }
        let area2: f64 = (0..verts.len())
            .map(|i| verts[i].cross(verts[(i + 1) % verts.len()]))
            .sum();
        let scale = verts
            .iter()
            .map(|v| v.dist(center))
            .fold(0.0, f64::max)
            .max(1.0);
        if area2.abs() <= EPS * scale * scale {
            return Err(Error::DegeneratePolygon("zero area"));
        }
        if area2 < 0.0 {
            verts.reverse();
        }
        let n = verts.len();
        let mut normals = Vec::with_capacity(n);
        let mut support = Vec::with_capacity(n);
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let e = b - a;
            let len = e.norm();
            if len <= EPS * scale {
                return Err(Error::DegeneratePolygon("repeated vertex"));
            }
            let nrm = P2::new(e.y / len, -e.x / len);
            let h = nrm.dot(a - center);
            if h <= EPS * scale {
                return Err(Error::DegeneratePolygon("center not in the interior"));
            }
            normals.push(nrm);
            support.push(h);
        }
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let c = verts[(i + 2) % n];
            if (b - a).cross(c - b) < -EPS * scale * scale {
                return Err(Error::DegeneratePolygon("not convex"));
            }
        }
        Ok(ConvexPolygon {
            center,
            verts,
            normals,
            support,
        })
    }

    pub fn center(&self) -> P2 {
        self.center
    }

    pub fn vertices(&self) -> &[P2] {
        &self.verts
    }

    pub fn normals(&self) -> &[P2] {
        &self.normals
    }

    /// Minkowski gauge of the polygon relative to its center.
    pub fn gauge(&self, v: P2) -> f64 {
        self.normals
            .iter()
            .zip(&self.support)
            .map(|(n, h)| n.dot(v) / h)
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, p: P2) -> bool {
        self.gauge(p - self.center) <= 1.0 + EPS
    }

    pub fn translated_to(&self, c: P2) -> ConvexPolygon {
        let d = c - self.center;
        ConvexPolygon {
            center: c,
            verts: self.verts.iter().map(|&v| v + d).collect(),
            normals: self.normals.clone(),
            support: self.support.clone(),
        }
    }

    /// Homothety about the polygon's own center.
    pub fn scaled(&self, s: f64) -> ConvexPolygon {
        let c = self.center;
        ConvexPolygon {
            center: c,
            verts: self.verts.iter().map(|&v| c + (v - c) * s).collect(),
            normals: self.normals.clone(),
            support: self.support.iter().map(|h| h * s).collect(),
        }
    }

    /// Edges as (start, end) pairs, counter-clockwise.
    pub fn edges(&self) -> impl Iterator<Item = (P2, P2)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| (self.verts[i], self.verts[(i + 1) % n]))
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    /// Parameter interval `[t0, t1]` of the segment `a + t (b - a)`, `t` in
    /// `[0, 1]`, lying inside the polygon, or `None` when they miss.
    pub fn clip_segment(&self, a: P2, b: P2) -> Option<(f64, f64)> {
        let d = b - a;
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        for (n, h) in self.normals.iter().zip(&self.support) {
            // n . (a + t d - c) <= h
            let num = h - n.dot(a - self.center);
            let den = n.dot(d);
            if den.abs() < 1e-15 {
                if num < -EPS {
                    return None;
                }
            } else if den > 0.0 {
                t1 = t1.min(num / den);
            } else {
                t0 = t0.max(num / den);
            }
            if t0 > t1 {
                return None;
            }
        }
        Some((t0, t1))
    }
}

/// `d_C(x, y)`: the smallest scaling of `C`, translated so its center sits at
/// `x`, whose boundary passes through `y`.
pub fn convex_distance(c: &ConvexPolygon, x: P2, y: P2) -> f64 {
    c.gauge(y - x)
}

/// Point reflection through the polygon's center.
pub fn reflect_through_origin(poly: &ConvexPolygon) -> ConvexPolygon {
    let c = poly.center;
    let verts: Vec<P2> = poly.verts.iter().map(|&v| c - (v - c)).collect();
    ConvexPolygon::new(c, verts).expect("reflection of a valid polygon is valid")
}

/// Inradius and side length of a regular k-gon with circumradius `r_out`.
pub fn kgon_metrics(k: u32, r_out: f64) -> Result<(f64, f64)> {
    if k < 3 {
        return Err(Error::InvalidK { k, min: 3 });
    }
    super::check_positive("circumradius", r_out)?;
    let a = PI / k as f64;
    Ok((r_out * a.cos(), 2.0 * r_out * a.sin()))
}

/// Regular k-gon in canonical orientation.
///
/// Vertex `m` sits at angle `-pi/2 + pi/k + 2 pi m / k`, so the bottom edge is
/// horizontal. For odd `k` this puts a vertex straight up; for `k = 4` the
/// polygon is an axis-aligned square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularKGon {
    k: u32,
    center: P2,
    circumradius: f64,
}

impl RegularKGon {
    pub fn new(k: u32, center: P2, circumradius: f64) -> Result<Self> {
        if k < 4 {
            return Err(Error::InvalidK { k, min: 4 });
        }
        if !(center.x.is_finite() && center.y.is_finite()) {
            return Err(Error::NonFinite);
        }
        super::check_positive("circumradius", circumradius)?;
        Ok(RegularKGon {
            k,
            center,
            circumradius,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn center(&self) -> P2 {
        self.center
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.circumradius
    }

    pub fn inradius(&self) -> f64 {
        self.circumradius * (PI / self.k as f64).cos()
    }

    pub fn vertex_angle(k: u32, m: u32) -> f64 {
        let k = k as f64;
        -PI / 2.0 + PI / k + 2.0 * PI * m as f64 / k
    }

    pub fn vertices(&self) -> Vec<P2> {
        (0..self.k)
            .map(|m| self.center + P2::polar(self.circumradius, Self::vertex_angle(self.k, m)))
            .collect()
    }

    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.center, self.vertices()).expect("regular polygon is valid")
    }

    /// The point reflection `-sigma` about the center.
    pub fn reflected(&self) -> ConvexPolygon {
        reflect_through_origin(&self.polygon())
    }

    /// Gauge relative to the center; edge normals are at
    /// `-pi/2 + 2 pi (m + 1) / k`.
    pub fn gauge(&self, v: P2) -> f64 {
        let r_in = self.inradius();
        (0..self.k)
            .map(|m| {
                let a = -PI / 2.0 + 2.0 * PI * m as f64 / self.k as f64;
                P2::polar(1.0, a).dot(v) / r_in
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, p: P2) -> bool {
        self.gauge(p - self.center) <= 1.0 + EPS
    }

    pub fn translated_to(&self, c: P2) -> RegularKGon {
        RegularKGon { center: c, ..*self }
    }

    /// Homothety with ratio `ratio` about `fixed`.
    pub fn homothety(&self, fixed: P2, ratio: f64) -> RegularKGon {
        RegularKGon {
            k: self.k,
            center: fixed + (self.center - fixed) * ratio,
            circumradius: self.circumradius * ratio,
        }
    }

    pub fn bounding_box(&self) -> (P2, P2) {
        let vs = self.vertices();
        let lo = vs
            .iter()
            .fold(P2::new(f64::INFINITY, f64::INFINITY), |a, v| {
                P2::new(a.x.min(v.x), a.y.min(v.y))
            });
        let hi = vs
            .iter()
            .fold(P2::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |a, v| {
                P2::new(a.x.max(v.x), a.y.max(v.y))
            });
        (lo, hi)
    }
}

/// One maximal connected piece of `boundary(sigma) ∩ boundary(sigma')`,
/// ordered along the boundary of `sigma`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryComponent {
    pub polyline: Vec<P2>,
}

impl BoundaryComponent {
    pub fn length(&self) -> f64 {
        self.polyline.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    /// Point at fraction `t` in `[0, 1]` of the arclength.
    pub fn point_at(&self, t: f64) -> P2 {
        let total = self.length();
        if self.polyline.len() == 1 || total == 0.0 {
            return self.polyline[0];
        }
        let mut left = t.clamp(0.0, 1.0) * total;
        for w in self.polyline.windows(2) {
            let l = w[0].dist(w[1]);
            if left <= l {
                return w[0].lerp(w[1], if l > 0.0 { left / l } else { 0.0 });
            }
            left -= l;
        }
        *self.polyline.last().unwrap()
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut i = i;
        while self.0[i] != r {
            let next = self.0[i];
            self.0[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

/// Intersection of two segments: nothing, a point, or a collinear overlap.
fn segment_intersection(a: P2, b: P2, c: P2, d: P2, tol: f64) -> Vec<P2> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    let qp = c - a;
    let rl = r.norm();
    let sl = s.norm();
    if denom.abs() <= 1e-12 * rl * sl {
        // parallel
        if qp.cross(r).abs() / rl > tol {
            return Vec::new();
        }
        let rr = r.dot(r);
        let t0 = qp.dot(r) / rr;
        let t1 = (d - a).dot(r) / rr;
        let (lo, hi) = (t0.min(t1).max(0.0), t0.max(t1).min(1.0));
        if lo > hi + tol / rl {
            return Vec::new();
        }
        let (lo, hi) = (lo.min(hi), hi.max(lo));
        if (hi - lo) * rl <= tol {
            return vec![a + r * ((lo + hi) / 2.0)];
        }
        return vec![a + r * lo, a + r * hi];
    }
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    let te = tol / rl;
    let ue = tol / sl;
    if t < -te || t > 1.0 + te || u < -ue || u > 1.0 + ue {
        return Vec::new();
    }
    vec![a + r * t.clamp(0.0, 1.0)]
}

/// Arclength position of a boundary point along `poly`, starting at vertex 0.
fn arclength(poly: &ConvexPolygon, p: P2) -> f64 {
    let mut acc = 0.0;
    let mut best = (f64::INFINITY, 0.0);
    for (a, b) in poly.edges() {
        let e = b - a;
        let l = e.norm();
        let t = ((p - a).dot(e) / (l * l)).clamp(0.0, 1.0);
        let dist = (a + e * t).dist(p);
        if dist < best.0 {
            best = (dist, acc + t * l);
        }
        acc += l;
    }
    best.1
}

/// Connected components of `boundary(sigma) ∩ boundary(sigma')` for two distinct
/// translates of the same regular k-gon.
pub fn boundary_intersection_components(
    sigma: &RegularKGon,
    other: &RegularKGon,
) -> Result<Vec<BoundaryComponent>> {
    let scale = sigma.circumradius.max(1.0);
    if sigma.k != other.k || (sigma.circumradius - other.circumradius).abs() > EPS * scale {
        return Err(Error::NotTranslates);
    }
    if sigma.center.dist(other.center) <= EPS * scale {
        return Err(Error::CoincidentCopies);
    }
    let tol = 1e-9 * scale;
    let p = sigma.polygon();
    let q = other.polygon();

    // Each piece is a point or a segment (two points).
    let mut pieces: Vec<Vec<P2>> = Vec::new();
    for (a, b) in p.edges() {
        for (c, d) in q.edges() {
            let hit = segment_intersection(a, b, c, d, tol);
            if !hit.is_empty() {
                pieces.push(hit);
            }
        }
    }
    if pieces.is_empty() {
        return Ok(Vec::new());
    }

    let touch_tol = 1e-7 * scale;
    let mut dsu = Dsu((0..pieces.len()).collect());
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if pieces_touch(&pieces[i], &pieces[j], touch_tol) {
                dsu.union(i, j);
            }
        }
    }

    let perim = p.perimeter();
    let mut groups: std::collections::BTreeMap<usize, Vec<P2>> = Default::default();
    for (i, piece) in pieces.into_iter().enumerate() {
        groups.entry(dsu.find(i)).or_default().extend(piece);
    }
    let mut out = Vec::new();
    for (_, pts) in groups {
        let mut tagged: Vec<(f64, P2)> = pts.into_iter().map(|x| (arclength(&p, x), x)).collect();
        tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
        tagged.dedup_by(|a, b| a.1.dist(b.1) <= touch_tol);
        // A component may straddle vertex 0; start it after the largest gap.
        if tagged.len() > 1 {
            let n = tagged.len();
            let mut cut = 0;
            let mut widest = perim - tagged[n - 1].0 + tagged[0].0;
            for i in 1..n {
                let g = tagged[i].0 - tagged[i - 1].0;
                if g > widest {
                    widest = g;
                    cut = i;
                }
            }
            tagged.rotate_left(cut);
        }
        out.push(BoundaryComponent {
            polyline: tagged.into_iter().map(|t| t.1).collect(),
        });
    }
    Ok(out)
}

fn pieces_touch(a: &[P2], b: &[P2], tol: f64) -> bool {
    let seg_point = |s: &[P2], x: P2| -> f64 {
        if s.len() == 1 {
            return s[0].dist(x);
        }
        let e = s[1] - s[0];
        let t = ((x - s[0]).dot(e) / e.dot(e)).clamp(0.0, 1.0);
        (s[0] + e * t).dist(x)
    };
    a.iter().any(|&x| seg_point(b, x) <= tol) || b.iter().any(|&x| seg_point(a, x) <= tol)
}
