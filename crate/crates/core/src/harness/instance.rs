//! Line-delimited JSON instance files: one header line, then one object per
//! line in arrival order.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AxisHypercube, FatObject, GeomObject, Point, RegularKGon, EPS, P2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Points are the integer lattice.
    Lattice,
    /// Points are listed in the header.
    Finite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectClass {
    Hypercube,
    Fat,
    Kgon,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub variant: Variant,
    pub d: usize,
    #[serde(rename = "M")]
    pub max_size: f64,
    pub class: ObjectClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ObjectRecord {
    Hypercube {
        center: Vec<f64>,
        width: f64,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        closed: bool,
    },
    LinfBall {
        center: Vec<f64>,
        width: f64,
    },
    L2Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Box {
        center: Vec<f64>,
        half_extents: Vec<f64>,
    },
    Kgon {
        center: [f64; 2],
        diameter: f64,
    },
}

impl ObjectRecord {
    fn class(&self) -> ObjectClass {
        match self {
            ObjectRecord::Hypercube { .. } => ObjectClass::Hypercube,
            ObjectRecord::Kgon { .. } => ObjectClass::Kgon,
            _ => ObjectClass::Fat,
        }
    }

    /// Builds the geometric object; `k` is needed for polygons.
    pub fn to_object(&self, k: Option<u32>) -> Result<GeomObject> {
        Ok(match self {
            ObjectRecord::Hypercube {
                center,
                width,
                closed,
            } => AxisHypercube::new(Point::new(center.clone())?, *width)?
                .with_closed(*closed)
                .into(),
            ObjectRecord::LinfBall { center, width } => {
                FatObject::linf_ball(Point::new(center.clone())?, *width)?.into()
            }
            ObjectRecord::L2Ball { center, radius } => {
                FatObject::l2_ball(Point::new(center.clone())?, *radius)?.into()
            }
            ObjectRecord::Box {
                center,
                half_extents,
            } => FatObject::boxed(Point::new(center.clone())?, half_extents.clone())?.into(),
            ObjectRecord::Kgon { center, diameter } => {
                let k = k.ok_or_else(|| Error::InvalidInstance("kgon record without k".into()))?;
                RegularKGon::new(k, P2::new(center[0], center[1]), diameter / 2.0)?.into()
            }
        })
    }
}

/// Size used for the `[1, M]` range check: width for cubes and fat
/// objects, diameter for polygons.
pub fn object_size(o: &GeomObject) -> f64 {
    match o {
        GeomObject::Hypercube(h) => h.width(),
        GeomObject::Fat(f) => f.width(),
        GeomObject::KGon(g) => g.diameter(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub header: Header,
    pub objects: Vec<ObjectRecord>,
}

impl InstanceFile {
    pub fn read<R: BufRead>(r: R) -> Result<Self> {
        let bad = |line: usize, e: serde_json::Error| {
            Error::InvalidInstance(format!("line {}: {e}", line + 1))
        };
        let mut lines = r
            .lines()
            .enumerate()
            .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::InvalidInstance("missing header line".into()))?;
        let first = first.map_err(|e| Error::InvalidInstance(e.to_string()))?;
        let header: Header = serde_json::from_str(&first).map_err(|e| bad(0, e))?;
        let mut objects = Vec::new();
        for (i, line) in lines {
            let line = line.map_err(|e| Error::InvalidInstance(e.to_string()))?;
            objects.push(serde_json::from_str(&line).map_err(|e| bad(i, e))?);
        }
        let inst = InstanceFile { header, objects };
        inst.validate()?;
        Ok(inst)
    }

    pub fn write<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        serde_json::to_writer(&mut w, &self.header)?;
        writeln!(w)?;
        for o in &self.objects {
            serde_json::to_writer(&mut w, o)?;
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn validate(&self) -> Result<()> {
        let h = &self.header;
        let invalid = |m: String| Err(Error::InvalidInstance(m));
        if h.d == 0 {
            return invalid("d must be positive".into());
        }
        if !(h.max_size.is_finite() && h.max_size >= 1.0) {
            return invalid(format!("M = {} must be at least 1", h.max_size));
        }
        match (h.class, h.variant) {
            (ObjectClass::Kgon, Variant::Finite) => {
                if h.d != 2 {
                    return invalid("polygon instances are planar".into());
                }
                let k =
                    h.k.ok_or_else(|| Error::InvalidInstance("kgon class needs k".into()))?;
                crate::kgon_online::prototype_constants(k)?;
            }
            (ObjectClass::Kgon, Variant::Lattice) => {
                return invalid("polygon instances need a finite point set".into())
            }
            (_, Variant::Finite) => {
                return invalid("cube and fat instances use the lattice variant".into())
            }
            _ => {}
        }
        let mut seen = HashSet::new();
        for (i, p) in h.points.iter().enumerate() {
            let p = Point::new(p.clone())?;
            crate::geometry::check_dim(h.d, p.dim())?;
            if !seen.insert(p.coords().iter().map(|x| x.to_bits()).collect::<Vec<_>>()) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        for (i, rec) in self.objects.iter().enumerate() {
            if rec.class() != h.class {
                return invalid(format!("object {i} does not match the declared class"));
            }
            let o = rec.to_object(h.k)?;
            crate::geometry::check_dim(h.d, o.dim())?;
            let s = object_size(&o);
            if s < 1.0 - EPS || s > h.max_size + EPS {
                return invalid(format!(
                    "object {i} has size {s}, outside [1, {}]",
                    h.max_size
                ));
            }
        }
        Ok(())
    }

    pub fn geom_objects(&self) -> Result<Vec<GeomObject>> {
        self.objects
            .iter()
            .map(|r| r.to_object(self.header.k))
            .collect()
    }

    /// The finite point set as planar points.
    pub fn planar_points(&self) -> Vec<P2> {
        self.header
            .points
            .iter()
            .map(|p| P2::new(p[0], p[1]))
            .collect()
    }
}

impl std::str::FromStr for InstanceFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::read(s.as_bytes())
    }
}
