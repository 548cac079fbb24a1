//! Seeded random instances. Sizes are log-uniform in `[1, M]` so every layer
//! sees objects.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::instance::{Header, InstanceFile, ObjectClass, ObjectRecord, Variant};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FatKind {
    Linf,
    L2,
    Box,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub class: ObjectClass,
    pub d: usize,
    #[serde(rename = "M")]
    pub max_size: f64,
    pub count: usize,
    /// Coordinates are drawn from `[0, extent]`.
    pub extent: f64,
    /// Point count for polygon instances.
    #[serde(default)]
    pub n_points: usize,
    #[serde(default)]
    pub k: Option<u32>,
    #[serde(default)]
    pub fat: Option<FatKind>,
    /// Use this size for every object (translates only).
    #[serde(default)]
    pub fixed_size: Option<f64>,
}

impl GenSpec {
    pub fn hypercubes(d: usize, max_size: f64, count: usize, extent: f64) -> Self {
        GenSpec {
            class: ObjectClass::Hypercube,
            d,
            max_size,
            count,
            extent,
            n_points: 0,
            k: None,
            fat: None,
            fixed_size: None,
        }
    }

    pub fn fat(kind: FatKind, d: usize, max_size: f64, count: usize, extent: f64) -> Self {
        GenSpec {
            class: ObjectClass::Fat,
            fat: Some(kind),
            ..Self::hypercubes(d, max_size, count, extent)
        }
    }

    pub fn kgons(k: u32, max_size: f64, count: usize, n_points: usize, extent: f64) -> Self {
        GenSpec {
            class: ObjectClass::Kgon,
            k: Some(k),
            n_points,
            ..Self::hypercubes(2, max_size, count, extent)
        }
    }

    pub fn translates(mut self, size: f64) -> Self {
        self.fixed_size = Some(size);
        self
    }
}

fn log_uniform<R: Rng>(rng: &mut R, max: f64) -> f64 {
    if max <= 1.0 {
        1.0
    } else {
        max.powf(rng.random::<f64>())
    }
}

pub fn generate_random_instance(spec: &GenSpec, seed: u64) -> Result<InstanceFile> {
    let invalid = |m: &str| Err(Error::InvalidInstance(m.into()));
    if spec.d == 0 || !(spec.extent.is_finite() && spec.extent >= 0.0) {
        return invalid("need d > 0 and a finite nonnegative extent");
    }
    if let Some(s) = spec.fixed_size {
        if !(1.0..=spec.max_size).contains(&s) {
            return invalid("fixed size outside [1, M]");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = |rng: &mut ChaCha8Rng| {
        spec.fixed_size
            .unwrap_or_else(|| log_uniform(rng, spec.max_size))
    };
    let coords = |rng: &mut ChaCha8Rng, d: usize| -> Vec<f64> {
        (0..d)
            .map(|_| rng.random_range(0.0..=spec.extent))
            .collect()
    };

    let (variant, points) = match spec.class {
        ObjectClass::Kgon => {
            if spec.d != 2 || spec.k.is_none() {
                return invalid("polygon instances need d = 2 and k");
            }
            if spec.n_points == 0 {
                return invalid("polygon instances need points");
            }
            let mut pts: Vec<Vec<f64>> = Vec::with_capacity(spec.n_points);
            while pts.len() < spec.n_points {
                let p = coords(&mut rng, 2);
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            (Variant::Finite, pts)
        }
        _ => (Variant::Lattice, Vec::new()),
    };

    let mut objects = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let rec = match spec.class {
            ObjectClass::Hypercube => ObjectRecord::Hypercube {
                center: coords(&mut rng, spec.d),
                width: size(&mut rng),
                closed: false,
            },
            ObjectClass::Fat => {
                let center = coords(&mut rng, spec.d);
                let w = size(&mut rng);
                match spec.fat.unwrap_or(FatKind::Linf) {
                    FatKind::Linf => ObjectRecord::LinfBall { center, width: w },
                    FatKind::L2 => ObjectRecord::L2Ball {
                        center,
                        radius: w * (spec.d as f64).sqrt(),
                    },
                    FatKind::Box => {
                        // one axis at the width, the rest up to twice it
                        let tight = rng.random_range(0..spec.d);
                        let half_extents = (0..spec.d)
                            .map(|j| {
                                if j == tight {
                                    w
                                } else {
                                    w * rng.random_range(1.0..=2.0)
                                }
                            })
                            .collect();
                        ObjectRecord::Box {
                            center,
                            half_extents,
                        }
                    }
                }
            }
            ObjectClass::Kgon => {
                // near a random point so most objects hold some point
                let diameter = size(&mut rng);
                let anchor = points.choose(&mut rng).expect("points are nonempty");
                let r = diameter / 2.0;
                ObjectRecord::Kgon {
                    center: [
                        anchor[0] + rng.random_range(-r..=r),
                        anchor[1] + rng.random_range(-r..=r),
                    ],
                    diameter,
                }
            }
        };
        objects.push(rec);
    }
    let inst = InstanceFile {
        header: Header {
            variant,
            d: spec.d,
            max_size: spec.max_size,
            class: spec.class,
            k: spec.k,
            points,
        },
        objects,
    };
    inst.validate()?;
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_deterministic() {
        let spec = GenSpec::hypercubes(3, 8.0, 0, 10.0);
        let inst = generate_random_instance(&spec, 1).unwrap();
        assert!(inst.objects.is_empty());
        let spec = GenSpec::kgons(5, 8.0, 50, 20, 10.0);
        let a = generate_random_instance(&spec, 9).unwrap().to_jsonl();
        let b = generate_random_instance(&spec, 9).unwrap().to_jsonl();
        assert_eq!(a, b);
    }

    #[test]
    fn kgon_sizes_in_range() {
        let spec = GenSpec::kgons(5, 8.0, 300, 30, 10.0);
        let inst = generate_random_instance(&spec, 2).unwrap();
        for o in inst.geom_objects().unwrap() {
            let crate::geometry::GeomObject::KGon(g) = o else {
                panic!("wrong class")
            };
            assert!((1.0..=8.0).contains(&g.diameter()));
            assert_eq!(g.k(), 5);
        }
    }
}
