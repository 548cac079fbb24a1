//! Replays an instance through one online algorithm and reports cost,
//! optimum, ratio and the concrete competitive bound.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::instance::{InstanceFile, ObjectClass};
use crate::adversary::trial_seed;
use crate::error::{Error, Result};
use crate::fat_online::{anc_bound, AncState};
use crate::geometry::{GeomObject, Point, RegularKGon, P2};
use crate::hypercube_online::Lir;
use crate::kgon_online::{es_bound, hhr_bound, prototype_constants, EsState, Hhr};
use crate::lattice::LatticeSpec;
use crate::offline_opt::{
    candidates_for_lattice_variant, exact_min_hitting_set, HitInstance, Solution,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Lir,
    Anc,
    Es,
    Hhr,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Lir => "lir",
            Algo::Anc => "anc",
            Algo::Es => "es",
            Algo::Hhr => "hhr",
        }
    }

    pub fn parse(s: &str) -> Option<Algo> {
        [Algo::Lir, Algo::Anc, Algo::Es, Algo::Hhr]
            .into_iter()
            .find(|a| a.name() == s)
    }

    fn class(self) -> ObjectClass {
        match self {
            Algo::Lir => ObjectClass::Hypercube,
            Algo::Anc => ObjectClass::Fat,
            Algo::Es | Algo::Hhr => ObjectClass::Kgon,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub algo: Algo,
    pub seed: u64,
    pub opt: bool,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(name: &str) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            detail: None,
        }
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub algo: Algo,
    pub seed: u64,
    pub trial: usize,
    pub d: usize,
    #[serde(rename = "M")]
    pub max_size: f64,
    /// Number of objects presented.
    pub objects: usize,
    /// Size of the finite point set, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub cost: usize,
    pub opt: Option<usize>,
    pub ratio: Option<f64>,
    pub bound: Option<f64>,
    pub checks: Vec<CheckResult>,
    pub wall_ms: f64,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Points placed by a run, or the invariant that broke it.
struct Replay {
    cost: usize,
    unhit: Vec<usize>,
    violation: Option<String>,
}

fn replay<S, T>(
    state: &mut S,
    objects: &[T],
    step: impl Fn(&mut S, &T) -> Result<()>,
    hit: impl Fn(&S, &T) -> bool,
    cost: impl Fn(&S) -> usize,
) -> Result<Replay> {
    let mut unhit = Vec::new();
    for (i, o) in objects.iter().enumerate() {
        match step(state, o) {
            Ok(()) => {}
            Err(Error::InvariantViolation(m)) => {
                return Ok(Replay {
                    cost: cost(state),
                    unhit,
                    violation: Some(format!("object {i}: {m}")),
                })
            }
            Err(e) => return Err(e),
        }
        if !hit(state, o) {
            unhit.push(i);
        }
    }
    Ok(Replay {
        cost: cost(state),
        unhit,
        violation: None,
    })
}

fn cubes(objs: &[GeomObject]) -> Vec<crate::geometry::AxisHypercube> {
    objs.iter()
        .filter_map(|o| match o {
            GeomObject::Hypercube(h) => Some(h.clone()),
            _ => None,
        })
        .collect()
}

fn kgons(objs: &[GeomObject]) -> Vec<RegularKGon> {
    objs.iter()
        .filter_map(|o| match o {
            GeomObject::KGon(g) => Some(g.clone()),
            _ => None,
        })
        .collect()
}

/// Exact optimum of the instance. Polygon objects holding no point are
/// left out since no algorithm can hit them.
pub fn instance_opt(inst: &InstanceFile) -> Result<usize> {
    Ok(instance_opt_solution(inst)?.size())
}

/// An optimal hitting set, over lattice points of spacing 1 or over the
/// instance's point set.
pub fn instance_opt_solution(inst: &InstanceFile) -> Result<Solution> {
    let objects = inst.geom_objects()?;
    let (objects, candidates) = match inst.header.class {
        ObjectClass::Kgon => {
            let pts: Vec<Point> = inst
                .header
                .points
                .iter()
                .map(|p| Point::new(p.clone()))
                .collect::<Result<_>>()?;
            let keep: Vec<GeomObject> = objects
                .into_iter()
                .filter(|o| pts.iter().any(|p| o.contains_closed(p.coords())))
                .collect();
            (keep, pts)
        }
        _ => {
            let lat = LatticeSpec::new(1.0, inst.header.d)?;
            let c = candidates_for_lattice_variant(&objects, &lat)?;
            (objects, c)
        }
    };
    exact_min_hitting_set(&HitInstance {
        objects,
        candidates,
    })
}

/// Concrete competitive bound for the algorithm on this instance, when one
/// is proven.
pub fn instance_bound(inst: &InstanceFile, algo: Algo) -> Result<Option<f64>> {
    let h = &inst.header;
    Ok(match algo {
        Algo::Lir => None,
        Algo::Anc => {
            let alpha = inst
                .geom_objects()?
                .iter()
                .filter_map(|o| match o {
                    GeomObject::Fat(f) => Some(f.alpha()),
                    _ => None,
                })
                .fold(1.0, f64::min);
            Some(anc_bound(alpha, h.d as u32, h.max_size))
        }
        Algo::Es => {
            let k = h.k.unwrap_or(4);
            Some(es_bound(prototype_constants(k)?.max_tiles, h.points.len()))
        }
        Algo::Hhr => {
            let k = h.k.unwrap_or(4);
            Some(hhr_bound(
                prototype_constants(k)?.max_tiles,
                k,
                h.max_size,
                h.points.len(),
            ))
        }
    })
}

fn run_once(inst: &InstanceFile, algo: Algo, seed: u64, objs: &[GeomObject]) -> Result<Replay> {
    let h = &inst.header;
    let pts: Arc<[P2]> = inst.planar_points().into();
    // polygons without points are ignored by the algorithms
    let holds = |g: &RegularKGon| pts.iter().any(|&p| g.contains(p));
    match algo {
        Algo::Lir => replay(
            &mut Lir::new(h.d, h.max_size, seed)?,
            &cubes(objs),
            |s, c| s.step(c).map(|_| ()),
            |s, c| s.is_hit(c),
            |s| s.cost(),
        ),
        Algo::Anc => {
            let fs: Vec<_> = objs
                .iter()
                .filter_map(|o| match o {
                    GeomObject::Fat(f) => Some(f.clone()),
                    _ => None,
                })
                .collect();
            replay(
                &mut AncState::new(h.d, h.max_size)?,
                &fs,
                |s, f| s.step(f).map(|_| ()),
                |s, f| s.is_hit(f),
                |s| s.cost(),
            )
        }
        Algo::Es => {
            let gs = kgons(objs);
            let Some(first) = gs.first() else {
                return Ok(Replay {
                    cost: 0,
                    unhit: Vec::new(),
                    violation: None,
                });
            };
            replay(
                &mut EsState::new(h.k.unwrap_or(4), first.diameter(), pts.clone())?,
                &gs,
                |s, g| s.step(g).map(|_| ()),
                |s, g| !holds(g) || s.chosen().iter().any(|&i| g.contains(pts[i])),
                |s| s.cost(),
            )
        }
        Algo::Hhr => replay(
            &mut Hhr::new(h.k.unwrap_or(4), h.max_size, pts.clone(), seed)?,
            &kgons(objs),
            |s, g| s.step(g).map(|_| ()),
            |s, g| !holds(g) || s.is_hit(g),
            |s| s.cost(),
        ),
    }
}

/// Runs `cfg.trials` independent trials; trial `t` uses the seed derived
/// from `(cfg.seed, t)`.
pub fn run_experiment(inst: &InstanceFile, cfg: &RunConfig) -> Result<Vec<TrialReport>> {
    inst.validate()?;
    if inst.header.class != cfg.algo.class() {
        return Err(Error::InvalidInstance(format!(
            "{} cannot run on {:?} instances",
            cfg.algo.name(),
            inst.header.class
        )));
    }
    let objs = inst.geom_objects()?;
    let opt = if cfg.opt {
        Some(instance_opt(inst)?)
    } else {
        None
    };
    let bound = instance_bound(inst, cfg.algo)?;
    let n = (inst.header.class == ObjectClass::Kgon).then_some(inst.header.points.len());
    let mut out = Vec::with_capacity(cfg.trials);
    for t in 0..cfg.trials {
        let seed = trial_seed(cfg.seed, t as u64);
        let start = Instant::now();
        let run = run_once(inst, cfg.algo, seed, &objs)?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let ratio = opt.map(|o| {
            if o == 0 {
                1.0
            } else {
                run.cost as f64 / o as f64
            }
        });
        let mut checks = vec![match &run.violation {
            None => CheckResult::pass("invariants"),
            Some(m) => CheckResult::fail("invariants", m.clone()),
        }];
        checks.push(if run.unhit.is_empty() {
            CheckResult::pass("all_hit")
        } else {
            CheckResult::fail("all_hit", format!("unhit objects {:?}", run.unhit))
        });
        if let (Some(r), Some(b)) = (ratio, bound) {
            checks.push(if r <= b + 1e-9 {
                CheckResult::pass("bound")
            } else {
                CheckResult::fail("bound", format!("ratio {r} exceeds {b}"))
            });
        }
        out.push(TrialReport {
            algo: cfg.algo,
            seed,
            trial: t,
            d: inst.header.d,
            max_size: inst.header.max_size,
            objects: inst.objects.len(),
            n,
            cost: run.cost,
            opt,
            ratio,
            bound,
            checks,
            wall_ms,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{generate_random_instance, FatKind, GenSpec};

    #[test]
    fn anc_on_unit_squares_within_bound() {
        let inst = generate_random_instance(
            &GenSpec::fat(FatKind::Linf, 2, 4.0, 50, 10.0).translates(1.0),
            3,
        )
        .unwrap();
        let cfg = RunConfig {
            algo: Algo::Anc,
            seed: 1,
            opt: true,
            trials: 1,
        };
        let r = &run_experiment(&inst, &cfg).unwrap()[0];
        assert!(r.passed(), "{r:?}");
        assert!(r.ratio.unwrap() <= anc_bound(1.0, 2, 4.0));
    }

    #[test]
    fn opt_toggle_and_class_mismatch() {
        let inst = generate_random_instance(&GenSpec::kgons(4, 8.0, 30, 20, 8.0), 1).unwrap();
        let cfg = RunConfig {
            algo: Algo::Hhr,
            seed: 2,
            opt: false,
            trials: 2,
        };
        let rs = run_experiment(&inst, &cfg).unwrap();
        assert!(rs
            .iter()
            .all(|r| r.opt.is_none() && r.ratio.is_none() && r.passed()));
        let lir = RunConfig {
            algo: Algo::Lir,
            ..cfg
        };
        assert!(run_experiment(&inst, &lir).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let inst = generate_random_instance(&GenSpec::hypercubes(2, 8.0, 40, 12.0), 4).unwrap();
        let cfg = RunConfig {
            algo: Algo::Lir,
            seed: 5,
            opt: true,
            trials: 3,
        };
        let strip = |mut v: Vec<TrialReport>| {
            v.iter_mut().for_each(|r| r.wall_ms = 0.0);
            v
        };
        let a = strip(run_experiment(&inst, &cfg).unwrap());
        let b = strip(run_experiment(&inst, &cfg).unwrap());
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.passed()));
    }
}
