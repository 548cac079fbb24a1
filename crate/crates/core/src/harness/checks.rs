//! Randomized invariant suites. Each returns one [`CheckResult`] whose
//! detail holds the sample count or the first counterexample.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::experiment::CheckResult;
use crate::adversary::{verify_path, AdversaryTree};
use crate::geometry::{
    angle_at, boundary_intersection_components, AxisHypercube, Point, RegularKGon, P2,
};
use crate::hypercube_online::{core_of, layer_of, layer_spacing, layer_upper};
use crate::kgon_online::{
    cone_angle, is_vertex_ranking, prototype_constants, quadrant_centers, shrunk_set, type_of,
    vertex_ranking, EsState, TilePartition,
};
use crate::lattice::LatticeSpec;

fn verdict(name: &str, samples: usize, first_failure: Option<String>) -> CheckResult {
    match first_failure {
        None => CheckResult {
            detail: Some(format!("{samples} samples")),
            ..CheckResult::pass(name)
        },
        Some(m) => CheckResult::fail(name, m),
    }
}

pub fn adversary_paths(d: usize, m: u64, trials: usize, seed: u64) -> CheckResult {
    let name = format!("adversary_paths d={d} M={m}");
    let tree = match AdversaryTree::new(d, m) {
        Ok(t) => t,
        Err(e) => return CheckResult::fail(&name, e.to_string()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fail = (0..trials).find_map(|_| {
        let path = tree.sample_path(&mut rng);
        verify_path(&tree, &path).err().map(|e| e.to_string())
    });
    verdict(&name, trials, fail)
}

/// A random cube whose width falls in layer `k`.
pub fn random_cube_in_layer<R: Rng>(rng: &mut R, d: usize, k: u32) -> AxisHypercube {
    let (lo, hi) = (layer_spacing(k), layer_upper(k));
    let w = rng.random_range(lo..hi);
    let c: Vec<f64> = (0..d).map(|_| rng.random_range(-50.0..50.0)).collect();
    AxisHypercube::new(Point::new(c).expect("finite"), w).expect("positive")
}

/// Layer lattice points of each cube equal those of its core, and the count
/// lies in `[2^d, 3^d]`.
pub fn cores_and_windows(d: usize, max_width: f64, per_layer: usize, seed: u64) -> CheckResult {
    let name = format!("cores_and_windows d={d} M={max_width}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = layer_of(max_width).map(|l| l.k).unwrap_or(1);
    let mut n = 0;
    for k in 1..=top {
        let lat = LatticeSpec::new(layer_spacing(k), d).expect("valid lattice");
        for _ in 0..per_layer {
            let cube = random_cube_in_layer(&mut rng, d, k);
            n += 1;
            let got = layer_of(cube.width()).and_then(|l| {
                let core = core_of(&cube, l)?;
                Ok((lat.indices_in(&cube)?, lat.indices_in(&core.cube)?))
            });
            match got {
                Ok((a, b)) if a == b && (1 << d..=3usize.pow(d as u32)).contains(&a.len()) => {}
                Ok((a, b)) => {
                    return CheckResult::fail(
                        &name,
                        format!(
                            "cube {cube:?}: {} lattice points, core has {}",
                            a.len(),
                            b.len()
                        ),
                    )
                }
                Err(e) => return CheckResult::fail(&name, format!("cube {cube:?}: {e}")),
            }
        }
    }
    verdict(&name, n, None)
}

fn random_translate_near<R: Rng>(
    rng: &mut R,
    proto: &RegularKGon,
    around: P2,
    spread: f64,
) -> RegularKGon {
    proto.translated_to(P2::new(
        around.x + rng.random_range(-spread..spread),
        around.y + rng.random_range(-spread..spread),
    ))
}

/// Intersected-tile counts stay within the tile bound and every translate
/// meeting a tile covers one of its quadrant centers.
pub fn tiles_and_types(k: u32, samples: usize, seed: u64) -> CheckResult {
    let name = format!("tiles_and_types k={k}");
    let c = prototype_constants(k).expect("k >= 4");
    let part = TilePartition {
        side: c.tile_side,
        offset: P2::new(0.0, 0.0),
    };
    let proto = RegularKGon::new(k, P2::new(0.0, 0.0), 1.0).expect("valid");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0;
    for _ in 0..samples {
        let g = random_translate_near(&mut rng, &proto, P2::new(0.0, 0.0), 3.0);
        let tiles = part.tiles_meeting(&g);
        worst = worst.max(tiles.len());
        if tiles.len() > c.max_tiles as usize {
            return CheckResult::fail(&name, format!("{g:?} meets {} tiles", tiles.len()));
        }
        for t in tiles {
            let o = quadrant_centers(part.tile_center(t), c.super_side);
            if let Err(e) = type_of(&g, &o) {
                return CheckResult::fail(&name, e.to_string());
            }
        }
    }
    CheckResult {
        detail: Some(format!("{samples} samples, max {worst} tiles")),
        ..CheckResult::pass(&name)
    }
}

/// The tile subtends less than π/4 from each quadrant center.
pub fn cone_angles(k: u32) -> CheckResult {
    let name = format!("cone_angles k={k}");
    let c = prototype_constants(k).expect("k >= 4");
    let part = TilePartition {
        side: c.tile_side,
        offset: P2::new(0.0, 0.0),
    };
    let tile = part.tile_polygon((0, 0));
    let worst = quadrant_centers(part.tile_center((0, 0)), c.super_side)
        .iter()
        .map(|&o| cone_angle(o, &tile))
        .fold(0.0, f64::max);
    if worst < PI / 4.0 {
        CheckResult {
            detail: Some(format!("max {worst:.6} rad")),
            ..CheckResult::pass(&name)
        }
    } else {
        CheckResult::fail(&name, format!("cone angle {worst}"))
    }
}

/// Smallest angle `x p y` over random overlapping translate pairs, with `x`
/// and `y` on different boundary components and `p` in the intersection.
pub fn min_component_angle(k: u32, pairs: usize, seed: u64) -> Option<f64> {
    let proto = RegularKGon::new(k, P2::new(0.0, 0.0), 1.0).expect("valid");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    let mut done = 0;
    while done < pairs {
        let b = random_translate_near(&mut rng, &proto, P2::new(0.0, 0.0), 2.0);
        let comps = match boundary_intersection_components(&proto, &b) {
            Ok(c) if c.len() >= 2 => c,
            _ => continue,
        };
        // p uniform in the intersection by rejection
        let p = loop {
            let q = P2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            if proto.contains(q) && b.contains(q) {
                break q;
            }
        };
        let i = rng.random_range(0..comps.len());
        let j = (i + rng.random_range(1..comps.len())) % comps.len();
        let x = comps[i].point_at(rng.random::<f64>());
        let y = comps[j].point_at(rng.random::<f64>());
        let pt = |v: P2| Point::new(vec![v.x, v.y]).expect("finite");
        if let Ok(a) = angle_at(&pt(p), &pt(x), &pt(y)) {
            best = best.min(a);
        }
        done += 1;
    }
    (best.is_finite()).then_some(best)
}

pub fn angle_property(k: u32, pairs: usize, seed: u64) -> CheckResult {
    let name = format!("angle_property k={k}");
    match min_component_angle(k, pairs, seed) {
        Some(a) if a >= PI / 4.0 - 1e-6 => CheckResult {
            detail: Some(format!("{pairs} pairs, min angle {a:.6}")),
            ..CheckResult::pass(&name)
        },
        Some(a) => CheckResult::fail(&name, format!("angle {a} below pi/4")),
        None => CheckResult::fail(&name, "no pair sampled"),
    }
}

/// Uniform samples inside random homothets are covered by the shrunk set,
/// sampled after pulling them `inset` toward the center.
pub fn shrunk_coverage(k: u32, homothets: usize, samples: usize, seed: u64) -> CheckResult {
    let name = format!("shrunk_coverage k={k}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inset = 1e-9;
    for _ in 0..homothets {
        let diam = rng.random_range(1.0..16.0f64);
        let c = P2::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let g = RegularKGon::new(k, c, diam / 2.0).expect("valid");
        let members = shrunk_set(&g);
        let r = g.circumradius();
        let mut got = 0;
        while got < samples {
            let q = P2::new(c.x + rng.random_range(-r..r), c.y + rng.random_range(-r..r));
            if !g.contains(q) {
                continue;
            }
            got += 1;
            let d = c - q;
            let n = d.norm();
            let q = if n > inset { q + d * (inset / n) } else { q };
            if !members.iter().any(|m| m.contains(q)) {
                return CheckResult::fail(&name, format!("{q:?} uncovered in {g:?}"));
            }
        }
    }
    verdict(&name, homothets * samples, None)
}

/// Whether `x` lies in the closed cone with apex `apex` spanned by `tile`.
fn in_cone(apex: P2, tile: &crate::geometry::ConvexPolygon, x: P2) -> bool {
    let axis = (tile.center() - apex).angle();
    let rel = |v: P2| {
        let a = (v - apex).angle() - axis;
        (a + PI).rem_euclid(2.0 * PI) - PI
    };
    let (lo, hi) = tile
        .vertices()
        .iter()
        .map(|&v| rel(v))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), a| {
            (lo.min(a), hi.max(a))
        });
    if (x - apex).norm() < 1e-12 {
        return true;
    }
    let a = rel(x);
    a >= lo - 1e-9 && a <= hi + 1e-9
}

/// For pairs of same-type translates meeting one tile, the part of their
/// common boundary inside the type's cone is connected. Each boundary
/// component is walked at `steps` points and in-cone runs are counted.
pub fn cone_components(k: u32, pairs: usize, seed: u64) -> CheckResult {
    let name = format!("cone_components k={k}");
    let c = prototype_constants(k).expect("k >= 4");
    let part = TilePartition {
        side: c.tile_side,
        offset: P2::new(0.0, 0.0),
    };
    let tile = part.tile_polygon((0, 0));
    let centers = quadrant_centers(part.tile_center((0, 0)), c.super_side);
    let proto = RegularKGon::new(k, P2::new(0.0, 0.0), 1.0).expect("valid");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng, want: Option<u8>| loop {
        let g = random_translate_near(rng, &proto, part.tile_center((0, 0)), 2.0);
        if !part.tiles_meeting(&g).contains(&(0, 0)) {
            continue;
        }
        let Ok(t) = type_of(&g, &centers) else {
            continue;
        };
        if want.is_none_or(|w| w == t) {
            return (g, t);
        }
    };
    let steps = 400;
    let (mut done, mut touching) = (0, 0);
    while done < pairs {
        let (a, t) = draw(&mut rng, None);
        let (b, _) = draw(&mut rng, Some(t));
        let Ok(comps) = boundary_intersection_components(&a, &b) else {
            continue;
        };
        done += 1;
        let apex = centers[t as usize - 1];
        let runs: usize = comps
            .iter()
            .map(|comp| {
                let inside: Vec<bool> = (0..=steps)
                    .map(|i| in_cone(apex, &tile, comp.point_at(i as f64 / steps as f64)))
                    .collect();
                usize::from(inside[0]) + inside.windows(2).filter(|w| !w[0] && w[1]).count()
            })
            .sum();
        touching += usize::from(runs == 1);
        if runs > 1 {
            return CheckResult::fail(
                &name,
                format!(
                    "type {t}: {runs} pieces for {:?} and {:?}",
                    a.center(),
                    b.center()
                ),
            );
        }
    }
    CheckResult {
        detail: Some(format!(
            "{pairs} pairs, {touching} with a piece in the cone"
        )),
        ..CheckResult::pass(&name)
    }
}

pub fn vertex_rankings(max_n: usize) -> CheckResult {
    let name = "vertex_rankings";
    for n in 1..=max_n {
        let c = vertex_ranking(n);
        let top = *c.iter().max().expect("nonempty");
        if !is_vertex_ranking(&c) || top > (2 * n).ilog2() {
            return CheckResult::fail(name, format!("n = {n}: {c:?}"));
        }
    }
    verdict(name, max_n, None)
}

/// Runs translates through the translate algorithm, whose inline assertions
/// cover quadrant types, contiguous extreme runs and distinct colors.
pub fn es_inline(k: u32, trials: usize, seed: u64) -> CheckResult {
    let name = format!("es_inline k={k}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut presented = 0;
    for t in 0..trials {
        let n = rng.random_range(5..40);
        let extent = rng.random_range(1.0..6.0);
        let pts: Arc<[P2]> = (0..n)
            .map(|_| P2::new(rng.random_range(0.0..extent), rng.random_range(0.0..extent)))
            .collect();
        let mut es = match EsState::new(k, 2.0, pts.clone()) {
            Ok(es) => es,
            Err(crate::Error::DuplicatePoint(_)) => continue,
            Err(e) => return CheckResult::fail(&name, e.to_string()),
        };
        let proto = es.prototype().clone();
        for _ in 0..20 {
            let at = pts[rng.random_range(0..pts.len())];
            let g = random_translate_near(&mut rng, &proto, at, 1.0);
            presented += 1;
            if let Err(e) = es.step(&g) {
                return CheckResult::fail(&name, format!("trial {t}: {e}"));
            }
        }
    }
    verdict(&name, presented, None)
}

/// Every suite at the given sample count.
pub fn run_all(samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (d, m) in [(2, 4), (2, 16), (3, 4), (3, 16)] {
        out.push(adversary_paths(d, m, samples, seed));
    }
    for d in 1..=4 {
        out.push(cores_and_windows(d, 64.0, samples, seed));
    }
    for k in [4, 5, 6, 7, 12] {
        out.push(cone_angles(k));
        out.push(tiles_and_types(k, samples, seed));
        out.push(angle_property(k, samples, seed));
        out.push(cone_components(k, samples, seed));
    }
    for k in [4, 5, 6] {
        out.push(shrunk_coverage(k, 10, samples.max(1), seed));
    }
    out.push(vertex_rankings(12));
    for k in [4, 5, 7] {
        out.push(es_inline(k, samples.div_ceil(20).max(1), seed));
    }
    out
}
