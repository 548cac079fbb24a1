//! Acceptance run: one PASS/FAIL line per criterion. Expected values come
//! from small oracles written here, not from the library under test.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hitset::adversary::{measure_expected_cost, verify_path, AdversaryTree, NearestCenterGreedy};
use hitset::fat_online::AncState;
use hitset::geometry::{AxisHypercube, GeomObject, Point, RegularKGon, P2};
use hitset::harness::{
    generate_random_instance, instance_opt, run_experiment, Algo, FatKind, GenSpec, RunConfig,
};
use hitset::hypercube_online::{core_of, layer_of, layer_spacing, layer_upper, Lir};
use hitset::kgon_online::{
    prototype_constants, quadrant_centers, shrunk_set, vertex_ranking, EsState, EsStatus,
    TilePartition,
};
use hitset::offline_opt::{exact_min_hitting_set, HitInstance};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within(limit: Duration, t: Instant) -> bool {
    t.elapsed() < limit
}

// ---- oracles ----

/// Integer indices `i` with `i*step` inside the 1-d window around `c`.
fn axis_indices(c: f64, w: f64, step: f64, closed: bool) -> Vec<i64> {
    let lo = ((c - w) / step).floor() as i64 - 2;
    let hi = ((c + w) / step).ceil() as i64 + 2;
    (lo..=hi)
        .filter(|&i| {
            let d = (i as f64 * step - c).abs();
            if closed {
                d <= w
            } else {
                d < w
            }
        })
        .collect()
}

fn lattice_scan(h: &AxisHypercube, step: f64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &c in h.center().coords() {
        let axis = axis_indices(c, h.width(), step, h.is_closed());
        out = out
            .iter()
            .flat_map(|p| {
                axis.iter().map(move |&i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

fn cube_has(h: &AxisHypercube, p: &[f64]) -> bool {
    h.center().coords().iter().zip(p).all(|(c, x)| {
        let d = (x - c).abs();
        if h.is_closed() {
            d <= h.width() + 1e-9
        } else {
            d < h.width() - 1e-9
        }
    })
}

/// Vertices of a regular k-gon with a flat bottom edge.
fn kgon_vertices(k: u32, c: P2, r: f64) -> Vec<P2> {
    (0..k)
        .map(|m| {
            let a = -PI / 2.0 + PI / k as f64 + 2.0 * PI * m as f64 / k as f64;
            P2::new(c.x + r * a.cos(), c.y + r * a.sin())
        })
        .collect()
}

fn cross(o: P2, a: P2, b: P2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Point in a counterclockwise convex polygon, with slack.
fn poly_has(v: &[P2], p: P2, slack: f64) -> bool {
    (0..v.len()).all(|i| {
        let (a, b) = (v[i], v[(i + 1) % v.len()]);
        let len = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
        cross(a, b, p) / len >= -slack
    })
}

fn area(v: &[P2]) -> f64 {
    (0..v.len())
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            a.x * b.y - a.y * b.x
        })
        .sum::<f64>()
        / 2.0
}

/// Sutherland-Hodgman clip of `subject` by the convex counterclockwise
/// `clip`.
fn clip(subject: &[P2], clip: &[P2]) -> Vec<P2> {
    let mut out = subject.to_vec();
    for i in 0..clip.len() {
        let (a, b) = (clip[i], clip[(i + 1) % clip.len()]);
        let input = std::mem::take(&mut out);
        if input.is_empty() {
            break;
        }
        for j in 0..input.len() {
            let (p, q) = (input[j], input[(j + 1) % input.len()]);
            let (sp, sq) = (cross(a, b, p), cross(a, b, q));
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp >= 0.0) != (sq >= 0.0) {
                let t = sp / (sp - sq);
                out.push(P2::new(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)));
            }
        }
    }
    out
}

fn angle(p: P2, x: P2, y: P2) -> f64 {
    let (u, v) = (P2::new(x.x - p.x, x.y - p.y), P2::new(y.x - p.x, y.y - p.y));
    let c = (u.x * v.x + u.y * v.y) / ((u.x.hypot(u.y)) * (v.x.hypot(v.y)));
    c.clamp(-1.0, 1.0).acos()
}

/// Crossing points of two polygon boundaries, merged within `tol`.
fn boundary_crossings(a: &[P2], b: &[P2], tol: f64) -> Vec<P2> {
    let mut pts: Vec<P2> = Vec::new();
    for i in 0..a.len() {
        let (p, p2) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (q, q2) = (b[j], b[(j + 1) % b.len()]);
            let r = P2::new(p2.x - p.x, p2.y - p.y);
            let s = P2::new(q2.x - q.x, q2.y - q.y);
            let den = r.x * s.y - r.y * s.x;
            if den.abs() < 1e-14 {
                continue;
            }
            let qp = P2::new(q.x - p.x, q.y - p.y);
            let t = (qp.x * s.y - qp.y * s.x) / den;
            let u = (qp.x * r.y - qp.y * r.x) / den;
            if (-1e-12..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&u) {
                let x = P2::new(p.x + t * r.x, p.y + t * r.y);
                if !pts.iter().any(|y| (y.x - x.x).hypot(y.y - x.y) < tol) {
                    pts.push(x);
                }
            }
        }
    }
    pts
}

fn log2_floor(x: f64) -> u32 {
    let mut e = 0;
    while 2f64.powi(e as i32 + 1) <= x {
        e += 1;
    }
    e
}

// ---- criteria ----

fn c1_witnesses() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut paths = 0;
    for d in [2usize, 3] {
        for m in [4u64, 16] {
            let tree = AdversaryTree::new(d, m).unwrap();
            let check = |path: &[hitset::adversary::AdversaryCube]| -> bool {
                let Ok(w) = verify_path(&tree, path) else {
                    return false;
                };
                w.coords().iter().all(|x| x.fract() == 0.0)
                    && path.iter().all(|c| cube_has(&c.presented(), w.coords()))
            };
            for _ in 0..1000 {
                paths += 1;
                if !check(&tree.sample_path(&mut rng)) {
                    return outcome(false, format!("d={d} M={m}: path without witness"));
                }
            }
            if (d, m) == (3, 4) {
                let all = tree.all_paths().unwrap();
                if all.len() != 1 << (3 - 1) || !all.iter().all(|p| check(p)) {
                    return outcome(false, "exhaustive d=3 M=4 failed");
                }
                paths += all.len();
            }
        }
    }
    let ok = within(Duration::from_secs(10), t);
    outcome(ok, format!("{paths} paths verified in {:.2?}", t.elapsed()))
}

fn c2_cost_floor() -> Outcome {
    let t = Instant::now();
    let (d, m) = (2usize, 16u64);
    let h = d as f64 / 2.0 * (m as f64).log2();
    let floor = 1.0 + (h - 1.0) / 2.0;
    let tree = AdversaryTree::new(d, m).unwrap();
    let greedy =
        measure_expected_cost(&tree, 10_000, 11, |_, _| Ok(NearestCenterGreedy::default()))
            .unwrap();
    let lir = measure_expected_cost(&tree, 10_000, 12, |s, _| Lir::new(d, m as f64, s)).unwrap();
    let ok = greedy.mean >= 0.95 * floor
        && lir.mean >= 0.95 * floor
        && within(Duration::from_secs(30), t);
    outcome(
        ok,
        format!(
            "floor {floor}, greedy {:.3}±{:.3}, lir {:.3}±{:.3}, {:.2?}",
            greedy.mean,
            greedy.std_error,
            lir.mean,
            lir.std_error,
            t.elapsed()
        ),
    )
}

fn random_layer_cube(rng: &mut ChaCha8Rng, d: usize, k: u32) -> AxisHypercube {
    let w = rng.random_range(layer_spacing(k)..layer_upper(k));
    let c: Vec<f64> = (0..d).map(|_| rng.random_range(-100.0..100.0)).collect();
    AxisHypercube::new(Point::new(c).unwrap(), w).unwrap()
}

fn c3_core_equality() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let top = layer_of(64.0).unwrap().k;
    let mut n = 0;
    for d in 1..=4 {
        for k in 1..=top {
            let s = layer_spacing(k);
            for _ in 0..10_000 {
                let cube = random_layer_cube(&mut rng, d, k);
                let layer = layer_of(cube.width()).unwrap();
                if layer.k != k {
                    return outcome(
                        false,
                        format!("width {} put in layer {}", cube.width(), layer.k),
                    );
                }
                let core = match core_of(&cube, layer) {
                    Ok(c) => c,
                    Err(e) => return outcome(false, format!("{cube:?}: {e}")),
                };
                if (core.cube.width() - s).abs() > 1e-12
                    || lattice_scan(&cube, s) != lattice_scan(&core.cube, s)
                {
                    return outcome(false, format!("{cube:?}: core lattice differs"));
                }
                n += 1;
            }
        }
    }
    let ok = within(Duration::from_secs(30), t);
    outcome(
        ok,
        format!("{n} cubes over {top} layers, d<=4, {:.2?}", t.elapsed()),
    )
}

fn c4_layer_window() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let top = layer_of(64.0).unwrap().k;
    let (mut lo, mut hi) = (usize::MAX, 0);
    for d in [3usize, 4] {
        for k in 1..=top {
            for _ in 0..10_000 {
                let cube = random_layer_cube(&mut rng, d, k);
                let n = lattice_scan(&cube, layer_spacing(k)).len();
                if n < 1 << d || n > 3usize.pow(d as u32) {
                    return outcome(false, format!("{cube:?} holds {n} layer points"));
                }
                lo = lo.min(n);
                hi = hi.max(n);
            }
        }
    }
    outcome(
        true,
        format!("counts within [2^d, 3^d], observed {lo}..{hi}"),
    )
}

fn c5_lir_runs() -> Outcome {
    let inst = generate_random_instance(&GenSpec::hypercubes(3, 8.0, 300, 16.0), 105).unwrap();
    let cubes: Vec<AxisHypercube> = inst
        .geom_objects()
        .unwrap()
        .into_iter()
        .map(|o| match o {
            GeomObject::Hypercube(h) => h,
            _ => unreachable!(),
        })
        .collect();
    let opt = instance_opt(&inst).unwrap();
    let mut costs = Vec::new();
    for seed in 0..10u64 {
        let mut lir = Lir::new(3, 8.0, 1000 + seed).unwrap();
        for c in &cubes {
            if let Err(e) = lir.step(c) {
                return outcome(false, format!("seed {seed}: {e}"));
            }
        }
        if let Some(i) = cubes
            .iter()
            .position(|c| !lir.points().iter().any(|p| cube_has(c, p.coords())))
        {
            return outcome(false, format!("seed {seed}: cube {i} unhit"));
        }
        costs.push(lir.cost());
    }
    let ratios: Vec<String> = costs
        .iter()
        .map(|&c| format!("{:.2}", c as f64 / opt as f64))
        .collect();
    let varied = costs.iter().any(|&c| c != costs[0]);
    outcome(
        varied && opt > 0,
        format!("opt {opt}, costs {costs:?}, ratios [{}]", ratios.join(", ")),
    )
}

fn c6_anc_bound() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for d in [2usize, 3] {
        for (kind, alpha) in [(FatKind::Linf, 1.0), (FatKind::L2, 1.0 / (d as f64).sqrt())] {
            for m in [2.0, 8.0] {
                let bound = ((2.0 / alpha + 2.0) + 1e-9).floor().powi(d as i32)
                    * (log2_floor(m) + 1) as f64;
                for seed in 0..50u64 {
                    let spec = GenSpec::fat(kind, d, m, 60, 3.0 * m);
                    let inst = generate_random_instance(&spec, 600 + seed).unwrap();
                    let objs = inst.geom_objects().unwrap();
                    let mut anc = AncState::new(d, m).unwrap();
                    for o in &objs {
                        let GeomObject::Fat(f) = o else {
                            unreachable!()
                        };
                        if let Err(e) = anc.step(f) {
                            return outcome(false, format!("d={d} M={m} seed {seed}: {e}"));
                        }
                        if !anc.points().iter().any(|p| f.contains(p.coords())) {
                            return outcome(false, "object left unhit");
                        }
                    }
                    let opt = instance_opt(&inst).unwrap();
                    let ratio = anc.cost() as f64 / opt as f64;
                    if ratio > bound {
                        return outcome(false, format!("ratio {ratio} > {bound}"));
                    }
                    worst = worst.max(ratio / bound);
                    runs += 1;
                }
            }
        }
    }
    let ok = within(Duration::from_secs(60), t);
    outcome(
        ok,
        format!(
            "{runs} instances, max ratio/bound {worst:.3}, {:.2?}",
            t.elapsed()
        ),
    )
}

fn c7_angles() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut report = Vec::new();
    for k in [4u32, 5, 6, 7, 12] {
        let a = kgon_vertices(k, P2::new(0.0, 0.0), 1.0);
        let mut best = f64::INFINITY;
        let mut pairs = 0;
        while pairs < 10_000 {
            let c = P2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let b = kgon_vertices(k, c, 1.0);
            let inter = clip(&a, &b);
            if inter.len() < 3 || area(&inter) < 1e-9 {
                continue;
            }
            let xs = boundary_crossings(&a, &b, 1e-9);
            if xs.len() < 2 {
                continue;
            }
            // p uniform in the intersection by rejection
            let p = loop {
                let q = P2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                if poly_has(&inter, q, 0.0) {
                    break q;
                }
            };
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    best = best.min(angle(p, xs[i], xs[j]));
                }
            }
            pairs += 1;
        }
        if best < PI / 4.0 - 1e-6 {
            return outcome(false, format!("k={k}: angle {best}"));
        }
        report.push(format!("k={k}: {best:.4}"));
    }
    let ok = within(Duration::from_secs(60), t);
    outcome(
        ok,
        format!(
            "min angles {} (pi/4 = 0.7854), {:.2?}",
            report.join(", "),
            t.elapsed()
        ),
    )
}

fn c8_tile_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut report = Vec::new();
    for (k, cap) in [(4u32, 25usize), (5, 63), (6, 63), (7, 23), (12, 23)] {
        let c = prototype_constants(k).unwrap();
        let part = TilePartition {
            side: c.tile_side,
            offset: P2::new(0.0, 0.0),
        };
        let l = c.tile_side;
        let mut worst = 0;
        for _ in 0..100_000 {
            let center = P2::new(rng.random_range(0.0..l), rng.random_range(0.0..l));
            let v = kgon_vertices(k, center, 1.0);
            let (i0, i1) = (
                ((center.x - 1.0) / l).floor() as i64 - 1,
                ((center.x + 1.0) / l).ceil() as i64 + 1,
            );
            let (j0, j1) = (
                ((center.y - 1.0) / l).floor() as i64 - 1,
                ((center.y + 1.0) / l).ceil() as i64 + 1,
            );
            let mut n = 0;
            for i in i0..=i1 {
                for j in j0..=j1 {
                    let (x, y) = (i as f64 * l, j as f64 * l);
                    let tile = [
                        P2::new(x, y),
                        P2::new(x + l, y),
                        P2::new(x + l, y + l),
                        P2::new(x, y + l),
                    ];
                    let piece = clip(&v, &tile);
                    if piece.len() >= 3 && area(&piece) > 1e-12 {
                        n += 1;
                    }
                }
            }
            let g = RegularKGon::new(k, center, 1.0).unwrap();
            let lib = part.tiles_meeting(&g).len();
            worst = worst.max(n).max(lib);
        }
        if worst > cap {
            return outcome(false, format!("k={k}: {worst} tiles > {cap}"));
        }
        report.push(format!("k={k}: {worst}/{cap}"));
    }
    outcome(true, format!("max tiles {}", report.join(", ")))
}

fn random_planar_points(rng: &mut ChaCha8Rng, n: usize, extent: f64) -> Arc<[P2]> {
    (0..n)
        .map(|_| P2::new(rng.random_range(0.0..extent), rng.random_range(0.0..extent)))
        .collect()
}

fn c9_inline_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    // quadrant centers: every translate meeting a tile holds one
    let mut obs3 = 0;
    for k in [4u32, 5, 6, 7, 12] {
        let c = prototype_constants(k).unwrap();
        let l = c.tile_side;
        let mut got = 0;
        while got < 2_000 {
            let center = P2::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
            let v = kgon_vertices(k, center, 1.0);
            let tile = [
                P2::new(0.0, 0.0),
                P2::new(l, 0.0),
                P2::new(l, l),
                P2::new(0.0, l),
            ];
            let piece = clip(&v, &tile);
            if piece.len() < 3 || area(&piece) <= 1e-12 {
                continue;
            }
            let os = quadrant_centers(P2::new(l / 2.0, l / 2.0), c.super_side);
            if !os.iter().any(|&o| poly_has(&v, o, 1e-12)) {
                return outcome(
                    false,
                    format!("k={k}: translate at {center:?} holds no quadrant center"),
                );
            }
            obs3 += 1;
            got += 1;
        }
    }
    // contiguity of extreme points inside translates, from the tables
    let mut intervals = 0;
    let mut placed = 0;
    let mut runs = 0;
    while intervals < 10_000 || placed < 10_000 {
        let k = [4u32, 5, 6, 7][runs % 4];
        runs += 1;
        let (n, extent) = (rng.random_range(5..40), rng.random_range(1.0..5.0));
        let pts = random_planar_points(&mut rng, n, extent);
        let Ok(mut es) = EsState::new(k, 2.0, pts.clone()) else {
            continue;
        };
        for _ in 0..40 {
            let at = pts[rng.random_range(0..pts.len())];
            let g = es.prototype().translated_to(P2::new(
                at.x + rng.random_range(-1.0..1.0),
                at.y + rng.random_range(-1.0..1.0),
            ));
            let verts = kgon_vertices(k, g.center(), g.circumradius());
            for (id, _) in es.points_by_tile(&g) {
                let tab = es.tile(id).unwrap();
                let tau = (0..4)
                    .find(|&t| poly_has(&verts, tab.quadrants[t], 1e-12))
                    .unwrap();
                let inside: Vec<bool> = tab.extremes[tau]
                    .iter()
                    .map(|&i| poly_has(&verts, pts[i], 1e-9))
                    .collect();
                let first = inside.iter().position(|&b| b);
                let last = inside.iter().rposition(|&b| b);
                if let (Some(a), Some(b)) = (first, last) {
                    if inside[a..=b].iter().any(|&x| !x) {
                        return outcome(
                            false,
                            format!("k={k} tile {id:?}: extreme points not contiguous"),
                        );
                    }
                } else {
                    return outcome(false, format!("k={k} tile {id:?}: no extreme point inside"));
                }
                intervals += 1;
            }
            match es.step(&g) {
                Ok(o) if o.status == EsStatus::Placed => placed += 1,
                Ok(_) => {}
                Err(e) => return outcome(false, format!("inline check: {e}")),
            }
        }
    }
    outcome(
        true,
        format!("{obs3} type checks, {intervals} interval checks, {placed} placements with inline color checks"),
    )
}

fn c10_es_bound() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [10usize, 40] {
        let bound = 4.0 * 25.0 * log2_floor(2.0 * n as f64) as f64;
        for seed in 0..10u64 {
            let spec = GenSpec::kgons(4, 2.0, 200, n, 6.0).translates(2.0);
            let inst = generate_random_instance(&spec, 1000 + seed).unwrap();
            let cfg = RunConfig {
                algo: Algo::Es,
                seed,
                opt: true,
                trials: 1,
            };
            let r = &run_experiment(&inst, &cfg).unwrap()[0];
            let ratio = r.ratio.unwrap();
            if !r.passed() || ratio > bound {
                return outcome(false, format!("n={n} seed {seed}: {r:?}"));
            }
            worst = worst.max(ratio);
        }
    }
    outcome(
        true,
        format!("20 instances, max ratio {worst:.2} (bounds 400 / 600)"),
    )
}

fn c11_shrunk_coverage() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let mut samples = 0;
    for k in [4u32, 5, 6] {
        for _ in 0..100 {
            let diam = rng.random_range(1.0..16.0f64);
            let c = P2::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            let g = RegularKGon::new(k, c, diam / 2.0).unwrap();
            let members: Vec<Vec<P2>> = shrunk_set(&g)
                .iter()
                .map(|m| kgon_vertices(k, m.center(), m.circumradius()))
                .collect();
            let outer = kgon_vertices(k, c, diam / 2.0);
            let r = diam / 2.0;
            let mut got = 0;
            while got < 10_000 {
                let q = P2::new(c.x + rng.random_range(-r..r), c.y + rng.random_range(-r..r));
                if !poly_has(&outer, q, 0.0) {
                    continue;
                }
                got += 1;
                let (dx, dy) = (c.x - q.x, c.y - q.y);
                let len = dx.hypot(dy);
                let q = if len > 1e-9 {
                    P2::new(q.x + dx / len * 1e-9, q.y + dy / len * 1e-9)
                } else {
                    q
                };
                if !members.iter().any(|m| poly_has(m, q, 1e-12)) {
                    return outcome(false, format!("k={k}: {q:?} uncovered in {g:?}"));
                }
            }
            samples += got;
        }
    }
    outcome(true, format!("{samples} samples, none uncovered"))
}

fn c12_hhr_bound() -> Outcome {
    let bound = 4.0 * 25.0 * 25.0 * log2_floor(16.0) as f64 * log2_floor(80.0) as f64;
    let inst = generate_random_instance(&GenSpec::kgons(4, 8.0, 200, 40, 12.0), 7).unwrap();
    let cfg = RunConfig {
        algo: Algo::Hhr,
        seed: 7,
        opt: true,
        trials: 10,
    };
    let rs = run_experiment(&inst, &cfg).unwrap();
    let ratios: Vec<f64> = rs.iter().map(|r| r.ratio.unwrap()).collect();
    let ok = rs.iter().all(|r| r.passed() && r.bound == Some(bound))
        && ratios.iter().all(|&r| r <= bound);
    outcome(
        ok,
        format!(
            "opt {}, ratios {:?}, bound {bound}",
            rs[0].opt.unwrap(),
            ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>()
        ),
    )
}

fn c13_vertex_ranking() -> Outcome {
    for n in 1..=12usize {
        let c = vertex_ranking(n);
        if c.len() != n || c.contains(&0) {
            return outcome(false, format!("n={n}: {c:?}"));
        }
        for i in 0..n {
            for j in i + 1..n {
                if c[i] == c[j] && !(i + 1..j).any(|z| c[z] > c[i]) {
                    return outcome(false, format!("n={n}: {c:?} repeats {} unguarded", c[i]));
                }
            }
        }
        if *c.iter().max().unwrap() > log2_floor(2.0 * n as f64) {
            return outcome(false, format!("n={n}: too many colors in {c:?}"));
        }
    }
    outcome(
        true,
        "valid rankings within floor(log2 2n) colors for n <= 12",
    )
}

fn c14_offline_exact() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(114);
    let mut sizes = Vec::new();
    for _ in 0..100 {
        let nc = rng.random_range(3..=15);
        let pts: Vec<Point> = (0..nc)
            .map(|_| {
                Point::new(vec![
                    rng.random_range(0.0..10.0),
                    rng.random_range(0.0..10.0),
                ])
                .unwrap()
            })
            .collect();
        let objs: Vec<AxisHypercube> = (0..rng.random_range(1..=12))
            .map(|_| {
                let a = &pts[rng.random_range(0..nc)];
                let c: Vec<f64> = a
                    .coords()
                    .iter()
                    .map(|x| x + rng.random_range(-1.0..1.0))
                    .collect();
                AxisHypercube::closed(Point::new(c).unwrap(), rng.random_range(1.0..3.0)).unwrap()
            })
            .collect();
        // keep objects that some candidate hits
        let objs: Vec<AxisHypercube> = objs
            .into_iter()
            .filter(|o| pts.iter().any(|p| cube_has(o, p.coords())))
            .collect();
        if objs.is_empty() {
            continue;
        }
        let best = (1u32..1 << nc)
            .filter(|mask| {
                objs.iter()
                    .all(|o| (0..nc).any(|i| mask >> i & 1 == 1 && cube_has(o, pts[i].coords())))
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap();
        let inst = HitInstance {
            objects: objs.iter().cloned().map(GeomObject::from).collect(),
            candidates: pts.clone(),
        };
        let sol = exact_min_hitting_set(&inst).unwrap();
        let hits = objs
            .iter()
            .all(|o| sol.points.iter().any(|p| cube_has(o, p.coords())));
        if sol.size() != best || !hits {
            return outcome(false, format!("solver {} vs exhaustive {best}", sol.size()));
        }
        sizes.push(best);
    }
    let ok = within(Duration::from_secs(30), t) && sizes.len() >= 90;
    outcome(
        ok,
        format!(
            "{} instances, optima up to {}, {:.2?}",
            sizes.len(),
            sizes.iter().max().unwrap_or(&0),
            t.elapsed()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 14] = [
        ("adversary paths contain an integer witness", c1_witnesses),
        ("adversary expected cost floor", c2_cost_floor),
        ("core cubes keep the layer lattice points", c3_core_equality),
        ("layer lattice window [2^d, 3^d]", c4_layer_window),
        (
            "randomized cube hitting: correctness and live randomization",
            c5_lir_runs,
        ),
        ("fat object bound", c6_anc_bound),
        ("angle between boundary components", c7_angles),
        ("tile count bounds", c8_tile_bounds),
        (
            "quadrant types, extreme intervals, distinct colors",
            c9_inline_invariants,
        ),
        ("translate bound", c10_es_bound),
        ("shrunk set coverage", c11_shrunk_coverage),
        ("homothet bound", c12_hhr_bound),
        ("vertex ranking", c13_vertex_ranking),
        ("offline solver exactness", c14_offline_exact),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.passed {
            failed += 1;
        }
        println!(
            "[{}] criterion {:>2}: {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
