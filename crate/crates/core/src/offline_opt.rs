//! Exact minimum hitting sets for small instances.
//!
//! The solver works on the object/candidate incidence structure: repeated
//! reductions (forced candidates, dominated objects and candidates), then an
//! independent branch and bound per connected component.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{AxisHypercube, GeomObject, Point};
use crate::lattice::LatticeSpec;

#[derive(Clone, Debug)]
pub struct HitInstance {
    pub objects: Vec<GeomObject>,
    pub candidates: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    /// Indices into the candidate list, ascending.
    pub indices: Vec<usize>,
    pub points: Vec<Point>,
    /// Branch-and-bound nodes explored.
    pub nodes: u64,
}

impl Solution {
    pub fn size(&self) -> usize {
        self.indices.len()
    }
}

fn lattice_points_in(object: &GeomObject, lattice: &LatticeSpec) -> Result<Vec<Vec<i64>>> {
    let (lo, hi) = object.bounding_box();
    let center: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| (a + b) / 2.0).collect();
    let half = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a) / 2.0)
        .fold(0.0, f64::max);
    let bbox = AxisHypercube::closed(Point::new(center)?, half.max(f64::MIN_POSITIVE))?;
    Ok(lattice
        .indices_in(&bbox)?
        .into_iter()
        .filter(|idx| object.contains_closed(lattice.point(idx).coords()))
        .collect())
}

/// Lattice points inside at least one object, deduplicated and in
/// lexicographic index order.
pub fn candidates_for_lattice_variant(
    objects: &[GeomObject],
    lattice: &LatticeSpec,
) -> Result<Vec<Point>> {
    let mut keys = BTreeSet::new();
    for o in objects {
        keys.extend(lattice_points_in(o, lattice)?);
    }
    Ok(keys.into_iter().map(|k| lattice.point(&k)).collect())
}

/// For each object, the candidates it contains (closed containment).
pub fn incidence(inst: &HitInstance) -> Vec<Vec<usize>> {
    inst.objects
        .iter()
        .map(|o| {
            inst.candidates
                .iter()
                .enumerate()
                .filter(|(_, p)| o.contains_closed(p.coords()))
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

pub fn exact_min_hitting_set(inst: &HitInstance) -> Result<Solution> {
    let sets = incidence(inst);
    let (indices, nodes) = solve_incidence(&sets, inst.candidates.len())?;
    let points = indices
        .iter()
        .map(|&i| inst.candidates[i].clone())
        .collect();
    Ok(Solution {
        indices,
        points,
        nodes,
    })
}

/// Minimum set of candidate indices meeting every `sets[o]`. Returns the
/// sorted indices and the number of search nodes.
pub fn solve_incidence(sets: &[Vec<usize>], n_candidates: usize) -> Result<(Vec<usize>, u64)> {
    if let Some(o) = sets.iter().position(|s| s.is_empty()) {
        return Err(Error::Infeasible(o));
    }
    let mut objs: Vec<FixedBitSet> = sets
        .iter()
        .map(|s| {
            let mut b = FixedBitSet::with_capacity(n_candidates);
            for &c in s {
                b.insert(c);
            }
            b
        })
        .collect();
    let mut alive = FixedBitSet::with_capacity(n_candidates);
    for s in &objs {
        alive.union_with(s);
    }
    let mut chosen = Vec::new();
    reduce(&mut objs, &mut alive, &mut chosen);

    let mut nodes = 0;
    for comp in components(&objs) {
        // renumber this component's candidates densely
        let mut used = FixedBitSet::with_capacity(n_candidates);
        for &o in &comp {
            used.union_with(&objs[o]);
        }
        let global: Vec<usize> = used.ones().collect();
        let local: HashMap<usize, usize> =
            global.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let part: Vec<FixedBitSet> = comp
            .iter()
            .map(|&o| {
                let mut b = FixedBitSet::with_capacity(global.len());
                for c in objs[o].ones() {
                    b.insert(local[&c]);
                }
                b
            })
            .collect();
        let (sol, n) = branch_and_bound(&part, global.len());
        nodes += n;
        chosen.extend(sol.into_iter().map(|c| global[c]));
    }
    chosen.sort_unstable();
    chosen.dedup();
    Ok((chosen, nodes))
}

/// Applies reductions to a fixpoint. Candidates taken for sure go to
/// `chosen`; satisfied objects are dropped from `objs`.
fn reduce(objs: &mut Vec<FixedBitSet>, alive: &mut FixedBitSet, chosen: &mut Vec<usize>) {
    loop {
        let mut changed = false;
        // forced candidates
        if let Some(c) = objs
            .iter()
            .find(|s| s.count_ones(..) == 1)
            .and_then(|s| s.ones().next())
        {
            chosen.push(c);
            objs.retain(|s| !s.contains(c));
            alive.set(c, false);
            continue;
        }
        // an object containing another object's candidates is implied by it
        objs.sort_by_key(|s| s.count_ones(..));
        let mut keep = vec![true; objs.len()];
        for i in 0..objs.len() {
            if !keep[i] {
                continue;
            }
            for j in i + 1..objs.len() {
                if keep[j] && objs[i].is_subset(&objs[j]) {
                    keep[j] = false;
                    changed = true;
                }
            }
        }
        let mut it = keep.iter();
        objs.retain(|_| *it.next().unwrap());
        // a candidate hitting a subset of what another hits is never needed;
        // among equal coverages the smallest index survives
        let mut cover: Vec<(usize, FixedBitSet)> = alive
            .ones()
            .map(|c| (c, FixedBitSet::with_capacity(objs.len())))
            .collect();
        let slot: HashMap<usize, usize> = cover
            .iter()
            .enumerate()
            .map(|(i, (c, _))| (*c, i))
            .collect();
        for (o, s) in objs.iter().enumerate() {
            for c in s.ones() {
                cover[slot[&c]].1.insert(o);
            }
        }
        cover.sort_by_key(|(c, b)| (std::cmp::Reverse(b.count_ones(..)), *c));
        let mut kept: Vec<&FixedBitSet> = Vec::new();
        let mut dead = FixedBitSet::with_capacity(alive.len());
        for (c, b) in &cover {
            if b.is_clear() || kept.iter().any(|k| b.is_subset(k)) {
                dead.insert(*c);
            } else {
                kept.push(b);
            }
        }
        if !dead.is_clear() {
            alive.difference_with(&dead);
            for s in objs.iter_mut() {
                s.difference_with(&dead);
            }
            changed = true;
        }
        if !changed {
            return;
        }
    }
}

/// Groups objects linked through shared candidates.
fn components(objs: &[FixedBitSet]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; objs.len()];
    let mut out = Vec::new();
    for start in 0..objs.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut reach = objs[start].clone();
        let mut grew = true;
        while grew {
            grew = false;
            for o in 0..objs.len() {
                if !seen[o] && !objs[o].is_disjoint(&reach) {
                    seen[o] = true;
                    reach.union_with(&objs[o]);
                    comp.push(o);
                    grew = true;
                }
            }
        }
        out.push(comp);
    }
    out
}

struct Search<'a> {
    objs: &'a [FixedBitSet],
    /// Objects hit by each candidate.
    hits: Vec<FixedBitSet>,
    best: Vec<usize>,
    nodes: u64,
}

fn branch_and_bound(objs: &[FixedBitSet], n_candidates: usize) -> (Vec<usize>, u64) {
    let mut hits = vec![FixedBitSet::with_capacity(objs.len()); n_candidates];
    for (o, s) in objs.iter().enumerate() {
        for c in s.ones() {
            hits[c].insert(o);
        }
    }
    let mut open = FixedBitSet::with_capacity(objs.len());
    open.insert_range(..);
    let mut search = Search {
        objs,
        hits,
        best: Vec::new(),
        nodes: 0,
    };
    search.best = search.greedy(&open);
    search.run(&open, &mut Vec::new());
    (search.best, search.nodes)
}

impl Search<'_> {
    fn gain(&self, c: usize, open: &FixedBitSet) -> usize {
        self.hits[c].intersection(open).count()
    }

    fn greedy(&self, open: &FixedBitSet) -> Vec<usize> {
        let mut open = open.clone();
        let mut out = Vec::new();
        while !open.is_clear() {
            let c = (0..self.hits.len())
                .max_by_key(|&c| (self.gain(c, &open), std::cmp::Reverse(c)))
                .unwrap();
            open.difference_with(&self.hits[c]);
            out.push(c);
        }
        out
    }

    /// Size of a set of open objects with pairwise disjoint candidate sets.
    fn packing_bound(&self, open: &FixedBitSet) -> usize {
        let mut order: Vec<usize> = open.ones().collect();
        order.sort_by_key(|&o| self.objs[o].count_ones(..));
        let mut used = FixedBitSet::with_capacity(self.hits.len());
        let mut n = 0;
        for o in order {
            if self.objs[o].is_disjoint(&used) {
                used.union_with(&self.objs[o]);
                n += 1;
            }
        }
        n
    }

    fn run(&mut self, open: &FixedBitSet, chosen: &mut Vec<usize>) {
        self.nodes += 1;
        if open.is_clear() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.packing_bound(open) >= self.best.len() {
            return;
        }
        let pivot = open
            .ones()
            .min_by_key(|&o| self.objs[o].count_ones(..))
            .unwrap();
        let mut cands: Vec<usize> = self.objs[pivot].ones().collect();
        cands.sort_by_key(|&c| std::cmp::Reverse(self.gain(c, open)));
        for c in cands {
            let mut next = open.clone();
            next.difference_with(&self.hits[c]);
            chosen.push(c);
            self.run(&next, chosen);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Smallest subset by increasing size, straight from the definition.
    fn exhaustive(sets: &[Vec<usize>], n: usize) -> usize {
        (0u32..1 << n)
            .filter(|mask| sets.iter().all(|s| s.iter().any(|&c| mask >> c & 1 == 1)))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(solve_incidence(&[vec![0, 1]], 2).unwrap().0.len(), 1);
        let disjoint: Vec<Vec<usize>> = (0..5).map(|i| vec![2 * i, 2 * i + 1]).collect();
        assert_eq!(solve_incidence(&disjoint, 10).unwrap().0.len(), 5);
        assert_eq!(
            solve_incidence(&[vec![0], vec![]], 1).unwrap_err(),
            Error::Infeasible(1)
        );
        // a triangle needs two
        let tri = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        assert_eq!(solve_incidence(&tri, 3).unwrap().0.len(), 2);
    }

    #[test]
    fn matches_exhaustive_on_fixed_families() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(1..=12);
            let m = rng.random_range(1..=14);
            let sets: Vec<Vec<usize>> = (0..m)
                .map(|_| {
                    let mut s: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.3)).collect();
                    if s.is_empty() {
                        s.push(rng.random_range(0..n));
                    }
                    s
                })
                .collect();
            let (sol, _) = solve_incidence(&sets, n).unwrap();
            assert!(sets.iter().all(|s| s.iter().any(|c| sol.contains(c))));
            assert_eq!(sol.len(), exhaustive(&sets, n), "{sets:?}");
        }
    }

    #[test]
    fn lattice_candidates() {
        let lat = LatticeSpec::new(1.0, 2).unwrap();
        let unit = GeomObject::from(
            AxisHypercube::closed(Point::new(vec![0.5, 0.5]).unwrap(), 0.5).unwrap(),
        );
        let c = candidates_for_lattice_variant(std::slice::from_ref(&unit), &lat).unwrap();
        assert_eq!(c.len(), 4);
        let far = GeomObject::from(
            AxisHypercube::closed(Point::new(vec![10.0, 0.0]).unwrap(), 1.0).unwrap(),
        );
        let c = candidates_for_lattice_variant(&[unit, far], &lat).unwrap();
        assert_eq!(c.len(), 13);
        assert!(c.windows(2).all(|w| w[0].coords() < w[1].coords()));
    }
}
