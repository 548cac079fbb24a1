//! Python bindings. Points are lists of floats, instances and reports are
//! JSON strings in the same format the command line tool reads and writes.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hitset::adversary::{
    measure_expected_cost, verify_path, AdversaryTree, NearestCenterGreedy, OfflineWitness,
};
use hitset::fat_online::{anc_bound as anc_bound_rs, AncState};
use hitset::geometry::{
    linf_distance as linf_rs, AxisHypercube, FatObject, Point, RegularKGon, P2,
};
use hitset::harness::{self, Algo, GenSpec, InstanceFile, RunConfig};
use hitset::hypercube_online::{layer_of as layer_of_rs, Lir as LirRs};
use hitset::kgon_online::{
    es_bound as es_bound_rs, hhr_bound as hhr_bound_rs, prototype_constants, EsState, Hhr as HhrRs,
};
use hitset::lattice::anc_round as anc_round_rs;
use hitset::offline_opt::solve_incidence;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn point(v: Vec<f64>) -> PyResult<Point> {
    Point::new(v).map_err(err)
}

fn p2(v: (f64, f64)) -> P2 {
    P2::new(v.0, v.1)
}

fn coords(p: &[Point]) -> Vec<Vec<f64>> {
    p.iter().map(|p| p.coords().to_vec()).collect()
}

/// L-infinity distance between two points of equal dimension.
#[pyfunction]
fn linf_distance(p: Vec<f64>, q: Vec<f64>) -> PyResult<f64> {
    linf_rs(&point(p)?, &point(q)?).map_err(err)
}

/// Layer index and lattice spacing for a cube of width `w >= 1`.
#[pyfunction]
fn layer_of(w: f64) -> PyResult<(u32, f64)> {
    let l = layer_of_rs(w).map_err(err)?;
    Ok((l.k, l.spacing))
}

/// Rounds `c` to the lattice of spacing `2^(i+1)`, ties rounding up.
#[pyfunction]
fn anc_round(c: Vec<f64>, i: i32) -> PyResult<Vec<f64>> {
    Ok(anc_round_rs(&point(c)?, i).into_vec())
}

#[pyfunction]
fn anc_bound(alpha: f64, d: u32, max_width: f64) -> f64 {
    anc_bound_rs(alpha, d, max_width)
}

#[pyfunction]
fn es_bound(k: u32, n: usize) -> PyResult<f64> {
    Ok(es_bound_rs(
        prototype_constants(k).map_err(err)?.max_tiles,
        n,
    ))
}

#[pyfunction]
fn hhr_bound(k: u32, max_diameter: f64, n: usize) -> PyResult<f64> {
    let c = prototype_constants(k).map_err(err)?;
    Ok(hhr_bound_rs(c.max_tiles, k, max_diameter, n))
}

/// Colors of a path on `n` vertices such that any two equal colors are
/// separated by a larger one.
#[pyfunction]
fn vertex_ranking(n: usize) -> Vec<u32> {
    hitset::kgon_online::vertex_ranking(n)
}

/// Minimum set of candidate indices meeting every set.
#[pyfunction]
fn min_hitting_set(sets: Vec<Vec<usize>>, n_candidates: usize) -> PyResult<Vec<usize>> {
    Ok(solve_incidence(&sets, n_candidates).map_err(err)?.0)
}

/// Random instance as JSONL; `spec` is a JSON object with the generator fields.
#[pyfunction]
fn generate_instance(spec: &str, seed: u64) -> PyResult<String> {
    let spec: GenSpec = serde_json::from_str(spec).map_err(err)?;
    Ok(harness::generate_random_instance(&spec, seed)
        .map_err(err)?
        .to_jsonl())
}

/// Optimal hitting set of a JSONL instance.
#[pyfunction]
fn instance_opt(instance: &str) -> PyResult<Vec<Vec<f64>>> {
    let inst = instance.parse::<InstanceFile>().map_err(err)?;
    Ok(coords(
        &harness::instance_opt_solution(&inst).map_err(err)?.points,
    ))
}

/// One JSON report per trial.
#[pyfunction]
#[pyo3(signature = (instance, algo, seed=0, opt=true, trials=1))]
fn run_experiment(
    instance: &str,
    algo: &str,
    seed: u64,
    opt: bool,
    trials: usize,
) -> PyResult<Vec<String>> {
    let inst = instance.parse::<InstanceFile>().map_err(err)?;
    let algo = Algo::parse(algo).ok_or_else(|| err(format!("unknown algorithm {algo:?}")))?;
    let cfg = RunConfig {
        algo,
        seed,
        opt,
        trials,
    };
    harness::run_experiment(&inst, &cfg)
        .map_err(err)?
        .iter()
        .map(|r| serde_json::to_string(r).map_err(err))
        .collect()
}

/// A random adversary path as `(center, width)` pairs of the presented cubes.
#[pyfunction]
fn adversary_path(d: usize, max_width: u64, seed: u64) -> PyResult<Vec<(Vec<f64>, f64)>> {
    let tree = AdversaryTree::new(d, max_width).map_err(err)?;
    Ok(tree
        .seeded_path(seed)
        .iter()
        .map(|c| {
            let p = c.presented();
            (p.center().coords().to_vec(), p.width())
        })
        .collect())
}

/// Checks a random path and returns the point lying in all of its cubes.
#[pyfunction]
fn adversary_witness(d: usize, max_width: u64, seed: u64) -> PyResult<Vec<f64>> {
    let tree = AdversaryTree::new(d, max_width).map_err(err)?;
    Ok(verify_path(&tree, &tree.seeded_path(seed))
        .map_err(err)?
        .into_vec())
}

/// Mean cost over random adversary paths: `(mean, std_error, floor)`.
/// `algo` is `greedy`, `lir` or `witness`.
#[pyfunction]
fn adversary_cost(
    d: usize,
    max_width: u64,
    trials: usize,
    seed: u64,
    algo: &str,
) -> PyResult<(f64, f64, f64)> {
    let tree = AdversaryTree::new(d, max_width).map_err(err)?;
    let est = match algo {
        "greedy" => measure_expected_cost(&tree, trials, seed, |_, _| {
            Ok(NearestCenterGreedy::default())
        }),
        "lir" => measure_expected_cost(&tree, trials, seed, |s, _| {
            LirRs::new(d, max_width as f64, s)
        }),
        "witness" => measure_expected_cost(&tree, trials, seed, |_, p| {
            Ok(OfflineWitness::new(verify_path(&tree, p)?))
        }),
        _ => return Err(err(format!("unknown adversary algorithm {algo:?}"))),
    }
    .map_err(err)?;
    Ok((est.mean, est.std_error, est.floor))
}

/// Randomized layered algorithm for hypercubes with widths in `[1, M]`.
#[pyclass]
struct Lir(LirRs);

#[pymethods]
impl Lir {
    #[new]
    #[pyo3(signature = (d, max_width, seed=0))]
    fn new(d: usize, max_width: f64, seed: u64) -> PyResult<Self> {
        Ok(Lir(LirRs::new(d, max_width, seed).map_err(err)?))
    }

    /// Presents an open cube (closed when asked) and returns the added points.
    #[pyo3(signature = (center, width, closed=false))]
    fn step(&mut self, center: Vec<f64>, width: f64, closed: bool) -> PyResult<Vec<Vec<f64>>> {
        let c = AxisHypercube::new(point(center)?, width)
            .map_err(err)?
            .with_closed(closed);
        Ok(coords(&self.0.step(&c).map_err(err)?.added))
    }

    #[pyo3(signature = (center, width, closed=false))]
    fn is_hit(&self, center: Vec<f64>, width: f64, closed: bool) -> PyResult<bool> {
        let c = AxisHypercube::new(point(center)?, width)
            .map_err(err)?
            .with_closed(closed);
        Ok(self.0.is_hit(&c))
    }

    #[getter]
    fn points(&self) -> Vec<Vec<f64>> {
        coords(self.0.points())
    }

    #[getter]
    fn cost(&self) -> usize {
        self.0.cost()
    }
}

/// Deterministic rounding algorithm for fat objects.
#[pyclass]
struct Anc(AncState);

impl Anc {
    fn place(&mut self, f: FatObject) -> PyResult<Option<Vec<f64>>> {
        Ok(self.0.step(&f).map_err(err)?.map(Point::into_vec))
    }
}

#[pymethods]
impl Anc {
    #[new]
    fn new(d: usize, max_width: f64) -> PyResult<Self> {
        Ok(Anc(AncState::new(d, max_width).map_err(err)?))
    }

    /// Presents an L-infinity ball; returns the placed point, if any.
    fn step_linf(&mut self, center: Vec<f64>, width: f64) -> PyResult<Option<Vec<f64>>> {
        self.place(FatObject::linf_ball(point(center)?, width).map_err(err)?)
    }

    fn step_l2(&mut self, center: Vec<f64>, radius: f64) -> PyResult<Option<Vec<f64>>> {
        self.place(FatObject::l2_ball(point(center)?, radius).map_err(err)?)
    }

    fn step_box(&mut self, center: Vec<f64>, half_extents: Vec<f64>) -> PyResult<Option<Vec<f64>>> {
        self.place(FatObject::boxed(point(center)?, half_extents).map_err(err)?)
    }

    #[getter]
    fn points(&self) -> Vec<Vec<f64>> {
        coords(self.0.points())
    }

    #[getter]
    fn cost(&self) -> usize {
        self.0.cost()
    }
}

/// Deterministic algorithm for translates of one regular k-gon over a
/// finite point set.
#[pyclass]
struct Es {
    state: EsState,
    k: u32,
    radius: f64,
}

#[pymethods]
impl Es {
    #[new]
    fn new(k: u32, diameter: f64, points: Vec<(f64, f64)>) -> PyResult<Self> {
        let pts: Arc<[P2]> = points.into_iter().map(p2).collect();
        let state = EsState::new(k, diameter, pts).map_err(err)?;
        Ok(Es {
            radius: state.prototype().circumradius(),
            state,
            k,
        })
    }

    /// Presents the translate centered at `center`; returns added point indices.
    fn step(&mut self, center: (f64, f64)) -> PyResult<Vec<usize>> {
        let g = RegularKGon::new(self.k, p2(center), self.radius).map_err(err)?;
        Ok(self.state.step(&g).map_err(err)?.added)
    }

    #[getter]
    fn chosen(&self) -> Vec<usize> {
        self.state.chosen().to_vec()
    }

    #[getter]
    fn cost(&self) -> usize {
        self.state.cost()
    }
}

/// Randomized layered algorithm for homothetic regular k-gons with
/// diameters in `[1, M]` over a finite point set.
#[pyclass]
struct Hhr {
    state: HhrRs,
    k: u32,
}

#[pymethods]
impl Hhr {
    #[new]
    #[pyo3(signature = (k, max_diameter, points, seed=0))]
    fn new(k: u32, max_diameter: f64, points: Vec<(f64, f64)>, seed: u64) -> PyResult<Self> {
        let pts: Arc<[P2]> = points.into_iter().map(p2).collect();
        Ok(Hhr {
            state: HhrRs::new(k, max_diameter, pts, seed).map_err(err)?,
            k,
        })
    }

    /// Presents the k-gon with this center and diameter; returns added point indices.
    fn step(&mut self, center: (f64, f64), diameter: f64) -> PyResult<Vec<usize>> {
        let g = RegularKGon::new(self.k, p2(center), diameter / 2.0).map_err(err)?;
        Ok(self.state.step(&g).map_err(err)?.added)
    }

    fn is_hit(&self, center: (f64, f64), diameter: f64) -> PyResult<bool> {
        let g = RegularKGon::new(self.k, p2(center), diameter / 2.0).map_err(err)?;
        Ok(self.state.is_hit(&g))
    }

    #[getter]
    fn chosen(&self) -> Vec<usize> {
        self.state.chosen().to_vec()
    }

    #[getter]
    fn cost(&self) -> usize {
        self.state.cost()
    }
}

#[pymodule]
fn hitset_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Lir>()?;
    m.add_class::<Anc>()?;
    m.add_class::<Es>()?;
    m.add_class::<Hhr>()?;
    m.add_function(wrap_pyfunction!(linf_distance, m)?)?;
    m.add_function(wrap_pyfunction!(layer_of, m)?)?;
    m.add_function(wrap_pyfunction!(anc_round, m)?)?;
    m.add_function(wrap_pyfunction!(anc_bound, m)?)?;
    m.add_function(wrap_pyfunction!(es_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hhr_bound, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_ranking, m)?)?;
    m.add_function(wrap_pyfunction!(min_hitting_set, m)?)?;
    m.add_function(wrap_pyfunction!(generate_instance, m)?)?;
    m.add_function(wrap_pyfunction!(instance_opt, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(adversary_path, m)?)?;
    m.add_function(wrap_pyfunction!(adversary_witness, m)?)?;
    m.add_function(wrap_pyfunction!(adversary_cost, m)?)?;
    Ok(())
}
