"""Smoke test for the hitset_py extension module.

Build and install first, e.g. `maturin build -m crates/py/Cargo.toml` and
`pip install` the wheel, then run `python3 python/smoke_test.py`.
"""

import json
import math

import hitset_py as hs


def lir_hits_every_cube():
    lir = hs.Lir(2, 8.0, seed=5)
    cubes = [([0.37 * i, 0.29 * i], 1.1 + (i % 7)) for i in range(40)]
    for c, w in cubes:
        lir.step(c, w)
    assert all(lir.is_hit(c, w) for c, w in cubes)
    assert lir.cost == len(lir.points) > 0
    # same seed, same points
    again = hs.Lir(2, 8.0, seed=5)
    for c, w in cubes:
        again.step(c, w)
    assert again.points == lir.points
    # width exactly 1 on an integer center leaves one lattice point per axis
    try:
        hs.Lir(2, 8.0).step([0.0, 3.0], 1.0)
    except ValueError as e:
        assert "lattice points" in str(e)
    else:
        raise AssertionError("degenerate cube accepted")


def anc_places_rounded_centers():
    anc = hs.Anc(2, 8.0)
    p = anc.step_linf([0.3, 0.7], 1.0)
    assert p == hs.anc_round([0.3, 0.7], 0)
    assert anc.step_linf([0.3, 0.7], 1.0) is None
    anc.step_l2([5.0, 5.0], 2.0)
    anc.step_box([9.0, 1.0], [1.5, 3.0])
    assert anc.cost == 3
    assert hs.anc_bound(1.0, 2, 8.0) > 1.0


def kgon_algorithms():
    pts = [(0.1 * i, 0.07 * i * i % 3.0) for i in range(30)]
    es = hs.Es(5, 2.0, pts)
    for i in range(0, 30, 3):
        es.step(pts[i])
    assert es.cost == len(es.chosen) >= 1
    hhr = hs.Hhr(5, 8.0, pts, seed=1)
    for i in range(0, 30, 2):
        hhr.step(pts[i], 1.0 + i / 5)
        assert hhr.is_hit(pts[i], 1.0 + i / 5)
    assert hs.es_bound(5, 30) > 0 and hs.hhr_bound(5, 8.0, 30) > 0


def helpers():
    assert hs.linf_distance([0.0, 0.0], [3.0, -4.0]) == 4.0
    assert hs.layer_of(1.0) == (0, 1.0)
    ranks = hs.vertex_ranking(7)
    assert len(ranks) == 7 and max(ranks) <= math.log2(14)
    assert hs.min_hitting_set([[0, 1], [1, 2], [3]], 4) == [1, 3]
    try:
        hs.linf_distance([0.0], [1.0, 2.0])
    except ValueError:
        pass
    else:
        raise AssertionError("dimension mismatch accepted")


def experiments():
    spec = {"class": "fat", "d": 2, "M": 8.0, "count": 60, "extent": 20.0, "fat": "l2"}
    inst = hs.generate_instance(json.dumps(spec), 3)
    assert inst == hs.generate_instance(json.dumps(spec), 3)
    reports = [json.loads(r) for r in hs.run_experiment(inst, "anc", seed=2, trials=3)]
    assert len(reports) == 3
    for r in reports:
        assert all(c["passed"] for c in r["checks"])
        assert r["opt"] == len(hs.instance_opt(inst))
        assert r["ratio"] <= r["bound"]


def adversary():
    path = hs.adversary_path(2, 16, 9)
    assert [w for _, w in path][0] < 16 and len(path) == 4
    witness = hs.adversary_witness(2, 16, 9)
    assert all(max(abs(a - b) for a, b in zip(witness, c)) < w for c, w in path)
    mean, _, floor = hs.adversary_cost(2, 16, 200, 0, "greedy")
    assert mean == 4.0 and floor == 2.5
    assert hs.adversary_cost(2, 16, 50, 0, "witness")[0] == 1.0


if __name__ == "__main__":
    for test in [lir_hits_every_cube, anc_places_rounded_centers, kgon_algorithms, helpers, experiments, adversary]:
        test()
        print(f"ok {test.__name__}")
