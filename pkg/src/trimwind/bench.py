"""Benchmark suites: degree sweep, tolerance sweep, synthetic datasets.

Every suite is driven by a seed (PCG64), so the instrumented counters in the
report are reproducible; wall times are medians over repeated runs.
"""
from __future__ import annotations

import time

import numpy as np

from . import synthetic
from .containment import TrimmedRegion
from .geometry import Counters, CurveSpan, evaluate
from .winding import BezierPath, control_polygon_winding_baseline, path_winding

__all__ = [
    "SUITES",
    "run_suite",
    "boundary_points",
    "uniform_points",
    "ellipse_cost",
    "baseline_cost",
    "degree_suite",
    "tolerance_suite",
    "dataset_suite",
]

DEGREES = (3, 6, 12, 24, 48)
TOLERANCES = (1e-4, 1e-5, 1e-6, 1e-7, 1e-8)


def _median_ns(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - t0)
    return int(np.median(times))


def boundary_points(path: BezierPath, gen, count, offset=0.0) -> np.ndarray:
    """Points on the curve at random parameters, pushed ``offset`` along the normal."""
    out = np.empty((count, 2))
    for i in range(count):
        s = gen.uniform(0, 1)
        k = min(int(s * len(path.segments)), len(path.segments) - 1)
        seg = path.segments[k]
        t = s * len(path.segments) - k
        p = np.array(evaluate(seg, t))
        if offset:
            h = 1e-6
            q = np.array(evaluate(seg, min(t + h, 1.0))) - np.array(evaluate(seg, max(t - h, 0.0)))
            n = np.array([-q[1], q[0]]) / np.hypot(*q)
            p = p + offset * n
        out[i] = p
    return out


def uniform_points(gen, count) -> np.ndarray:
    return gen.uniform(0, 1, (count, 2))


def ellipse_cost(path: BezierPath, points, eps) -> Counters:
    """Summed counters of the ellipse method over ``points``."""
    ctr = Counters()
    for p in points:
        path_winding(p, path, eps=eps, counters=ctr)
    return ctr


def baseline_cost(path: BezierPath, points, eps) -> Counters:
    ctr = Counters()
    for p in points:
        for i, seg in enumerate(path.segments):
            control_polygon_winding_baseline(p, CurveSpan(seg), eps, counters=ctr, segment_id=i)
    return ctr


def _entry(params, ctr: Counters, n_points, median_ns):
    return {
        "params": params,
        "median_ns": median_ns,
        "eval_count": ctr.evals / n_points,
        "flops": ctr.flops / n_points,
        "ellipse_tests": ctr.ellipse_tests / n_points,
        "hull_tests": ctr.hull_tests / n_points,
        "subdivisions": ctr.subdivisions / n_points,
        "max_depth": ctr.max_depth,
    }


def degree_suite(seed, repeats=5, n_points=32, eps=1e-6, degrees=DEGREES, offset=0.0):
    """Per-query cost versus boundary degree for the ellipse method and the baseline.

    Queries are sampled on (or ``offset`` off) a circle-like cubic loop elevated
    to each degree without changing its geometry; on-boundary points are the
    worst case for both bisection schemes.
    """
    configs = []
    for n in degrees:
        path = synthetic.high_degree_loop(n)
        pts = boundary_points(path, synthetic.rng([seed, n]), n_points, offset)
        for method, cost in (("ellipse", ellipse_cost), ("baseline", baseline_cost)):
            ctr = cost(path, pts, eps)
            ns = _median_ns(lambda: cost(path, pts, eps), repeats) // n_points
            configs.append(_entry({"method": method, "degree": n, "eps": eps}, ctr, n_points, ns))
    return configs


def tolerance_suite(seed, repeats=5, n_points=200, tolerances=TOLERANCES):
    """Evaluation counts versus eps for points on the boundary and uniform points."""
    gen = synthetic.rng(seed)
    loops = synthetic.random_loops(gen, 4)
    configs = []
    for li, path in enumerate(loops):
        samples = {
            "boundary": boundary_points(path, gen, n_points),
            "uniform": uniform_points(gen, n_points),
        }
        for kind, pts in samples.items():
            for eps in tolerances:
                ctr = ellipse_cost(path, pts, eps)
                ns = _median_ns(lambda: ellipse_cost(path, pts, eps), repeats) // n_points
                configs.append(_entry({"loop": li, "sampling": kind, "eps": eps}, ctr, n_points, ns))
    return configs


def _grid(n):
    u = (np.arange(n) + 0.5) / n
    U, V = np.meshgrid(u, u[::-1])
    return np.column_stack([U.ravel(), V.ravel()])


def dataset_suite(seed, repeats=5, grid=64, eps=1e-6):
    """Grid timing on synthetic non-, uni- and bi-periodic datasets."""
    gen = synthetic.rng(seed)
    pts = _grid(grid)
    datasets = [("loops", "none", synthetic.random_loops(gen, 3))]
    datasets.append(("cylinder", "uni", synthetic.cylinder_dataset(gen, 2)))
    for p, q in ((2, 3), (3, 5), (5, 4)):
        datasets.append((f"torus{p}{q}", "bi", synthetic.torus_dataset(gen, p, q, 2)))
    configs = []
    for name, topo, data in datasets:
        if topo == "none":
            region = TrimmedRegion.from_loops(data, "none", eps)
        else:
            region = TrimmedRegion(data, eps)
        fn = lambda: region.winding_many(pts)
        ns = _median_ns(fn, repeats)
        loops = region.loop_set.loops
        ctr = Counters()
        sub = gen.choice(len(pts), 64, replace=False)
        for p in pts[sub]:
            for loop in loops:
                path_winding(p, loop, eps=eps, counters=ctr)
        configs.append(
            {
                "params": {"dataset": name, "topology": topo, "grid": grid, "eps": eps},
                "median_ns": ns,
                "median_ns_per_point": ns // len(pts),
                "eval_count": ctr.evals / len(sub),
                "subdivisions": ctr.subdivisions / len(sub),
                "segments": sum(len(l.segments) for l in loops),
            }
        )
    return configs


SUITES = {"degree": degree_suite, "tolerance": tolerance_suite, "dataset": dataset_suite}


def run_suite(name, seed=0, repeats=5, **kw) -> dict:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if repeats < 5:
        raise ValueError("timings are medians over at least 5 repetitions")
    return {
        "suite": name,
        "seed": seed,
        "prng": "numpy PCG64",
        "configs": SUITES[name](seed, repeats=repeats, **kw),
    }
