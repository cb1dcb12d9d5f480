"""Seeded synthetic boundaries for tests, benchmarks and demos.

All generators take a ``numpy.random.Generator``; :func:`rng` builds one on the
PCG64 bit generator so that a seed reproduces the same geometry everywhere.
"""
from __future__ import annotations

import math

import numpy as np

from .geometry import RationalBezierSegment, elevate_degree
from .periodic import BI_PERIODIC, UNI_PERIODIC, LoopSet
from .winding import BezierPath

__all__ = [
    "rng",
    "star_loop",
    "random_loops",
    "random_rational_segment",
    "perturb",
    "wavy_curve",
    "strip_dataset",
    "cylinder_dataset",
    "torus_dataset",
    "coprime_classes",
    "high_degree_loop",
]


def rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _hermite_path(x, dx, closed_end=None):
    """Cubic path through samples ``x`` with tangents ``dx`` (per unit segment parameter)."""
    blocks = []
    for i in range(len(x) - 1):
        p0, p3 = x[i], x[i + 1]
        blocks.append(np.array([p0, p0 + dx[i] / 3, p3 - dx[i + 1] / 3, p3]))
    if closed_end is not None:
        blocks[-1][3] = closed_end
    return BezierPath.from_control_points(blocks)


def star_loop(gen, center=(0.5, 0.5), radius=0.3, n_segments=6, roughness=0.3, smooth=True) -> BezierPath:
    """Closed CCW star-shaped cubic loop; ``smooth=False`` gives C0 corners."""
    th = np.sort(gen.uniform(0, 2 * np.pi, n_segments))
    th = th[0] + np.linspace(0, 2 * np.pi, n_segments + 1)[:-1] + gen.uniform(-0.3, 0.3, n_segments) * (
        2 * np.pi / n_segments
    )
    r = radius * (1 + roughness * gen.uniform(-1, 1, n_segments))
    c = np.asarray(center, float)
    pts = c + np.column_stack([r * np.cos(th), r * np.sin(th)])
    pts = np.vstack([pts, pts[:1]])
    if smooth:
        prev = np.roll(pts[:-1], 1, axis=0)
        nxt = np.roll(pts[:-1], -1, axis=0)
        tang = 0.5 * (nxt - prev)
        tang = np.vstack([tang, tang[:1]])
    else:
        tang = np.diff(pts, axis=0)
        tang = tang * gen.uniform(0.3, 1.2, (len(tang), 1))
        tang = np.vstack([tang, tang[:1]])
        # independent in/out tangents give corners
        blocks = []
        for i in range(n_segments):
            p0, p3 = pts[i], pts[i + 1]
            d = p3 - p0
            n = np.array([-d[1], d[0]])
            b1 = p0 + d / 3 + n * gen.uniform(-0.3, 0.3)
            b2 = p0 + 2 * d / 3 + n * gen.uniform(-0.3, 0.3)
            blocks.append(np.array([p0, b1, b2, p3]))
        return BezierPath.from_control_points(blocks)
    return _hermite_path(pts, tang)


def random_loops(gen, count, **kw) -> list[BezierPath]:
    out = []
    for _ in range(count):
        out.append(
            star_loop(
                gen,
                center=gen.uniform(0.35, 0.65, 2),
                radius=gen.uniform(0.1, 0.3),
                n_segments=int(gen.integers(3, 9)),
                smooth=bool(gen.integers(0, 2)),
                **kw,
            )
        )
    return out


def random_rational_segment(gen, degree=3, wmin=0.5, wmax=2.0) -> RationalBezierSegment:
    pts = gen.uniform(0, 1, (degree + 1, 2))
    return RationalBezierSegment(pts, gen.uniform(wmin, wmax, degree + 1))


def high_degree_loop(degree, center=(0.5, 0.5), radius=0.3) -> BezierPath:
    """Circle-like loop of four segments elevated from cubics to ``degree``."""
    k = 4 / 3 * math.tan(math.pi / 8)
    c = np.asarray(center, float)
    blocks = []
    for i in range(4):
        a0 = i * math.pi / 2
        a1 = a0 + math.pi / 2
        p0 = np.array([math.cos(a0), math.sin(a0)])
        p3 = np.array([math.cos(a1), math.sin(a1)])
        p1 = p0 + k * np.array([-p0[1], p0[0]])
        p2 = p3 - k * np.array([-p3[1], p3[0]])
        seg = RationalBezierSegment(c + radius * np.array([p0, p1, p2, p3]))
        if degree > 3:
            seg = elevate_degree(seg, degree)
        blocks.append(seg)
    return BezierPath(tuple(blocks))


def perturb(path: BezierPath, gen, sigma) -> BezierPath:
    """Gaussian noise on every control point, independently per segment (opens the loop)."""
    segs = []
    for s in path.segments:
        segs.append(RationalBezierSegment(s.control_points + gen.normal(0, sigma, s.control_points.shape), s.weights))
    return BezierPath(tuple(segs))


def wavy_curve(gen, start, vector, n_segments=4, amplitude=0.05, modes=3) -> BezierPath:
    """Cubic path from ``start`` to ``start + vector`` with a perpendicular wave.

    The wave vanishes at both ends, so consecutive translates by ``vector``
    join continuously into a periodically extended curve.
    """
    s = np.asarray(start, float)
    v = np.asarray(vector, float)
    nrm = np.array([-v[1], v[0]]) / np.hypot(*v)
    coef = gen.normal(0, 1, modes)
    coef *= amplitude / max(np.sum(np.abs(coef)), 1e-12)
    phase = np.arange(1, modes + 1) * np.pi

    t = np.linspace(0, 1, n_segments + 1)
    f = np.sin(np.outer(t, phase)) @ coef
    df = (np.cos(np.outer(t, phase)) * phase) @ coef
    x = s + np.outer(t, v) + np.outer(f, nrm)
    dx = (v + np.outer(df, nrm)) / n_segments
    x[0] = s
    return _hermite_path(x, dx, closed_end=s + v)


def coprime_classes(lo=2, hi=5):
    return [(p, q) for p in range(lo, hi + 1) for q in range(lo, hi + 1) if math.gcd(p, q) == 1]


def _band_curves(gen, d, n_pairs, n_segments, offset):
    """Alternating-orientation wavy curves of class ``d`` at evenly spaced cross levels."""
    d = np.asarray(d, float)
    norm = np.hypot(*d)
    spacing = 1.0 / (2 * n_pairs)
    amp = 0.3 * spacing / norm
    nrm = np.array([-d[1], d[0]]) / norm
    loops = []
    for k in range(2 * n_pairs):
        c = offset + k * spacing
        start = nrm * (c / norm)
        cur = wavy_curve(gen, start, d, n_segments=n_segments, amplitude=amp)
        loops.append(cur if k % 2 == 0 else cur.reversed())
    return loops


def torus_dataset(gen, p, q, n_pairs=1, n_segments=None) -> LoopSet:
    """Bi-periodic set of ``n_pairs`` band pairs of class ``+-(p, q)``."""
    if n_segments is None:
        n_segments = 2 * (abs(p) + abs(q))
    loops = _band_curves(gen, (p, q), n_pairs, n_segments, gen.uniform(0, 1))
    return LoopSet.build(loops, BI_PERIODIC)


def strip_dataset(gen, n_pairs=1, n_segments=4, holes=True) -> LoopSet:
    """Bi-periodic bands of class ``+-(1, 0)`` with optional contractible holes."""
    loops = _band_curves(gen, (1, 0), n_pairs, n_segments, gen.uniform(0.05, 0.15))
    if holes:
        spacing = 1.0 / (2 * n_pairs)
        for k in range(2 * n_pairs):
            v = loops[k].start[1] + 0.5 * spacing
            hole = star_loop(gen, center=(gen.uniform(0, 1), v), radius=0.12 * spacing, n_segments=5)
            loops.append(hole.reversed() if k % 2 == 0 else hole)
    return LoopSet.build(loops, BI_PERIODIC)


def cylinder_dataset(gen, n_pairs=1, n_segments=4, holes=True) -> LoopSet:
    """Uni-periodic (periodic in u) bands bounded by wavy class ``+-1`` loops."""
    loops = _band_curves(gen, (1, 0), n_pairs, n_segments, 0.1)
    if holes:
        spacing = 0.8 / (2 * n_pairs)
        for k in range(2 * n_pairs):
            v = loops[k].start[1] + 0.5 * (1.0 / (2 * n_pairs))
            hole = star_loop(gen, center=(gen.uniform(0, 1), v), radius=0.15 * spacing, n_segments=5)
            loops.append(hole.reversed() if k % 2 == 0 else hole)
    return LoopSet.build(loops, UNI_PERIODIC)
