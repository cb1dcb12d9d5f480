"""Generate the frozen oracle data used by the test-suite.

Everything here is computed without the engine's evaluation or winding code:
curves are evaluated in Bernstein form, windings are plain per-edge ``atan2``
sums over dense polylines, B-splines go through ``scipy.interpolate``.  Only the
seeded geometry comes from ``trimwind.synthetic`` so tests can rebuild it; a
digest of every control point guards against generator drift.

Run from the repository root:  python tests/oracles/generate.py
"""
from __future__ import annotations

import hashlib
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
from scipy.interpolate import BSpline

from trimwind import synthetic

HERE = Path(__file__).parent
TWO_PI = 2 * math.pi

# criterion 1: closed cubic loops versus the dense polyline
LOOP_SEED = 2024
N_LOOPS = 200
PTS_PER_LOOP = 50
ORACLE_SUBDIV = 100_000
EPS = 1e-6

# criterion 8: wavy extended curves versus the K=1000 truncated sum
WAVY_SEED = 4711
N_WAVY = 100
PTS_PER_WAVY = 5
K_TRUNC = 1000
WAVY_SUBDIV = 64
LATTICE = [(1, 0), (0, 1), (1, 1), (2, 1), (1, -2), (-1, 1), (3, 2), (0, -1), (-2, -3), (2, 5)]


def digest(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        for s in p.segments:
            h.update(np.ascontiguousarray(s.control_points).tobytes())
            if s.weights is not None:
                h.update(np.ascontiguousarray(s.weights).tobytes())
    return h.hexdigest()


def bernstein_points(ctrl, weights, t):
    """Rational Bezier points by the Bernstein sum (independent of the engine)."""
    n = len(ctrl) - 1
    t = np.asarray(t, float)[:, None]
    i = np.arange(n + 1)[None, :]
    comb = np.array([math.comb(n, k) for k in range(n + 1)], float)[None, :]
    basis = comb * t**i * (1 - t) ** (n - i)
    w = np.ones(n + 1) if weights is None else np.asarray(weights, float)
    bw = basis * w
    return (bw @ ctrl) / bw.sum(axis=1, keepdims=True)


def dense_polyline(path, subdiv):
    t = np.linspace(0, 1, subdiv + 1)
    chunks = []
    for s in path.segments:
        v = bernstein_points(s.control_points, s.weights, t)
        v[0], v[-1] = s.control_points[0], s.control_points[-1]
        chunks.append(v)
    return chunks


def edge_angle_sum(p, verts):
    """Sum of per-edge subtended angles over 2*pi."""
    a = verts[:-1] - p
    b = verts[1:] - p
    cr = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dt = a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]
    return float(np.sum(np.arctan2(cr, dt))) / TWO_PI


def point_polyline_distance(p, verts):
    a = verts[:-1]
    e = verts[1:] - a
    ll = np.einsum("ij,ij->i", e, e)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.clip(np.einsum("ij,ij->i", p - a, e) / ll, 0, 1)
    t = np.nan_to_num(t)
    q = a + t[:, None] * e
    return float(np.min(np.hypot(*(q - p).T)))


# ---------------------------------------------------------------------------


def _loop_job(args):
    idx, path_blocks, pts = args
    from trimwind.winding import BezierPath

    path = BezierPath.from_control_points(path_blocks)
    chunks = dense_polyline(path, ORACLE_SUBDIV)
    return idx, [sum(edge_angle_sum(p, c) for c in chunks) for p in pts]


def criterion1():
    gen = synthetic.rng(LOOP_SEED)
    loops = synthetic.random_loops(gen, N_LOOPS)
    pgen = synthetic.rng(LOOP_SEED + 1)
    points = np.empty((N_LOOPS, PTS_PER_LOOP, 2))
    dists = np.empty((N_LOOPS, PTS_PER_LOOP))
    for li, loop in enumerate(loops):
        coarse = np.vstack(dense_polyline(loop, 2000))
        k = 0
        while k < PTS_PER_LOOP:
            if k < PTS_PER_LOOP // 2:
                p = pgen.uniform(0, 1, 2)
            else:
                # near the curve: a curve point pushed off by 1e-5 .. 1e-2
                s = pgen.integers(len(coarse) - 1)
                e = coarse[s + 1] - coarse[s]
                n = np.array([-e[1], e[0]]) / np.hypot(*e)
                p = coarse[s] + n * 10 ** pgen.uniform(-4.7, -2) * pgen.choice([-1, 1])
            d = point_polyline_distance(p, coarse)
            if d < 10 * EPS * 2:
                continue
            points[li, k] = p
            dists[li, k] = d
            k += 1
    jobs = [(i, [s.control_points for s in loops[i].segments], points[i]) for i in range(N_LOOPS)]
    values = np.empty((N_LOOPS, PTS_PER_LOOP))
    with ProcessPoolExecutor() as ex:
        for i, vals in ex.map(_loop_job, jobs):
            values[i] = vals
            print(f"  loop {i}", end="\r", file=sys.stderr)
    np.savez_compressed(
        HERE / "loops_oracle.npz",
        points=points,
        values=values,
        dists=dists,
        digest=np.array(digest(loops)),
        seed=LOOP_SEED,
        subdivisions=ORACLE_SUBDIV,
    )


def _wavy_job(args):
    idx, blocks, vector, pts = args
    from trimwind.winding import BezierPath

    base = BezierPath.from_control_points(blocks)
    v = np.asarray(vector, float)
    one = np.vstack([c[:-1] for c in dense_polyline(base, WAVY_SUBDIV)])
    ks = np.arange(-K_TRUNC, K_TRUNC + 1)
    long = (one[None, :, :] + ks[:, None, None] * v).reshape(-1, 2)
    b0 = np.asarray(base.start, float)
    long = np.vstack([long, b0 + (K_TRUNC + 1) * v])
    first, last = b0 - K_TRUNC * v, b0 + (K_TRUNC + 1) * v
    out = []
    for p in pts:
        copies = edge_angle_sum(p, long)
        cr = v[0] * (p[1] - b0[1]) - v[1] * (p[0] - b0[0])
        line = 0.5 if cr > 0 else -0.5
        a, b = first - p, last - p
        chord = math.atan2(a[0] * b[1] - a[1] * b[0], a @ b) / TWO_PI
        out.append(copies + line - chord)
    return idx, out


def wavy_curves():
    gen = synthetic.rng(WAVY_SEED)
    curves = []
    for _ in range(N_WAVY):
        vec = LATTICE[gen.integers(len(LATTICE))]
        start = gen.uniform(0, 1, 2)
        nseg = int(gen.integers(2, 7))
        amp = gen.uniform(0.02, 0.2)
        curves.append((synthetic.wavy_curve(gen, start, vec, n_segments=nseg, amplitude=amp), vec))
    return curves


def criterion8():
    curves = wavy_curves()
    pgen = synthetic.rng(WAVY_SEED + 1)
    points = np.empty((N_WAVY, PTS_PER_WAVY, 2))
    for ci, (base, vec) in enumerate(curves):
        v = np.asarray(vec, float)
        one = np.vstack(dense_polyline(base, 256))
        near = np.vstack([one + k * v for k in range(-8, 9)])
        k = 0
        while k < PTS_PER_WAVY:
            p = pgen.uniform(-0.5, 1.5, 2)
            if point_polyline_distance(p, near) < 1e-3:
                continue
            points[ci, k] = p
            k += 1
    jobs = [
        (i, [s.control_points for s in b.segments], vec, points[i]) for i, (b, vec) in enumerate(curves)
    ]
    values = np.empty((N_WAVY, PTS_PER_WAVY))
    with ProcessPoolExecutor() as ex:
        for i, vals in ex.map(_wavy_job, jobs):
            values[i] = vals
    np.savez_compressed(
        HERE / "wavy_oracle.npz",
        points=points,
        values=values,
        vectors=np.array([c[1] for c in curves]),
        digest=np.array(digest([c[0] for c in curves])),
        seed=WAVY_SEED,
        K=K_TRUNC,
    )


# ---------------------------------------------------------------------------
# small oracles


def small():
    out = {}
    # cubic at t=1/2 by exact de Casteljau in rationals
    from fractions import Fraction as F

    P = [(F(0), F(0)), (F(0), F(1)), (F(1), F(1)), (F(1), F(0))]
    while len(P) > 1:
        P = [((a[0] + b[0]) / 2, (a[1] + b[1]) / 2) for a, b in zip(P[:-1], P[1:])]
    out["cubic_half"] = [float(P[0][0]), float(P[0][1])]

    # two-span uniform cubic NURBS against scipy
    gen = synthetic.rng(99)
    knots = [0, 0, 0, 0, 0.5, 1, 1, 1, 1]
    ctrl = gen.uniform(0, 1, (5, 2))
    w = gen.uniform(0.5, 2, 5)
    num = BSpline(np.array(knots, float), ctrl * w[:, None], 3)
    den = BSpline(np.array(knots, float), w, 3)
    ts = np.sort(gen.uniform(0, 1, 100))
    pts = num(ts) / den(ts)[:, None]
    out["nurbs"] = {
        "knots": knots,
        "control_points": ctrl.tolist(),
        "weights": w.tolist(),
        "params": ts.tolist(),
        "points": pts.tolist(),
        "junction": (num(0.5) / den(0.5)).tolist(),
    }
    poly = BSpline(np.array(knots, float), ctrl, 3)
    out["bspline"] = {"params": ts.tolist(), "points": poly(ts).tolist(), "junction": poly(0.5).tolist()}

    # pair_loop by brute force: the translate of beta nearest on alpha's left.
    # Vertical lines have a single cross coordinate, so "left of alpha" is a
    # plain comparison of u positions over a window of lattice translates.
    def brute_pair(u_alpha, u_beta):
        best = None
        for i in range(-4, 5):
            u = u_beta + i
            if u < u_alpha and (best is None or u > u_beta + best):
                best = i
        return [best, 0]

    out["pair_vertical"] = {
        "alpha0.6_beta0.3": brute_pair(0.6, 0.3),
        "alpha0.2_beta0.6": brute_pair(0.2, 0.6),
    }

    # two nested pairs of (1,0) lines: try both pairings, keep the one whose
    # summed band field is {0,1}-valued on a dense v sample.  A pair (a, b)
    # bounds the band from the rightward line at a up to the first copy of the
    # leftward line b + j above it, repeated with period 1.
    v = np.linspace(0.0005, 0.9995, 1000)
    alphas = [0.2, 0.6]
    betas = [0.3, 0.7]
    valid = []
    for perm in ((0, 1), (1, 0)):
        total = np.zeros_like(v, dtype=int)
        for av, bi in zip(alphas, perm):
            top = betas[bi] + (0 if betas[bi] > av else 1)
            total += sum(((v + s > av) & (v + s < top)).astype(int) for s in range(-3, 4))
        valid.append(bool(set(np.unique(total)) <= {0, 1}))
    out["nested_pairs_valid"] = valid
    (HERE / "small_oracles.json").write_text(json.dumps(out, indent=1))


if __name__ == "__main__":
    which = set(sys.argv[1:]) or {"small", "loops", "wavy"}
    if "small" in which:
        small()
    if "wavy" in which:
        criterion8()
    if "loops" in which:
        criterion1()
