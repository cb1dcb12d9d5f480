"""Vectorized winding queries over many points.

Runs the same ellipse-pruned bisection as :mod:`trimwind.winding`, breadth
first over arrays of work items ``(point, segment, a, b)``.  Evaluation uses the
same recurrence and operation order as the scalar kernel, so both engines
visit the same spans and agree on on-boundary verdicts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .winding import BezierPath, DEFAULT_EPS

__all__ = ["PackedPath", "BatchResult", "winding_many", "OK", "ON_BOUNDARY", "FAILED"]

OK, ON_BOUNDARY, FAILED = 0, 1, 2
TWO_PI = 2.0 * math.pi


class _DegreeGroup:
    __slots__ = ("degree", "coef", "xf", "yf", "rf", "xr", "yr", "rr")

    def __init__(self, segs):
        n = segs[0].degree
        self.degree = n
        self.coef = np.array([0.0] + [(n - k + 1) / k for k in range(1, n + 1)])
        self.xf = np.array([s._fwd[0] for s in segs])
        self.yf = np.array([s._fwd[1] for s in segs])
        self.rf = np.array([s._fwd[3] for s in segs])
        self.xr = np.array([s._rev[0] for s in segs])
        self.yr = np.array([s._rev[1] for s in segs])
        self.rr = np.array([s._rev[3] for s in segs])

    def evaluate(self, rows, t):
        rev = t > 0.5
        with np.errstate(divide="ignore"):
            u = np.where(rev, (1.0 - t) / t, t / (1.0 - t))
        r2 = rev[:, None]
        X = np.where(r2, self.xr[rows], self.xf[rows])
        Y = np.where(r2, self.yr[rows], self.yf[rows])
        R = np.where(r2, self.rr[rows], self.rf[rows])
        h = np.ones_like(t)
        qx = X[:, 0].copy()
        qy = Y[:, 0].copy()
        coef = self.coef
        for k in range(1, self.degree + 1):
            rh = coef[k] * u * R[:, k] * h
            h = rh / (1.0 + rh)
            qx = qx + h * (X[:, k] - qx)
            qy = qy + h * (Y[:, k] - qy)
        return qx, qy


class PackedPath:
    """Array form of a :class:`BezierPath` and its ellipse hierarchy."""

    def __init__(self, path: BezierPath):
        self.path = path
        segs = path.segments
        self.n_segments = len(segs)
        self.bound = np.array(path.bounds, dtype=float)
        self.start = np.array([s.start for s in segs], dtype=float)
        self.end = np.array([s.end for s in segs], dtype=float)
        self.degree = np.array([s.degree for s in segs])
        self.groups = {}
        self.row = np.empty(len(segs), dtype=np.intp)
        for n in np.unique(self.degree):
            ids = np.flatnonzero(self.degree == n)
            self.groups[int(n)] = _DegreeGroup([segs[i] for i in ids])
            self.row[ids] = np.arange(len(ids))
        h = path.hierarchy
        self.node_f0 = np.array(h.f0, dtype=float)
        self.node_f1 = np.array(h.f1, dtype=float)
        self.node_span = np.array(h.span, dtype=float)
        self.node_left = np.array(h.left, dtype=np.intp)
        self.node_right = np.array(h.right, dtype=np.intp)
        self.node_lo = np.array(h.lo, dtype=np.intp)
        self.roots = np.array(h.roots, dtype=np.intp)
        pts = np.vstack([s.control_points for s in segs])
        self.box_lo = pts.min(axis=0)
        self.box_hi = pts.max(axis=0)

    def evaluate(self, seg, t):
        if len(self.groups) == 1:
            (g,) = self.groups.values()
            return g.evaluate(self.row[seg], t)
        x = np.empty_like(t)
        y = np.empty_like(t)
        deg = self.degree[seg]
        for n, g in self.groups.items():
            m = deg == n
            if m.any():
                x[m], y[m] = g.evaluate(self.row[seg[m]], t[m])
        return x, y

    def depth_caps(self, eps):
        b = self.bound
        with np.errstate(divide="ignore"):
            c = np.ceil(np.log2(np.where(b > eps, b / eps, 1.0))) + 8
        return np.where(b > eps, c, 8).astype(np.int64)


def _packed(path) -> PackedPath:
    if isinstance(path, PackedPath):
        return path
    cached = path.__dict__.get("_packed")
    if cached is None:
        cached = PackedPath(path)
        path.__dict__["_packed"] = cached
    return cached


@dataclass
class BatchResult:
    value: np.ndarray
    status: np.ndarray
    hit_segment: np.ndarray
    hit_t: np.ndarray
    evals: np.ndarray | None = None
    depth: np.ndarray | None = None

    @property
    def on_boundary(self) -> np.ndarray:
        return self.status == ON_BOUNDARY


def _chord(px, py, ax, ay, bx, by):
    ux, uy = ax - px, ay - py
    vx, vy = bx - px, by - py
    return np.arctan2(ux * vy - uy * vx, ux * vx + uy * vy) / TWO_PI


def winding_many(
    points,
    path: BezierPath | PackedPath,
    eps: float = DEFAULT_EPS,
    *,
    instrument: bool = False,
) -> BatchResult:
    """Winding number of ``path`` around every row of ``points`` (shape ``(N, 2)``).

    ``status`` is ``OK``, ``ON_BOUNDARY`` or ``FAILED`` (depth cap exceeded);
    ``value`` is NaN wherever the status is not ``OK``.
    """
    pk = _packed(path)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    N = len(pts)
    px_all = pts[:, 0]
    py_all = pts[:, 1]
    value = np.zeros(N)
    status = np.zeros(N, dtype=np.int8)
    hit_seg = np.full(N, -1, dtype=np.intp)
    hit_t = np.full(N, np.nan)
    evals = np.zeros(N, dtype=np.int64) if instrument else None
    depth_max = np.zeros(N, dtype=np.int64) if instrument else None

    def accumulate(ids, w):
        value[:] += np.bincount(ids, weights=w, minlength=N)

    # hierarchy descent
    R = len(pk.roots)
    pid = np.repeat(np.arange(N), R)
    node = np.tile(pk.roots, N)
    leaf_pid, leaf_seg = [], []
    while pid.size:
        px = px_all[pid]
        py = py_all[pid]
        f0 = pk.node_f0[node]
        f1 = pk.node_f1[node]
        dx0, dy0 = px - f0[:, 0], py - f0[:, 1]
        dx1, dy1 = px - f1[:, 0], py - f1[:, 1]
        d = np.sqrt(dx0 * dx0 + dy0 * dy0) + np.sqrt(dx1 * dx1 + dy1 * dy1)
        out = d > pk.node_span[node]
        if out.any():
            accumulate(pid[out], _chord(px[out], py[out], f0[out, 0], f0[out, 1], f1[out, 0], f1[out, 1]))
        inside = ~out
        leaf = inside & (pk.node_left[node] < 0)
        if leaf.any():
            leaf_pid.append(pid[leaf])
            leaf_seg.append(pk.node_lo[node[leaf]])
        inner = inside & ~leaf
        nd = node[inner]
        pid = np.concatenate([pid[inner], pid[inner]])
        node = np.concatenate([pk.node_left[nd], pk.node_right[nd]])

    if not leaf_pid:
        return BatchResult(value, status, hit_seg, hit_t, evals, depth_max)

    # bisection of individual segments
    pid = np.concatenate(leaf_pid)
    seg = np.concatenate(leaf_seg)
    if instrument:
        evals += 2 * np.bincount(pid, minlength=N)
    a = np.zeros(len(pid))
    b = np.ones(len(pid))
    A = pk.start[seg]
    B = pk.end[seg]
    ax, ay = A[:, 0].copy(), A[:, 1].copy()
    bx, by = B[:, 0].copy(), B[:, 1].copy()
    depth = np.zeros(len(pid), dtype=np.int64)
    caps = pk.depth_caps(eps)
    while pid.size:
        keep = status[pid] == OK
        if not keep.all():
            pid, seg, a, b, ax, ay, bx, by, depth = (
                x[keep] for x in (pid, seg, a, b, ax, ay, bx, by, depth)
            )
            if not pid.size:
                break
        px = px_all[pid]
        py = py_all[pid]
        dx0, dy0 = px - ax, py - ay
        dx1, dy1 = px - bx, py - by
        d0 = np.sqrt(dx0 * dx0 + dy0 * dy0)
        d1 = np.sqrt(dx1 * dx1 + dy1 * dy1)
        h0 = d0 < eps
        h1 = (d1 < eps) & ~h0
        hit = h0 | h1
        if hit.any():
            hp = pid[hit][::-1]
            ht = np.where(h0[hit], a[hit], b[hit])[::-1]
            hs = seg[hit][::-1]
            status[hp] = ON_BOUNDARY
            # reversed assignment so the first hit of each point wins
            hit_seg[hp] = hs
            hit_t[hp] = ht
            keep = status[pid] == OK
            pid, seg, a, b, ax, ay, bx, by, depth, d0, d1, px, py = (
                x[keep] for x in (pid, seg, a, b, ax, ay, bx, by, depth, d0, d1, px, py)
            )
        if instrument and pid.size:
            np.maximum.at(depth_max, pid, depth)
        out = d0 + d1 > pk.bound[seg] * (b - a)
        if out.any():
            accumulate(pid[out], _chord(px[out], py[out], ax[out], ay[out], bx[out], by[out]))
        inner = ~out
        if not inner.any():
            break
        pid, seg, a, b, ax, ay, bx, by, depth = (
            x[inner] for x in (pid, seg, a, b, ax, ay, bx, by, depth)
        )
        over = depth >= caps[seg]
        if over.any():
            status[pid[over] ] = FAILED
            ok = ~over
            pid, seg, a, b, ax, ay, bx, by, depth = (
                x[ok] for x in (pid, seg, a, b, ax, ay, bx, by, depth)
            )
        m = 0.5 * (a + b)
        mx, my = pk.evaluate(seg, m)
        if instrument:
            evals += np.bincount(pid, minlength=N)
        pid = np.concatenate([pid, pid])
        seg = np.concatenate([seg, seg])
        a, b = np.concatenate([a, m]), np.concatenate([m, b])
        ax, ay, bx, by = (
            np.concatenate([ax, mx]),
            np.concatenate([ay, my]),
            np.concatenate([mx, bx]),
            np.concatenate([my, by]),
        )
        depth = np.concatenate([depth, depth]) + 1

    value[status != OK] = np.nan
    return BatchResult(value, status, hit_seg, hit_t, evals, depth_max)
