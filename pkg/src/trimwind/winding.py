"""Scalar winding-number engine.

The recursive query bisects a curve span until the two-focus ellipse of the
span excludes the query point; excluded spans are replaced by their chord.
Queries on whole paths first descend a hierarchy of ellipses over segment
ranges.  Everything here is pure Python over floats and can be instrumented
with :class:`~trimwind.geometry.Counters`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError, DomainError, RecursionCapError
from .geometry import (
    Counters,
    CurveSpan,
    Point2,
    RationalBezierSegment,
    as_point,
    evaluate,
)

__all__ = [
    "WindingKind",
    "WindingOutcome",
    "BezierPath",
    "PathHierarchy",
    "DEFAULT_EPS",
    "depth_cap",
    "segment_winding",
    "compute_winding",
    "path_winding",
    "build_hierarchy",
    "polyline_vertices",
    "polyline_winding_oracle",
    "control_polygon_winding_baseline",
    "crossing_count",
]

DEFAULT_EPS = 1e-6
TWO_PI = 2.0 * math.pi


class WindingKind(enum.Enum):
    VALUE = "value"
    ON_BOUNDARY = "on_boundary"


@dataclass(frozen=True)
class WindingOutcome:
    kind: WindingKind
    value: float | None = None
    hit: tuple[int, float] | None = None

    @classmethod
    def of(cls, value: float) -> "WindingOutcome":
        return cls(WindingKind.VALUE, float(value))

    @classmethod
    def boundary(cls, segment_id: int = -1, t: float = math.nan) -> "WindingOutcome":
        return cls(WindingKind.ON_BOUNDARY, None, (segment_id, t))

    @property
    def on_boundary(self) -> bool:
        return self.kind is WindingKind.ON_BOUNDARY

    def __float__(self):
        if self.on_boundary:
            raise ValueError("on-boundary outcome has no winding value")
        return self.value


class _BoundaryHit(Exception):
    def __init__(self, segment_id, t):
        self.segment_id = segment_id
        self.t = t


@dataclass(frozen=True, eq=False)
class BezierPath:
    """Ordered segments, ideally end-to-end continuous.

    Discontinuities larger than ``continuity_tol`` are recorded in ``gaps``
    (index ``i`` means segment ``i`` does not start where ``i-1`` ends) but are
    not an error: open or noisy boundaries are legal input.
    """

    segments: tuple[RationalBezierSegment, ...]
    continuity_tol: float = 1e-12
    gaps: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise DomainError("a path needs at least one segment")
        object.__setattr__(self, "segments", segs)
        gaps = []
        for i in range(1, len(segs)):
            (x0, y0), (x1, y1) = segs[i - 1].end, segs[i].start
            if math.hypot(x1 - x0, y1 - y0) > self.continuity_tol:
                gaps.append(i)
        object.__setattr__(self, "gaps", tuple(gaps))

    @classmethod
    def from_control_points(cls, blocks, weights=None, **kw) -> "BezierPath":
        if weights is None:
            weights = [None] * len(blocks)
        return cls(tuple(RationalBezierSegment(b, w) for b, w in zip(blocks, weights)), **kw)

    @classmethod
    def polygon(cls, vertices, closed=True) -> "BezierPath":
        v = [tuple(map(float, p)) for p in vertices]
        if closed:
            v = v + [v[0]]
        return cls(tuple(RationalBezierSegment([a, b]) for a, b in zip(v[:-1], v[1:])))

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    @property
    def start(self) -> Point2:
        return self.segments[0].start

    @property
    def end(self) -> Point2:
        return self.segments[-1].end

    @cached_property
    def bounds(self) -> tuple[float, ...]:
        return tuple(s.bound for s in self.segments)

    @cached_property
    def hierarchy(self) -> "PathHierarchy":
        return build_hierarchy(self)

    @cached_property
    def control_box(self) -> tuple[float, float, float, float]:
        """``(umin, vmin, umax, vmax)`` over all control points."""
        pts = np.vstack([s.control_points for s in self.segments])
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @property
    def is_closed(self) -> bool:
        (x0, y0), (x1, y1) = self.start, self.end
        return not self.gaps and math.hypot(x1 - x0, y1 - y0) <= self.continuity_tol

    def point_at(self, s: float) -> Point2:
        """Point at global parameter ``s`` in [0, 1], segments equally weighted."""
        if not 0.0 <= s <= 1.0:
            raise DomainError(f"path parameter {s!r} outside [0, 1]")
        x = s * len(self.segments)
        i = min(int(x), len(self.segments) - 1)
        return evaluate(self.segments[i], x - i)

    def translated(self, offset) -> "BezierPath":
        return BezierPath(tuple(s.translated(offset) for s in self.segments), self.continuity_tol)

    def reversed(self) -> "BezierPath":
        return BezierPath(tuple(s.reversed() for s in reversed(self.segments)), self.continuity_tol)

    def map_points(self, fn) -> "BezierPath":
        """Apply ``fn`` to each ``(n+1, 2)`` control-point array."""
        return BezierPath(
            tuple(RationalBezierSegment(fn(s.control_points), s.weights) for s in self.segments),
            self.continuity_tol,
        )


@dataclass(frozen=True, eq=False)
class PathHierarchy:
    """Balanced ellipse trees over the continuous runs of a path.

    Node ``k`` covers segments ``lo[k]..hi[k]``; its foci are the start of
    segment ``lo[k]`` and the end of ``hi[k]``, and its span is the sum of the
    per-segment derivative bounds.  ``left[k] == -1`` marks a leaf.
    """

    lo: tuple[int, ...]
    hi: tuple[int, ...]
    f0: tuple[Point2, ...]
    f1: tuple[Point2, ...]
    span: tuple[float, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    roots: tuple[int, ...]

    def __len__(self):
        return len(self.lo)

    def depth(self) -> int:
        def d(k):
            return 1 if self.left[k] < 0 else 1 + max(d(self.left[k]), d(self.right[k]))

        return max(d(r) for r in self.roots)


def build_hierarchy(path: BezierPath) -> PathHierarchy:
    segs = path.segments
    bounds = path.bounds
    lo, hi, f0, f1, span, left, right = [], [], [], [], [], [], []
    prefix = [0.0]
    for b in bounds:
        prefix.append(prefix[-1] + b)

    def make(j, k):
        idx = len(lo)
        lo.append(j)
        hi.append(k)
        f0.append(segs[j].start)
        f1.append(segs[k].end)
        span.append(prefix[k + 1] - prefix[j] if k > j else bounds[j])
        left.append(-1)
        right.append(-1)
        if k > j:
            m = (j + k) // 2
            left[idx] = make(j, m)
            right[idx] = make(m + 1, k)
        return idx

    run_starts = [0, *path.gaps]
    run_ends = [g - 1 for g in path.gaps] + [len(segs) - 1]
    roots = tuple(make(j, k) for j, k in zip(run_starts, run_ends))
    return PathHierarchy(
        tuple(lo), tuple(hi), tuple(f0), tuple(f1), tuple(span), tuple(left), tuple(right), roots
    )


def segment_winding(p, a, b) -> float:
    """Signed angle subtended by the oriented segment ``ab`` at ``p``, over 2*pi."""
    px, py = p
    ax, ay = a[0] - px, a[1] - py
    bx, by = b[0] - px, b[1] - py
    if (ax == 0.0 and ay == 0.0) or (bx == 0.0 and by == 0.0):
        raise DegenerateInputError("query point coincides with a segment endpoint")
    return math.atan2(ax * by - ay * bx, ax * bx + ay * by) / TWO_PI


def depth_cap(bound: float, eps: float) -> int:
    if bound <= eps:
        return 8
    return math.ceil(math.log2(bound / eps)) + 8


def _recurse(px, py, seg, bound, a, b, pa, pb, eps, depth, cap, seg_id, ctr):
    ax, ay = pa
    bx, by = pb
    d0 = math.sqrt((px - ax) * (px - ax) + (py - ay) * (py - ay))
    if d0 < eps:
        raise _BoundaryHit(seg_id, a)
    d1 = math.sqrt((px - bx) * (px - bx) + (py - by) * (py - by))
    if d1 < eps:
        raise _BoundaryHit(seg_id, b)
    if ctr is not None:
        ctr.ellipse_tests += 1
        ctr.flops += 13
        if depth > ctr.max_depth:
            ctr.max_depth = depth
    if d0 + d1 > bound * (b - a):
        ux, uy = ax - px, ay - py
        vx, vy = bx - px, by - py
        return math.atan2(ux * vy - uy * vx, ux * vx + uy * vy) / TWO_PI
    if depth >= cap:
        raise RecursionCapError(
            f"bisection depth {depth} exceeded cap {cap} on segment {seg_id}; "
            "inputs are numerically inconsistent"
        )
    m = 0.5 * (a + b)
    pm = evaluate(seg, m, ctr)
    if ctr is not None:
        ctr.subdivisions += 1
    w1 = _recurse(px, py, seg, bound, a, m, pa, pm, eps, depth + 1, cap, seg_id, ctr)
    w2 = _recurse(px, py, seg, bound, m, b, pm, pb, eps, depth + 1, cap, seg_id, ctr)
    return w1 + w2


def compute_winding(
    p,
    span: CurveSpan | RationalBezierSegment,
    bound: float | None = None,
    eps: float = DEFAULT_EPS,
    *,
    counters: Counters | None = None,
    segment_id: int = 0,
) -> WindingOutcome:
    """Winding number of one curve span around ``p`` by ellipse-pruned bisection.

    Returns an on-boundary outcome as soon as any visited span endpoint lies
    closer than ``eps`` to ``p``.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    if isinstance(span, RationalBezierSegment):
        span = CurveSpan(span)
    seg = span.segment
    if bound is None:
        bound = seg.bound
    px, py = as_point(p)
    pa = evaluate(seg, span.a, counters)
    pb = evaluate(seg, span.b, counters)
    try:
        w = _recurse(px, py, seg, bound, span.a, span.b, pa, pb, eps, 0, depth_cap(bound, eps),
                     segment_id, counters)
    except _BoundaryHit as hit:
        return WindingOutcome.boundary(hit.segment_id, hit.t)
    return WindingOutcome.of(w)


def _path_sum(px, py, path, hierarchy, eps, ctr):
    segs = path.segments
    bounds = path.bounds
    h = hierarchy
    total = 0.0
    stack = list(reversed(h.roots))
    while stack:
        k = stack.pop()
        ax, ay = h.f0[k]
        bx, by = h.f1[k]
        d0 = math.sqrt((px - ax) * (px - ax) + (py - ay) * (py - ay))
        d1 = math.sqrt((px - bx) * (px - bx) + (py - by) * (py - by))
        if ctr is not None:
            ctr.ellipse_tests += 1
            ctr.flops += 13
        if d0 + d1 > h.span[k]:
            ux, uy = ax - px, ay - py
            vx, vy = bx - px, by - py
            total += math.atan2(ux * vy - uy * vx, ux * vx + uy * vy) / TWO_PI
        elif h.left[k] < 0:
            j = h.lo[k]
            seg = segs[j]
            total += _recurse(px, py, seg, bounds[j], 0.0, 1.0, seg.start, seg.end, eps, 0,
                              depth_cap(bounds[j], eps), j, ctr)
            if ctr is not None:
                ctr.evals += 2
        else:
            stack.append(h.right[k])
            stack.append(h.left[k])
    return total


def path_winding(
    p,
    path: BezierPath,
    hierarchy: PathHierarchy | None = None,
    eps: float = DEFAULT_EPS,
    *,
    counters: Counters | None = None,
) -> WindingOutcome:
    """Winding number of a whole path, pruning segment ranges by hierarchy ellipses."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    if hierarchy is None:
        hierarchy = path.hierarchy
    px, py = as_point(p)
    try:
        return WindingOutcome.of(_path_sum(px, py, path, hierarchy, eps, counters))
    except _BoundaryHit as hit:
        return WindingOutcome.boundary(hit.segment_id, hit.t)


def path_winding_flat(p, path: BezierPath, eps: float = DEFAULT_EPS) -> WindingOutcome:
    """Per-segment sum without the hierarchy (reference for the pruned query)."""
    total = 0.0
    for j, seg in enumerate(path.segments):
        out = compute_winding(p, seg, path.bounds[j], eps, segment_id=j)
        if out.on_boundary:
            return out
        total += out.value
    return WindingOutcome.of(total)


# --------------------------------------------------------------------------
# dense polyline reference


def _de_casteljau_many(h: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Evaluate homogeneous control points ``h`` at all ``t`` (O(n^2) per point)."""
    b = np.broadcast_to(h, (len(t),) + h.shape).copy()
    s = t[:, None, None]
    for r in range(len(h) - 1):
        b = (1 - s) * b[:, :-1] + s * b[:, 1:]
    out = b[:, 0]
    return out[:, :2] / out[:, 2:]


def polyline_vertices(path: BezierPath, subdivisions: int) -> list[np.ndarray]:
    """Uniform-parameter samples of each segment, ``subdivisions + 1`` per segment."""
    if subdivisions < 1:
        raise DomainError("subdivisions must be >= 1")
    t = np.linspace(0.0, 1.0, subdivisions + 1)
    out = []
    for seg in path.segments:
        v = _de_casteljau_many(seg.homogeneous(), t)
        v[0] = seg.control_points[0]
        v[-1] = seg.control_points[-1]
        out.append(v)
    return out


def polyline_angle_sum(p, vertices: np.ndarray) -> float:
    """Sum of subtended edge angles of an open polyline, over 2*pi.

    Evaluated as the endpoint polar-angle difference plus a full turn for every
    edge that crosses the branch cut of ``atan2`` (the ray ``x < p.x``), which is
    identical to summing per-edge angles but needs only two ``atan2`` calls.
    """
    px, py = p
    dy = vertices[:, 1] - py
    near = np.flatnonzero(np.abs(dy) < 1e-12)
    if near.size:
        dx = vertices[near, 0] - px
        if np.any(np.hypot(dx, dy[near]) < 1e-12):
            raise DegenerateInputError("query point within 1e-12 of a polyline vertex")
    lower = np.signbit(dy)
    cand = np.flatnonzero(lower[:-1] != lower[1:])
    total = math.atan2(dy[-1], vertices[-1, 0] - px) - math.atan2(dy[0], vertices[0, 0] - px)
    if cand.size:
        th0 = np.arctan2(dy[cand], vertices[cand, 0] - px)
        th1 = np.arctan2(dy[cand + 1], vertices[cand + 1, 0] - px)
        jump = th1 - th0
        total -= TWO_PI * (np.sum(jump > math.pi) - np.sum(jump < -math.pi))
    return total / TWO_PI


def polyline_winding_oracle(p, path: BezierPath, subdivisions: int) -> float:
    """Winding of the uniform polyline with ``subdivisions`` pieces per segment."""
    p = as_point(p)
    return sum(polyline_angle_sum(p, v) for v in polyline_vertices(path, subdivisions))


# --------------------------------------------------------------------------
# control-polygon (convex hull) baseline


def _hull(xs, ys, ctr):
    pts = sorted(zip(xs, ys))
    if ctr is not None:
        ctr.flops += int(len(pts) * max(1.0, math.log2(len(pts))))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for q in seq:
            while len(out) >= 2:
                (ox, oy), (ax, ay) = out[-2], out[-1]
                if ctr is not None:
                    ctr.flops += 5
                if (ax - ox) * (q[1] - oy) - (ay - oy) * (q[0] - ox) <= 0:
                    out.pop()
                else:
                    break
            out.append(q)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _in_hull(px, py, hull, ctr):
    n = len(hull)
    if n == 1:
        return hull[0] == (px, py)
    if n == 2:
        (ax, ay), (bx, by) = hull
        cr = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        if cr != 0:
            return False
        dot = (px - ax) * (bx - ax) + (py - ay) * (by - ay)
        return 0 <= dot <= (bx - ax) ** 2 + (by - ay) ** 2
    for i in range(n):
        ax, ay = hull[i]
        bx, by = hull[(i + 1) % n]
        if ctr is not None:
            ctr.flops += 5
        if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
            return False
    return True


def _split_h(h, ctr):
    """de Casteljau halving of homogeneous control rows (lists of [x, y, w])."""
    left = [h[0]]
    right = [h[-1]]
    cur = h
    while len(cur) > 1:
        cur = [
            [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])]
            for a, b in zip(cur[:-1], cur[1:])
        ]
        left.append(cur[0])
        right.append(cur[-1])
        if ctr is not None:
            ctr.flops += 6 * len(cur)
    return left, right[::-1]


def _baseline(px, py, h, eps, depth, cap, seg_id, a, b, ctr):
    x0, y0 = h[0][0] / h[0][2], h[0][1] / h[0][2]
    x1, y1 = h[-1][0] / h[-1][2], h[-1][1] / h[-1][2]
    if math.sqrt((px - x0) ** 2 + (py - y0) ** 2) < eps:
        raise _BoundaryHit(seg_id, a)
    if math.sqrt((px - x1) ** 2 + (py - y1) ** 2) < eps:
        raise _BoundaryHit(seg_id, b)
    xs = [r[0] / r[2] for r in h]
    ys = [r[1] / r[2] for r in h]
    if ctr is not None:
        ctr.hull_tests += 1
        ctr.flops += 2 * len(h) + 8
        if depth > ctr.max_depth:
            ctr.max_depth = depth
    if not _in_hull(px, py, _hull(xs, ys, ctr), ctr):
        ux, uy = x0 - px, y0 - py
        vx, vy = x1 - px, y1 - py
        return math.atan2(ux * vy - uy * vx, ux * vx + uy * vy) / TWO_PI
    if depth >= cap:
        raise RecursionCapError(f"baseline bisection exceeded depth cap {cap}")
    hl, hr = _split_h(h, ctr)
    if ctr is not None:
        ctr.subdivisions += 1
    m = 0.5 * (a + b)
    return (_baseline(px, py, hl, eps, depth + 1, cap, seg_id, a, m, ctr)
            + _baseline(px, py, hr, eps, depth + 1, cap, seg_id, m, b, ctr))


def control_polygon_winding_baseline(
    p,
    span: CurveSpan | RationalBezierSegment,
    eps: float = DEFAULT_EPS,
    *,
    counters: Counters | None = None,
    segment_id: int = 0,
) -> WindingOutcome:
    """Same bisection as :func:`compute_winding`, bounding spans by control-point hulls.

    Each split rebuilds the control polygon with de Casteljau (quadratic in the
    degree) and each bound test is a point-in-convex-polygon query.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    if isinstance(span, RationalBezierSegment):
        span = CurveSpan(span)
    seg = span.segment
    h = seg.homogeneous()
    if span.a > 0.0 or span.b < 1.0:
        from .geometry import split_segment

        sub = seg
        if span.b < 1.0:
            sub = split_segment(sub, span.b)[0]
        if span.a > 0.0:
            sub = split_segment(sub, span.a / span.b)[1]
        h = sub.homogeneous()
    px, py = as_point(p)
    try:
        w = _baseline(px, py, h.tolist(), eps, 0, depth_cap(seg.bound, eps), segment_id,
                      span.a, span.b, counters)
    except _BoundaryHit as hit:
        return WindingOutcome.boundary(hit.segment_id, hit.t)
    return WindingOutcome.of(w)


# --------------------------------------------------------------------------
# ray / segment crossing counts


def crossing_count(
    p,
    direction,
    path: BezierPath | Sequence[np.ndarray],
    subdivisions: int = 64,
    *,
    length: float | None = None,
    signed: bool = False,
    max_retries: int = 8,
) -> int:
    """Count crossings of a ray (or a segment of ``length``) with the path's polyline.

    With ``signed=True`` each crossing contributes ``sign(cross(direction, edge))``;
    for a ray this equals the winding number of a closed polyline around ``p``, and
    for a segment from ``x0`` to ``x1`` it equals ``w(x0) - w(x1)``.  A ray grazing
    a vertex (within 1e-12) is rotated by 1e-7 rad and retried.
    """
    px, py = as_point(p)
    dx, dy = float(direction[0]), float(direction[1])
    norm = math.hypot(dx, dy)
    if norm == 0:
        raise DomainError("direction must be non-zero")
    dx, dy = dx / norm, dy / norm
    if isinstance(path, BezierPath):
        verts = polyline_vertices(path, subdivisions)
    else:
        verts = [np.asarray(v, float) for v in path]
    a = np.vstack([v[:-1] for v in verts]) - (px, py)
    b = np.vstack([v[1:] for v in verts]) - (px, py)
    allv = np.vstack([a, b])

    for attempt in range(max_retries + 1):
        if attempt:
            ang = 1e-7 * attempt
            c, s = math.cos(ang), math.sin(ang)
            dx, dy = c * dx - s * dy, s * dx + c * dy
        along = allv[:, 0] * dx + allv[:, 1] * dy
        perp = allv[:, 0] * dy - allv[:, 1] * dx
        reach = along >= -1e-12 if length is None else (along >= -1e-12) & (along <= length + 1e-12)
        if np.any(reach & (np.abs(perp) < 1e-12)):
            continue
        sa = a[:, 0] * dy - a[:, 1] * dx
        sb = b[:, 0] * dy - b[:, 1] * dx
        straddle = (sa > 0) != (sb > 0)
        e = b - a
        denom = dx * e[:, 1] - dy * e[:, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = (a[:, 0] * e[:, 1] - a[:, 1] * e[:, 0]) / denom
        hit = straddle & (lam >= 0)
        if length is not None:
            hit &= lam <= length
        if signed:
            return int(np.sum(np.sign(denom[hit])))
        return int(np.count_nonzero(hit))
    raise DegenerateInputError("ray keeps grazing polyline vertices after perturbation retries")
