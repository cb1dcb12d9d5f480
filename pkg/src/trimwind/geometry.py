"""Curve kernel: rational Bezier segments, linear-time evaluation, derivative
bounds and the two-focus ellipse that encloses a curve span.

Coordinates are plain floats in the (normalized) parameter domain.  Points are
returned as :class:`Point2` tuples so the scalar engine never touches numpy in
its inner loop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, FormatError

__all__ = [
    "Point2",
    "as_point",
    "Counters",
    "RationalBezierSegment",
    "CurveSpan",
    "EllipseBound",
    "evaluate",
    "derivative_bound",
    "ellipse_bound",
    "ellipse_contains",
    "elevate_degree",
    "decompose_bspline",
    "split_segment",
]


class Point2(NamedTuple):
    u: float
    v: float


def as_point(p) -> Point2:
    u, v = float(p[0]), float(p[1])
    if not (math.isfinite(u) and math.isfinite(v)):
        raise DomainError(f"non-finite point {p!r}")
    return Point2(u, v)


@dataclass
class Counters:
    """Instrumentation shared by the scalar engines.

    ``flops`` counts floating-point multiplies, divides, adds and square roots
    performed by evaluation, bound tests and subdivision.
    """

    evals: int = 0
    flops: int = 0
    ellipse_tests: int = 0
    hull_tests: int = 0
    subdivisions: int = 0
    max_depth: int = 0

    def reset(self):
        self.evals = self.flops = self.ellipse_tests = 0
        self.hull_tests = self.subdivisions = self.max_depth = 0


@dataclass(frozen=True, eq=False)
class RationalBezierSegment:
    """Bezier segment with control points ``(n+1, 2)`` and optional positive weights.

    Omitting ``weights`` gives the polynomial curve.  Instances are immutable;
    the coordinate arrays are flagged read-only.
    """

    control_points: np.ndarray
    weights: np.ndarray | None = None
    # scalar caches used by the evaluation loop
    _fwd: tuple = field(init=False, repr=False)
    _rev: tuple = field(init=False, repr=False)

    def __post_init__(self):
        pts = np.array(self.control_points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise FormatError(f"control points must have shape (n+1, 2), got {pts.shape}")
        if len(pts) < 2:
            raise FormatError("a segment needs at least 2 control points")
        if not np.all(np.isfinite(pts)):
            raise DomainError("control points must be finite")
        w = None
        if self.weights is not None:
            w = np.array(self.weights, dtype=float)
            if w.shape != (len(pts),):
                raise FormatError("weights must match the control-point count")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise DomainError("weights must be finite and strictly positive")
            w.flags.writeable = False
        pts.flags.writeable = False
        object.__setattr__(self, "control_points", pts)
        object.__setattr__(self, "weights", w)

        n = len(pts) - 1
        xs = pts[:, 0].tolist()
        ys = pts[:, 1].tolist()
        ws = [1.0] * (n + 1) if w is None else w.tolist()
        coef = [0.0] + [(n - k + 1) / k for k in range(1, n + 1)]
        ratio = [0.0] + [ws[k] / ws[k - 1] for k in range(1, n + 1)]
        rws = ws[::-1]
        rratio = [0.0] + [rws[k] / rws[k - 1] for k in range(1, n + 1)]
        object.__setattr__(self, "_fwd", (xs, ys, coef, ratio))
        object.__setattr__(self, "_rev", (xs[::-1], ys[::-1], coef, rratio))

    @property
    def degree(self) -> int:
        return len(self.control_points) - 1

    @property
    def is_rational(self) -> bool:
        return self.weights is not None and bool(np.ptp(self.weights) > 0)

    @property
    def start(self) -> Point2:
        return Point2(self._fwd[0][0], self._fwd[1][0])

    @property
    def end(self) -> Point2:
        return Point2(self._fwd[0][-1], self._fwd[1][-1])

    @property
    def weight_array(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(len(self.control_points))
        return self.weights

    def homogeneous(self) -> np.ndarray:
        """Control points as ``(n+1, 3)`` rows ``(w*x, w*y, w)``."""
        w = self.weight_array
        return np.column_stack([self.control_points * w[:, None], w])

    @classmethod
    def from_homogeneous(cls, h) -> "RationalBezierSegment":
        h = np.asarray(h, dtype=float)
        w = h[:, 2]
        pts = h[:, :2] / w[:, None]
        if np.allclose(w, w[0], rtol=0, atol=0):
            return cls(pts)
        return cls(pts, w)

    def translated(self, offset) -> "RationalBezierSegment":
        return RationalBezierSegment(self.control_points + np.asarray(offset, float), self.weights)

    def reversed(self) -> "RationalBezierSegment":
        w = None if self.weights is None else self.weights[::-1]
        return RationalBezierSegment(self.control_points[::-1], w)

    @cached_property
    def bound(self) -> float:
        return derivative_bound(self)

    def __call__(self, t: float) -> Point2:
        return evaluate(self, t)


def evaluate(segment: RationalBezierSegment, t: float, counters: Counters | None = None) -> Point2:
    """Point on the segment at parameter ``t`` in linear time.

    Uses the convex-combination recurrence ``Q_k = Q_{k-1} + h_k (P_k - Q_{k-1})``
    where ``h_k`` is the share of the k-th weighted Bernstein term in the
    partial sum; the parameter is reflected for ``t > 1/2`` so the ratio
    ``t/(1-t)`` never exceeds one.  The endpoints return stored control points.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"parameter {t!r} outside [0, 1]")
    xs, ys, coef, ratio = segment._fwd
    if counters is not None:
        counters.evals += 1
    if t == 0.0:
        return Point2(xs[0], ys[0])
    if t == 1.0:
        return Point2(xs[-1], ys[-1])
    if t > 0.5:
        xs, ys, coef, ratio = segment._rev
        u = (1.0 - t) / t
    else:
        u = t / (1.0 - t)
    n = len(xs) - 1
    h = 1.0
    qx = xs[0]
    qy = ys[0]
    for k in range(1, n + 1):
        rh = coef[k] * u * ratio[k] * h
        h = rh / (1.0 + rh)
        qx = qx + h * (xs[k] - qx)
        qy = qy + h * (ys[k] - qy)
    if counters is not None:
        counters.flops += 2 + 10 * n
    return Point2(qx, qy)


def derivative_bound(segment: RationalBezierSegment) -> float:
    """Upper bound on ``|gamma'(t)|`` over ``[0, 1]``.

    Polynomial: ``n * max |P_i - P_{i-1}|`` (hodograph control polygon).
    Rational: the smaller of ``n (W/w) max_ij |P_i - P_j|`` and
    ``n (W/w)^2 max_i |P_i - P_{i-1}|``.
    """
    pts = segment.control_points
    n = segment.degree
    steps = np.sqrt(np.sum(np.diff(pts, axis=0) ** 2, axis=1))
    step_max = float(steps.max())
    if not segment.is_rational:
        return n * step_max
    w = segment.weights
    ratio = float(w.max() / w.min())
    diff = pts[:, None, :] - pts[None, :, :]
    diam = float(np.sqrt(np.max(np.sum(diff * diff, axis=-1))))
    return min(n * ratio * diam, n * ratio * ratio * step_max)


@dataclass(frozen=True)
class CurveSpan:
    segment: RationalBezierSegment
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.a < self.b <= 1.0:
            raise DomainError(f"invalid span [{self.a}, {self.b}]")


@dataclass(frozen=True)
class EllipseBound:
    focus_start: Point2
    focus_end: Point2
    span: float

    @property
    def focal_distance(self) -> float:
        (x0, y0), (x1, y1) = self.focus_start, self.focus_end
        return math.sqrt((x1 - x0) ** 2 + (y1 - y0) ** 2)


def ellipse_bound(span: CurveSpan, bound: float) -> EllipseBound:
    seg = span.segment
    return EllipseBound(evaluate(seg, span.a), evaluate(seg, span.b), bound * (span.b - span.a))


def ellipse_contains(ellipse: EllipseBound, p, tol: float = 0.0) -> bool:
    """Focal-distance test ``d0 + d1 <= span + tol``."""
    px, py = p
    (ax, ay), (bx, by) = ellipse.focus_start, ellipse.focus_end
    d0 = math.sqrt((px - ax) * (px - ax) + (py - ay) * (py - ay))
    d1 = math.sqrt((px - bx) * (px - bx) + (py - by) * (py - by))
    return d0 + d1 <= ellipse.span + tol


def elevate_degree(segment: RationalBezierSegment, target_degree: int) -> RationalBezierSegment:
    n = segment.degree
    if target_degree < n:
        raise DomainError(f"cannot elevate degree {n} to {target_degree}")
    if target_degree == n:
        return segment
    h = segment.homogeneous()
    for m in range(n, target_degree):
        i = np.arange(1, m + 1)[:, None] / (m + 1)
        inner = i * h[:-1] + (1 - i) * h[1:]
        h = np.vstack([h[:1], inner, h[-1:]])
    if segment.weights is None:
        return RationalBezierSegment(h[:, :2])
    return RationalBezierSegment(h[:, :2] / h[:, 2:], h[:, 2])


def split_segment(segment: RationalBezierSegment, t: float):
    """de Casteljau split in homogeneous coordinates; returns ``(left, right)``."""
    h = segment.homogeneous()
    left = [h[0]]
    right = [h[-1]]
    cur = h
    while len(cur) > 1:
        cur = (1 - t) * cur[:-1] + t * cur[1:]
        left.append(cur[0])
        right.append(cur[-1])
    left = np.array(left)
    right = np.array(right[::-1])
    if segment.weights is None:
        return RationalBezierSegment(left[:, :2]), RationalBezierSegment(right[:, :2])
    return (
        RationalBezierSegment(left[:, :2] / left[:, 2:], left[:, 2]),
        RationalBezierSegment(right[:, :2] / right[:, 2:], right[:, 2]),
    )


def _check_knots(knots: np.ndarray, n_ctrl: int, degree: int):
    if degree < 1:
        raise FormatError("B-spline degree must be at least 1")
    if len(knots) != n_ctrl + degree + 1:
        raise FormatError(
            f"knot vector length {len(knots)} != control points {n_ctrl} + degree {degree} + 1"
        )
    if np.any(np.diff(knots) < 0):
        raise FormatError("knot vector must be non-decreasing")
    if np.any(knots[: degree + 1] != knots[0]) or np.any(knots[-degree - 1 :] != knots[-1]):
        raise FormatError("knot vector must be clamped (end multiplicity degree+1)")
    if knots[-1] <= knots[0]:
        raise FormatError("knot vector has zero length")
    inner = knots[degree + 1 : -degree - 1]
    if len(inner):
        _, counts = np.unique(inner, return_counts=True)
        if counts.max() > degree:
            raise FormatError("interior knot multiplicity exceeds the degree")


def decompose_bspline(
    knots: Sequence[float],
    control_points,
    weights=None,
    degree: int = 3,
) -> list[RationalBezierSegment]:
    """Split a clamped (NURBS) B-spline into Bezier segments by knot insertion.

    Each interior knot is raised to multiplicity ``degree`` (Boehm insertion in
    homogeneous coordinates); segment ``i`` covers the i-th non-empty knot span.
    """
    knots = np.asarray(knots, dtype=float)
    pts = np.asarray(control_points, dtype=float)
    p = int(degree)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise FormatError("control points must have shape (m, 2)")
    _check_knots(knots, len(pts), p)
    w = np.ones(len(pts)) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (len(pts),) or np.any(w <= 0):
        raise FormatError("weights must be positive and match the control points")

    h = np.column_stack([pts * w[:, None], w])
    U = list(knots)
    for u in np.unique(knots[p + 1 : -p - 1]):
        while U.count(u) < p:
            # span index k with U[k] <= u < U[k+1]
            k = int(np.searchsorted(U, u, side="right")) - 1
            s = U.count(u)
            new = []
            for i in range(len(h) + 1):
                if i <= k - p:
                    new.append(h[i])
                elif i > k - s:
                    new.append(h[i - 1])
                else:
                    alpha = (u - U[i]) / (U[i + p] - U[i])
                    new.append(alpha * h[i] + (1 - alpha) * h[i - 1])
            h = np.array(new)
            U.insert(k + 1, u)

    segments = []
    n_spans = (len(h) - 1) // p
    rational = weights is not None and np.ptp(w) > 0
    for j in range(n_spans):
        block = h[j * p : j * p + p + 1]
        bw = block[:, 2]
        bp = block[:, :2] / bw[:, None]
        segments.append(RationalBezierSegment(bp, bw if rational else None))
    # make junctions bit-identical so paths stay exactly continuous
    for j in range(1, len(segments)):
        prev, cur = segments[j - 1], segments[j]
        if not np.array_equal(prev.control_points[-1], cur.control_points[0]):
            pts_j = cur.control_points.copy()
            pts_j[0] = prev.control_points[-1]
            segments[j] = RationalBezierSegment(pts_j, cur.weights)
    return segments
