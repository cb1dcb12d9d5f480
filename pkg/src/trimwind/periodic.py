"""Winding numbers on uni- and bi-periodic parameter domains.

Loops live in the universal covering plane (unwrapped coordinates, period 1).
A loop whose end is its start translated by the lattice vector ``(p, q)`` lifts
to a periodically extended curve; its winding number is the sum over nearby
copies plus a half-turn for the far ones, which are straightened onto the line
through the copy starts.  In bi-periodic domains the non-contractible loops
come in pairs of opposite class and every pair bounds a family of disjoint
bands; the winding field is the sum of the band indicators.

Every query function here is vectorized over an ``(N, 2)`` point array and
returns ``(value, status)`` with the status codes of :mod:`trimwind.batch`.
Scalar wrappers return :class:`~trimwind.winding.WindingOutcome`.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .batch import FAILED, ON_BOUNDARY, OK, _packed, winding_many
from .errors import DegenerateInputError, DomainError, PairingError, ValidityError
from .geometry import as_point
from .winding import DEFAULT_EPS, BezierPath, WindingOutcome

__all__ = [
    "TopologyKind",
    "DomainTopology",
    "HomologyClass",
    "ClosureDefectWarning",
    "ExtendedCurve",
    "LoopSet",
    "ValidationReport",
    "homology_class",
    "line_winding",
    "extended_winding",
    "extended_winding_many",
    "uni_contractible_winding",
    "uni_contractible_many",
    "bi_contractible_winding",
    "bi_contractible_many",
    "to_left",
    "pair_loop",
    "pair_loops",
    "bi_periodic_winding",
    "bi_periodic_many",
    "uni_periodic_winding",
    "uni_periodic_many",
    "validate_loops",
    "lattice_basis",
]

TWO_PI = 2.0 * math.pi
DEFECT_WARN = 0.25


class TopologyKind(enum.Enum):
    NONE = "none"
    UNI = "uni"
    BI = "bi"


@dataclass(frozen=True)
class DomainTopology:
    kind: TopologyKind = TopologyKind.NONE

    @classmethod
    def parse(cls, value) -> "DomainTopology":
        if isinstance(value, DomainTopology):
            return value
        return cls(TopologyKind(value))

    @property
    def periodic_axes(self) -> tuple[int, ...]:
        return {TopologyKind.NONE: (), TopologyKind.UNI: (0,), TopologyKind.BI: (0, 1)}[self.kind]

    @property
    def period(self) -> float:
        return 1.0

    def reduce(self, points: np.ndarray) -> np.ndarray:
        """Map points into the base tile along the periodic axes."""
        pts = np.array(points, dtype=float, copy=True).reshape(-1, 2)
        for ax in self.periodic_axes:
            pts[:, ax] -= np.floor(pts[:, ax])
        return pts


NON_PERIODIC = DomainTopology(TopologyKind.NONE)
UNI_PERIODIC = DomainTopology(TopologyKind.UNI)
BI_PERIODIC = DomainTopology(TopologyKind.BI)


class ClosureDefectWarning(UserWarning):
    pass


@dataclass(frozen=True)
class HomologyClass:
    """Lattice displacement ``(p, q)`` of a lifted loop; ``defect`` is the rounding residual."""

    p: int
    q: int
    defect: float = field(default=0.0, compare=False)

    @property
    def is_contractible(self) -> bool:
        return self.p == 0 and self.q == 0

    @property
    def vector(self) -> tuple[int, int]:
        return (self.p, self.q)

    def __neg__(self):
        return HomologyClass(-self.p, -self.q, self.defect)

    def __iter__(self):
        return iter((self.p, self.q))


def homology_class(loop: BezierPath, topology=BI_PERIODIC) -> HomologyClass:
    topology = DomainTopology.parse(topology)
    (x0, y0), (x1, y1) = loop.start, loop.end
    disp = [x1 - x0, y1 - y0]
    k = [0, 0]
    for ax in topology.periodic_axes:
        k[ax] = int(math.floor(disp[ax] + 0.5))
    defect = math.hypot(disp[0] - k[0], disp[1] - k[1])
    if defect > DEFECT_WARN:
        warnings.warn(
            f"loop closure defect {defect:.3g} exceeds {DEFECT_WARN} lattice units",
            ClosureDefectWarning,
            stacklevel=2,
        )
    return HomologyClass(k[0], k[1], defect)


def lattice_basis(p: int, q: int) -> tuple[int, int]:
    """Integer ``(r, s)`` with ``p*s - q*r == 1`` (requires ``gcd(p, q) == 1``)."""
    a, b = p, q
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        k = a // b
        a, b = b, a - k * b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    if a != 1:
        raise ValidityError(f"class ({p}, {q}) is not primitive", rule="coprime")
    # p*x0 + q*y0 == 1  ->  s = x0, r = -y0
    return -y0, x0


@dataclass(frozen=True, eq=False)
class ExtendedCurve:
    """One period ``base`` of a curve continued by translations of ``extension``."""

    base: BezierPath
    extension: tuple[int, int]

    def __post_init__(self):
        ext = tuple(int(round(c)) for c in self.extension)
        if any(abs(c - e) > 0 for c, e in zip(self.extension, ext)):
            raise DomainError(f"extension {self.extension} is not a lattice vector")
        if ext == (0, 0):
            raise DomainError("extension vector must be non-zero")
        object.__setattr__(self, "extension", ext)

    @property
    def start(self):
        return self.base.start

    def translated(self, offset) -> "ExtendedCurve":
        return ExtendedCurve(self.base.translated(offset), self.extension)

    @cached_property
    def _axis(self):
        vx, vy = self.extension
        return 0 if abs(vx) >= abs(vy) else 1


def line_winding(p, a, b, eps: float = DEFAULT_EPS) -> WindingOutcome:
    """Winding of the infinite line through ``a`` and ``b`` (oriented a -> b): +-1/2."""
    px, py = as_point(p)
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    norm = math.hypot(dx, dy)
    if norm == 0:
        raise DegenerateInputError("line needs two distinct points")
    cr = dx * (py - ay) - dy * (px - ax)
    if abs(cr) / norm < eps:
        return WindingOutcome.boundary()
    return WindingOutcome.of(0.5 if cr > 0 else -0.5)


def _expand(lo: np.ndarray, hi: np.ndarray):
    """Flatten inclusive integer ranges ``[lo[i], hi[i]]`` into ``(owner, value)`` pairs."""
    counts = np.maximum(hi - lo + 1, 0).astype(np.int64)
    owner = np.repeat(np.arange(len(lo)), counts)
    first = np.cumsum(counts) - counts
    offs = np.arange(owner.size) - first[owner]
    return owner, lo[owner] + offs


def _fold(n, owner, value, status):
    """Sum per-job values and merge statuses (boundary/failure dominate)."""
    total = np.bincount(owner, weights=np.where(status == OK, value, 0.0), minlength=n)
    st = np.zeros(n, dtype=np.int8)
    np.maximum.at(st, owner, status)
    return total, st


def _as_points(points):
    return np.asarray(points, dtype=float).reshape(-1, 2)


def _finish(value, status):
    value = np.where(status == OK, value, np.nan)
    return value, status


def extended_winding_many(points, curve: ExtendedCurve, eps: float = DEFAULT_EPS):
    """Winding numbers of an extended curve around each point.

    Copies whose control box (along the dominant axis of the extension) can
    reach the point are evaluated exactly; all other copies are straightened.
    The straightened remainder is the infinite line minus the chord between the
    first and last evaluated copy starts, i.e. the two rays beyond them, which
    is summed directly so points on the line away from the curve stay regular.
    """
    pts = _as_points(points)
    n = len(pts)
    pk = _packed(curve.base)
    v = np.array(curve.extension, dtype=float)
    ax = curve._axis
    vd = v[ax]
    lo, hi = pk.box_lo[ax], pk.box_hi[ax]
    defect = homology_class_defect(curve)
    margin = 1e-9 * (1.0 + abs(lo) + abs(hi)) + defect
    xa = pts[:, ax]
    if vd > 0:
        kmin = np.ceil((xa - hi - margin) / vd)
        kmax = np.floor((xa - lo + margin) / vd)
    else:
        kmin = np.ceil((xa - lo + margin) / vd)
        kmax = np.floor((xa - hi - margin) / vd)
    kmin = kmin.astype(np.int64)
    kmax = np.maximum(kmax.astype(np.int64), kmin)
    owner, k = _expand(kmin, kmax)
    res = winding_many(pts[owner] - k[:, None] * v, pk, eps)
    total, status = _fold(n, owner, res.value, res.status)

    s0 = np.asarray(curve.base.start, dtype=float)
    dhat = v / np.hypot(*v)
    A = s0 + kmin[:, None] * v - pts
    B = s0 + (kmax + 1)[:, None] * v - pts
    # ray from -infinity to A, then ray from B to +infinity
    ang1 = np.arctan2(-dhat[0] * A[:, 1] + dhat[1] * A[:, 0], -dhat[0] * A[:, 0] - dhat[1] * A[:, 1])
    ang2 = np.arctan2(B[:, 0] * dhat[1] - B[:, 1] * dhat[0], B[:, 0] * dhat[0] + B[:, 1] * dhat[1])
    total += (ang1 + ang2) / TWO_PI
    return _finish(total, status)


def homology_class_defect(curve: ExtendedCurve) -> float:
    (x0, y0), (x1, y1) = curve.base.start, curve.base.end
    vx, vy = curve.extension
    return math.hypot(x1 - x0 - vx, y1 - y0 - vy)


def _outcome(value, status) -> WindingOutcome:
    if status[0] == ON_BOUNDARY:
        return WindingOutcome.boundary()
    if status[0] == FAILED:
        from .errors import RecursionCapError

        raise RecursionCapError("bisection depth cap exceeded")
    return WindingOutcome.of(float(value[0]))


def extended_winding(p, curve: ExtendedCurve, eps: float = DEFAULT_EPS) -> WindingOutcome:
    return _outcome(*extended_winding_many([as_point(p)], curve, eps))


def uni_contractible_many(points, loop: BezierPath, eps: float = DEFAULT_EPS):
    """Sum over the u-translates ``loop + k e1`` whose control box can contain the point."""
    pts = _as_points(points)
    pk = _packed(loop)
    lo, hi = pk.box_lo[0], pk.box_hi[0]
    kmin = np.ceil(pts[:, 0] - hi - 1e-9).astype(np.int64)
    kmax = np.floor(pts[:, 0] - lo + 1e-9).astype(np.int64)
    owner, k = _expand(kmin, kmax)
    q = pts[owner].copy()
    q[:, 0] -= k
    res = winding_many(q, pk, eps)
    return _finish(*_fold(len(pts), owner, res.value, res.status))


def uni_contractible_winding(p, loop: BezierPath, eps: float = DEFAULT_EPS) -> WindingOutcome:
    return _outcome(*uni_contractible_many([as_point(p)], loop, eps))


def bi_contractible_many(points, loop: BezierPath, eps: float = DEFAULT_EPS):
    """Sum over the lattice translates ``loop + (i, j)`` whose control box can contain the point."""
    pts = _as_points(points)
    pk = _packed(loop)
    imin = np.ceil(pts[:, 0] - pk.box_hi[0] - 1e-9).astype(np.int64)
    imax = np.floor(pts[:, 0] - pk.box_lo[0] + 1e-9).astype(np.int64)
    jmin = np.ceil(pts[:, 1] - pk.box_hi[1] - 1e-9).astype(np.int64)
    jmax = np.floor(pts[:, 1] - pk.box_lo[1] + 1e-9).astype(np.int64)
    own_i, i = _expand(imin, imax)
    own_j, j = _expand(jmin[own_i], jmax[own_i])
    owner = own_i[own_j]
    q = pts[owner] - np.column_stack([i[own_j], j])
    res = winding_many(q, pk, eps)
    return _finish(*_fold(len(pts), owner, res.value, res.status))


def bi_contractible_winding(p, loop: BezierPath, eps: float = DEFAULT_EPS) -> WindingOutcome:
    return _outcome(*bi_contractible_many([as_point(p)], loop, eps))


_PROBES = (0.5, 0.25, 0.75, 0.125, 0.375, 0.625, 0.875, 0.0625)


def to_left(g1: ExtendedCurve, g2: ExtendedCurve, eps: float = DEFAULT_EPS) -> bool:
    """True if ``g1`` lies on the left of ``g2`` (w.r.t. g2's orientation).

    Probes a point of ``g1``; a probe that lands on ``g2`` is retried further
    along ``g1`` before giving up.
    """
    for s in _PROBES:
        out = extended_winding(g1.base.point_at(s), g2, eps)
        if not out.on_boundary:
            return out.value > 0
    raise PairingError("left-of test probes all lie on the reference curve; curves intersect")


def _cross_range(path: BezierPath, d) -> tuple[float, float]:
    pts = np.vstack([s.control_points for s in path.segments])
    c = d[0] * pts[:, 1] - d[1] * pts[:, 0]
    return float(c.min()), float(c.max())


def _reduce(w: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Shortest representative of ``w`` modulo the direction vector ``d``."""
    l = np.floor(w @ d / (d @ d) + 0.5)
    return w - np.multiply.outer(l, d) if w.ndim > 1 else w - l * d


def pair_loop(alpha: BezierPath, beta: BezierPath, cls=None, eps: float = DEFAULT_EPS) -> tuple[int, int]:
    """Lattice vector ``w`` such that ``beta + w`` is the nearest translate of beta left of alpha.

    Translates of beta modulo its own period are indexed by the integer cross
    product ``c = cross(d, w)`` with ``d`` alpha's class; the left-of relation is
    monotone in ``c``, so the scan stops at the first translate on the left.
    """
    if cls is None:
        cls = homology_class(alpha, BI_PERIODIC)
    p, q = cls
    d = np.array([p, q], dtype=float)
    r0, s0 = lattice_basis(p, q)
    ref = ExtendedCurve(alpha, (p, q))
    a_lo, a_hi = _cross_range(alpha, d)
    b_lo, b_hi = _cross_range(beta, d)
    for c in range(math.floor(a_lo - b_hi) - 1, math.ceil(a_hi - b_lo) + 2):
        w = _reduce(np.array([c * r0, c * s0], dtype=float), d)
        w = (int(w[0]), int(w[1]))
        cand = ExtendedCurve(beta.translated(w), (-p, -q))
        if to_left(cand, ref, eps):
            return w
    raise PairingError("no translate of the partner loop lies left of the loop", rule="pairing")


@dataclass(frozen=True)
class ValidationReport:
    topology: DomainTopology
    classes: tuple[HomologyClass, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    violations: tuple[tuple[str, str], ...]
    pairing: tuple[tuple[int, int, tuple[int, int]], ...] = ()
    intersections: tuple[tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_first(self):
        if self.violations:
            rule, msg = self.violations[0]
            cls = PairingError if rule == "pairing" else ValidityError
            raise cls(msg, rule=rule)


def _classify_loops(loops, topology):
    with warnings.catch_warnings():
        warnings.simplefilter("always", ClosureDefectWarning)
        classes = tuple(homology_class(l, topology) for l in loops)
    violations = []
    nonzero = [i for i, c in enumerate(classes) if not c.is_contractible]
    C = tuple(i for i, c in enumerate(classes) if c.is_contractible)
    if topology.kind is TopologyKind.UNI:
        for i in nonzero:
            if abs(classes[i].p) >= 2:
                violations.append(
                    ("uni-class", f"loop {i} has homology coefficient {classes[i].p}; "
                     "a simple loop on a cylinder wraps at most once")
                )
        A = tuple(i for i in nonzero if classes[i].p > 0)
        B = tuple(i for i in nonzero if classes[i].p < 0)
        return classes, A, B, C, violations
    if topology.kind is TopologyKind.NONE:
        return classes, (), (), C, violations
    for i in nonzero:
        p, q = classes[i]
        if math.gcd(p, q) != 1:
            violations.append(
                ("coprime", f"loop {i} has class ({p}, {q}); coefficients must be coprime")
            )
    if not nonzero:
        return classes, (), (), C, violations
    p, q = classes[nonzero[0]]
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    A = tuple(i for i in nonzero if classes[i].vector == (p, q))
    B = tuple(i for i in nonzero if classes[i].vector == (-p, -q))
    other = [i for i in nonzero if i not in A and i not in B]
    if other:
        violations.append(
            ("mixed-class", f"loops {other} have classes other than +-({p}, {q}); "
             "disjoint loops must share one class up to sign")
        )
    if len(A) != len(B):
        violations.append(
            ("cardinality", f"|A| = {len(A)} loops of class ({p}, {q}) but |B| = {len(B)} of "
             f"class ({-p}, {-q}); A and B must have the same cardinality")
        )
    return classes, A, B, C, violations


def validate_loops(loops, topology, *, eps: float = DEFAULT_EPS, check_intersections=True) -> ValidationReport:
    """Run every loop-set check and collect the violations instead of raising."""
    topology = DomainTopology.parse(topology)
    loops = tuple(loops)
    classes, A, B, C, violations = _classify_loops(loops, topology)
    pairing = ()
    if topology.kind is TopologyKind.BI and A and not violations:
        try:
            pairing = tuple(_pair(loops, classes, A, B, eps))
        except (PairingError, ValidityError) as exc:
            violations.append(("pairing", str(exc)))
    inter = _intersections(loops, topology) if check_intersections else ()
    return ValidationReport(topology, classes, A, B, C, tuple(violations), pairing, inter)


def _pair(loops, classes, A, B, eps):
    remaining = list(B)
    for ia in A:
        alpha = loops[ia]
        p, q = classes[ia]
        best = best_w = best_ib = None
        for ib in remaining:
            w = pair_loop(alpha, loops[ib], (p, q), eps)
            cand = ExtendedCurve(loops[ib].translated(w), (-p, -q))
            # both candidates run along -d; "left of" in that frame is nearer to alpha
            if best is None or to_left(cand, best, eps):
                best, best_w, best_ib = cand, w, ib
        remaining.remove(best_ib)
        yield ia, best_ib, best_w


def pair_loops(loop_set: "LoopSet", eps: float = DEFAULT_EPS):
    """Pair each loop of class ``d`` with the nearest-left translate of a loop of class ``-d``."""
    loops, classes = loop_set.loops, loop_set.classes
    out = []
    for ia, ib, w in _pair(loops, classes, loop_set.A, loop_set.B, eps):
        p, q = classes[ia]
        out.append(
            (ExtendedCurve(loops[ia], (p, q)), ExtendedCurve(loops[ib].translated(w), (-p, -q)))
        )
    return out


def _intersections(loops, topology, samples=16):
    """Advisory: index pairs of loops whose polylines (incl. nearby lifts) cross."""
    from .winding import polyline_vertices

    polys = [np.vstack(polyline_vertices(l, samples)) for l in loops]
    found = []
    shifts = [(0, 0)]
    if topology.kind is TopologyKind.UNI:
        shifts = [(i, 0) for i in (-1, 0, 1)]
    elif topology.kind is TopologyKind.BI:
        shifts = [(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if any(_polylines_cross(polys[i], polys[j] + s) for s in shifts):
                found.append((i, j))
    return tuple(found)


def _polylines_cross(P, Q) -> bool:
    lo = np.maximum(P.min(0), Q.min(0))
    hi = np.minimum(P.max(0), Q.max(0))
    if np.any(lo > hi):
        return False
    a, b = P[:-1], P[1:]
    c, d = Q[:-1], Q[1:]

    def orient(p, q, r):
        return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])

    a_, b_ = a[:, None], b[:, None]
    c_, d_ = c[None], d[None]
    o1 = orient(a_, b_, c_)
    o2 = orient(a_, b_, d_)
    o3 = orient(c_, d_, a_)
    o4 = orient(c_, d_, b_)
    return bool(np.any((o1 * o2 < 0) & (o3 * o4 < 0)))


@dataclass(frozen=True, eq=False)
class LoopSet:
    """Trimming loops in covering coordinates with their classes and pairing."""

    loops: tuple[BezierPath, ...]
    topology: DomainTopology
    classes: tuple[HomologyClass, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    pairs: tuple[tuple[ExtendedCurve, ExtendedCurve], ...] = ()
    report: ValidationReport | None = None

    @classmethod
    def build(cls, loops, topology=NON_PERIODIC, eps: float = DEFAULT_EPS) -> "LoopSet":
        """Classify, validate and (bi-periodic) pair the loops; raises on violations."""
        topology = DomainTopology.parse(topology)
        loops = tuple(loops)
        rep = validate_loops(loops, topology, eps=eps, check_intersections=False)
        rep.raise_first()
        pairs = ()
        if topology.kind is TopologyKind.BI:
            pairs = tuple(
                (
                    ExtendedCurve(loops[ia], rep.classes[ia].vector),
                    ExtendedCurve(loops[ib].translated(w), rep.classes[ib].vector),
                )
                for ia, ib, w in rep.pairing
            )
        return cls(loops, topology, rep.classes, rep.A, rep.B, rep.C, pairs, rep)


def bi_periodic_many(points, loop_set: LoopSet, eps: float = DEFAULT_EPS, *, per_pair=False):
    """Band-sum winding field of a paired bi-periodic loop set.

    For each pair, bands are indexed by ``c = cross(d, w)`` for lattice shifts
    ``w``; only bands whose cross-coordinate slab can contain the point are
    summed (the others contribute +1/2 - 1/2 = 0).  With ``per_pair=True`` the
    per-pair fields are returned as well.
    """
    pts = _as_points(points)
    n = len(pts)
    total = np.zeros(n)
    status = np.zeros(n, dtype=np.int8)
    fields = []
    for alpha, beta in loop_set.pairs:
        p, q = alpha.extension
        d = np.array([p, q], dtype=float)
        r0, s0 = lattice_basis(p, q)
        lo1, hi1 = _cross_range(alpha.base, d)
        lo2, hi2 = _cross_range(beta.base, d)
        cmin, cmax = min(lo1, lo2), max(hi1, hi2)
        cx = p * pts[:, 1] - q * pts[:, 0]
        owner, c = _expand(
            np.floor(cx - cmax).astype(np.int64) - 1, np.ceil(cx - cmin).astype(np.int64) + 1
        )
        w = _reduce(np.column_stack([c * r0, c * s0]).astype(float), d)
        shifted = pts[owner] - w
        va, sa = extended_winding_many(shifted, alpha, eps)
        vb, sb = extended_winding_many(shifted, beta, eps)
        val, st = _fold(n, owner, np.nan_to_num(va + vb), np.maximum(sa, sb))
        total += val
        status = np.maximum(status, st)
        fields.append(_finish(val, st)[0])
    for i in loop_set.C:
        val, st = bi_contractible_many(pts, loop_set.loops[i], eps)
        total += np.nan_to_num(val)
        status = np.maximum(status, st)
    value, status = _finish(total, status)
    if per_pair:
        return value, status, fields
    return value, status


def bi_periodic_winding(p, loop_set: LoopSet, eps: float = DEFAULT_EPS) -> WindingOutcome:
    return _outcome(*bi_periodic_many([as_point(p)], loop_set, eps))


def uni_periodic_many(points, loop_set: LoopSet, eps: float = DEFAULT_EPS):
    pts = _as_points(points)
    n = len(pts)
    total = np.zeros(n)
    status = np.zeros(n, dtype=np.int8)
    for i, (loop, cls) in enumerate(zip(loop_set.loops, loop_set.classes)):
        if cls.is_contractible:
            val, st = uni_contractible_many(pts, loop, eps)
        else:
            if abs(cls.p) != 1:
                raise ValidityError(f"loop {i} wraps {cls.p} times around the cylinder", rule="uni-class")
            val, st = extended_winding_many(pts, ExtendedCurve(loop, (cls.p, 0)), eps)
        total += np.nan_to_num(val)
        status = np.maximum(status, st)
    return _finish(total, status)


def uni_periodic_winding(p, loop_set: LoopSet, eps: float = DEFAULT_EPS) -> WindingOutcome:
    return _outcome(*uni_periodic_many([as_point(p)], loop_set, eps))
