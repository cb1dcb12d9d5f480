"""Inside/outside classification of points against trimmed regions."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .batch import FAILED, ON_BOUNDARY, OK, winding_many
from .geometry import as_point
from .periodic import (
    NON_PERIODIC,
    DomainTopology,
    LoopSet,
    TopologyKind,
    bi_periodic_many,
    uni_periodic_many,
)
from .winding import DEFAULT_EPS, BezierPath

__all__ = [
    "Rule",
    "Verdict",
    "Classification",
    "TrimmedRegion",
    "classify",
    "classify_batch",
    "round_half_away",
]


class Rule(enum.Enum):
    NONZERO = "nonzero"
    POSITIVE = "positive"


class Verdict(enum.IntEnum):
    OUTSIDE = 0
    INSIDE = 1
    ON_BOUNDARY = 2


def round_half_away(x):
    """Nearest integer, ties away from zero (``np.round`` rounds ties to even)."""
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    winding: float | None = None
    residual: float | None = None
    error: str | None = None

    @property
    def inside(self) -> bool:
        return self.verdict is Verdict.INSIDE


def _verdicts(value, status, rule):
    r = round_half_away(np.where(status == OK, value, 0.0))
    inside = r >= 1 if rule is Rule.POSITIVE else r != 0
    v = np.where(inside, Verdict.INSIDE, Verdict.OUTSIDE).astype(np.int8)
    v[status == ON_BOUNDARY] = Verdict.ON_BOUNDARY
    return v, np.abs(value - r)


@dataclass(frozen=True, eq=False)
class TrimmedRegion:
    """A validated loop set plus the tolerance and fill rule used to classify against it."""

    loop_set: LoopSet
    eps: float = DEFAULT_EPS
    rule: Rule = Rule.NONZERO

    @classmethod
    def from_loops(cls, loops, topology=NON_PERIODIC, eps: float = DEFAULT_EPS, rule=Rule.NONZERO):
        if isinstance(loops, BezierPath):
            loops = [loops]
        return cls(LoopSet.build(loops, topology, eps), eps, Rule(rule))

    @property
    def topology(self) -> DomainTopology:
        return self.loop_set.topology

    def with_options(self, eps=None, rule=None) -> "TrimmedRegion":
        return TrimmedRegion(
            self.loop_set,
            self.eps if eps is None else eps,
            self.rule if rule is None else Rule(rule),
        )

    def winding_many(self, points, *, reduce=False):
        """Winding values and status codes for an ``(N, 2)`` array of covering-space points."""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        if reduce:
            pts = self.topology.reduce(pts)
        kind = self.topology.kind
        if kind is TopologyKind.BI:
            return bi_periodic_many(pts, self.loop_set, self.eps)
        if kind is TopologyKind.UNI:
            return uni_periodic_many(pts, self.loop_set, self.eps)
        value = np.zeros(len(pts))
        status = np.zeros(len(pts), dtype=np.int8)
        for loop in self.loop_set.loops:
            res = winding_many(pts, loop, self.eps)
            value += np.nan_to_num(res.value)
            status = np.maximum(status, res.status)
        value[status != OK] = np.nan
        return value, status

    def winding(self, p) -> float | None:
        value, status = self.winding_many([as_point(p)], reduce=True)
        return None if status[0] != OK else float(value[0])

    def verdicts(self, points):
        """Verdict codes (0 outside, 1 inside, 2 on boundary) and windings; failures count as boundary."""
        value, status = self.winding_many(points, reduce=True)
        v, _ = _verdicts(value, status, self.rule)
        v[status == FAILED] = Verdict.ON_BOUNDARY
        return v, value


def classify(region: TrimmedRegion, p) -> Classification:
    return classify_batch(region, [p])[0]


def classify_batch(region: TrimmedRegion, points) -> list[Classification]:
    """Element-wise classification; malformed points or failures are reported per element."""
    pts = np.full((len(points), 2), np.nan)
    errors = [None] * len(points)
    for i, p in enumerate(points):
        try:
            pts[i] = as_point(p)
        except (TypeError, ValueError) as exc:
            errors[i] = str(exc)
    good = np.flatnonzero([e is None for e in errors])
    value = np.full(len(points), np.nan)
    status = np.full(len(points), FAILED, dtype=np.int8)
    if good.size:
        value[good], status[good] = region.winding_many(pts[good], reduce=True)
    verdict, residual = _verdicts(value, status, region.rule)
    out = []
    for i in range(len(points)):
        if errors[i] is not None:
            out.append(Classification(Verdict.ON_BOUNDARY, error=errors[i]))
        elif status[i] == ON_BOUNDARY:
            out.append(Classification(Verdict.ON_BOUNDARY))
        elif status[i] == FAILED:
            out.append(Classification(Verdict.ON_BOUNDARY, error="bisection depth cap exceeded"))
        else:
            w = float(value[i])
            out.append(Classification(Verdict(int(verdict[i])), w, float(residual[i])))
    return out
