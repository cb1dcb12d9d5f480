import json
import sys
import math
from pathlib import Path

import numpy as np
import pytest

from trimwind import BezierPath, RationalBezierSegment

ORACLES = Path(__file__).parent / "oracles"


def circle_path(center=(0.5, 0.5), radius=0.3, ccw=True):
    """Four-cubic circle approximation."""
    k = 4 / 3 * math.tan(math.pi / 8)
    c = np.asarray(center, float)
    blocks = []
    for i in range(4):
        a0, a1 = i * math.pi / 2, (i + 1) * math.pi / 2
        p0 = np.array([math.cos(a0), math.sin(a0)])
        p3 = np.array([math.cos(a1), math.sin(a1)])
        p1 = p0 + k * np.array([-p0[1], p0[0]])
        p2 = p3 - k * np.array([-p3[1], p3[0]])
        blocks.append(c + radius * np.array([p0, p1, p2, p3]))
    path = BezierPath.from_control_points(blocks)
    return path if ccw else path.reversed()


def square_path(lo=0.25, hi=0.75):
    return BezierPath.polygon([(lo, lo), (hi, lo), (hi, hi), (lo, hi)])


def line(a, b):
    return BezierPath((RationalBezierSegment([a, b]),))


@pytest.fixture
def circle():
    return circle_path()


@pytest.fixture
def square():
    return square_path()


@pytest.fixture(scope="session")
def small_oracles():
    return json.loads((ORACLES / "small_oracles.json").read_text())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
