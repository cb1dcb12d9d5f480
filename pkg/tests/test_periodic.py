import warnings

import numpy as np
import pytest

from conftest import circle_path, line
from trimwind import (
    BI_PERIODIC,
    UNI_PERIODIC,
    BezierPath,
    DomainError,
    ExtendedCurve,
    LoopSet,
    PairingError,
    ValidityError,
    bi_contractible_winding,
    bi_periodic_winding,
    extended_winding,
    homology_class,
    line_winding,
    pair_loop,
    pair_loops,
    to_left,
    uni_contractible_winding,
    uni_periodic_winding,
    validate_loops,
)
from trimwind.periodic import ClosureDefectWarning, DomainTopology, bi_periodic_many, lattice_basis, uni_periodic_many
from trimwind.synthetic import coprime_classes, cylinder_dataset, rng, strip_dataset, torus_dataset, wavy_curve

# --- homology -----------------------------------------------------------------


def test_homology_examples():
    assert homology_class(circle_path()).vector == (0, 0)
    assert homology_class(line((0.2, 0.3), (1.2, 0.3))).vector == (1, 0)
    assert homology_class(line((0.1, 0.1), (2.1, 3.1))).vector == (2, 3)


def test_homology_uni_ignores_v():
    assert homology_class(line((0.2, 0.3), (1.2, 0.3)), UNI_PERIODIC).vector == (1, 0)
    assert homology_class(circle_path(), "uni").is_contractible


def test_homology_defect_warning():
    with pytest.warns(ClosureDefectWarning):
        cls = homology_class(line((0.0, 0.0), (1.4, 0.0)))
    assert cls.vector == (1, 0) and cls.defect == pytest.approx(0.4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert homology_class(line((0.0, 0.0), (1.1, 0.0))).vector == (1, 0)


def test_lattice_basis():
    for p, q in [(1, 0), (0, 1), (2, 3), (-3, 5), (5, -4), (0, -1)]:
        r, s = lattice_basis(p, q)
        assert p * s - q * r == 1
    with pytest.raises(ValidityError) as e:
        lattice_basis(2, 4)
    assert e.value.rule == "coprime"


# --- extended curves --------------------------------------------------------------


def test_line_winding():
    assert line_winding((0.3, 0.8), (0, 0.5), (1, 0.5)).value == 0.5
    assert line_winding((0.3, 0.2), (0, 0.5), (1, 0.5)).value == -0.5
    assert line_winding((7.0, 0.5 + 1e-8), (0, 0.5), (1, 0.5)).on_boundary


def test_extended_line_examples():
    c = ExtendedCurve(line((0, 0.5), (1, 0.5)), (1, 0))
    assert extended_winding((0.3, 0.8), c).value == pytest.approx(0.5, abs=1e-15)
    assert extended_winding((0.3, 0.2), c).value == pytest.approx(-0.5, abs=1e-15)
    assert extended_winding((123.3, 0.2), c).value == pytest.approx(-0.5, abs=1e-15)
    assert extended_winding((40.0, 0.5), c).on_boundary


def test_extended_curve_validation():
    with pytest.raises(DomainError):
        ExtendedCurve(line((0, 0), (1, 0)), (0, 0))
    with pytest.raises(DomainError):
        ExtendedCurve(line((0, 0), (1, 0)), (0.5, 0))


def test_wavy_curve_has_two_sides():
    g = rng(41)
    base = wavy_curve(g, (0.1, 0.4), (1, 0), amplitude=0.05)
    c = ExtendedCurve(base, (1, 0))
    for u in g.uniform(-50, 50, 20):
        assert extended_winding((u, 0.9), c).value == pytest.approx(0.5, abs=1e-12)
        assert extended_winding((u, -0.1), c).value == pytest.approx(-0.5, abs=1e-12)


def test_translation_identity_small():
    g = rng(42)
    for vec in [(1, 0), (2, 1), (-1, 3)]:
        c = ExtendedCurve(wavy_curve(g, g.uniform(0, 1, 2), vec), vec)
        for _ in range(20):
            p = g.uniform(-1, 2, 2)
            w = g.integers(-3, 4, 2)
            a = extended_winding(p, c.translated(w))
            b = extended_winding(p - w, c)
            assert a.on_boundary == b.on_boundary
            if not a.on_boundary:
                assert a.value == pytest.approx(b.value, abs=1e-12)


# --- contractible loops -----------------------------------------------------------


def test_uni_contractible_examples():
    c = circle_path((0.5, 0.5), 0.1)
    assert uni_contractible_winding((0.5, 0.5), c).value == pytest.approx(1, abs=1e-9)
    assert uni_contractible_winding((1.5, 0.5), c).value == pytest.approx(1, abs=1e-9)
    assert uni_contractible_winding((-7.5, 0.5), c).value == pytest.approx(1, abs=1e-9)
    assert uni_contractible_winding((0.5, 0.9), c).value == pytest.approx(0, abs=1e-12)
    # not periodic in v
    assert uni_contractible_winding((0.5, 1.5), c).value == pytest.approx(0, abs=1e-12)


def test_bi_contractible_examples():
    c = circle_path((0.5, 0.5), 0.1)
    assert bi_contractible_winding((0.5, 0.5), c).value == pytest.approx(1, abs=1e-9)
    assert bi_contractible_winding((1.5, 1.5), c).value == pytest.approx(1, abs=1e-9)
    assert bi_contractible_winding((0.9, 0.1), c).value == pytest.approx(0, abs=1e-12)


def test_bi_contractible_loop_crossing_tile_edge():
    c = circle_path((0.95, 0.5), 0.2)
    assert bi_contractible_winding((0.05, 0.5), c).value == pytest.approx(1, abs=1e-9)
    assert bi_contractible_winding((1.05, 0.5), c).value == pytest.approx(1, abs=1e-9)


# --- pairing --------------------------------------------------------------------


def _vertical(u, down=False):
    a, b = (u, 0.0), (u, 1.0)
    return line(b, a) if down else line(a, b)


def test_to_left_examples():
    g1 = ExtendedCurve(_vertical(0.3), (0, 1))
    g2 = ExtendedCurve(_vertical(0.6), (0, 1))
    assert to_left(g1, g2) is True
    assert to_left(g2, g1) is False
    with pytest.raises(PairingError):
        to_left(g2.translated((0, 1)), g2)


def test_pair_loop_matches_brute_force(small_oracles):
    ref = small_oracles["pair_vertical"]
    a = _vertical(0.6)
    assert list(pair_loop(a, _vertical(0.3, down=True), (0, 1))) == ref["alpha0.6_beta0.3"]
    a = _vertical(0.2)
    assert list(pair_loop(a, _vertical(0.6, down=True), (0, 1))) == ref["alpha0.2_beta0.6"]


def test_single_pair_band_is_clean():
    g = rng(43)
    for p, q in [(1, 0), (2, 3), (3, -2)]:
        ls = torus_dataset(g, p, q, 1)
        pts = g.uniform(0, 1, (2000, 2))
        val, st, fields = bi_periodic_many(pts, ls, per_pair=True)
        ok = st == 0
        assert set(np.unique(np.round(fields[0][ok]))) <= {0.0, 1.0}


def _h(v, right=True):
    return line((0, v), (1, v)) if right else line((1, v), (0, v))


def test_nested_pairs_follow_adjacency(small_oracles):
    valid = small_oracles["nested_pairs_valid"]
    assert valid == [True, False]
    loops = [_h(0.2), _h(0.6), _h(0.7, False), _h(0.3, False)]
    ls = LoopSet.build(loops, "bi")
    matched = {(ia, ib) for ia, ib, _ in ls.report.pairing}
    assert matched == {(0, 3), (1, 2)}
    assert len(pair_loops(ls)) == 2
    v = np.linspace(0.0005, 0.9995, 1000)
    pts = np.column_stack([np.full_like(v, 0.37), v])
    val, st = bi_periodic_many(pts, ls)
    assert set(np.unique(np.round(val[st == 0]))) <= {0.0, 1.0}


def test_strip_example():
    ls = LoopSet.build([_h(0.25), _h(0.75, False)], "bi")
    for v, want in [(0.5, 1), (0.1, 0), (0.9, 0), (1.5, 1), (-0.6, 1), (-0.9, 0)]:
        for u in (0.0, 0.3, 4.7):
            assert bi_periodic_winding((u, v), ls).value == pytest.approx(want, abs=1e-12)


def test_uni_example_orientation():
    # rightward at 0.5, leftward at 0.1: the band lies right of both lines
    ls = LoopSet.build([_h(0.5), _h(0.1, False)], "uni")
    assert uni_periodic_winding((0.3, 0.3), ls).value == pytest.approx(-1, abs=1e-12)
    assert uni_periodic_winding((0.3, 0.7), ls).value == pytest.approx(0, abs=1e-12)
    assert uni_periodic_winding((0.3, 0.05), ls).value == pytest.approx(0, abs=1e-12)
    ls = LoopSet.build([_h(0.1), _h(0.5, False)], "uni")
    assert uni_periodic_winding((5.3, 0.3), ls).value == pytest.approx(1, abs=1e-12)


def test_uni_contractible_only_reduces_to_sum():
    a, b = circle_path((0.3, 0.5), 0.1), circle_path((0.7, 0.5), 0.15)
    ls = LoopSet.build([a, b], "uni")
    g = rng(44)
    for p in g.uniform(-1, 2, (50, 2)):
        x = uni_periodic_winding(p, ls)
        y = uni_contractible_winding(p, a).value + uni_contractible_winding(p, b).value
        assert x.value == pytest.approx(y, abs=1e-12)


# --- validation ---------------------------------------------------------------


def test_validity_rules():
    circ = circle_path((0.5, 0.5), 0.1)
    cases = [
        ([_h(0.3)], "bi", "cardinality"),
        ([line((0, 0.1), (2, 4.1)), line((2, 4.6), (0, 0.6))], "bi", "coprime"),
        ([line((0, 0.1), (2, 0.1))], "uni", "uni-class"),
        ([_h(0.2), _h(0.6, False), line((0.1, 0), (0.1, 1))], "bi", "mixed-class"),
    ]
    for loops, topo, rule in cases:
        rep = validate_loops(loops, topo)
        assert not rep.ok and rule in [r for r, _ in rep.violations], rule
        with pytest.raises(ValidityError) as e:
            LoopSet.build(loops, topo)
        assert e.value.rule == rep.violations[0][0]
    assert validate_loops([circ], "none").ok
    assert validate_loops([circ, _h(0.2), _h(0.6, False)], "bi").ok


def test_topology_parse():
    assert DomainTopology.parse("bi") == BI_PERIODIC
    with pytest.raises(ValueError):
        DomainTopology.parse("torus")


# --- generated datasets -----------------------------------------------------------


@pytest.mark.parametrize("p,q", coprime_classes(2, 5)[:6])
def test_torus_field_integral_and_periodic(p, q):
    g = rng([45, p, q])
    ls = torus_dataset(g, p, q, 2)
    pts = g.uniform(0, 1, (500, 2))
    val, st = bi_periodic_many(pts, ls)
    ok = st == 0
    assert ok.mean() > 0.99
    assert np.max(np.abs(val[ok] - np.round(val[ok]))) < 1e-6
    for shift in ((1, 0), (0, 1), (-2, 3)):
        v2, s2 = bi_periodic_many(pts + shift, ls)
        both = ok & (s2 == 0)
        assert np.max(np.abs(val[both] - v2[both])) < 1e-9


def test_strip_and_cylinder_datasets():
    g = rng(46)
    for ls, topo in ((strip_dataset(g, 2), "bi"), (cylinder_dataset(g, 2), "uni")):
        pts = g.uniform(0, 1, (500, 2))
        fn = bi_periodic_many if topo == "bi" else uni_periodic_many
        val, st = fn(pts, ls)
        ok = st == 0
        assert set(np.unique(np.abs(np.round(val[ok])))) <= {0.0, 1.0}
        v2, s2 = fn(pts + (1, 0), ls)
        both = ok & (s2 == 0)
        assert np.max(np.abs(val[both] - v2[both])) < 1e-9
