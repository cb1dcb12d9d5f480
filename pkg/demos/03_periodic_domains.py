"""
Periodic parameter domains
==========================

On a cylinder or a torus a trimming loop may wrap around the domain.  Such a
loop never closes in the plane, so the winding number is taken in the
covering space, where each wrapping loop becomes an infinite periodic curve.
"""
import numpy as np

import trimwind as tw
from trimwind.synthetic import rng, torus_dataset


def line(a, b):
    return tw.BezierPath((tw.RationalBezierSegment([a, b]),))


def show(region, n=16):
    """Coarse ASCII picture of one tile: '#' inside, '.' outside, '+' boundary."""
    u = (np.arange(n) + 0.5) / n
    rows = []
    for v in u[::-1]:
        codes, _ = region.verdicts(np.column_stack([u, np.full(n, v)]))
        rows.append("".join(".#+"[c] for c in codes))
    print("\n".join(rows))


# A strip on the torus: a rightward line below and a leftward line above.
# Each line has homology class (1, 0) or (-1, 0), and the two are paired.
strip = tw.TrimmedRegion.from_loops([line((0, 0.25), (1, 0.25)), line((1, 0.75), (0, 0.75))], "bi")
print("classes:", [c.vector for c in strip.loop_set.classes])
for v in (0.1, 0.5, 1.5):
    print(f"w(0.3, {v}) = {strip.winding((0.3, v)):+.12f}")

# A cylinder is periodic in u only.  Contractible holes are allowed too.
hole = tw.BezierPath.polygon([(0.4, 0.45), (0.4, 0.55), (0.6, 0.55), (0.6, 0.45)])
cyl = tw.TrimmedRegion.from_loops(
    [line((0, 0.2), (1, 0.2)), line((1, 0.8), (0, 0.8)), hole], "uni"
)
show(cyl)

# Loops of class (2, 3) wind twice around one direction and three times
# around the other.  Pairing decides which translate of the partner loop
# closes each band; per-pair fields are 0 or 1 everywhere.
ls = torus_dataset(rng(3), 2, 3, n_pairs=2)
print("pairs:", ls.report.pairing)
region = tw.TrimmedRegion(ls)
show(region)
pts = rng(4).uniform(0, 1, (20_000, 2))
w, st = region.winding_many(pts)
ok = st == 0
print(f"max distance from an integer: {np.max(np.abs(w[ok] - np.round(w[ok]))):.1e}")
w2, st2 = region.winding_many(pts + (1, 0))
both = ok & (st2 == 0)
print(f"max |w(p) - w(p + e1)|: {np.max(np.abs(w[both] - w2[both])):.1e}")

# Invalid sets are rejected with the rule that failed.
try:
    tw.LoopSet.build([line((0, 0.3), (1, 0.3))], "bi")
except tw.ValidityError as exc:
    print("rejected:", exc.rule, "-", exc)
