"""
Winding numbers of a Bezier loop
================================

A closed loop of cubic Bezier segments, its winding number at a few points,
and what the ellipse pruning costs.
"""
import numpy as np

import trimwind as tw
from trimwind.synthetic import rng, star_loop

# A wobbly closed loop made of six cubic segments, counter-clockwise.
loop = star_loop(rng(7), center=(0.5, 0.5), radius=0.3, n_segments=6, roughness=0.4)
print("segments:", len(loop.segments), " closed:", loop.is_closed)

# Inside the loop the winding number is 1, outside it is 0.  Reversing the
# loop flips the sign.
for p in [(0.5, 0.5), (0.95, 0.95)]:
    w = tw.path_winding(p, loop).value
    r = tw.path_winding(p, loop.reversed()).value
    print(f"w{p} = {w:+.12f}   reversed: {r:+.12f}")

# Points far from the curve are handled by a single chord: the root ellipse
# of the hierarchy already excludes them.  Near the curve the recursion goes
# deeper, roughly one level per halving of the distance.  eps is lowered here
# so the closest point is still resolved rather than reported on the boundary.
start = np.array(loop.segments[0](0.3))
normal = np.array([0.5, 0.5]) - start
normal /= np.hypot(*normal)
for d in [1e-1, 1e-3, 1e-5, 1e-7]:
    c = tw.Counters()
    w = tw.path_winding(start + d * normal, loop, eps=1e-9, counters=c)
    print(f"distance {d:.0e}: w = {w.value:+.9f}  evals {c.evals:3d}  depth {c.max_depth}")

# Within eps of a visited curve point the answer is OnBoundary instead of a
# number that would be numerically meaningless.
hit = tw.path_winding(loop.segments[2](0.5), loop, eps=1e-6)
print("on the curve:", hit.kind.name, "segment", hit.hit)

# The batch engine gives the same numbers for many points at once.
pts = rng(8).uniform(0, 1, (100_000, 2))
res = tw.winding_many(pts, loop)
inside = np.isclose(res.value, 1.0)
print(f"area estimate from 1e5 samples: {inside.mean():.4f}")
