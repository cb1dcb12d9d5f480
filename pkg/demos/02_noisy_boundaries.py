"""
Broken boundaries
=================

Trimming loops from real files are rarely watertight.  The winding number of
an open loop is no longer an integer, but it stays close to one away from
the gaps, so rounding it still gives a sensible inside/outside answer.
Crossing parity has no such margin: one missed crossing flips the result.
"""
import numpy as np

import trimwind as tw
from trimwind.synthetic import perturb, rng, star_loop

gen = rng(11)
clean = star_loop(gen, roughness=0.5, n_segments=8)
noisy = perturb(clean, gen, sigma=2e-3)
print("gaps in the noisy loop:", len(noisy.gaps))

n = 200
u = (np.arange(n) + 0.5) / n
pts = np.column_stack([a.ravel() for a in np.meshgrid(u, u)])

a, _ = tw.TrimmedRegion.from_loops(clean).verdicts(pts)
b, w = tw.TrimmedRegion.from_loops(noisy).verdicts(pts)
print(f"verdicts changed by the noise: {np.mean(a != b) * 100:.3f}% of the grid")

residual = np.abs(w - np.round(w))
print(f"largest distance from an integer: {np.nanmax(residual):.3f}")

# Parity of ray crossings on the same noisy loop, along +u.
parity = np.array([tw.crossing_count(p, (1.0, 0.0), noisy, 32) % 2 for p in pts[::37]])
print(f"ray parity disagrees with the clean verdict on "
      f"{np.mean(parity != (a[::37] == tw.Verdict.INSIDE)) * 100:.2f}% of sampled points")
