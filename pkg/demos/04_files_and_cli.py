"""
Files and the command line
==========================

Boundaries come in as SVG paths or as JSON loop sets.  The same operations
are available from the ``trimwind`` command.
"""
import json
import tempfile
from pathlib import Path

import numpy as np

import trimwind as tw
from trimwind.cli import main
from trimwind.ingest import dump_loopset, load_region, normalize_unit_square, parse_svg_document

svg = """<svg xmlns="http://www.w3.org/2000/svg">
  <g transform="translate(5 5)">
    <path d="M 0 0 A 40 40 0 1 0 80 0 A 40 40 0 1 0 0 0 Z
             M 25 0 A 15 15 0 1 1 55 0 A 15 15 0 1 1 25 0 Z"/>
  </g>
  <rect width="3" height="3"/>
</svg>"""
doc = parse_svg_document(svg)
print("paths:", len(doc.paths), " skipped:", doc.skipped)

# Normalize into the unit square; the ring has an outer loop and a hole
# traversed the other way round.
paths = normalize_unit_square(doc.paths)
ring = tw.TrimmedRegion.from_loops(paths)
for p in [(0.5, 0.5), (0.5, 0.8), (0.02, 0.02)]:
    print(p, tw.classify(ring, p).verdict.name)

# Loop sets serialize to JSON and load back into a ready region.
text = dump_loopset(ring, name="ring", indent=1)
again = load_region(text)
print("same verdicts after round trip:",
      all(tw.classify(again, p) == tw.classify(ring, p) for p in np.random.default_rng(0).uniform(0, 1, (50, 2))))

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    (tmp / "ring.json").write_text(text)
    (tmp / "points.csv").write_text("u,v\n0.5,0.5\n0.5,0.8\n")
    main(["classify", str(tmp / "ring.json"), "--points", str(tmp / "points.csv")])
    main(["field", str(tmp / "ring.json"), "--grid", "64", "64", "--format", "pgm",
          "--out", str(tmp / "ring.pgm")])
    print("PGM header:", (tmp / "ring.pgm").read_text().split("\n")[:3])
    (tmp / "bad.json").write_text(json.dumps(
        {"topology": "bi", "loops": [{"segments": [{"points": [[0, 0.3], [1, 0.3]]}]}]}))
    print("validate exit code:", main(["validate", str(tmp / "bad.json")]))
