"""Command-line entry point: ``field``, ``classify``, ``bench`` and ``validate``.

Exit codes: 0 ok, 2 input error, 3 output error, 4 validation failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bench
from .batch import OK
from .containment import Rule, TrimmedRegion, Verdict, round_half_away
from .errors import TrimwindError
from .ingest import normalize_unit_square, parse_svg_document, read_loopset, _check_declared
from .periodic import LoopSet, validate_loops
from .winding import DEFAULT_EPS

EXIT_OK, EXIT_INPUT, EXIT_OUTPUT, EXIT_INVALID = 0, 2, 3, 4
VERDICT_NAMES = {Verdict.OUTSIDE: "Outside", Verdict.INSIDE: "Inside", Verdict.ON_BOUNDARY: "OnBoundary"}


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _load_document(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise _Exit(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None
    try:
        if str(path).lower().endswith(".svg"):
            doc = parse_svg_document(data)
            if doc.skipped_count:
                print(f"note: skipped {doc.skipped_count} unsupported element(s): {doc.skipped}", file=sys.stderr)
            if not doc.paths:
                raise _Exit(EXIT_INPUT, f"{path}: no path geometry found")
            return "none", normalize_unit_square(doc.paths), []
        doc = read_loopset(data)
        return doc.topology, doc.loops, doc
    except TrimwindError as exc:
        raise _Exit(EXIT_INPUT, f"{path}: {exc}") from None


def _load_region(path, eps, rule=Rule.NONZERO) -> TrimmedRegion:
    topology, loops, doc = _load_document(path)
    try:
        if doc:
            _check_declared(doc)
        return TrimmedRegion(LoopSet.build(loops, topology, eps), eps, Rule(rule))
    except TrimwindError as exc:
        raise _Exit(EXIT_INPUT, f"{path}: {exc}") from None


def _write(out, text: str):
    try:
        if out is None or out == "-":
            sys.stdout.write(text)
        else:
            Path(out).write_text(text)
    except OSError as exc:
        raise _Exit(EXIT_OUTPUT, f"cannot write {out}: {exc.strerror}") from None


def raster_points(width, height) -> np.ndarray:
    """Pixel centres of [0,1]^2, row-major with the top row (largest v) first."""
    u = (np.arange(width) + 0.5) / width
    v = 1.0 - (np.arange(height) + 0.5) / height
    U, V = np.meshgrid(u, v)
    return np.column_stack([U.ravel(), V.ravel()])


def _fmt(x) -> str:
    return "%.17g" % x


def render_field(region: TrimmedRegion, width, height, mode="winding", fmt="csv") -> str:
    pts = raster_points(width, height)
    if mode == "verdict":
        codes, _ = region.verdicts(pts)
        values = codes.astype(float)
        boundary = codes == Verdict.ON_BOUNDARY
    else:
        values, status = region.winding_many(pts, reduce=True)
        boundary = status != OK
    if fmt == "pgm":
        return _pgm(values, boundary, width, height)
    buf = io.StringIO()
    buf.write("u,v,value\n")
    for (u, v), x, b in zip(pts, values, boundary):
        if mode == "verdict":
            val = str(int(x))
        else:
            val = "" if b else _fmt(x)
        buf.write(f"{_fmt(u)},{_fmt(v)},{val}\n")
    return buf.getvalue()


def _pgm(values, boundary, width, height) -> str:
    good = values[~boundary]
    lo, hi = (float(good.min()), float(good.max())) if good.size else (0.0, 0.0)
    scale = 255.0 / (hi - lo) if hi > lo else 0.0
    grey = np.zeros(len(values), dtype=int)
    grey[~boundary] = np.floor((good - lo) * scale + 0.5).astype(int)
    grey[boundary] = 255
    lines = ["P2", f"# value range {_fmt(lo)} {_fmt(hi)}", f"{width} {height}", "255"]
    rows = grey.reshape(height, width)
    lines += [" ".join(map(str, r)) for r in rows]
    return "\n".join(lines) + "\n"


def cmd_field(args):
    w, h = args.grid
    if w < 1 or h < 1:
        raise _Exit(EXIT_INPUT, "grid dimensions must be >= 1")
    region = _load_region(args.input, args.eps)
    _write(args.out, render_field(region, w, h, args.mode, args.format))
    return EXIT_OK


def _read_points(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Exit(EXIT_INPUT, f"cannot read {path}: {exc}") from None
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return [], []
    header = [c.strip() for c in rows[0]]
    if header[:2] != ["u", "v"]:
        raise _Exit(EXIT_INPUT, f"{path}: row 1: header must start with u,v")
    raw, pts = [], []
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            if len(row) != len(header):
                raise ValueError(f"expected {len(header)} fields, got {len(row)}")
            u, v = float(row[0]), float(row[1])
            if not (math.isfinite(u) and math.isfinite(v)):
                raise ValueError("coordinates must be finite")
        except ValueError as exc:
            raise _Exit(EXIT_INPUT, f"{path}: row {i}: {exc}") from None
        raw.append(row)
        pts.append((u, v))
    return [header] + raw, pts


def cmd_classify(args):
    region = _load_region(args.input, args.eps, args.rule)
    rows, pts = _read_points(args.points)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    if not rows:
        wr.writerow(["u", "v", "winding", "verdict"])
    else:
        wr.writerow(rows[0] + ["winding", "verdict"])
    if pts:
        values, status = region.winding_many(np.array(pts), reduce=True)
        r = round_half_away(np.where(status == OK, values, 0.0))
        inside = r >= 1 if region.rule is Rule.POSITIVE else r != 0
        for row, x, st, ins in zip(rows[1:], values, status, inside):
            if st != OK:
                wr.writerow(row + ["", VERDICT_NAMES[Verdict.ON_BOUNDARY]])
            else:
                wr.writerow(row + [_fmt(x), VERDICT_NAMES[Verdict.INSIDE if ins else Verdict.OUTSIDE]])
    _write(args.out, buf.getvalue())
    return EXIT_OK


def cmd_bench(args):
    report = bench.run_suite(args.suite, args.seed, args.repeats)
    _write(args.out, json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_validate(args):
    topology, loops, doc = _load_document(args.input)
    rep = validate_loops(loops, topology, eps=args.eps)
    out = sys.stdout
    kind = rep.topology.kind.value
    print(f"topology: {kind}", file=out)
    print(f"loops: {len(loops)}  |A| = {len(rep.A)}  |B| = {len(rep.B)}  |C| = {len(rep.C)}", file=out)
    violations = list(rep.violations)
    if doc:
        for i, (loop, dec) in enumerate(zip(doc.loops, doc.declared)):
            if dec is not None and tuple(dec) != rep.classes[i].vector:
                violations.append(("declared-class", f"loop {i} declares {tuple(dec)} but has {rep.classes[i].vector}"))
    for i, c in enumerate(rep.classes):
        part = "A" if i in rep.A else "B" if i in rep.B else "C"
        print(f"  loop {i}: class ({c.p}, {c.q})  part {part}  closure defect {c.defect:.3e}", file=out)
    for ia, ib, w in rep.pairing:
        print(f"  pair: loop {ia} with loop {ib} translated by {w}", file=out)
    for i, j in rep.intersections:
        print(f"  warning: loops {i} and {j} appear to intersect (advisory)", file=out)
    if violations:
        for rule, msg in violations:
            print(f"violation [{rule}]: {msg}", file=out)
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_INVALID
    print("valid", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trimwind", description="Winding numbers for trimmed and periodic domains.")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", help="rasterize the winding field or verdicts")
    f.add_argument("input")
    f.add_argument("--grid", nargs=2, type=int, metavar=("W", "H"), default=(256, 256))
    f.add_argument("--eps", type=float, default=DEFAULT_EPS)
    f.add_argument("--mode", choices=("winding", "verdict"), default="winding")
    f.add_argument("--format", choices=("csv", "pgm"), default="csv")
    f.add_argument("--out", default="-")
    f.set_defaults(fn=cmd_field)

    c = sub.add_parser("classify", help="classify points from a CSV file")
    c.add_argument("input")
    c.add_argument("--points", required=True)
    c.add_argument("--eps", type=float, default=DEFAULT_EPS)
    c.add_argument("--rule", choices=("nonzero", "positive"), default="nonzero")
    c.add_argument("--out", default="-")
    c.set_defaults(fn=cmd_classify)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--suite", choices=sorted(bench.SUITES), required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--out", default="-")
    b.set_defaults(fn=cmd_bench)

    v = sub.add_parser("validate", help="check a loop set against the topological rules")
    v.add_argument("input")
    v.add_argument("--eps", type=float, default=DEFAULT_EPS)
    v.set_defaults(fn=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, TrimwindError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
