"""Loading boundaries: an SVG path subset and the JSON loop-set format.

JSON loop sets (``*.loops.json``)::

    {"topology": "none" | "uni" | "bi",
     "name": "...",                                   # optional
     "loops": [{"segments": [{"points": [[u, v], ...],
                              "weights": [w, ...]}],  # weights optional
                "homology": [p, q]}]}                 # optional, checked

Coordinates are covering-space reals with period 1 on periodic axes.  Wrapped
input is unwrapped segment by segment so every loop is continuous.
"""
from __future__ import annotations

import json
import math
import re
import xml.parsers.expat
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from .containment import Rule, TrimmedRegion
from .errors import DomainError, FormatError, SvgParseError, ValidityError
from .geometry import RationalBezierSegment
from .periodic import DomainTopology, LoopSet, homology_class
from .winding import DEFAULT_EPS, BezierPath

__all__ = [
    "SvgDocument",
    "LoopSetDocument",
    "LOOPSET_SCHEMA",
    "parse_svg",
    "parse_svg_document",
    "parse_path_data",
    "normalize_unit_square",
    "unwrap",
    "read_loopset",
    "load_loopset",
    "load_region",
    "dump_loopset",
]

# --------------------------------------------------------------------------
# SVG

_NUM = re.compile(rb"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_SEP = re.compile(rb"[\s,]*")
_CMDS = b"MmLlHhVvCcSsQqTtAaZz"
_SKIP_CONTAINERS = {"defs", "clipPath", "mask", "symbol", "pattern", "marker"}
_TRANSPARENT = {"svg", "g", "title", "desc", "metadata"}


class _Scanner:
    def __init__(self, data: bytes, base: int):
        self.data = data
        self.pos = 0
        self.base = base

    def error(self, msg):
        raise SvgParseError(f"malformed path data: {msg}", self.base + self.pos)

    def skip(self):
        self.pos = _SEP.match(self.data, self.pos).end()

    def at_end(self):
        self.skip()
        return self.pos >= len(self.data)

    def peek_command(self):
        self.skip()
        if self.pos < len(self.data) and self.data[self.pos] in _CMDS:
            c = self.data[self.pos : self.pos + 1]
            self.pos += 1
            return c
        return None

    def number(self):
        self.skip()
        m = _NUM.match(self.data, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return float(m.group())

    def flag(self):
        self.skip()
        if self.pos < len(self.data) and self.data[self.pos] in b"01":
            self.pos += 1
            return self.data[self.pos - 1] == ord("1")
        self.error("expected an arc flag (0 or 1)")

    def starts_number(self):
        self.skip()
        return self.pos < len(self.data) and _NUM.match(self.data, self.pos) is not None


def _arc_to_cubics(p0, rx, ry, phi_deg, large, sweep, p1):
    """Endpoint-parameterized elliptical arc as cubic control blocks (<= 90 degrees each)."""
    if np.allclose(p0, p1, rtol=0, atol=0):
        return []
    rx, ry = abs(rx), abs(ry)
    if rx == 0 or ry == 0:
        return [np.array([p0, p1])]
    phi = math.radians(phi_deg % 360.0)
    c, s = math.cos(phi), math.sin(phi)
    dx, dy = (p0 - p1) / 2
    x1 = c * dx + s * dy
    y1 = -s * dx + c * dy
    lam = (x1 / rx) ** 2 + (y1 / ry) ** 2
    if lam > 1:
        rx, ry = rx * math.sqrt(lam), ry * math.sqrt(lam)
    num = rx * rx * ry * ry - rx * rx * y1 * y1 - ry * ry * x1 * x1
    den = rx * rx * y1 * y1 + ry * ry * x1 * x1
    k = math.sqrt(max(num, 0.0) / den)
    if large == sweep:
        k = -k
    cx1, cy1 = k * rx * y1 / ry, -k * ry * x1 / rx
    center = np.array([c * cx1 - s * cy1, s * cx1 + c * cy1]) + (p0 + p1) / 2

    def ang(ux, uy, vx, vy):
        return math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)

    th1 = ang(1, 0, (x1 - cx1) / rx, (y1 - cy1) / ry)
    dth = ang((x1 - cx1) / rx, (y1 - cy1) / ry, (-x1 - cx1) / rx, (-y1 - cy1) / ry)
    if not sweep and dth > 0:
        dth -= 2 * math.pi
    elif sweep and dth < 0:
        dth += 2 * math.pi
    n = max(1, math.ceil(abs(dth) / (math.pi / 2) - 1e-12))
    delta = dth / n
    t = 4 / 3 * math.tan(delta / 4)
    R = np.array([[c * rx, -s * ry], [s * rx, c * ry]])
    blocks = []
    for i in range(n):
        a0 = th1 + i * delta
        a1 = a0 + delta
        e0 = np.array([math.cos(a0), math.sin(a0)])
        e1 = np.array([math.cos(a1), math.sin(a1)])
        d0 = np.array([-e0[1], e0[0]])
        d1 = np.array([-e1[1], e1[0]])
        unit = np.array([e0, e0 + t * d0, e1 - t * d1, e1])
        blocks.append(center + unit @ R.T)
    blocks[0][0] = p0
    blocks[-1][-1] = p1
    return blocks


def parse_path_data(d: bytes | str, base_offset: int = 0) -> list[list[np.ndarray]]:
    """Path data to subpaths, each a list of control-point blocks (degree 1 or 3)."""
    if isinstance(d, str):
        d = d.encode()
    sc = _Scanner(d, base_offset)
    subpaths, blocks = [], []
    cur = np.zeros(2)
    start = np.zeros(2)
    last_ctrl = None
    last_cmd = None
    cmd = None

    def flush():
        nonlocal blocks
        if blocks:
            subpaths.append(blocks)
        blocks = []

    while not sc.at_end():
        c = sc.peek_command()
        if c is None:
            if cmd is None or cmd in b"Zz":
                sc.error("expected a command letter")
            c = cmd
            if c in b"Mm":
                c = b"l" if c == b"m" else b"L"
        cmd = c
        up = c.upper()
        rel = c.islower()
        if up == b"Z":
            if not np.array_equal(cur, start):
                blocks.append(np.array([cur, start]))
            flush()
            cur = start.copy()
            last_ctrl, last_cmd = None, up
            continue
        if not sc.starts_number():
            sc.error(f"command {c.decode()} is missing arguments")
        while True:
            off = cur if rel else np.zeros(2)
            if up == b"M":
                flush()
                cur = off + [sc.number(), sc.number()]
                start = cur.copy()
                last_ctrl = None
                up = b"L"
                c = b"l" if rel else b"L"
                cmd = c
                if not sc.starts_number():
                    last_cmd = b"M"
                    break
                continue
            if up == b"L":
                p = off + [sc.number(), sc.number()]
                blocks.append(np.array([cur, p]))
                cur, last_ctrl = p, None
            elif up == b"H":
                x = sc.number() + (cur[0] if rel else 0.0)
                p = np.array([x, cur[1]])
                blocks.append(np.array([cur, p]))
                cur, last_ctrl = p, None
            elif up == b"V":
                y = sc.number() + (cur[1] if rel else 0.0)
                p = np.array([cur[0], y])
                blocks.append(np.array([cur, p]))
                cur, last_ctrl = p, None
            elif up == b"C":
                c1 = off + [sc.number(), sc.number()]
                c2 = off + [sc.number(), sc.number()]
                p = off + [sc.number(), sc.number()]
                blocks.append(np.array([cur, c1, c2, p]))
                cur, last_ctrl = p, c2
            elif up == b"S":
                c1 = 2 * cur - last_ctrl if last_cmd in (b"C", b"S") and last_ctrl is not None else cur.copy()
                c2 = off + [sc.number(), sc.number()]
                p = off + [sc.number(), sc.number()]
                blocks.append(np.array([cur, c1, c2, p]))
                cur, last_ctrl = p, c2
            elif up in (b"Q", b"T"):
                if up == b"Q":
                    q = off + [sc.number(), sc.number()]
                else:
                    q = 2 * cur - last_ctrl if last_cmd in (b"Q", b"T") and last_ctrl is not None else cur.copy()
                p = off + [sc.number(), sc.number()]
                blocks.append(np.array([cur, cur + 2 / 3 * (q - cur), p + 2 / 3 * (q - p), p]))
                cur, last_ctrl = p, q
            elif up == b"A":
                rx, ry, rot = sc.number(), sc.number(), sc.number()
                large, sweep = sc.flag(), sc.flag()
                p = off + [sc.number(), sc.number()]
                blocks.extend(_arc_to_cubics(cur, rx, ry, rot, large, sweep, p))
                cur, last_ctrl = p, None
            last_cmd = up
            if not sc.starts_number():
                break
    flush()
    return subpaths


_TRANSFORM = re.compile(r"\s*(matrix|translate|scale|rotate|skewX|skewY)\s*\(([^)]*)\)\s*,?")


def _parse_transform(text: str, offset: int) -> np.ndarray:
    M = np.eye(3)
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TRANSFORM.match(text, pos)
        if not m:
            raise SvgParseError("malformed transform attribute", offset)
        name = m.group(1)
        try:
            a = [float(x) for x in re.split(r"[\s,]+", m.group(2).strip()) if x]
        except ValueError:
            raise SvgParseError("malformed transform arguments", offset) from None
        T = np.eye(3)
        if name == "matrix" and len(a) == 6:
            T[:2] = [[a[0], a[2], a[4]], [a[1], a[3], a[5]]]
        elif name == "translate" and len(a) in (1, 2):
            T[:2, 2] = [a[0], a[1] if len(a) == 2 else 0.0]
        elif name == "scale" and len(a) in (1, 2):
            T[0, 0], T[1, 1] = a[0], a[1] if len(a) == 2 else a[0]
        elif name == "rotate" and len(a) in (1, 3):
            r = math.radians(a[0])
            R = np.array([[math.cos(r), -math.sin(r), 0], [math.sin(r), math.cos(r), 0], [0, 0, 1]])
            if len(a) == 3:
                C = np.eye(3)
                C[:2, 2] = a[1:]
                Ci = np.eye(3)
                Ci[:2, 2] = [-a[1], -a[2]]
                R = C @ R @ Ci
            T = R
        elif name == "skewX" and len(a) == 1:
            T[0, 1] = math.tan(math.radians(a[0]))
        elif name == "skewY" and len(a) == 1:
            T[1, 0] = math.tan(math.radians(a[0]))
        else:
            raise SvgParseError(f"bad argument count for {name}", offset)
        M = M @ T
        pos = m.end()
    return M


@dataclass
class SvgDocument:
    paths: list[BezierPath]
    skipped: dict[str, int] = field(default_factory=dict)

    @property
    def skipped_count(self) -> int:
        return sum(self.skipped.values())


def parse_svg_document(data: bytes | str) -> SvgDocument:
    """Collect every subpath of every ``<path>``, with transforms flattened and y flipped."""
    if isinstance(data, str):
        data = data.encode()
    try:
        data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SvgParseError("input is not UTF-8", exc.start) from None

    parser = xml.parsers.expat.ParserCreate()
    stack = [np.eye(3)]
    hidden = [0]
    paths: list[BezierPath] = []
    skipped: dict[str, int] = {}

    def attr_offset(start, name):
        m = re.compile(rb"\s" + name.encode() + rb"\s*=\s*([\"'])").search(data, start)
        return m.end() if m else start

    def on_start(name, attrs):
        local = name.rsplit(":", 1)[-1].rsplit("}", 1)[-1]
        pos = parser.CurrentByteIndex
        M = stack[-1]
        if "transform" in attrs:
            M = M @ _parse_transform(attrs["transform"], attr_offset(pos, "transform"))
        stack.append(M)
        hide = hidden[-1] or local in _SKIP_CONTAINERS
        hidden.append(hide)
        if local == "path" and not hide:
            d = attrs.get("d", "")
            for sub in parse_path_data(d.encode(), attr_offset(pos, "d")):
                segs = []
                for b in sub:
                    xy = b @ M[:2, :2].T + M[:2, 2]
                    xy[:, 1] = -xy[:, 1]
                    segs.append(RationalBezierSegment(xy))
                paths.append(BezierPath(tuple(segs)))
        elif local not in _TRANSPARENT and not (local in _SKIP_CONTAINERS and not hidden[-2]):
            skipped[local] = skipped.get(local, 0) + 1

    def on_end(name):
        stack.pop()
        hidden.pop()

    parser.StartElementHandler = on_start
    parser.EndElementHandler = on_end
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        raise SvgParseError(f"malformed XML: {xml.parsers.expat.ErrorString(exc.code)}", parser.ErrorByteIndex) from None
    return SvgDocument(paths, skipped)


def parse_svg(data: bytes | str) -> list[BezierPath]:
    return parse_svg_document(data).paths


def normalize_unit_square(paths, *, return_transform=False):
    """Uniform scale and shift of the control-point box into the unit square.

    The longer side spans [0, 1]; the shorter one is centred.  With
    ``return_transform`` also returns ``(scale, offset)`` so query points can be
    mapped as ``x * scale + offset``.
    """
    paths = list(paths)
    if not paths:
        raise DomainError("no geometry to normalize")
    pts = np.vstack([s.control_points for p in paths for s in p.segments])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    ext = hi - lo
    if not np.all(np.isfinite(ext)) or ext.max() <= 0:
        raise DomainError("geometry has zero extent")
    scale = 1.0 / ext.max()
    offset = -lo * scale + (1.0 - ext * scale) / 2
    out = [p.map_points(lambda x: x * scale + offset) for p in paths]
    return (out, (scale, offset)) if return_transform else out


# --------------------------------------------------------------------------
# JSON loop sets

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
LOOPSET_SCHEMA = {
    "type": "object",
    "required": ["topology", "loops"],
    "additionalProperties": False,
    "properties": {
        "topology": {"enum": ["none", "uni", "bi"]},
        "name": {"type": "string"},
        "loops": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["segments"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "homology": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
                    "segments": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["points"],
                            "additionalProperties": False,
                            "properties": {
                                "points": {"type": "array", "items": _POINT, "minItems": 2},
                                "weights": {
                                    "type": "array",
                                    "items": {"type": "number", "exclusiveMinimum": 0},
                                },
                            },
                        },
                    },
                },
            },
        },
    },
}


@dataclass
class LoopSetDocument:
    topology: DomainTopology
    loops: list[BezierPath]
    name: str | None = None
    declared: list[tuple[int, int] | None] = field(default_factory=list)


def unwrap(loop: BezierPath, topology) -> BezierPath:
    """Make a loop continuous in covering space.

    At every junction the next segment is moved by the lattice translate that
    brings its start nearest to the previous end (jumps of half a period or
    more); already-continuous loops are returned unchanged.
    """
    axes = DomainTopology.parse(topology).periodic_axes
    if not axes:
        return loop
    segs = [loop.segments[0]]
    changed = False
    for s in loop.segments[1:]:
        gap = np.subtract(segs[-1].end, s.start)
        shift = np.zeros(2)
        for ax in axes:
            shift[ax] = math.copysign(math.floor(abs(gap[ax]) + 0.5), gap[ax])
        if shift.any():
            s = s.translated(shift)
            changed = True
        segs.append(s)
    return BezierPath(tuple(segs), loop.continuity_tol) if changed else loop


def _decode(data):
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"loop set is not UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def read_loopset(data) -> LoopSetDocument:
    """Parse and schema-check a loop-set document, unwrapping periodic coordinates."""
    doc = _decode(data) if not isinstance(data, dict) else data
    try:
        jsonschema.validate(doc, LOOPSET_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise FormatError(f"schema violation at {where}: {exc.message}") from None
    topology = DomainTopology.parse(doc["topology"])
    loops, declared = [], []
    for li, lp in enumerate(doc["loops"]):
        segs = []
        for si, s in enumerate(lp["segments"]):
            w = s.get("weights")
            if w is not None and len(w) != len(s["points"]):
                raise FormatError(f"loop {li} segment {si}: {len(w)} weights for {len(s['points'])} points")
            try:
                segs.append(RationalBezierSegment(np.array(s["points"], dtype=float), w))
            except (ValueError, DomainError) as exc:
                raise FormatError(f"loop {li} segment {si}: {exc}") from None
        loops.append(unwrap(BezierPath(tuple(segs)), topology))
        declared.append(tuple(lp["homology"]) if "homology" in lp else None)
    return LoopSetDocument(topology, loops, doc.get("name"), declared)


def _check_declared(doc: LoopSetDocument):
    for i, (loop, dec) in enumerate(zip(doc.loops, doc.declared)):
        if dec is None:
            continue
        got = homology_class(loop, doc.topology).vector
        if tuple(dec) != got:
            raise ValidityError(f"loop {i} declares class {tuple(dec)} but its endpoints give {got}", rule="declared-class")


def load_loopset(data, eps: float = DEFAULT_EPS) -> LoopSet:
    doc = read_loopset(data)
    _check_declared(doc)
    return LoopSet.build(doc.loops, doc.topology, eps)


def load_region(data, eps: float = DEFAULT_EPS, rule=Rule.NONZERO) -> TrimmedRegion:
    """Parse, unwrap, classify, validate and pair: a ready-to-query region."""
    return TrimmedRegion(load_loopset(data, eps), eps, Rule(rule))


def dump_loopset(obj, name: str | None = None, indent=None) -> str:
    """Serialize a region, loop set or document; floats use their shortest exact repr."""
    if isinstance(obj, TrimmedRegion):
        obj = obj.loop_set
    if isinstance(obj, LoopSetDocument):
        topology, loops, name = obj.topology, obj.loops, name or obj.name
    else:
        topology, loops = obj.topology, obj.loops
    out = {"topology": topology.kind.value}
    if name is not None:
        out["name"] = name
    out["loops"] = []
    for loop in loops:
        segs = []
        for s in loop.segments:
            e = {"points": s.control_points.tolist()}
            if s.weights is not None:
                e["weights"] = s.weights.tolist()
            segs.append(e)
        out["loops"].append({"segments": segs})
    return json.dumps(out, indent=indent)

