"""Formats: DIMACS CNF parsing, instance/trace JSON documents, SVG render.

Rationals cross every format as integer numerator/denominator pairs;
decimals appear only in SVG output, where drawing is approximate by design
but the byte stream stays deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Optional

from .cnf import CnfError, CnfFormula
from .folding import FoldMode, FoldMove, FoldState, Instance
from .geometry import Line, Point, Segment, Side, _norm
from .layout import Layout, ZoneRect

INSTANCE_FORMAT = "segfold-instance"
TRACE_FORMAT = "segfold-trace"
FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------- DIMACS

def parse_dimacs(text: str) -> CnfFormula:
    num_vars: Optional[int] = None
    num_clauses: Optional[int] = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise FormatError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: malformed header counts")
            if num_vars < 0 or num_clauses < 0:
                raise FormatError(f"line {lineno}: negative header counts")
            continue
        if num_vars is None:
            raise FormatError(f"line {lineno}: clause before 'p cnf' header")
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer token")
        for lit in lits:
            if lit == 0:
                _push_clause(pending, clauses, num_vars, lineno)
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise FormatError("last clause missing its 0 terminator")
    if num_vars is None:
        raise FormatError("missing 'p cnf' header")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise FormatError(f"header promises {num_clauses} clauses, found {len(clauses)}")
    try:
        return CnfFormula.of(num_vars, clauses)
    except CnfError as e:
        raise FormatError(str(e))


def _push_clause(pending: list[int], clauses: list, num_vars: int, lineno: int):
    if not pending:
        raise FormatError(f"line {lineno}: empty clause")
    if len(pending) > 3:
        raise FormatError(f"line {lineno}: clause longer than 3 literals")
    for lit in pending:
        if abs(lit) > num_vars:
            raise FormatError(f"line {lineno}: literal {lit} out of range")
    clauses.append(tuple(pending))


def print_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    for cl in f.clauses:
        lines.append(" ".join(str(l) for l in cl) + " 0")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- documents

def _num_pair(v) -> tuple[int, int]:
    fv = Fraction(v)
    return fv.numerator, fv.denominator

def _from_pair(num: int, den: int):
    if den == 0:
        raise FormatError("zero denominator")
    return _norm(Fraction(num, den))


def write_instance(inst: Instance, layout: Optional[Layout] = None) -> dict:
    doc = {
        "format": INSTANCE_FORMAT,
        "version": FORMAT_VERSION,
        "segments": [
            [sid, *_num_pair(s.p.x), *_num_pair(s.p.y), *_num_pair(s.q.x), *_num_pair(s.q.y)]
            for sid, s in inst.segments
        ],
    }
    if inst.roles:
        doc["roles"] = {str(sid): role for sid, role in sorted(inst.roles.items())}
    if layout is not None:
        doc["layout"] = {
            "gamma_x": _num_pair(0),
            "kappa1_y": _num_pair(layout.kappa1),
            "kappa2_y": _num_pair(layout.kappa2),
            "w_g": layout.params.w_g,
            "h_c_units": _num_pair(layout.params.h_c_units),
            "num_vars": layout.num_vars,
            "num_clauses": layout.num_clauses,
            "zones": [
                [z.kind, z.clause, *_num_pair(z.x_lo), *_num_pair(z.x_hi), *_num_pair(z.y_lo), *_num_pair(z.y_hi)]
                for z in layout.zones
            ],
        }
    return doc


def read_instance(doc: dict) -> Instance:
    if doc.get("format") != INSTANCE_FORMAT:
        raise FormatError("not an instance document")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported version {doc.get('version')!r}")
    segments = []
    for row in doc["segments"]:
        if len(row) != 9:
            raise FormatError(f"segment row must have 9 fields: {row}")
        sid = row[0]
        px, py, qx, qy = (
            _from_pair(row[1], row[2]),
            _from_pair(row[3], row[4]),
            _from_pair(row[5], row[6]),
            _from_pair(row[7], row[8]),
        )
        segments.append((sid, Segment(Point(px, py), Point(qx, qy))))
    roles = {int(k): v for k, v in doc.get("roles", {}).items()}
    return Instance(tuple(segments), roles)


def write_trace(moves: Iterable[FoldMove], mode: FoldMode) -> dict:
    return {
        "format": TRACE_FORMAT,
        "version": FORMAT_VERSION,
        "mode": mode.value,
        "moves": [[mv.line.a, mv.line.b, mv.line.c, mv.reflected_side.name.lower()] for mv in moves],
    }


def read_trace(doc: dict) -> tuple[list[FoldMove], FoldMode]:
    if doc.get("format") != TRACE_FORMAT:
        raise FormatError("not a trace document")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported version {doc.get('version')!r}")
    try:
        mode = FoldMode(doc["mode"])
    except (KeyError, ValueError):
        raise FormatError("bad or missing mode")
    moves = []
    for row in doc["moves"]:
        a, b, c, side = row
        if side not in ("left", "right"):
            raise FormatError(f"bad side {side!r}")
        moves.append(FoldMove(Line(int(a), int(b), int(c)), Side.LEFT if side == "left" else Side.RIGHT))
    return moves, mode


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


# ------------------------------------------------------------------ SVG

_ROLE_COLORS = (
    ("t_h", "#7a4dd8"), ("f_h", "#b04dd8"),
    ("t_b", "#2f7de1"), ("f_b", "#d8754d"),
    (".t", "#1a9850"), (".f", "#d73027"),
    ("b_z", "#555555"), (".b1", "#2f7de1"), (".b2", "#2f7de1"), (".b3", "#2f7de1"),
    (".c1", "#e08214"), (".c2", "#e08214"), (".c3", "#e08214"), (".c4", "#e08214"),
    (".z", "#1f78b4"), (".b", "#6a3d9a"),
)
_GOOD_FILL = "#ccebc5"
_BAD_FILL = "#fbb4ae"


def _fmt(v) -> str:
    """Fixed 6-decimal rendering computed exactly from the rational value."""
    fv = Fraction(v)
    scaled = fv * 10**6
    n = scaled.numerator // scaled.denominator  # floor
    if scaled != n and fv < 0:
        n += 1  # truncate toward zero for determinism
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10**6)
    return f"{sign}{whole}.{frac:06d}".rstrip("0").rstrip(".") or "0"


def _color_for(role: Optional[str]) -> str:
    if role:
        for key, color in _ROLE_COLORS:
            if key in role:
                return color
    return "#333333"


def render_svg(
    state: "FoldState | Instance",
    zones: Iterable[ZoneRect] = (),
    roles: Optional[dict[int, str]] = None,
    show_zones: bool = True,
    stroke_width_frac: float = 0.004,
) -> str:
    segments = state.segments
    roles = roles or (dict(state.roles) if isinstance(state, Instance) else {})
    zones = list(zones) if show_zones else []
    xs: list = []
    ys: list = []
    for _, s in segments:
        xs.extend((s.p.x, s.q.x))
        ys.extend((s.p.y, s.q.y))
    for z in zones:
        xs.extend((z.x_lo, z.x_hi))
        ys.extend((z.y_lo, z.y_hi))
    if not xs:
        xs = [0, 1]
        ys = [0, 1]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span_x = hi_x - lo_x or 1
    span_y = hi_y - lo_y or 1
    pad_x = Fraction(span_x, 20)
    pad_y = Fraction(span_y, 20)
    lo_x, hi_x = lo_x - pad_x, hi_x + pad_x
    lo_y, hi_y = lo_y - pad_y, hi_y + pad_y
    width = hi_x - lo_x
    height = hi_y - lo_y
    stroke = Fraction(max(width, height)) * Fraction(stroke_width_frac).limit_denominator(10**6)

    def sx(v):
        return _fmt(v)

    def sy(v):
        # Flip so larger y is drawn higher.
        return _fmt(hi_y - (Fraction(v) - Fraction(lo_y)))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(lo_x)} {_fmt(lo_y)} {_fmt(width)} {_fmt(height)}">',
    ]
    for z in sorted(zones, key=lambda z: (z.clause, z.kind)):
        fill = _GOOD_FILL if z.kind == "good" else _BAD_FILL
        x = _fmt(z.x_lo)
        y = sy(z.y_hi)
        w = _fmt(Fraction(z.x_hi) - Fraction(z.x_lo))
        h = _fmt(Fraction(z.y_hi) - Fraction(z.y_lo))
        out.append(
            f'<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" '
            f'fill-opacity="0.6" data-zone="{z.kind}" data-clause="{z.clause}"/>'
        )
    for sid, s in sorted(segments, key=lambda t: t[0]):
        role = roles.get(sid)
        attrs = f' data-role="{role}"' if role else ""
        out.append(
            f'<line x1="{sx(s.p.x)}" y1="{sy(s.p.y)}" x2="{sx(s.q.x)}" y2="{sy(s.q.y)}" '
            f'stroke="{_color_for(role)}" stroke-width="{_fmt(stroke)}" '
            f'stroke-linecap="round" data-id="{sid}"{attrs}/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
