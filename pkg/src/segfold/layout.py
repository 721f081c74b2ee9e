"""CNF-to-segments compiler: variable, literal, and clause gadgets.

Global frame: the vertical reference line gamma is x = 0, the horizontal
baseline kappa2 is y = 0, and kappa1 sits 2*m*h_c above it. Variable
gadgets are stacked below kappa2 and to the left of gamma, literal
segments hang above kappa1 inside each variable's literal strip, and
clause gadgets tile the band between the kappas to the right of gamma,
stepping down and right.

All offsets are expressed in grid units of w_g and scaled exactly; with
w_g = 400 every emitted coordinate is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cnf import NormalizedFormula
from .folding import FoldMove, Instance
from .geometry import Line, Point, Segment, _norm

U = Fraction  # unit amounts in multiples of w_g

H_C_TALL = Fraction(59, 2)
H_C_SHORT = Fraction(25, 2)

# Variable-gadget layout table, in w_g units.
# du = horizontal offset measured leftward from the gadget's t segment
# (W stands for w_C/w_g); v = height above the gadget's base band.
_VERTICALS = {
    # role: (du_const, du_W_coeff, v_lo, v_hi)
    "t": (U(0), 0, U(10), U(30)),
    "b1": (U(1), 0, U("3.25"), U(7)),
    "f": (U(2), 0, U(2), U(22)),
    "t_h": (U(14), 1, U(11), U(26)),
    "f_h": (U(15), 1, U(3), U(9)),
    "b2": (U(100), 5, U("3.5"), U(5)),
}
_HORIZONTALS = {
    # role: (v, du_lo_const, du_lo_W, du_hi_const, du_hi_W)
    "t_b1": (U(29), U("13.6"), 1, U("14.4"), 1),
    "f_b1": (U("2.5"), U("14.6"), 1, U("15.4"), 1),
    "t_b2": (U(25), U("-2.4"), 0, U("-0.6"), 0),
    "f_b2": (U("8.5"), U("2.6"), 0, U("4.4"), 0),
    "t_b3": (U(24), U("0.6"), 0, U("1.4"), 0),
    "f_b3": (U(8), U("0.55"), 0, U("1.45"), 0),
    "b3": (U(4), U("100.5"), 5, U("100.5"), 15),
}
H_X_UNITS = U(30)  # variable-gadget band height

# Clause-gadget members, relative to (left edge, top), x right / y down.
_CLAUSE_C1 = ((U("4.5"), U(4)), (U(6), U("2.5")))
_CLAUSE_C2_X, _CLAUSE_C2_RY = U("8.125"), (U(0), U("2.5"))
_CLAUSE_C3_RY, _CLAUSE_C3_RX = U(5), (U(7), U("8.6"))
_CLAUSE_C4_X, _CLAUSE_C4_RY = U(5), (U("5.5"), U("12.5"))
_CLAUSE_B_RY, _CLAUSE_B_RX = U("0.25"), (U(-9), U(3))
GOOD_ZONE = (U(6), U(7))  # open interval, relative to the gadget's left edge
BAD_ZONE = (U(1), U(3))


class LayoutError(ValueError):
    pass


@dataclass(frozen=True)
class LayoutParams:
    w_g: int = 400
    h_c_units: Fraction = H_C_TALL

    def __post_init__(self):
        if self.w_g <= 0 or self.w_g % 100 != 0:
            raise LayoutError("w_g must be a positive multiple of 100")
        if self.h_c_units not in (H_C_TALL, H_C_SHORT):
            raise LayoutError("h_c_units must be 59/2 or 25/2")

    @property
    def w_c(self):
        return 9 * self.w_g

    @property
    def d_x(self):
        return 10 * self.w_g

    @property
    def delta(self):
        return self.w_g // 100

    @property
    def h_x(self):
        return H_X_UNITS * self.w_g

    @property
    def h_c(self):
        return self.h_c_units * self.w_g

    def scale(self, units) -> "int | Fraction":
        return _norm(Fraction(units) * self.w_g)


@dataclass(frozen=True)
class ZoneRect:
    x_lo: "int | Fraction"
    x_hi: "int | Fraction"
    y_lo: "int | Fraction"
    y_hi: "int | Fraction"
    kind: str  # "good" | "bad"
    clause: int


@dataclass(frozen=True)
class Layout:
    """Compiled instance plus the anchor metadata tests and rendering use."""

    instance: Instance
    roles: dict[int, str]
    params: LayoutParams
    num_vars: int
    num_clauses: int
    w_C: "int | Fraction"
    kappa1: "int | Fraction"
    kappa2: int
    zones: tuple[ZoneRect, ...]

    def id_of(self, role: str) -> int:
        for sid, r in self.roles.items():
            if r == role:
                return sid
        raise KeyError(role)

    def ids_with_suffix(self, suffix: str) -> list[int]:
        return sorted(sid for sid, r in self.roles.items() if r.endswith(suffix))


def variable_role(i: int, part: str) -> str:
    return f"x{i}.{part}"

def literal_role(i: int, j: int, part: str) -> str:
    return f"z{i}.{j}.{part}"

def clause_role(j: int, part: str) -> str:
    return f"c{j}.{part}"


def _effective_w_C(params: LayoutParams, m: int):
    # With no clauses the literal strip would collapse and b3 would be
    # degenerate; fall back to the three-clause width, which also keeps the
    # early-b2 crossing guard active on the isolated gadget.
    if m == 0:
        return 3 * params.w_c
    return m * params.w_c


def t_offset_from_gamma(params: LayoutParams, i: int, w_C) -> "int | Fraction":
    return params.d_x + (i - 1) * (15 * params.d_x + 6 * params.w_g + 6 * w_C)


def compile_formula(f: NormalizedFormula, params: Optional[LayoutParams] = None) -> Layout:
    params = params or LayoutParams()
    n = f.num_vars
    m = len(f.clauses)
    w_C = _effective_w_C(params, m)
    W_units = Fraction(w_C, params.w_g)
    kappa1 = _norm(2 * m * params.h_c)

    segments: list[tuple[int, Segment]] = []
    roles: dict[int, str] = {}

    def emit(seg: Segment, role: str):
        sid = len(segments)
        segments.append((sid, seg))
        roles[sid] = role

    wg = params.w_g

    def base_y(i: int):
        # Top of t in S(x_i) sits ((n - i) * 8 + 7) * h_x below kappa2.
        top_t = -((n - i) * 8 + 7) * params.h_x
        return top_t - _VERTICALS["t"][3] * wg

    for i in range(1, n + 1):
        tx = t_offset_from_gamma(params, i, w_C)
        base = base_y(i)
        for part, (duc, duw, vlo, vhi) in _VERTICALS.items():
            du = (duc + duw * W_units) * wg
            x = _norm(-(tx + du))
            emit(
                Segment(Point(x, _norm(base + vlo * wg)), Point(x, _norm(base + vhi * wg))),
                variable_role(i, part),
            )
        for part, (v, loc, low, hic, hiw) in _HORIZONTALS.items():
            y = _norm(base + v * wg)
            u_lo = (loc + low * W_units) * wg
            u_hi = (hic + hiw * W_units) * wg
            # Larger leftward offset means smaller x.
            emit(
                Segment(Point(_norm(-(tx + u_hi)), y), Point(_norm(-(tx + u_lo)), y)),
                variable_role(i, part),
            )

    # Literal gadgets: one vertical segment and one tiny horizontal blocker
    # per occurrence, placed above kappa1 inside the variable's strip.
    for j, clause in enumerate(f.clauses, start=1):
        ranks = _index_ranks(clause)
        for lit in clause:
            i = abs(lit)
            positive = lit > 0
            tx = t_offset_from_gamma(params, i, w_C)
            base_off = (U("16.25") if positive else U("20.75")) + 9 * (j - 1)
            du = base_off * wg + ranks[i] * params.delta
            zx = _norm(-(tx + du))
            z_lo = _norm(kappa1 + wg)
            length = (2 * j) * wg if positive else (2 * j + 1) * wg
            z_hi = _norm(z_lo + length)
            emit(Segment(Point(zx, z_lo), Point(zx, z_hi)), literal_role(i, j, "z"))
            by = _norm(z_hi + Fraction(wg, 2) + ranks[i] * params.delta)
            half = Fraction(wg, 200)
            emit(
                Segment(Point(_norm(zx - half), by), Point(_norm(zx + half), by)),
                literal_role(i, j, "b"),
            )

    # Clause gadgets tile down-right between the kappas.
    zones: list[ZoneRect] = []
    for j in range(1, m + 1):
        left = 9 * (j - 1) * wg
        top = _norm((2 * (m - j) + 1) * params.h_c)

        def at(rx, ry):
            return Point(_norm(left + rx * wg), _norm(top - ry * wg))

        (a_rx, a_ry), (b_rx, b_ry) = _CLAUSE_C1
        emit(Segment(at(a_rx, a_ry), at(b_rx, b_ry)), clause_role(j, "c1"))
        emit(Segment(at(_CLAUSE_C2_X, _CLAUSE_C2_RY[1]), at(_CLAUSE_C2_X, _CLAUSE_C2_RY[0])), clause_role(j, "c2"))
        emit(Segment(at(_CLAUSE_C3_RX[0], _CLAUSE_C3_RY), at(_CLAUSE_C3_RX[1], _CLAUSE_C3_RY)), clause_role(j, "c3"))
        emit(Segment(at(_CLAUSE_C4_X, _CLAUSE_C4_RY[1]), at(_CLAUSE_C4_X, _CLAUSE_C4_RY[0])), clause_role(j, "c4"))
        if j >= 2:
            emit(Segment(at(_CLAUSE_B_RX[0], _CLAUSE_B_RY), at(_CLAUSE_B_RX[1], _CLAUSE_B_RY)), clause_role(j, "b"))
        for kind, (z_lo, z_hi) in (("good", GOOD_ZONE), ("bad", BAD_ZONE)):
            zones.append(
                ZoneRect(
                    _norm(left + z_lo * wg),
                    _norm(left + z_hi * wg),
                    _norm(top - params.h_c),
                    top,
                    kind,
                    j,
                )
            )

    if m >= 1:
        tx_n = t_offset_from_gamma(params, n, w_C)
        bz_x = _norm(-(tx_n + 11 * params.d_x + 5 * w_C))
        height = _norm((2 * m - 1) * params.h_c_units * (3 * m + 1) * wg)
        emit(Segment(Point(bz_x, 0), Point(bz_x, height)), "b_z")

    inst = Instance(tuple(segments), dict(roles))
    return Layout(
        instance=inst,
        roles=roles,
        params=params,
        num_vars=n,
        num_clauses=m,
        w_C=w_C,
        kappa1=kappa1,
        kappa2=0,
        zones=tuple(zones),
    )


def _index_ranks(clause) -> dict[int, int]:
    """Map variable index -> -1/0/+1 by rank within the clause (for deltas)."""
    ordered = sorted(abs(l) for l in clause)
    ranks: dict[int, int] = {}
    if len(ordered) == 1:
        ranks[ordered[0]] = 0
    elif len(ordered) == 2:
        ranks[ordered[0]] = -1
        ranks[ordered[1]] = 1
    else:
        ranks[ordered[0]] = -1
        ranks[ordered[1]] = 0
        ranks[ordered[2]] = 1
    return ranks


def fold_budget(inst: Instance) -> int:
    return len(inst)


def isolated_variable_gadget(params: Optional[LayoutParams] = None) -> Layout:
    """A single compiled variable gadget (no clauses, no literals)."""
    return compile_formula(NormalizedFormula(1, ()), params)


def isolated_clause_gadget(
    aux_offset_units, params: Optional[LayoutParams] = None, with_blocker: bool = True
) -> Layout:
    """One clause gadget plus an auxiliary vertical whose line sits at the
    given offset (in w_g units) right of the gadget's left edge."""
    params = params or LayoutParams()
    wg = params.w_g
    top = _norm(params.h_c)
    left = 0
    segments: list[tuple[int, Segment]] = []
    roles: dict[int, str] = {}

    def emit(seg: Segment, role: str):
        sid = len(segments)
        segments.append((sid, seg))
        roles[sid] = role

    def at(rx, ry):
        return Point(_norm(left + rx * wg), _norm(top - ry * wg))

    (a_rx, a_ry), (b_rx, b_ry) = _CLAUSE_C1
    emit(Segment(at(a_rx, a_ry), at(b_rx, b_ry)), clause_role(1, "c1"))
    emit(Segment(at(_CLAUSE_C2_X, _CLAUSE_C2_RY[1]), at(_CLAUSE_C2_X, _CLAUSE_C2_RY[0])), clause_role(1, "c2"))
    emit(Segment(at(_CLAUSE_C3_RX[0], _CLAUSE_C3_RY), at(_CLAUSE_C3_RX[1], _CLAUSE_C3_RY)), clause_role(1, "c3"))
    emit(Segment(at(_CLAUSE_C4_X, _CLAUSE_C4_RY[1]), at(_CLAUSE_C4_X, _CLAUSE_C4_RY[0])), clause_role(1, "c4"))
    if with_blocker:
        emit(Segment(at(_CLAUSE_B_RX[0], _CLAUSE_B_RY), at(_CLAUSE_B_RX[1], _CLAUSE_B_RY)), clause_role(1, "b"))
    ax = _norm(left + Fraction(aux_offset_units) * wg)
    emit(Segment(Point(ax, _norm(top + 2 * wg)), Point(ax, _norm(top + 4 * wg))), "aux")

    zones = tuple(
        ZoneRect(_norm(left + lo * wg), _norm(left + hi * wg), _norm(top - params.h_c), top, kind, 1)
        for kind, (lo, hi) in (("good", GOOD_ZONE), ("bad", BAD_ZONE))
    )
    return Layout(
        instance=Instance(tuple(segments), dict(roles)),
        roles=roles,
        params=params,
        num_vars=0,
        num_clauses=1,
        w_C=params.w_c,
        kappa1=_norm(2 * params.h_c),
        kappa2=0,
        zones=zones,
    )


def track_x(moves, x0):
    """Image of the vertical line x = x0 under a sequence of fold moves.

    Only vertical and horizontal fold lines are supported (vertical strips
    stay vertical under those).
    """
    x = x0
    for mv in moves:
        l: Line = mv.line
        if l.a == 0:
            continue  # horizontal fold: x coordinates unchanged
        if l.b != 0:
            raise ValueError("track_x only supports axis-parallel fold lines")
        # Canonical a > 0: positive side (RIGHT) is x > c/a.
        boundary = Fraction(l.c, l.a)
        diff = x - boundary
        if diff == 0:
            continue
        on_right = diff > 0
        if (mv.reflected_side.name == "RIGHT") == on_right:
            x = _norm(2 * boundary - x)
    return x
