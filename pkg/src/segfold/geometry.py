"""Exact rational planar geometry kernel.

Every coordinate is a Python int or fractions.Fraction; there is no floating
point anywhere in this module. Lines are stored with canonical integer
coefficients so that "same supporting line" is a plain equality test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

# Rational coordinates: ints are kept as ints (exact, and much faster);
# Fraction appears only when a value is genuinely non-integral.
Rational = Fraction
Coord = "int | Fraction"


def _ratio(num, den):
    """Exact num/den that stays an int whenever the division is exact."""
    if den < 0:
        num, den = -num, -den
    if isinstance(num, int) and isinstance(den, int):
        q, r = divmod(num, den)
        if r == 0:
            return q
    return Fraction(num, den)


def _norm(v):
    """Collapse integral Fractions to int so equal values compare fast."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


@dataclass(frozen=True, order=True)
class Point:
    x: "int | Fraction"
    y: "int | Fraction"

    def __iter__(self):
        return iter((self.x, self.y))


class Side(enum.Enum):
    LEFT = -1
    ON = 0
    RIGHT = 1

    def opposite(self) -> "Side":
        if self is Side.LEFT:
            return Side.RIGHT
        if self is Side.RIGHT:
            return Side.LEFT
        return Side.ON


@dataclass(frozen=True, order=True)
class Line:
    """a*x + b*y = c with integer coefficients, gcd 1, and a > 0 or (a == 0, b > 0).

    With this sign convention the positive side (a*x + b*y - c > 0) is the
    open half-plane containing points of arbitrarily large x (or, for
    horizontal lines, large y): the "right" half-plane.
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ValueError("degenerate line")

    def eval_at(self, p: Point):
        return self.a * p.x + self.b * p.y - self.c


def canonical_line(a, b, c) -> Line:
    """Canonicalize possibly-rational coefficients to the Line invariant."""
    if isinstance(a, int) and isinstance(b, int) and isinstance(c, int):
        ia, ib, ic = a, b, c
    else:
        fa, fb, fc = Fraction(a), Fraction(b), Fraction(c)
        scale = _lcm3(fa.denominator, fb.denominator, fc.denominator)
        ia, ib, ic = int(fa * scale), int(fb * scale), int(fc * scale)
    if ia == 0 and ib == 0:
        raise ValueError("degenerate line")
    g = gcd(gcd(abs(ia), abs(ib)), abs(ic))
    if g > 1:
        ia, ib, ic = ia // g, ib // g, ic // g
    if ia < 0 or (ia == 0 and ib < 0):
        ia, ib, ic = -ia, -ib, -ic
    return Line(ia, ib, ic)


def _lcm3(a: int, b: int, c: int) -> int:
    ab = a * b // gcd(a, b)
    return ab * c // gcd(ab, c)


@dataclass(frozen=True, order=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("degenerate segment")

    def canonical(self) -> "Segment":
        """Endpoint-ordered copy so congruent segments compare equal."""
        return self if self.p <= self.q else Segment(self.q, self.p)

    def direction(self):
        return (self.q.x - self.p.x, self.q.y - self.p.y)


def seg(px, py, qx, qy) -> Segment:
    return Segment(Point(_norm(px), _norm(py)), Point(_norm(qx), _norm(qy)))


_line_cache: dict = {}


def line_through(s: Segment) -> Line:
    cached = _line_cache.get(s)
    if cached is not None:
        return cached
    dx = s.q.x - s.p.x
    dy = s.q.y - s.p.y
    # a*x + b*y = c with (a, b) normal to the direction.
    line = canonical_line(dy, -dx, dy * s.p.x - dx * s.p.y)
    if len(_line_cache) > 1_000_000:
        _line_cache.clear()
    _line_cache[s] = line
    return line


def side_of(p: Point, l: Line) -> Side:
    v = l.eval_at(p)
    if v > 0:
        return Side.RIGHT
    if v < 0:
        return Side.LEFT
    return Side.ON


def reflect_point(p: Point, l: Line) -> Point:
    # p' = p - 2(a*px + b*py - c) / (a^2 + b^2) * (a, b)
    v = l.eval_at(p)
    d = l.a * l.a + l.b * l.b
    k = _ratio(2 * v, d)
    return Point(_norm(p.x - k * l.a), _norm(p.y - k * l.b))


def reflect_segment(s: Segment, l: Line) -> Segment:
    return Segment(reflect_point(s.p, l), reflect_point(s.q, l))


class IntersectKind(enum.Enum):
    DISJOINT = "disjoint"
    ENDPOINT_TOUCH = "endpoint_touch"
    INTERIOR_CROSS_RIGHT = "interior_cross_right"
    INTERIOR_CROSS_OBLIQUE = "interior_cross_oblique"
    COLLINEAR_OVERLAP = "collinear_overlap"


def _cross(o: Point, a: Point, b: Point):
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _bbox_disjoint(s: Segment, t: Segment) -> bool:
    return (
        max(s.p.x, s.q.x) < min(t.p.x, t.q.x)
        or max(t.p.x, t.q.x) < min(s.p.x, s.q.x)
        or max(s.p.y, s.q.y) < min(t.p.y, t.q.y)
        or max(t.p.y, t.q.y) < min(s.p.y, s.q.y)
    )


def _contains_point(s: Segment, p: Point) -> bool:
    if _cross(s.p, s.q, p) != 0:
        return False
    return (
        min(s.p.x, s.q.x) <= p.x <= max(s.p.x, s.q.x)
        and min(s.p.y, s.q.y) <= p.y <= max(s.p.y, s.q.y)
    )


def classify_intersection(s: Segment, t: Segment) -> IntersectKind:
    if _bbox_disjoint(s, t):
        return IntersectKind.DISJOINT
    d1 = _cross(t.p, t.q, s.p)
    d2 = _cross(t.p, t.q, s.q)
    d3 = _cross(s.p, s.q, t.p)
    d4 = _cross(s.p, s.q, t.q)
    if d1 == 0 and d2 == 0:
        # Collinear: overlap in more than a point, touch, or disjoint.
        same_s = _overlap_1d(s, t)
        if same_s is None:
            return IntersectKind.DISJOINT
        return same_s
    if ((d1 > 0) != (d2 > 0) or 0 in (d1, d2)) and ((d3 > 0) != (d4 > 0) or 0 in (d3, d4)):
        # Some intersection exists; decide whether it is an interior cross.
        if d1 != 0 and d2 != 0 and (d1 > 0) != (d2 > 0) and d3 != 0 and d4 != 0 and (d3 > 0) != (d4 > 0):
            ds = s.direction()
            dt = t.direction()
            dot = ds[0] * dt[0] + ds[1] * dt[1]
            if dot == 0:
                return IntersectKind.INTERIOR_CROSS_RIGHT
            return IntersectKind.INTERIOR_CROSS_OBLIQUE
        # Touching configurations: an endpoint of one lies on the other.
        for ep in (s.p, s.q):
            if _contains_point(t, ep):
                return IntersectKind.ENDPOINT_TOUCH
        for ep in (t.p, t.q):
            if _contains_point(s, ep):
                return IntersectKind.ENDPOINT_TOUCH
        return IntersectKind.DISJOINT
    return IntersectKind.DISJOINT


def _overlap_1d(s: Segment, t: Segment) -> Optional[IntersectKind]:
    dx = s.q.x - s.p.x
    dy = s.q.y - s.p.y
    # Project on the dominant axis of s's direction.
    def key(p: Point):
        return p.x * dx + p.y * dy

    s_lo, s_hi = sorted((key(s.p), key(s.q)))
    t_lo, t_hi = sorted((key(t.p), key(t.q)))
    lo, hi = max(s_lo, t_lo), min(s_hi, t_hi)
    if lo > hi:
        return None
    if lo == hi:
        return IntersectKind.ENDPOINT_TOUCH
    return IntersectKind.COLLINEAR_OVERLAP


def segments_intersect(s: Segment, t: Segment) -> bool:
    return classify_intersection(s, t) is not IntersectKind.DISJOINT


def line_meets_segment(l: Line, t: Segment) -> bool:
    """True iff the infinite line shares at least one point with t."""
    vp = l.eval_at(t.p)
    vq = l.eval_at(t.q)
    return vp == 0 or vq == 0 or (vp > 0) != (vq > 0)


def line_crosses_interior(l: Line, t: Segment) -> bool:
    """True iff l meets t in a point interior to t (t not on l)."""
    vp = l.eval_at(t.p)
    vq = l.eval_at(t.q)
    return (vp > 0 and vq < 0) or (vp < 0 and vq > 0)


def stabs(s: Segment, t: Segment) -> bool:
    """s stabs t: the supporting line of s meets t while s and t are disjoint."""
    if s == t:
        raise ValueError("stabs requires distinct segments")
    if not line_meets_segment(line_through(s), t):
        return False
    return not segments_intersect(s, t)


def clip_to_halfplane(s: Segment, l: Line, side: Side) -> Optional[Segment]:
    """Portion of s in the closed half-plane on `side` of l.

    Returns None when the portion is empty, a single point, or when s lies
    entirely on l (the open-side intersection is empty and its closure is
    degenerate).
    """
    if side is Side.ON:
        raise ValueError("side must be LEFT or RIGHT")
    sign = 1 if side is Side.RIGHT else -1
    vp = l.eval_at(s.p) * sign
    vq = l.eval_at(s.q) * sign
    if vp == 0 and vq == 0:
        return None
    if vp >= 0 and vq >= 0:
        return s
    if vp <= 0 and vq <= 0:
        return None
    # Strictly straddles: one endpoint strictly positive, the other strictly negative.
    t = _ratio(vp, vp - vq)
    cut = Point(
        _norm(s.p.x + t * (s.q.x - s.p.x)),
        _norm(s.p.y + t * (s.q.y - s.p.y)),
    )
    keep = s.p if vp > 0 else s.q
    if keep == cut:
        return None
    return Segment(keep, cut) if keep <= cut else Segment(cut, keep)


def merge_collinear(segments: Iterable[Segment]) -> list[Segment]:
    """Merge collinear segments that share more than a point, to fixpoint.

    Endpoint-only touches are preserved as distinct segments.
    """
    by_line: dict[Line, list[Segment]] = {}
    for s in segments:
        by_line.setdefault(line_through(s), []).append(s)
    out: list[Segment] = []
    for l in sorted(by_line):
        group = by_line[l]
        # Parameterize along the line direction (-b, a).
        def key(p: Point):
            return -l.b * p.x + l.a * p.y

        intervals = sorted(
            (min(key(s.p), key(s.q)), max(key(s.p), key(s.q)), s) for s in group
        )
        cur_lo, cur_hi, cur = intervals[0]
        merged: list[Segment] = []
        for lo, hi, s in intervals[1:]:
            if lo < cur_hi:
                if hi > cur_hi:
                    cur_hi = hi
                    cur = _span(cur, s, l)
            else:
                merged.append(cur)
                cur_lo, cur_hi, cur = lo, hi, s
        merged.append(cur)
        out.extend(merged)
    return out


def _span(s: Segment, t: Segment, l: Line) -> Segment:
    """Smallest segment on l covering the collinear s and t."""
    def key(p: Point):
        return -l.b * p.x + l.a * p.y

    pts = [s.p, s.q, t.p, t.q]
    lo = min(pts, key=lambda p: (key(p), p))
    hi = max(pts, key=lambda p: (key(p), p))
    return Segment(lo, hi) if lo <= hi else Segment(hi, lo)


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Hull vertices in counterclockwise order; no three collinear vertices.

    Collinear input collapses to its two extreme points; a single point
    yields a one-element list.
    """
    pts = sorted(set(points))
    if not pts:
        raise ValueError("convex_hull of no points")
    if len(pts) == 1:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2 and len(pts) >= 2:
        # All points collinear: keep the two extremes.
        return [pts[0], pts[-1]]
    return hull


def hull_edges(hull: Sequence[Point]) -> list[Segment]:
    if len(hull) == 1:
        return []
    if len(hull) == 2:
        return [Segment(hull[0], hull[1])]
    return [Segment(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def on_hull_boundary(s: Segment, segments: Sequence[Segment]) -> bool:
    """True iff s lies on the boundary of the hull of all segment endpoints."""
    pts: list[Point] = []
    for t in segments:
        pts.append(t.p)
        pts.append(t.q)
    hull = convex_hull(pts)
    for e in hull_edges(hull):
        if _contains_point(e, s.p) and _contains_point(e, s.q):
            return True
    return False


def squared_distance(p: Point, q: Point):
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy
