"""Fold states and the all-layers simple fold.

A fold along a supporting line keeps one closed half-plane, reflects the
other open half-plane onto it, drops everything lying on the line itself
(those segments become creases), and merges collinear overlaps.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .geometry import (
    IntersectKind,
    Line,
    Point,
    Segment,
    Side,
    classify_intersection,
    clip_to_halfplane,
    line_crosses_interior,
    line_through,
    reflect_segment,
)


class FoldMode(enum.Enum):
    RESTRICTED = "restricted"
    UNRESTRICTED = "unrestricted"


@dataclass(frozen=True)
class FoldMove:
    line: Line
    reflected_side: Side

    def __post_init__(self):
        if self.reflected_side is Side.ON:
            raise ValueError("reflected_side must be LEFT or RIGHT")


@dataclass(frozen=True)
class Instance:
    """Input segment set with stable ids and optional role tags."""

    segments: tuple[tuple[int, Segment], ...]
    roles: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        ids = [i for i, _ in self.segments]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate segment ids")

    @staticmethod
    def from_segments(segments: Iterable[Segment], roles: Optional[Mapping[int, str]] = None) -> "Instance":
        return Instance(tuple(enumerate(segments)), dict(roles or {}))

    def __len__(self) -> int:
        return len(self.segments)


class IllegalKind(enum.Enum):
    NO_SEGMENT_ON_LINE = "no_segment_on_line"
    STABS_INTERIOR = "stabs_interior"
    CREATES_CROSSING = "creates_crossing"
    CREATES_OBLIQUE_CROSSING = "creates_oblique_crossing"


@dataclass(frozen=True)
class Illegality:
    kind: IllegalKind
    ids: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.ids:
            return f"{self.kind.value}({', '.join(map(str, self.ids))})"
        return self.kind.value


@dataclass(frozen=True)
class FoldState:
    segments: tuple[tuple[int, Segment], ...]
    history: tuple[FoldMove, ...] = ()
    provenance: Mapping[int, frozenset[int]] = field(default_factory=dict)
    next_id: int = 0

    @staticmethod
    def initial(inst: Instance) -> "FoldState":
        prov = {i: frozenset([i]) for i, _ in inst.segments}
        nxt = max((i for i, _ in inst.segments), default=-1) + 1
        return FoldState(tuple(inst.segments), (), prov, nxt)

    def geometry(self) -> tuple[Segment, ...]:
        return tuple(s for _, s in self.segments)

    def key(self) -> tuple:
        """Exact canonical geometry key (ids ignored) for transposition."""
        cached = self.__dict__.get("_key")
        if cached is None:
            cached = tuple(sorted(s.canonical() for _, s in self.segments))
            self.__dict__["_key"] = cached
        return cached

    def congruence_key(self) -> tuple:
        """Geometry key identifying translates and axis mirror images.

        Fold siblings along axis-parallel lines differ by exactly such an
        isometry, so this key lets the search table treat them as one state.
        (An optional optimization: solvability is isometry-invariant.)
        """
        cached = self.__dict__.get("_ckey")
        if cached is None:
            base = self.key()
            cached = min(
                _translate_normalize(variant)
                for variant in (
                    base,
                    _mirror(base, True, False),
                    _mirror(base, False, True),
                    _mirror(base, True, True),
                )
            )
            self.__dict__["_ckey"] = cached
        return cached

    def line_map(self) -> "dict[Line, tuple[int, ...]]":
        """Supporting line -> ids of segments on it (computed once)."""
        cached = self.__dict__.get("_line_map")
        if cached is None:
            acc: dict[Line, list[int]] = {}
            for sid, s in self.segments:
                acc.setdefault(line_through(s), []).append(sid)
            cached = {l: tuple(v) for l, v in acc.items()}
            self.__dict__["_line_map"] = cached
        return cached

    def __len__(self) -> int:
        return len(self.segments)


def _mirror(key: tuple, flip_x: bool, flip_y: bool) -> tuple:
    sx = -1 if flip_x else 1
    sy = -1 if flip_y else 1
    return tuple(
        sorted(
            Segment(Point(sx * s.p.x, sy * s.p.y), Point(sx * s.q.x, sy * s.q.y)).canonical()
            for s in key
        )
    )


def _translate_normalize(key: tuple) -> tuple:
    if not key:
        return key
    min_x = min(min(s.p.x, s.q.x) for s in key)
    min_y = min(min(s.p.y, s.q.y) for s in key)
    return tuple(
        sorted(
            Segment(
                Point(s.p.x - min_x, s.p.y - min_y), Point(s.q.x - min_x, s.q.y - min_y)
            ).canonical()
            for s in key
        )
    )


def fold_lines(state: FoldState) -> list[Line]:
    """Distinct canonical supporting lines of the current segments."""
    return list(state.line_map())


def is_solved(state: FoldState) -> bool:
    return not state.segments


def is_general_position(state: FoldState) -> bool:
    lines = fold_lines(state)
    return len(lines) == len(state.segments)


def _fold_geometry(
    segments: Sequence[tuple[int, Segment]],
    mv: FoldMove,
    provenance: Mapping[int, frozenset[int]],
    next_id: int,
) -> tuple[tuple[tuple[int, Segment], ...], dict[int, frozenset[int]], int]:
    """Core fold: clip, reflect, merge; returns (segments, provenance, next_id)."""
    kept_side = mv.reflected_side.opposite()
    pieces: list[tuple[Optional[int], Segment, frozenset[int]]] = []
    for sid, s in segments:
        src = provenance.get(sid, frozenset([sid]))
        kept = clip_to_halfplane(s, mv.line, kept_side)
        refl = clip_to_halfplane(s, mv.line, mv.reflected_side)
        if refl is not None:
            refl = reflect_segment(refl, mv.line).canonical()
        if kept is not None and refl is not None:
            pieces.append((None, kept, src))
            pieces.append((None, refl, src))
        elif kept is not None:
            keep_id = sid if kept == s else None
            pieces.append((keep_id, kept, src))
        elif refl is not None:
            # kept None + refl not None means s sat entirely on the reflected
            # side, so the reflected image is the whole segment: id survives.
            pieces.append((sid, refl, src))
        # else: the segment lay on the fold line; it is consumed.

    # Group collinear pieces and merge overlaps; merged groups get fresh ids.
    by_line: dict[Line, list[tuple[Optional[int], Segment, frozenset[int]]]] = {}
    for item in pieces:
        by_line.setdefault(line_through(item[1]), []).append(item)

    out: list[tuple[Optional[int], Segment, frozenset[int]]] = []
    for l in sorted(by_line):
        group = by_line[l]

        def key(p: Point):
            return -l.b * p.x + l.a * p.y

        intervals = sorted(
            ((min(key(s.p), key(s.q)), max(key(s.p), key(s.q)), i))
            for i, (_, s, _) in enumerate(group)
        )
        cluster: list[int] = []
        cur_hi = None
        lo_pt_hi_pt: list = []

        def flush():
            if not cluster:
                return
            if len(cluster) == 1:
                out.append(group[cluster[0]])
            else:
                members = [group[i] for i in cluster]
                pts = [p for _, s, _ in members for p in (s.p, s.q)]
                lo = min(pts, key=lambda p: (key(p), p))
                hi = max(pts, key=lambda p: (key(p), p))
                span = Segment(lo, hi) if lo <= hi else Segment(hi, lo)
                src = frozenset().union(*(m[2] for m in members))
                out.append((None, span, src))

        for lo, hi, idx in intervals:
            if cur_hi is None or lo >= cur_hi:
                flush()
                cluster = [idx]
                cur_hi = hi
            else:
                cluster.append(idx)
                if hi > cur_hi:
                    cur_hi = hi
        flush()

    new_segments: list[tuple[int, Segment]] = []
    new_prov: dict[int, frozenset[int]] = {}
    fresh = next_id
    for keep_id, s, src in out:
        sid = keep_id
        if sid is None:
            sid = fresh
            fresh += 1
        new_segments.append((sid, s))
        new_prov[sid] = src
    new_segments.sort(key=lambda t: t[0])
    return tuple(new_segments), new_prov, fresh


class CrossingPolicy(enum.Enum):
    """Which produced interior crossings make a restricted fold illegal.

    BAN_ALL follows the restricted problem statement (any produced interior
    crossing is illegal); BAN_OBLIQUE_ONLY permits right-angle crossings.
    """

    BAN_ALL = "ban_all"
    BAN_OBLIQUE_ONLY = "ban_oblique_only"


def check_legal(
    state: FoldState,
    mv: FoldMove,
    mode: FoldMode,
    policy: CrossingPolicy = CrossingPolicy.BAN_ALL,
) -> Optional[Illegality]:
    on_line = state.line_map().get(mv.line)
    if not on_line:
        return Illegality(IllegalKind.NO_SEGMENT_ON_LINE)
    if mode is FoldMode.UNRESTRICTED:
        return None
    on = set(on_line)
    for sid, s in state.segments:
        if sid in on:
            continue
        if line_crosses_interior(mv.line, s):
            return Illegality(IllegalKind.STABS_INTERIOR, (sid,))
    segs, _, _ = _fold_geometry(state.segments, mv, state.provenance, state.next_id)
    return _crossing_in(segs, policy)


def _crossing_in(
    segments: Sequence[tuple[int, Segment]], policy: CrossingPolicy
) -> Optional[Illegality]:
    items = sorted(segments, key=lambda t: t[0])
    n = len(items)
    for i in range(n):
        sid_i, si = items[i]
        for j in range(i + 1, n):
            sid_j, sj = items[j]
            kind = classify_intersection(si, sj)
            if kind is IntersectKind.INTERIOR_CROSS_OBLIQUE:
                return Illegality(IllegalKind.CREATES_OBLIQUE_CROSSING, (sid_i, sid_j))
            if kind is IntersectKind.INTERIOR_CROSS_RIGHT and policy is CrossingPolicy.BAN_ALL:
                return Illegality(IllegalKind.CREATES_CROSSING, (sid_i, sid_j))
    return None


def apply_fold(
    state: FoldState,
    mv: FoldMove,
    mode: FoldMode,
    policy: CrossingPolicy = CrossingPolicy.BAN_ALL,
) -> FoldState:
    problem = check_legal(state, mv, mode, policy)
    if problem is not None:
        raise IllegalFoldError(problem)
    segs, prov, nxt = _fold_geometry(state.segments, mv, state.provenance, state.next_id)
    return FoldState(segs, state.history + (mv,), prov, nxt)


class IllegalFoldError(ValueError):
    def __init__(self, problem: Illegality):
        super().__init__(str(problem))
        self.problem = problem


def legal_moves(
    state: FoldState,
    mode: FoldMode,
    policy: CrossingPolicy = CrossingPolicy.BAN_ALL,
) -> list[FoldMove]:
    out = []
    for l in fold_lines(state):
        # Left/Right reflections of one line produce mirror-image states, so
        # a single legality check covers both sides.
        if check_legal(state, FoldMove(l, Side.RIGHT), mode, policy) is None:
            out.append(FoldMove(l, Side.LEFT))
            out.append(FoldMove(l, Side.RIGHT))
    return out


def legal_lines(
    state: FoldState,
    mode: FoldMode,
    policy: CrossingPolicy = CrossingPolicy.BAN_ALL,
) -> list[Line]:
    """Lines with at least one legal move; Left/Right are equi-legal."""
    out = []
    for l in fold_lines(state):
        if check_legal(state, FoldMove(l, Side.RIGHT), mode, policy) is None:
            out.append(l)
    return out
