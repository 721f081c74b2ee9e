"""Angle-perturbation bookkeeping for general-position arguments.

Each segment owns one group of (n+1) bits inside an n-group ledger, seeded
with the group's rightmost bit. Folding along a segment adds its own group
bits, shifted left once, into the same group of every reflected segment.
Within n folds the leading bit drifts at most n places, so a carry can
never escape its group; two segments can only become aligned after both
have taken part in a reflection. This module models only that bookkeeping;
it never computes perturbed coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .folding import Instance

NUM_DIRECTIONS = 8


class GroupOverflowError(RuntimeError):
    """A carry left its (n+1)-bit group: impossible within n folds."""


@dataclass(frozen=True)
class AngleCode:
    base_direction: int  # one of the 8 coarse directions
    ledger: tuple[int, ...]  # per-group bit vectors, each < 2**group_width
    owner_group: int

    def __post_init__(self):
        if not 0 <= self.base_direction < NUM_DIRECTIONS:
            raise ValueError("base_direction out of range")
        if not 0 <= self.owner_group < len(self.ledger):
            raise ValueError("owner_group out of range")

    @property
    def group_width(self) -> int:
        return len(self.ledger) + 1

    def group(self, idx: int) -> int:
        return self.ledger[idx]


def assign_codes(inst: Instance, directions: Mapping[int, int] | None = None) -> dict[int, AngleCode]:
    """Give each segment its own group with the rightmost bit set."""
    n = len(inst.segments)
    codes: dict[int, AngleCode] = {}
    for group, (sid, _seg) in enumerate(inst.segments):
        ledger = [0] * n
        ledger[group] = 1
        base = directions.get(sid, 0) if directions else 0
        codes[sid] = AngleCode(base, tuple(ledger), group)
    return codes


def fold_update(
    codes: Mapping[int, AngleCode],
    folded: int,
    reflected_ids: Iterable[int],
) -> dict[int, AngleCode]:
    """Ledger update for a fold along `folded` reflecting `reflected_ids`."""
    if folded not in codes:
        raise KeyError(f"no code for folded segment {folded}")
    src = codes[folded]
    g = src.owner_group
    shifted = src.ledger[g] << 1
    limit = 1 << (len(src.ledger) + 1)
    out = dict(codes)
    for rid in reflected_ids:
        code = codes[rid]
        if len(code.ledger) != len(src.ledger):
            raise ValueError("ledger sizes differ")
        total = code.ledger[g] + shifted
        if total >= limit:
            raise GroupOverflowError(
                f"group {g} of segment {rid} overflowed ({total:#x} >= {limit:#x})"
            )
        ledger = list(code.ledger)
        ledger[g] = total
        out[rid] = AngleCode(code.base_direction, tuple(ledger), code.owner_group)
    return out


def alignment_possible(a: AngleCode, b: AngleCode) -> bool:
    """Necessary condition for two segments to share a supporting line."""
    return a.base_direction == b.base_direction and a.ledger == b.ledger


@dataclass
class LedgerHistory:
    """Fold-by-fold trail of (folded owner group, code snapshot).

    Optimal sequences fold each segment once, so the trail is capped at the
    instance size.
    """

    capacity: int
    steps: list[tuple[int, dict[int, AngleCode]]] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError("capacity must be nonnegative")
        if self.steps is None:
            self.steps = []

    def record(self, codes: Mapping[int, AngleCode], folded: int, reflected_ids: Iterable[int]) -> dict[int, AngleCode]:
        if len(self.steps) >= self.capacity:
            raise ValueError(f"history full ({self.capacity} folds recorded)")
        updated = fold_update(codes, folded, reflected_ids)
        self.steps.append((codes[folded].owner_group, updated))
        return updated

    def __len__(self) -> int:
        return len(self.steps)
