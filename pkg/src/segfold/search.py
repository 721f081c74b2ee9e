"""Exact search for fold sequences.

The default solver is iterative-deepening DFS with a transposition table
keyed on the exact canonical segment geometry. Reflecting Left vs Right
along one line always yields mirror-image states with identical
solvability, so the searchers explore one canonical side per line; replay
and legal-move listing still expose both sides.
"""

from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .folding import (
    CrossingPolicy,
    FoldMode,
    FoldMove,
    FoldState,
    Illegality,
    Instance,
    apply_fold,
    check_legal,
    is_solved,
    legal_lines,
    legal_moves,
)
from .geometry import Side


class Outcome(enum.Enum):
    SOLVED = "solved"
    UNSOLVABLE_WITHIN_BUDGET = "unsolvable_within_budget"
    RESOURCE_EXHAUSTED = "resource_exhausted"


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int
    node_cap: int = 2_000_000
    wall_clock_s: float = 3600.0

    def __post_init__(self):
        if self.max_depth < 0 or self.node_cap <= 0 or self.wall_clock_s <= 0:
            raise ValueError("budget fields must be positive")


@dataclass
class SearchStats:
    nodes: int = 0
    table_hits: int = 0
    depth_reached: int = 0


@dataclass(frozen=True)
class SearchResult:
    outcome: Outcome
    moves: tuple[FoldMove, ...] = ()
    stats: SearchStats = field(default_factory=SearchStats)


class _Exhausted(Exception):
    pass


class _Searcher:
    def __init__(
        self,
        mode: FoldMode,
        budget: SearchBudget,
        policy: CrossingPolicy,
        identify_congruent: bool = False,
    ):
        self.mode = mode
        self.budget = budget
        self.policy = policy
        self.identify_congruent = identify_congruent
        self.stats = SearchStats()
        self.deadline = time.monotonic() + budget.wall_clock_s
        # state key -> remaining depth proven insufficient
        self.dead: dict[tuple, int] = {}

    def key_of(self, state: FoldState) -> tuple:
        return state.congruence_key() if self.identify_congruent else state.key()

    def tick(self):
        self.stats.nodes += 1
        if self.stats.nodes > self.budget.node_cap:
            raise _Exhausted()
        if self.stats.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise _Exhausted()

    def dfs(self, state: FoldState, remaining: int) -> Optional[list[FoldMove]]:
        if is_solved(state):
            return []
        if remaining == 0:
            return None
        key = self.key_of(state)
        proven = self.dead.get(key)
        if proven is not None and proven >= remaining:
            self.stats.table_hits += 1
            return None
        self.tick()
        for line in legal_lines(state, self.mode, self.policy):
            mv = FoldMove(line, Side.RIGHT)
            child = apply_fold(state, mv, self.mode, self.policy)
            sub = self.dfs(child, remaining - 1)
            if sub is not None:
                return [mv] + sub
        self.dead[key] = remaining
        return None


def solve(
    inst: Instance,
    mode: FoldMode,
    budget: SearchBudget,
    policy: CrossingPolicy = CrossingPolicy.BAN_ALL,
    identify_congruent: bool = False,
) -> SearchResult:
    """Decision search: any solving sequence of at most max_depth folds.

    The depth-remaining-aware transposition table makes one bounded DFS pass
    complete; minimality is min_folds' concern, not solve's. With
    identify_congruent the table also merges translate/axis-mirror states.
    """
    state = FoldState.initial(inst)
    searcher = _Searcher(mode, budget, policy, identify_congruent)
    try:
        searcher.stats.depth_reached = budget.max_depth
        found = searcher.dfs(state, budget.max_depth)
        if found is not None:
            return SearchResult(Outcome.SOLVED, tuple(found), searcher.stats)
    except _Exhausted:
        return SearchResult(Outcome.RESOURCE_EXHAUSTED, (), searcher.stats)
    return SearchResult(Outcome.UNSOLVABLE_WITHIN_BUDGET, (), searcher.stats)


def min_folds(
    inst: Instance,
    mode: FoldMode,
    cap: int,
    policy: CrossingPolicy = CrossingPolicy.BAN_ALL,
    node_cap: int = 2_000_000,
    wall_clock_s: float = 3600.0,
    identify_congruent: bool = False,
) -> Optional[int]:
    """Smallest k <= cap admitting a solving sequence (iterative deepening)."""
    budget = SearchBudget(cap, node_cap, wall_clock_s)
    searcher = _Searcher(mode, budget, policy, identify_congruent)
    state = FoldState.initial(inst)
    try:
        for depth in range(cap + 1):
            searcher.stats.depth_reached = depth
            found = searcher.dfs(state, depth)
            if found is not None:
                return len(found)
            searcher.dead.clear()
    except _Exhausted:
        raise ResourceExhaustedError()
    return None


class ResourceExhaustedError(RuntimeError):
    pass


def min_folds_bfs(inst: Instance, mode: FoldMode, cap: int) -> Optional[int]:
    """Naive breadth-first oracle: no transposition table, both sides tried."""
    start = FoldState.initial(inst)
    frontier: deque[tuple[FoldState, int]] = deque([(start, 0)])
    while frontier:
        state, depth = frontier.popleft()
        if is_solved(state):
            return depth
        if depth == cap:
            continue
        for mv in legal_moves(state, mode):
            frontier.append((apply_fold(state, mv, mode), depth + 1))
    return None


@dataclass(frozen=True)
class Enumeration:
    sequences: tuple[tuple[FoldMove, ...], ...]
    complete: bool
    stats: SearchStats


def enumerate_optimal(
    inst: Instance,
    mode: FoldMode,
    length: int,
    policy: CrossingPolicy = CrossingPolicy.BAN_ALL,
    sides: str = "both",
    node_cap: int = 2_000_000,
    sequence_cap: int = 200_000,
    wall_clock_s: float = 3600.0,
) -> Enumeration:
    """All legal fold sequences of exactly `length` that solve the instance.

    sides="both" enumerates Left and Right reflections as distinct moves;
    sides="canonical" keeps one representative per line (the mirror image
    of every pruned branch is congruent to a kept one).
    """
    if sides not in ("both", "canonical"):
        raise ValueError("sides must be 'both' or 'canonical'")
    mode_sides = (Side.LEFT, Side.RIGHT) if sides == "both" else (Side.RIGHT,)
    stats = SearchStats()
    deadline = time.monotonic() + wall_clock_s
    # Exact-length search: a state can be alive at one remaining depth and
    # dead at another, so the memo key includes the remaining depth.
    dead: set[tuple] = set()
    out: list[tuple[FoldMove, ...]] = []
    complete = True

    def rec(state: FoldState, remaining: int, prefix: list[FoldMove]) -> bool:
        """Returns True iff some completion exists below this node."""
        nonlocal complete
        if is_solved(state):
            if remaining == 0:
                out.append(tuple(prefix))
                if len(out) >= sequence_cap:
                    complete = False
                    raise _Exhausted()
                return True
            return False
        if remaining == 0:
            return False
        key = (state.key(), remaining)
        if key in dead:
            stats.table_hits += 1
            return False
        stats.nodes += 1
        if stats.nodes > node_cap:
            complete = False
            raise _Exhausted()
        if stats.nodes % 1024 == 0 and time.monotonic() > deadline:
            complete = False
            raise _Exhausted()
        any_hit = False
        for line in legal_lines(state, mode, policy):
            for side in mode_sides:
                mv = FoldMove(line, side)
                child = apply_fold(state, mv, mode, policy)
                prefix.append(mv)
                if rec(child, remaining - 1, prefix):
                    any_hit = True
                prefix.pop()
        if not any_hit:
            dead.add(key)
        return any_hit

    try:
        rec(FoldState.initial(inst), length, [])
    except _Exhausted:
        pass
    return Enumeration(tuple(out), complete, stats)


class ReplayError(Exception):
    def __init__(self, index: int, problem: Illegality):
        super().__init__(f"illegal move at step {index}: {problem}")
        self.index = index
        self.problem = problem


def replay(inst: Instance, seq: Iterable[FoldMove], mode: FoldMode,
           policy: CrossingPolicy = CrossingPolicy.BAN_ALL) -> FoldState:
    state = FoldState.initial(inst)
    for i, mv in enumerate(seq):
        problem = check_legal(state, mv, mode, policy)
        if problem is not None:
            raise ReplayError(i, problem)
        state = apply_fold(state, mv, mode, policy)
    return state
