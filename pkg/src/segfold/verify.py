"""Gadget-lemma oracles: exhaustive enumeration checks at desk scale.

Each oracle walks every solving fold sequence of the target length (with
node/sequence caps), maps folds back to gadget roles through provenance,
and tests the forced-order claims. Used by the acceptance suite and by the
`verify-gadgets` CLI subcommand.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .cnf import CnfFormula, NormalizedFormula, normalize_formula
from .folding import (
    CrossingPolicy,
    FoldMode,
    FoldState,
    FoldMove,
    apply_fold,
    is_solved,
    legal_lines,
)
from .geometry import Side
from .layout import (
    H_C_SHORT,
    H_C_TALL,
    Layout,
    LayoutParams,
    compile_formula,
    isolated_clause_gadget,
    isolated_variable_gadget,
    track_x,
)
from .planner import plan_folds
from .search import Outcome, SearchBudget, replay, solve


@dataclass
class OracleReport:
    name: str
    passed: bool
    detail: str
    sequences: int = 0
    complete: bool = True
    elapsed_s: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.complete else " (capped)"
        return f"[{status}] {self.name}: {self.detail}{extra} [{self.elapsed_s:.1f}s]"


def walk_solutions(
    lay: Layout,
    length: int,
    on_solution: Callable[[list[frozenset[str]]], Optional[str]],
    mode: FoldMode = FoldMode.RESTRICTED,
    node_cap: int = 2_000_000,
    sequence_cap: int = 100_000,
    wall_clock_s: float = 1500.0,
) -> tuple[int, bool, Optional[str]]:
    """Visit every solving sequence of exactly `length` line-folds.

    Each solution is passed to `on_solution` as the per-step sets of
    consumed role names; a non-None return is a failure description that
    aborts the walk. Returns (solutions seen, walk complete, failure).
    """
    roles = lay.roles
    deadline = time.monotonic() + wall_clock_s
    dead: set = set()
    count = 0
    complete = True
    failure: Optional[str] = None
    nodes = 0

    class _Stop(Exception):
        pass

    def consumed(state: FoldState, line) -> frozenset[str]:
        out = []
        for sid in state.line_map()[line]:
            for orig in state.provenance[sid]:
                out.append(roles[orig])
        return frozenset(out)

    def rec(state: FoldState, remaining: int, trail: list[frozenset[str]]) -> bool:
        nonlocal count, complete, failure, nodes
        if is_solved(state):
            if remaining == 0:
                count += 1
                failure_local = on_solution(trail)
                if failure_local is not None:
                    failure = failure_local
                    raise _Stop()
                if count >= sequence_cap:
                    complete = False
                    raise _Stop()
                return True
            return False
        if remaining == 0:
            return False
        key = (state.key(), remaining)
        if key in dead:
            return False
        nodes += 1
        if nodes > node_cap or (nodes % 1024 == 0 and time.monotonic() > deadline):
            complete = False
            raise _Stop()
        hit = False
        for line in legal_lines(state, mode):
            mv = FoldMove(line, Side.RIGHT)
            trail.append(consumed(state, line))
            if rec(apply_fold(state, mv, mode), remaining - 1, trail):
                hit = True
            trail.pop()
        if not hit:
            dead.add(key)
        return hit

    try:
        rec(FoldState.initial(lay.instance), length, [])
    except _Stop:
        pass
    return count, complete, failure


def _positions(trail: list[frozenset[str]]) -> dict[str, int]:
    pos: dict[str, int] = {}
    for i, group in enumerate(trail):
        for r in group:
            pos.setdefault(r, i)
    return pos


_BASE_T = ["t", "t_b1", "t_h", "t_b2", "f", "f_b1", "f_h", "f_b2", "b1", "b2", "b3"]
_BASE_F = ["f", "f_b1", "f_h", "f_b2", "t", "t_b1", "t_h", "t_b2", "b1", "b2", "b3"]


def check_variable_family(pos: dict[str, int], prefix: str = "x1.") -> Optional[str]:
    """The two-order-families contract for one variable gadget."""
    p = {part: pos.get(prefix + part) for part in
         ("t", "f", "t_h", "f_h", "t_b1", "t_b2", "t_b3", "f_b1", "f_b2", "f_b3", "b1", "b2", "b3")}
    if any(v is None for v in p.values()):
        return f"missing roles in {prefix} sequence"
    base = _BASE_T if p["t"] < p["f"] else _BASE_F
    order = [p[part] for part in base]
    if order != sorted(order):
        return f"base order violated ({prefix}, {'t' if base is _BASE_T else 'f'}-first): {p}"
    if not (p["t_h"] < p["t_b3"] < p["b1"]):
        return f"t_b3 outside its window: {p}"
    if not (p["f_h"] < p["f_b3"] < p["b1"]):
        return f"f_b3 outside its window: {p}"
    return None


def variable_two_ways_oracle(node_cap: int = 2_000_000) -> OracleReport:
    """All 13-fold solutions of one gadget form exactly the two families."""
    t0 = time.monotonic()
    lay = isolated_variable_gadget()
    seen = {"t": 0, "f": 0}

    def check(trail):
        pos = _positions(trail)
        err = check_variable_family(pos)
        if err:
            return err
        seen["t" if pos["x1.t"] < pos["x1.f"] else "f"] += 1
        return None

    count, complete, failure = walk_solutions(lay, 13, check, node_cap=node_cap)
    passed = failure is None and complete and count > 0 and seen["t"] > 0 and seen["f"] > 0
    detail = failure or f"{count} sequences, {seen['t']} t-first / {seen['f']} f-first, all in-family"
    return OracleReport("variable_two_ways", passed, detail, count, complete, time.monotonic() - t0)


def variable_order_oracle(node_cap: int = 4_000_000) -> OracleReport:
    """Two stacked gadgets: 26-fold solutions fold gadget 1 before gadget 2's
    first vertical fold (and each gadget stays in-family)."""
    t0 = time.monotonic()
    lay = compile_formula(NormalizedFormula(2, ()))
    verticals2 = {f"x2.{p}" for p in ("t", "f", "t_h", "f_h", "b1", "b2")}

    def check(trail):
        pos = _positions(trail)
        for prefix in ("x1.", "x2."):
            err = check_variable_family(pos, prefix)
            if err:
                return err
        first_v2 = min(pos[r] for r in verticals2)
        last_g1 = max(v for r, v in pos.items() if r.startswith("x1."))
        if last_g1 > first_v2:
            return f"gadget 1 fold after gadget 2's first vertical: {pos}"
        return None

    count, complete, failure = walk_solutions(lay, 26, check, node_cap=node_cap)
    passed = failure is None and count > 0
    detail = failure or f"{count} sequences, index order respected"
    return OracleReport("variable_order", passed, detail, count, complete, time.monotonic() - t0)


def clause_fold_oracle(h_c_units: Fraction, budget_nodes: int = 400_000) -> OracleReport:
    """Isolated clause gadget solvable in 6 iff the aux line is in the open
    good zone; forced prefix aux, c1, c2; last fold c4 or b; c3 before c4."""
    t0 = time.monotonic()
    params = LayoutParams(h_c_units=h_c_units)
    probes = [
        (Fraction(25, 4), True),
        (Fraction(27, 4), True),
        (Fraction(13, 2), True),
        (Fraction(2), False),
        (Fraction(4), False),
        (Fraction(11, 2), False),
        (Fraction(15, 2), False),
        (Fraction(12), False),
    ]
    total = 0
    for off, expect in probes:
        lay = isolated_clause_gadget(off, params)
        res = solve(lay.instance, FoldMode.RESTRICTED, SearchBudget(6, budget_nodes, 300))
        got = res.outcome is Outcome.SOLVED
        if got != expect:
            return OracleReport(
                f"clause_fold[h_c={h_c_units}]", False,
                f"aux at {off}w_g: solvable-in-6={got}, expected {expect}",
                0, True, time.monotonic() - t0,
            )
        if not expect and res.outcome is Outcome.RESOURCE_EXHAUSTED:
            return OracleReport(
                f"clause_fold[h_c={h_c_units}]", False, f"aux at {off}w_g: exhausted",
                0, False, time.monotonic() - t0,
            )

    def check(trail):
        pos = _positions(trail)
        order = ["aux", "c1.c1", "c1.c2"]
        if [pos[r] for r in order] != [0, 1, 2]:
            return f"forced prefix violated: {pos}"
        if pos["c1.c3"] > pos["c1.c4"]:
            return f"c3 after c4: {pos}"
        if max(pos["c1.c4"], pos["c1.b"]) != 5:
            return f"last fold is not c4 or b: {pos}"
        return None

    lay = isolated_clause_gadget(Fraction(25, 4), params)
    count, complete, failure = walk_solutions(lay, 6, check, node_cap=budget_nodes)
    total += count
    passed = failure is None and complete and count > 0
    detail = failure or f"zone iff verified on {len(probes)} probes; {count} forced-order sequences"
    return OracleReport(f"clause_fold[h_c={h_c_units}]", passed, detail, total, complete, time.monotonic() - t0)


def ordering_oracle(
    node_cap: int = 1_500_000,
    sequence_cap: int = 30_000,
    wall_clock_s: float = 1500.0,
) -> OracleReport:
    """2-variable / 2-clause instance: variables in index order, clauses
    m..1, negatives before positives inside a clause, and no literal-gadget
    segment before the variable segments are done."""
    t0 = time.monotonic()
    f = normalize_formula(CnfFormula.of(2, [(1, -2), (1, 2)]))
    lay = compile_formula(f)
    n = len(lay.instance)

    var_roles = {r for r in lay.roles.values() if r.startswith("x")}
    lit_roles = {r for r in lay.roles.values() if r.startswith("z")}

    def clause_of(role: str) -> int:
        if role.startswith("z"):
            return int(role.split(".")[1])
        return int(role.split(".")[0][1:])

    def check(trail):
        pos = _positions(trail)
        for prefix in ("x1.", "x2."):
            err = check_variable_family(pos, prefix)
            if err:
                return err
        first_v2 = min(pos[r] for r in (f"x2.{p}" for p in ("t", "f", "t_h", "f_h", "b1", "b2")))
        if max(pos[r] for r in pos if r.startswith("x1.")) > first_v2:
            return "variable index order violated"
        last_var = max(pos[r] for r in var_roles)
        first_lit = min(pos[r] for r in lit_roles)
        if first_lit < last_var:
            return f"literal fold before variables done (lit@{first_lit} var@{last_var})"
        # Clause phases in order m..1: everything tagged clause 2 before
        # anything tagged clause 1 (clause roles only; literal z segments of
        # clause j must also precede clause j-1's clause folds).
        c_pos = {j: [v for r, v in pos.items() if r.startswith("c") and clause_of(r) == j] for j in (1, 2)}
        if max(c_pos[2]) > min(c_pos[1]):
            return "clause gadget order violated"
        # Negatives before positives within each clause.
        for j in (1, 2):
            negs = [pos[r] for r in pos if r.startswith("z") and clause_of(r) == j and r.endswith(".z")
                    and _lit_sign(f, r) < 0]
            poss = [pos[r] for r in pos if r.startswith("z") and clause_of(r) == j and r.endswith(".z")
                    and _lit_sign(f, r) > 0]
            if negs and poss and max(negs) > min(poss):
                return f"negative literal after positive in clause {j}"
        return None

    count, complete, failure = walk_solutions(
        lay, n, check, node_cap=node_cap, sequence_cap=sequence_cap, wall_clock_s=wall_clock_s
    )
    passed = failure is None and count > 0
    detail = failure or f"{count} solving sequences respect all four orders"
    return OracleReport("ordering", passed, detail, count, complete, time.monotonic() - t0)


def _lit_sign(f: NormalizedFormula, role: str) -> int:
    i, j = int(role.split(".")[0][1:]), int(role.split(".")[1])
    for lit in f.clauses[j - 1]:
        if abs(lit) == i:
            return 1 if lit > 0 else -1
    raise KeyError(role)


def variable_undo_oracle() -> OracleReport:
    """After either 13-fold family on a 2-variable instance, t of S(x2) sits
    exactly d_x from the tracked image of gamma."""
    t0 = time.monotonic()
    f = normalize_formula(CnfFormula.of(2, [(1, 2)]))
    lay = compile_formula(f)
    d_x = lay.params.d_x
    for seed in (True, False):
        moves = plan_folds(f, lay, {1: seed, 2: True})
        prefix = moves[:13]
        state = FoldState.initial(lay.instance)
        for mv in prefix:
            state = apply_fold(state, mv, FoldMode.RESTRICTED)
        gamma_img = track_x(prefix, 0)
        t2 = lay.id_of("x2.t")
        segs = [s for sid, s in state.segments if state.provenance[sid] == frozenset([t2])]
        if len(segs) != 1:
            return OracleReport("variable_undo", False, "t of S(x2) not intact", 0, True, time.monotonic() - t0)
        dist = abs(segs[0].p.x - gamma_img)
        if dist != d_x:
            return OracleReport(
                "variable_undo", False,
                f"{'t' if seed else 'f'}-first: distance {dist} != d_x {d_x}",
                0, True, time.monotonic() - t0,
            )
    return OracleReport("variable_undo", True, "distance equals d_x after both families", 2, True, time.monotonic() - t0)


def positive_literal_oracle() -> OracleReport:
    """Literal landing on a 1-clause instance: t-first puts positive literals
    in the open good zone, f-first in the bad zone; mirrored for negatives;
    no two literal segments of one clause share a line."""
    t0 = time.monotonic()
    f = normalize_formula(CnfFormula.of(2, [(1, -2)]))
    lay = compile_formula(f)
    n_vars = f.num_vars
    failures: list[str] = []

    for assignment in ({1: True, 2: True, 3: True}, {1: False, 2: False, 3: True}):
        moves = plan_folds(f, lay, assignment)
        prefix = moves[: 13 * n_vars]
        state = FoldState.initial(lay.instance)
        for mv in prefix:
            state = apply_fold(state, mv, FoldMode.RESTRICTED)
        zones = {}
        for z in lay.zones:
            lo = track_x(prefix, z.x_lo)
            hi = track_x(prefix, z.x_hi)
            zones[(z.kind, z.clause)] = (min(lo, hi), max(lo, hi))
        seen_lines = {}
        for j, clause in enumerate(f.clauses, start=1):
            for lit in clause:
                i = abs(lit)
                orig = lay.id_of(f"z{i}.{j}.z")
                segs = [s for sid, s in state.segments if state.provenance[sid] == frozenset([orig])]
                x = segs[0].p.x
                if x in seen_lines and seen_lines[x][1] == j:
                    failures.append(f"z{i}.{j} shares a line with {seen_lines[x][0]}")
                seen_lines[x] = (f"z{i}.{j}", j)
                folded_true = assignment[i]
                expect_good = (lit > 0) == folded_true
                lo, hi = zones[("good", j)]
                in_good = lo < x < hi
                blo, bhi = zones[("bad", j)]
                in_bad = blo <= x <= bhi
                if j < len(f.clauses):
                    nlo, nhi = zones[("bad", j + 1)]
                    in_bad = in_bad or (nlo <= x <= nhi)
                if expect_good and not in_good:
                    failures.append(f"z{i}.{j} (lit {lit}, {assignment[i]}) missed the good zone")
                if not expect_good and not in_bad:
                    failures.append(f"z{i}.{j} (lit {lit}, {assignment[i]}) missed the bad zone")
    passed = not failures
    return OracleReport(
        "positive_literal", passed,
        "; ".join(failures) if failures else "landings exact for both seeds, lines distinct",
        2, True, time.monotonic() - t0,
    )


def literal_order_guard_height() -> OracleReport:
    """The tall literal guard must reach above every literal blocker line."""
    t0 = time.monotonic()
    f = normalize_formula(CnfFormula.of(2, [(1, -2), (1, 2)]))
    lay = compile_formula(f)
    bz = dict(lay.instance.segments)[lay.id_of("b_z")]
    top = max(bz.p.y, bz.q.y)
    blockers = [
        max(s.p.y, s.q.y)
        for sid, s in lay.instance.segments
        if lay.roles[sid].startswith("z") and lay.roles[sid].endswith(".b")
    ]
    passed = all(top > b for b in blockers)
    return OracleReport(
        "literal_order_guard", passed,
        "guard taller than every literal blocker" if passed else "guard too short",
        1, True, time.monotonic() - t0,
    )


def all_oracles(fast: bool = False) -> list[OracleReport]:
    reports = [
        variable_two_ways_oracle(),
        variable_undo_oracle(),
        positive_literal_oracle(),
        clause_fold_oracle(H_C_TALL),
        clause_fold_oracle(H_C_SHORT),
        literal_order_guard_height(),
    ]
    if not fast:
        reports.append(variable_order_oracle())
        reports.append(ordering_oracle())
    return reports
