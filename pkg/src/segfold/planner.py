"""Fold schedules for compiled instances under a given truth assignment.

The schedule is the forced global order: each variable gadget in index
order (seeded with t when the variable is true, f otherwise), the tall
literal guard, then clause phases from the last clause down to the first,
with negative-literal machinery ahead of positive inside each phase and
leftover hull-resident literal segments folded once they come free.
"""

from __future__ import annotations

from typing import Optional

from .cnf import NormalizedFormula
from .folding import (
    CrossingPolicy,
    FoldMode,
    FoldMove,
    FoldState,
    apply_fold,
    check_legal,
    is_solved,
    line_through,
)
from .geometry import Side
from .layout import Layout, clause_role, literal_role, variable_role

_T_FIRST = ["t", "t_b1", "t_h", "t_b2", "f", "f_b1", "f_h", "f_b2", "t_b3", "f_b3", "b1", "b2", "b3"]
_F_FIRST = ["f", "f_b1", "f_h", "f_b2", "t", "t_b1", "t_h", "t_b2", "f_b3", "t_b3", "b1", "b2", "b3"]


class PlanError(RuntimeError):
    def __init__(self, step: int, role: str, detail: str):
        super().__init__(f"step {step} ({role}): {detail}")
        self.step = step
        self.role = role


def schedule_roles(f: NormalizedFormula, lay: Layout, assignment: dict[int, bool]) -> list[str]:
    roles: list[str] = []
    for i in range(1, lay.num_vars + 1):
        if i not in assignment:
            raise PlanError(len(roles), variable_role(i, "t"), "assignment misses variable")
        order = _T_FIRST if assignment[i] else _F_FIRST
        roles.extend(variable_role(i, part) for part in order)
    m = lay.num_clauses
    if m >= 1:
        roles.append("b_z")
    for j in range(m, 0, -1):
        clause = f.clauses[j - 1]
        neg = [abs(l) for l in clause if l < 0]
        pos = [abs(l) for l in clause if l > 0]
        sat_lits = [l for l in clause if assignment.get(abs(l)) == (l > 0)]
        if not sat_lits:
            raise PlanError(len(roles), clause_role(j, "c1"), "clause unsatisfied by assignment")
        # The satisfied literal whose segment sits in the good zone opens the
        # clause; prefer a negative one (they must precede positives anyway).
        sat_lits.sort(key=lambda l: (l > 0, abs(l)))
        aux = sat_lits[0]
        aux_i, aux_neg = abs(aux), aux < 0

        for i in neg:
            roles.append(literal_role(i, j, "b"))
        for i in neg:
            if not (aux_neg and i == aux_i):
                roles.append(literal_role(i, j, "z"))
        if aux_neg:
            roles.append(literal_role(aux_i, j, "z"))
            for i in pos:
                roles.append(literal_role(i, j, "b"))
            roles.extend([clause_role(j, "c1"), clause_role(j, "c2")])
            if j >= 2:
                roles.append(clause_role(j, "b"))
            roles.extend([clause_role(j, "c3"), clause_role(j, "c4")])
            for i in pos:
                roles.append(literal_role(i, j, "z"))
        else:
            for i in pos:
                roles.append(literal_role(i, j, "b"))
            roles.append(literal_role(aux_i, j, "z"))
            roles.extend([clause_role(j, "c1"), clause_role(j, "c2")])
            if j >= 2:
                roles.append(clause_role(j, "b"))
            roles.extend([clause_role(j, "c3"), clause_role(j, "c4")])
            for i in pos:
                if i != aux_i:
                    roles.append(literal_role(i, j, "z"))
    return roles


def plan_folds(
    f: NormalizedFormula,
    lay: Layout,
    assignment: dict[int, bool],
    mode: FoldMode = FoldMode.RESTRICTED,
    policy: CrossingPolicy = CrossingPolicy.BAN_ALL,
) -> list[FoldMove]:
    """Concrete legal move list realizing the schedule, or PlanError."""
    role_to_orig = {r: sid for sid, r in lay.roles.items()}
    roles = schedule_roles(f, lay, assignment)
    state = FoldState.initial(lay.instance)
    moves: list[FoldMove] = []
    for step, role in enumerate(roles):
        orig = role_to_orig[role]
        cur = _current_id(state, orig, step, role)
        line = line_through(dict(state.segments)[cur])
        chosen: Optional[FoldMove] = None
        primary = _preferred_side(state, line)
        for side in (primary, primary.opposite()):
            mv = FoldMove(line, side)
            if check_legal(state, mv, mode, policy) is None:
                nxt = apply_fold(state, mv, mode, policy)
                if _schedule_viable(nxt, roles, step + 1, role_to_orig, mode, policy):
                    chosen = mv
                    state = nxt
                    break
        if chosen is None:
            problem = check_legal(state, FoldMove(line, primary), mode, policy)
            raise PlanError(step, role, str(problem) if problem else "no side keeps the schedule alive")
        moves.append(chosen)
    if not is_solved(state):
        raise PlanError(len(roles), "-", "schedule finished with segments left")
    return moves


def _current_id(state: FoldState, orig: int, step: int, role: str) -> int:
    hits = [sid for sid, _ in state.segments if state.provenance.get(sid) == frozenset([orig])]
    if len(hits) != 1:
        raise PlanError(step, role, f"segment for role not intact (found {len(hits)} pieces)")
    return hits[0]


def _preferred_side(state: FoldState, line) -> Side:
    """Reflect the side carrying fewer segments (whole segments count)."""
    counts = {Side.LEFT: 0, Side.RIGHT: 0}
    for _, s in state.segments:
        vp = line.eval_at(s.p)
        vq = line.eval_at(s.q)
        if vp > 0 or vq > 0:
            counts[Side.RIGHT] += 1
        if vp < 0 or vq < 0:
            counts[Side.LEFT] += 1
    return Side.RIGHT if counts[Side.RIGHT] <= counts[Side.LEFT] else Side.LEFT


def _schedule_viable(state, roles, idx, role_to_orig, mode, policy) -> bool:
    """One-step lookahead: the next scheduled role must still be foldable."""
    if idx >= len(roles):
        return True
    role = roles[idx]
    orig = role_to_orig[role]
    hits = [sid for sid, _ in state.segments if state.provenance.get(sid) == frozenset([orig])]
    if len(hits) != 1:
        return False
    line = line_through(dict(state.segments)[hits[0]])
    for side in (Side.RIGHT, Side.LEFT):
        if check_legal(state, FoldMove(line, side), mode, policy) is None:
            return True
    return False
