"""CNF formulas and the clause normalization used by the compiler.

Normalization rewrites every 3-literal all-positive or all-negative clause
with one fresh variable (preserving satisfiability), then guarantees the
last clause consists of positive literals only, creating a fresh unit
clause when necessary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

Literal = int  # signed 1-based variable index
Clause = tuple[Literal, ...]


class CnfError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        for cl in self.clauses:
            if not 1 <= len(cl) <= 3:
                raise CnfError(f"clause size {len(cl)} outside 1..3: {cl}")
            seen = set()
            for lit in cl:
                var = abs(lit)
                if lit == 0 or var > self.num_vars:
                    raise CnfError(f"literal {lit} out of range")
                if var in seen:
                    raise CnfError(f"variable {var} repeated in clause {cl}")
                seen.add(var)

    @staticmethod
    def of(num_vars: int, clauses: Sequence[Sequence[int]]) -> "CnfFormula":
        return CnfFormula(num_vars, tuple(tuple(cl) for cl in clauses))


@dataclass(frozen=True)
class NormalizedFormula:
    num_vars: int
    clauses: tuple[Clause, ...]
    aux_vars: tuple[int, ...] = field(default=())

    def __post_init__(self):
        for cl in self.clauses:
            if len(cl) == 3 and _uniform_sign(cl):
                raise CnfError(f"3-clause with uniform polarity survived: {cl}")
        if self.clauses:
            last = self.clauses[-1]
            if not (len(last) <= 2 and all(lit > 0 for lit in last)):
                raise CnfError("last clause must be all-positive with 1 or 2 literals")

    def literal_count(self) -> int:
        return sum(len(cl) for cl in self.clauses)


def _uniform_sign(cl: Clause) -> bool:
    return all(l > 0 for l in cl) or all(l < 0 for l in cl)


def normalize_formula(f: CnfFormula) -> NormalizedFormula:
    if any(len(cl) == 0 for cl in f.clauses):
        raise CnfError("empty clause")
    if not f.clauses:
        return NormalizedFormula(f.num_vars, ())
    n = f.num_vars
    aux: list[int] = []
    out: list[Clause] = []
    for cl in f.clauses:
        if len(cl) == 3 and _uniform_sign(cl):
            n += 1
            y = n
            aux.append(y)
            i, j, k = cl
            if cl[0] > 0:
                # x_i | x_j | x_k  =>  (x_k | y), (x_i | x_j | ~y)
                out.append((k, y))
                out.append((i, j, -y))
            else:
                # ~x_i | ~x_j | ~x_k  =>  (~x_i | ~x_j | y), (~x_k | ~y)
                out.append((i, j, y))
                out.append((k, -y))
        else:
            out.append(cl)
    last = out[-1]
    if not (len(last) <= 2 and all(lit > 0 for lit in last)):
        n += 1
        aux.append(n)
        out.append((n,))
    return NormalizedFormula(n, tuple(out), tuple(aux))


def evaluate(clauses: Sequence[Clause], assignment: dict[int, bool]) -> bool:
    for cl in clauses:
        if not any(assignment[abs(l)] == (l > 0) for l in cl):
            return False
    return True


def satisfiable(num_vars: int, clauses: Sequence[Clause]) -> bool:
    """Brute-force truth-table satisfiability (desk-scale oracle)."""
    if not clauses:
        return True
    for bits in product((False, True), repeat=num_vars):
        assignment = {v + 1: bits[v] for v in range(num_vars)}
        if evaluate(clauses, assignment):
            return True
    return False


def satisfying_assignment(num_vars: int, clauses: Sequence[Clause]):
    for bits in product((False, True), repeat=num_vars):
        assignment = {v + 1: bits[v] for v in range(num_vars)}
        if evaluate(clauses, assignment):
            return assignment
    return None
