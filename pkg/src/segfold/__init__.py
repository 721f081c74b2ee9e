"""Exact segment-folding engine, CNF reduction compiler, and solver."""

from .geometry import (
    IntersectKind,
    Line,
    Point,
    Rational,
    Segment,
    Side,
    canonical_line,
    classify_intersection,
    clip_to_halfplane,
    convex_hull,
    line_through,
    merge_collinear,
    on_hull_boundary,
    reflect_point,
    reflect_segment,
    seg,
    side_of,
    stabs,
)
from .folding import (
    CrossingPolicy,
    FoldMode,
    FoldMove,
    FoldState,
    IllegalFoldError,
    IllegalKind,
    Illegality,
    Instance,
    apply_fold,
    check_legal,
    fold_lines,
    is_general_position,
    is_solved,
    legal_lines,
    legal_moves,
)
from .cnf import CnfFormula, NormalizedFormula, normalize_formula, satisfiable
from .layout import LayoutParams, Layout, compile_formula, fold_budget
from .search import (
    Enumeration,
    Outcome,
    ReplayError,
    SearchBudget,
    SearchResult,
    enumerate_optimal,
    min_folds,
    min_folds_bfs,
    replay,
    solve,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
