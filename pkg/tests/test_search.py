import random

import pytest

from segfold.folding import FoldMode, FoldMove, Instance
from segfold.geometry import Line, Side, seg
from segfold.layout import isolated_variable_gadget
from segfold.search import (
    Outcome,
    ReplayError,
    SearchBudget,
    enumerate_optimal,
    min_folds,
    min_folds_bfs,
    replay,
    solve,
)

R = FoldMode.RESTRICTED
U = FoldMode.UNRESTRICTED


def inst(*segments) -> Instance:
    return Instance.from_segments(segments)


class TestSolve:
    def test_single_segment(self):
        res = solve(inst(seg(0, 0, 0, 1)), R, SearchBudget(1))
        assert res.outcome is Outcome.SOLVED
        assert len(res.moves) == 1

    def test_perpendicular_cross_two_folds(self):
        res = solve(inst(seg(0, 0, 4, 0), seg(2, -1, 2, 1)), U, SearchBudget(2))
        assert res.outcome is Outcome.SOLVED
        assert len(res.moves) == 2

    def test_oblique_cross_not_in_two(self):
        res = solve(inst(seg(0, 0, 4, 0), seg(0, -1, 2, 1)), U, SearchBudget(2))
        assert res.outcome is Outcome.UNSOLVABLE_WITHIN_BUDGET

    def test_solution_replays(self):
        instance = inst(seg(0, 0, 4, 0), seg(2, -1, 2, 1))
        res = solve(instance, U, SearchBudget(2))
        end = replay(instance, res.moves, U)
        assert not end.segments

    def test_resource_exhausted(self):
        res = solve(inst(seg(0, 0, 4, 0), seg(0, -1, 2, 1)), U, SearchBudget(2, node_cap=1))
        assert res.outcome is Outcome.RESOURCE_EXHAUSTED


class TestMinFolds:
    def test_single(self):
        assert min_folds(inst(seg(0, 0, 0, 1)), R, 3) == 1

    def test_variable_gadget_thirteen(self):
        assert min_folds(isolated_variable_gadget().instance, R, 13) == 13

    def test_oblique_cap_two_none(self):
        assert min_folds(inst(seg(0, 0, 4, 0), seg(0, -1, 2, 1)), U, 2) is None

    def test_oblique_three(self):
        assert min_folds(inst(seg(0, 0, 4, 0), seg(0, -1, 2, 1)), U, 4) == 3


class TestEnumerate:
    def test_single_segment_two_sequences(self):
        res = enumerate_optimal(inst(seg(0, 0, 0, 1)), R, 1)
        assert len(res.sequences) == 2
        assert res.complete

    def test_empty_instance_one_empty_sequence(self):
        res = enumerate_optimal(Instance((), {}), R, 0)
        assert res.sequences == ((),)

    def test_canonical_halves_counts(self):
        instance = inst(seg(0, 0, 0, 1), seg(5, 0, 5, 1))
        both = enumerate_optimal(instance, R, 2, sides="both")
        canon = enumerate_optimal(instance, R, 2, sides="canonical")
        assert len(both.sequences) == 4 * len(canon.sequences)

    def test_rejects_bad_sides(self):
        with pytest.raises(ValueError):
            enumerate_optimal(inst(seg(0, 0, 0, 1)), R, 1, sides="nope")

    def test_exact_length_only(self):
        res = enumerate_optimal(inst(seg(0, 0, 0, 1)), R, 2)
        assert res.sequences == ()


class TestReplay:
    def test_error_reports_index(self):
        with pytest.raises(ReplayError) as e:
            replay(inst(seg(0, 0, 0, 1)), [FoldMove(Line(1, 0, 9), Side.LEFT)], R)
        assert e.value.index == 0

    def test_error_mid_trace(self):
        moves = [FoldMove(Line(1, 0, 0), Side.LEFT), FoldMove(Line(1, 0, 0), Side.LEFT)]
        with pytest.raises(ReplayError) as e:
            replay(inst(seg(0, 0, 0, 1)), moves, R)
        assert e.value.index == 1


def random_instance(rng: random.Random, count: int) -> Instance:
    segs = []
    while len(segs) < count:
        a = (rng.randint(-4, 4), rng.randint(-4, 4))
        b = (rng.randint(-4, 4), rng.randint(-4, 4))
        if a != b:
            segs.append(seg(*a, *b))
    return Instance.from_segments(segs)


class TestBfsOracleEquivalence:
    def test_small_random_instances(self):
        rng = random.Random(20240817)
        for trial in range(25):
            count = rng.randint(1, 4)
            instance = random_instance(rng, count)
            cap = min(count + 1, 4)
            for mode in (R, U):
                fast = min_folds(instance, mode, cap, node_cap=500_000)
                slow = min_folds_bfs(instance, mode, cap)
                assert fast == slow, f"trial {trial}: {instance.segments}"


class TestCongruenceIdentification:
    def test_same_answers_with_toggle(self):
        rng = random.Random(99)
        for _ in range(20):
            instance = random_instance(rng, rng.randint(1, 4))
            cap = 4
            for mode in (R, U):
                plain = min_folds(instance, mode, cap, node_cap=500_000)
                merged = min_folds(instance, mode, cap, node_cap=500_000, identify_congruent=True)
                assert plain == merged

    def test_congruence_key_identifies_mirrors(self):
        from segfold.folding import FoldState, Instance

        a = FoldState.initial(Instance.from_segments([seg(0, 0, 2, 1), seg(3, 0, 4, 4)]))
        b = FoldState.initial(Instance.from_segments([seg(10, 0, 8, 1), seg(7, 0, 6, 4)]))
        assert a.key() != b.key()
        assert a.congruence_key() == b.congruence_key()
