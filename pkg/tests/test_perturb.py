import itertools
import random

import pytest

from segfold.folding import Instance
from segfold.geometry import seg
from segfold.perturb import (
    AngleCode,
    GroupOverflowError,
    LedgerHistory,
    alignment_possible,
    assign_codes,
    fold_update,
)


def make_instance(n: int) -> Instance:
    return Instance.from_segments([seg(i, 0, i, 1) for i in range(n)])


class TestAssign:
    def test_three_segments(self):
        codes = assign_codes(make_instance(3))
        assert set(codes) == {0, 1, 2}
        groups = {c.owner_group for c in codes.values()}
        assert groups == {0, 1, 2}
        for c in codes.values():
            assert sum(bin(g).count("1") for g in c.ledger) == 1
            assert c.ledger[c.owner_group] == 1

    def test_empty(self):
        assert assign_codes(Instance((), {})) == {}

    def test_pairwise_distinct(self):
        codes = assign_codes(make_instance(5))
        seen = list(codes.values())
        for a, b in itertools.combinations(seen, 2):
            assert a != b
            assert not alignment_possible(a, b)


class TestFoldUpdate:
    def test_reflected_gains_doubled_bits(self):
        codes = assign_codes(make_instance(3))
        out = fold_update(codes, folded=0, reflected_ids=[1])
        g = codes[0].owner_group
        assert out[1].ledger[g] == codes[1].ledger[g] + (codes[0].ledger[g] << 1)
        # untouched groups unchanged
        for i, v in enumerate(out[1].ledger):
            if i != g:
                assert v == codes[1].ledger[i]

    def test_non_reflected_unchanged(self):
        codes = assign_codes(make_instance(3))
        out = fold_update(codes, folded=0, reflected_ids=[1])
        assert out[2] == codes[2]
        assert out[0] == codes[0]

    def test_unknown_folded_id(self):
        codes = assign_codes(make_instance(2))
        with pytest.raises(KeyError):
            fold_update(codes, folded=9, reflected_ids=[0])

    def test_bounded_drift_no_overflow(self):
        # n folds along distinct segments: highest bit drifts at most n places.
        for n in range(2, 7):
            codes = assign_codes(make_instance(n))
            for step in range(n):
                reflected = [i for i in range(n) if i != step]
                codes = fold_update(codes, folded=step, reflected_ids=reflected)
            width = n + 1
            for c in codes.values():
                for g in c.ledger:
                    assert g < (1 << width)

    def test_overflow_detected_beyond_budget(self):
        # Overfold one segment far past the budget to prove the guard trips.
        codes = assign_codes(make_instance(2))
        with pytest.raises(GroupOverflowError):
            for _ in range(10):
                codes = fold_update(codes, folded=0, reflected_ids=[1])
                codes = fold_update(codes, folded=1, reflected_ids=[0])


class TestLedgerHistory:
    def test_records_and_caps(self):
        inst = make_instance(3)
        codes = assign_codes(inst)
        hist = LedgerHistory(capacity=3)
        codes = hist.record(codes, 0, [1, 2])
        codes = hist.record(codes, 1, [0])
        assert len(hist) == 2
        assert hist.steps[0][0] == 0  # owner group of the first folded segment
        codes = hist.record(codes, 2, [])
        with pytest.raises(ValueError):
            hist.record(codes, 0, [])

    def test_snapshots_are_updates(self):
        inst = make_instance(2)
        codes = assign_codes(inst)
        hist = LedgerHistory(capacity=2)
        updated = hist.record(codes, 0, [1])
        assert hist.steps[0][1] == updated
        assert updated[1].ledger[0] == 2  # 1 shifted left once


class TestAlignment:
    def test_self(self):
        codes = assign_codes(make_instance(2))
        assert alignment_possible(codes[0], codes[0])

    def test_fresh_codes_never_align(self):
        codes = assign_codes(make_instance(4))
        for a, b in itertools.combinations(codes.values(), 2):
            assert not alignment_possible(a, b)

    def test_disjoint_group_updates_stay_distinct(self):
        # Exhaustive simulation at tiny scale: folds along distinct owners
        # with every possible reflected subset; never-reflected segments keep
        # pairwise-distinct codes throughout.
        for n, depth in ((2, 2), (3, 3), (4, 2)):
            base = assign_codes(make_instance(n))
            for order in itertools.permutations(range(n), depth):
                for masks in itertools.product(range(1 << n), repeat=depth):
                    codes = base
                    reflected_ever = set()
                    for folded, mask in zip(order, masks):
                        ids = [i for i in range(n) if mask & (1 << i) and i != folded]
                        reflected_ever.update(ids)
                        codes = fold_update(codes, folded, ids)
                    untouched = [i for i in range(n) if i not in reflected_ever]
                    for a, b in itertools.combinations(untouched, 2):
                        assert not alignment_possible(codes[a], codes[b])
