import pytest
from hypothesis import given
from hypothesis import strategies as st

from oddunimodal.enumeration import (KINDS, UnimodalSequence, count_table, enumerate_kind, inject_strict,
                                     inject_weak, injectivity_check)


class TestSequence:
    def test_weight_and_rank(self):
        s = UnimodalSequence((1, 3), 5, (1,))
        assert s.weight == 10
        assert s.rank == 1
        assert s.is_odd and s.is_strict

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            UnimodalSequence((3,), 1)
        with pytest.raises(ValueError):
            UnimodalSequence((), 0)

    def test_marked_peak_matters(self):
        assert UnimodalSequence((1,), 1) != UnimodalSequence((), 1, (1,))

    def test_render(self):
        assert str(UnimodalSequence((1,), 3)) == "(1, [3])"


class TestCounts:
    @pytest.mark.parametrize("kind,prefix", [
        ("u", [0, 1, 3, 6, 12]),
        ("u*", [0, 1, 1, 3, 4]),
        ("ou", [0, 1, 2, 4, 6, 9, 14, 20, 28, 40]),
        ("ou*", [0, 1, 0, 1, 2, 2, 2, 2, 4, 6]),
    ])
    def test_prefix(self, kind, prefix):
        assert list(count_table(kind, len(prefix) - 1).counts) == prefix

    def test_rank_row(self):
        t = count_table("ou", 4, with_ranks=True)
        assert t.rank_counts[4] == {-3: 1, -1: 2, 1: 2, 3: 1}

    @pytest.mark.parametrize("kind", sorted(KINDS))
    def test_dp_matches_listing(self, kind):
        t = count_table(kind, 14, with_ranks=True)
        for n in range(15):
            seqs = enumerate_kind(kind, n)
            assert len(seqs) == t[n]
            assert len(set(seqs)) == len(seqs)
            assert all(s.is_kind(kind) and s.weight == n for s in seqs)
            ranks = {}
            for s in seqs:
                ranks[s.rank] = ranks.get(s.rank, 0) + 1
            assert ranks == t.rank_counts[n]

    @pytest.mark.parametrize("kind", sorted(KINDS))
    def test_rank_symmetry(self, kind):
        t = count_table(kind, 20, with_ranks=True)
        for row in t.rank_counts:
            assert all(row.get(-m) == c for m, c in row.items())

    def test_monotone_from_small_weights(self):
        ou = count_table("ou", 40).counts
        ous = count_table("ou*", 40).counts
        assert all(ou[n] <= ou[n + 1] for n in range(1, 40))
        assert all(ous[n] <= ous[n + 1] for n in range(3, 40))

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            count_table("v", 3)


class TestInjections:
    @pytest.mark.parametrize("n", range(1, 13))
    def test_weak(self, n):
        dom = enumerate_kind("ou", n)
        assert injectivity_check(inject_weak, dom) == []
        assert all(inject_weak(s).weight == n + 1 and inject_weak(s).is_kind("ou") for s in dom)

    @pytest.mark.parametrize("n", range(3, 13))
    def test_strict(self, n):
        dom = enumerate_kind("ou*", n)
        assert injectivity_check(inject_strict, dom) == []

    def test_strict_example(self):
        assert inject_strict(UnimodalSequence((1,), 3)) == UnimodalSequence((), 5)

    def test_strict_small_weight(self):
        with pytest.raises(ValueError):
            inject_strict(UnimodalSequence((), 1))

    @given(st.integers(3, 12), st.data())
    def test_strict_preserves_class(self, n, data):
        dom = enumerate_kind("ou*", n)
        if dom:
            s = data.draw(st.sampled_from(dom))
            out = inject_strict(s)
            assert out.is_kind("ou*") and out.weight == n + 1
