import itertools

import pytest

from bicrucial.counting import Kind, count_brute
from bicrucial.crucial import is_bicrucial, is_left_crucial
from bicrucial.perm import (
    complement,
    is_square_free,
    pattern_of,
    reverse,
    right_kill_mask,
)
from bicrucial.search import (
    Phase,
    PrependKind,
    SearchStats,
    Verdict,
    WalkConfig,
    Walker,
    bound_outcome,
    dfs_traverse,
    enumerate_left_crucial,
    left_crucial_lower_bound,
    normalized_bicrucial,
    pack_pattern,
    partial_square_k,
    pipeline_parameters,
    run_count,
    search_bicrucial_nonexistence,
    suffix_dedupe_extend,
    unpack_pattern,
)


def closes_square(perm):
    return len(perm) >= 4 and right_kill_mask(perm[:-1]) >> perm[-1] & 1 == 1


def orbit_closure(perms):
    out = set()
    for p in perms:
        out |= {p, reverse(p), complement(p), reverse(complement(p))}
    return out


def brute_set(n, predicate):
    found = set()

    def visit(perm):
        if len(perm) == n and predicate(tuple(perm)):
            found.add(tuple(perm))

    dfs_traverse(n, pruner=closes_square, visitor=visit)
    return found


class TestTraversal:
    def test_child_order(self):
        seen = []
        dfs_traverse(3, pruner=lambda p: len(p) == 2 and p[0] > p[1],
                     visitor=lambda p: seen.append(tuple(p)))
        assert [p for p in seen if len(p) == 3] == [(0, 1, 2), (0, 2, 1), (1, 2, 0)]

    def test_counts_all_nodes(self):
        stats = dfs_traverse(4)
        assert stats.nodes == 1 + 2 + 6 + 24

    def test_square_pruning(self):
        length5 = []
        dfs_traverse(5, pruner=closes_square,
                     visitor=lambda p: len(p) == 5 and length5.append(tuple(p)))
        assert len(length5) == 34

    def test_pruned_nodes_are_square_free(self):
        for d in range(1, 9):
            got = brute_set(d, lambda p: True)
            assert got == {p for p in itertools.permutations(range(d)) if is_square_free(p)}

    def test_bad_length(self):
        with pytest.raises(ValueError):
            dfs_traverse(0)


class TestBound:
    def test_partial_square_examples(self):
        assert partial_square_k((1, 0, 5, 6, 3, 2, 4)) == 4
        assert partial_square_k((5, 0, 4, 6, 2, 1, 3)) is None
        # k may equal n: with 5 entries k = 4 leaves a one-entry second window
        assert partial_square_k((2, 1, 0, 3, 4)) == 4

    def test_partial_square_range(self):
        for n in range(4, 9):
            for p in itertools.permutations(range(n + 1)):
                k = partial_square_k(p)
                if k is not None:
                    assert k % 4 == 0 and 2 * k - 1 >= len(p) and k <= n

    def test_worked_example(self):
        outcome = bound_outcome((0, 4, 5, 2, 1, 3))
        assert outcome.bound == 23
        assert outcome.outcomes[1] == (PrependKind.PARTIAL, 4)
        assert 2 * outcome.outcomes[1][1] - 1 == 7
        assert left_crucial_lower_bound((0, 4, 5, 2, 1, 3)) == 23

    def test_bound_is_odd(self):
        for n in range(3, 8):
            for p in itertools.permutations(range(n)):
                if is_square_free(p):
                    b = left_crucial_lower_bound(p)
                    assert b == 0 or b % 2 == 1

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            left_crucial_lower_bound((0, 1, 2, 3))
        with pytest.raises(ValueError):
            left_crucial_lower_bound((0, 1))

    @pytest.mark.parametrize("length", range(7, 13))
    def test_soundness(self, length):
        # every left-crucial permutation is at least as long as the bound of each prefix
        for tau in enumerate_left_crucial(length, use_bound=False):
            for j in range(3, 7):
                assert left_crucial_lower_bound(pattern_of(tau[:j])) <= length

    @pytest.mark.long_run
    @pytest.mark.parametrize("length", range(13, 16))
    def test_soundness_long(self, length):
        for tau in enumerate_left_crucial(length, use_bound=False):
            for j in range(3, 7):
                assert left_crucial_lower_bound(pattern_of(tau[:j])) <= length


class TestLeftCrucial:
    def test_examples(self):
        assert sum(1 for _ in enumerate_left_crucial(7)) == 60
        assert sum(1 for _ in enumerate_left_crucial(7, Phase.UP)) == 30
        assert list(enumerate_left_crucial(5)) == []

    @pytest.mark.parametrize("n", range(4, 11))
    def test_matches_brute_force(self, n):
        assert set(enumerate_left_crucial(n)) == brute_set(n, is_left_crucial)

    def test_bound_pruning_changes_nothing(self):
        for n in range(7, 12):
            a = set(enumerate_left_crucial(n, use_bound=True))
            b = set(enumerate_left_crucial(n, use_bound=False))
            assert a == b

    def test_phase_filter(self):
        for p in enumerate_left_crucial(9, Phase.UP):
            assert Phase.UP.admits(p) and p[0] < p[1]
        assert Phase.UP_UP.admits((0, 1, 2, 4, 3)) and not Phase.UP_UP.admits((0, 2, 1))

    def test_stats(self):
        stats = SearchStats()
        list(enumerate_left_crucial(9, stats=stats))
        assert stats.leaves == 518 and stats.nodes > 0 and stats.pruned_square > 0

    def test_short_lengths_rejected(self):
        with pytest.raises(ValueError):
            list(enumerate_left_crucial(3))


class TestPipeline:
    def test_pack_round_trip(self):
        for p in [(), (0,), (3, 0, 2, 1), tuple(range(16)), tuple(range(20))[::-1]]:
            assert unpack_pattern(pack_pattern(p), len(p)) == p
        assert pack_pattern((1, 0)) == 0x10

    def test_suffix_counts(self):
        res = suffix_dedupe_extend(13, 3, 13, Phase.ANY, keep=0)
        direct = {pattern_of(p[3:]) for p in enumerate_left_crucial(13)}
        assert res.unique_suffix_count == len(direct)

    def test_drop_zero(self):
        res = suffix_dedupe_extend(9, 0, 9)
        assert res.unique_suffix_count == 518
        assert res.right_crucial_extension_count == 54

    def test_extensions_are_right_crucial(self):
        from bicrucial.crucial import is_right_crucial
        res = suffix_dedupe_extend(9, 2, 9, keep=10)
        assert res.extensions and all(is_right_crucial(e) for e in res.extensions)

    def test_parameters(self):
        assert pipeline_parameters(38) == (33, 7)
        for n in range(4, 60):
            source, drop = pipeline_parameters(n)
            assert 0 <= drop < source <= n

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            suffix_dedupe_extend(5, 5, 5)

    @pytest.mark.parametrize("n", [4, 6, 8, 10, 12, 14])
    def test_nonexistence_small_even(self, n):
        res = search_bicrucial_nonexistence(n)
        assert res.verdict is Verdict.VERIFIED and res.witness is None
        assert res.to_dict()["verdict"] == "verified"

    def test_witness_at_nine(self):
        res = search_bicrucial_nonexistence(9)
        assert res.verdict is Verdict.WITNESS and is_bicrucial(res.witness)

    def test_budget(self):
        res = search_bicrucial_nonexistence(13, budget=10)
        assert res.verdict is Verdict.EXHAUSTED

    @pytest.mark.parametrize("n", range(4, 12))
    def test_pipeline_completeness(self, n):
        normalised = set(normalized_bicrucial(n))
        assert orbit_closure(normalised) == brute_set(n, is_bicrucial)

    @pytest.mark.long_run
    def test_length_38_suffixes(self):
        res = suffix_dedupe_extend(33, 7, 38, Phase.UP_UP, keep=0)
        assert res.right_crucial_extension_count == 0


class TestWalker:
    def test_counts_square_free(self):
        total, _, _ = run_count(WalkConfig(8))
        assert total == 1112

    def test_threads_agree(self):
        cfg = WalkConfig(11, central=True)
        assert run_count(cfg, threads=1)[:2] == run_count(cfg, threads=2, split_depth=5)[:2]

    def test_central_needs_odd_length(self):
        with pytest.raises(ValueError):
            Walker(WalkConfig(8, central=True))

    def test_budget(self):
        from bicrucial.search import BudgetExhausted
        with pytest.raises(BudgetExhausted):
            list(Walker(WalkConfig(10), budget=5).leaves())

    def test_brute_force_cap(self):
        assert count_brute(Kind.SQUARE_FREE, 5).count == 34
