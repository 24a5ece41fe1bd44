import pytest

from bicrucial.construct import (
    EVEN_SUFFIXES,
    EVEN_TAIL_PATTERNS,
    PREFIX_8K3,
    PREFIX_EVEN,
    SUFFIX_8K3,
    WITNESSES,
    RegionLayout,
    build_8k3,
    build_even,
    claim_pi,
    construct_bicrucial,
    even_parameters,
    exists_bicrucial,
    hml_double,
    layout_8k3,
    layout_even,
    search_bicrucial,
    seed_square_free,
    witness_small_even,
)
from bicrucial.crucial import is_bicrucial, is_right_crucial
from bicrucial.errors import BadLength, Infeasible, NoWitness, NotSquareFree, Unsupported
from bicrucial.perm import is_square_free, pattern_of, satisfies_uudd


class TestHml:
    def test_examples(self):
        assert hml_double((0, 1, 2)) == (2, 0, 3, 5, 4, 1)
        assert hml_double((0, 1)) == (1, 0, 2, 3)
        out = hml_double((1, 0, 2))
        assert pattern_of(out[0::2]) == (1, 0, 2)

    @pytest.mark.parametrize("m", range(2, 16))
    def test_square_free_and_uudd(self, m):
        pi = seed_square_free(m)
        out = hml_double(pi)
        assert len(out) == 2 * m
        assert sorted(out) == list(range(2 * m))
        assert satisfies_uudd(out) and is_square_free(out)

    def test_custom_band_orders(self):
        out = hml_double((2, 1, 0, 3, 4), low_order=(2, 0, 1), high_order=(1, 0))
        assert [out[i] for i in (1, 5, 9)] == [2, 0, 1]
        assert [out[i] for i in (3, 7)] == [9, 8]

    def test_rejects_square(self):
        with pytest.raises(NotSquareFree):
            hml_double((0, 1, 2, 3))


class TestRegions:
    def test_layout(self):
        r = RegionLayout.from_sizes((2, 0, 3))
        assert r.boundaries == (0, 2, 2, 5)
        assert r.sizes == (2, 0, 3)
        assert r.total == 5 and r[1] == 2
        assert r.region_of(4) == 2 and r.region_of(0) == 0

    @pytest.mark.parametrize("n", [27, 35, 51, 99])
    def test_8k3_layout_sums(self, n):
        assert layout_8k3(n).total == n
        sigma = build_8k3(n)
        r = layout_8k3(n)
        assert {r.region_of(v) for v in sigma[:9]} == {0}
        assert {r.region_of(v) for v in sigma[-11:]} == {4}

    @pytest.mark.parametrize("n", range(48, 60, 2))
    def test_even_layout_sums(self, n):
        assert layout_even(n).total == n


def test_exists():
    assert exists_bicrucial(9) and exists_bicrucial(48) and exists_bicrucial(13)
    assert not exists_bicrucial(38) and not exists_bicrucial(11) and not exists_bicrucial(30)
    table_zeros = [n for n in range(1, 24) if n not in (9, 13, 15, 17, 19, 21, 23)]
    assert not any(exists_bicrucial(n) for n in table_zeros)


class TestSeeds:
    def test_examples(self):
        assert seed_square_free(3, (2, 1, 0)) == (2, 1, 0)
        p = seed_square_free(7, (2, 1, 0))
        assert is_square_free(p) and pattern_of(p[:3]) == (2, 1, 0)
        assert is_square_free(seed_square_free(5))

    @pytest.mark.parametrize("k", [5, 9, 13, 17, 21])
    def test_claim_pi(self, k):
        pi = claim_pi(k)
        assert len(pi) == k and is_square_free(pi)
        assert pi[1] == max(pi[:3]) and pi[0] < pi[1] > pi[2]
        assert pi[-1] == k - 1

    @pytest.mark.parametrize("k", [4, 6, 3, 1])
    def test_claim_pi_bad(self, k):
        with pytest.raises(BadLength):
            claim_pi(k)


class TestBuilders:
    def test_8k3_prefix_and_suffix(self):
        sigma = build_8k3(51)
        assert pattern_of(sigma[:9]) == PREFIX_8K3
        assert pattern_of(sigma[-11:]) == SUFFIX_8K3
        assert is_bicrucial(sigma)

    @pytest.mark.parametrize("n", [19, 26, 28, 11])
    def test_8k3_bad_length(self, n):
        with pytest.raises(BadLength):
            build_8k3(n)

    def test_even_72(self):
        sigma = build_even(72)
        assert len(sigma) == 72 and pattern_of(sigma[:32]) == PREFIX_EVEN
        assert is_bicrucial(sigma)

    @pytest.mark.parametrize("n", [46, 47, 20])
    def test_even_bad_length(self, n):
        with pytest.raises(BadLength):
            build_even(n)

    @pytest.mark.parametrize("n", range(48, 101, 2))
    def test_even_tail_pattern(self, n):
        _, ell = even_parameters(n)
        sigma = build_even(n)
        assert pattern_of(sigma[-(ell + 7):]) == EVEN_TAIL_PATTERNS[ell]

    def test_even_parameters_cover_all_suffixes(self):
        assert {even_parameters(n)[1] for n in range(48, 56, 2)} == set(EVEN_SUFFIXES)

    def test_tail_patterns_right_crucial(self):
        for pattern in EVEN_TAIL_PATTERNS.values():
            assert is_right_crucial(pattern)


class TestWitnesses:
    def test_all_bicrucial(self):
        assert set(WITNESSES) == {32, 34, 36, 40, 42, 44, 46}
        for n, sigma in WITNESSES.items():
            assert len(sigma) == n and is_bicrucial(sigma)

    def test_lookup(self):
        assert witness_small_even(34)[:6] == (8, 2, 0, 21, 30, 20)
        assert witness_small_even(44)[-4:] == (41, 40, 39, 43)
        with pytest.raises(NoWitness):
            witness_small_even(38)
        with pytest.raises(NoWitness):
            witness_small_even(50)

    def test_length_32_extends_even_prefix(self):
        assert pattern_of(WITNESSES[32][:31]) == pattern_of(PREFIX_EVEN[:31])


class TestDispatch:
    @pytest.mark.parametrize("n", [38, 10, 11, 1, 31 - 1])
    def test_infeasible(self, n):
        with pytest.raises(Infeasible):
            construct_bicrucial(n)

    @pytest.mark.parametrize("n", [9, 13, 15, 17, 27, 32, 46, 48, 59, 61 - 1])
    def test_feasible(self, n):
        sigma = construct_bicrucial(n)
        assert len(sigma) == n and is_bicrucial(sigma)

    def test_search_budget(self):
        with pytest.raises(Unsupported):
            search_bicrucial(25, budget=50)

    def test_search_small(self):
        first = search_bicrucial(9)
        assert is_bicrucial(first) and search_bicrucial(9) == first
        assert search_bicrucial(10) is None

    def test_hinted_search(self):
        sigma = search_bicrucial(29, budget=200_000, hints=[build_8k3(27)])
        assert len(sigma) == 29 and is_bicrucial(sigma)

    @pytest.mark.long_run
    @pytest.mark.parametrize("n", [19, 21, 23, 25, 29, 33, 37])
    def test_search_lengths(self, n):
        assert is_bicrucial(construct_bicrucial(n))
