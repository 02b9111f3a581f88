import math
from fractions import Fraction

import pytest

from nonevasive.dismantle import is_dismantlable
from nonevasive.generators import (
    KNOWN_COUNTS,
    all_posets,
    automorphism_count,
    boolean_lattice,
    crown,
    diamond,
    labeled_posets,
    named,
    oracle_classes,
    random_poset,
)
from nonevasive.poset import (
    FinitePoset,
    antichain,
    brute_force_isomorphic,
    canonical_form,
    chain,
    is_irreducible,
)


def orbit_count(n):
    """Classes = sum over labeled posets of |Aut| / n! (orbit-stabilizer)."""
    total = sum(Fraction(automorphism_count(P), math.factorial(n)) for P in labeled_posets(n))
    assert total.denominator == 1
    return int(total)


class TestExhaustive:
    @pytest.mark.parametrize("n, expected", [(1, 1), (3, 5), (5, 63)])
    def test_examples(self, n, expected):
        assert len(list(all_posets(n))) == expected

    @pytest.mark.parametrize("n", range(1, 6))
    def test_counts_match_orbit_oracle(self, n):
        assert len(list(all_posets(n))) == orbit_count(n)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_classes_match_brute_force_dedup(self, n):
        ours = list(all_posets(n))
        reps = oracle_classes(n)
        assert len(ours) == len(reps)
        for R in reps:
            assert sum(brute_force_isomorphic(R, P) for P in ours) == 1

    def test_labeled_counts_match_fixture(self, counts_fixture):
        for n in range(1, 6):
            assert sum(1 for _ in labeled_posets(n)) == counts_fixture["labeled"][str(n)]

    def test_counts_match_frozen_fixture(self, counts_fixture):
        for n_str, count in counts_fixture["unlabeled"].items():
            assert len(list(all_posets(int(n_str)))) == count

    def test_known_sequence_through_7(self):
        assert [len(list(all_posets(n))) for n in range(8)] == list(KNOWN_COUNTS)

    def test_pairwise_non_isomorphic_and_valid(self):
        for n in range(1, 7):
            ps = list(all_posets(n))
            assert len({canonical_form(P) for P in ps}) == len(ps)
            for P in ps:
                FinitePoset(P.n, P.up)

    def test_deterministic_order(self):
        assert list(all_posets(5)) == list(all_posets(5))

    def test_size_guard(self):
        with pytest.raises(ValueError):
            next(all_posets(8))


class TestRandom:
    def test_bias_extremes(self):
        assert random_poset(5, 0.0, 1) == antichain(5)
        P = random_poset(5, 1.0, 1)
        assert brute_force_isomorphic(P, chain(5))

    def test_deterministic(self):
        for seed in range(20):
            assert random_poset(6, 0.4, seed).leq_matrix() == random_poset(6, 0.4, seed).leq_matrix()

    def test_seeds_differ(self):
        assert len({random_poset(6, 0.4, seed) for seed in range(30)}) > 10

    @pytest.mark.parametrize("args", [(0, 0.5, 0), (3, -0.1, 0), (3, 1.5, 0)])
    def test_bad_arguments(self, args):
        with pytest.raises(ValueError):
            random_poset(*args)


class TestNamed:
    def test_chain(self):
        P = named("chain", 3)
        assert all(P.comparable(a, b) for a in range(3) for b in range(3))

    def test_boolean_two_is_diamond(self):
        assert brute_force_isomorphic(named("boolean", 2), diamond())
        assert boolean_lattice(3).n == 8

    def test_crown_has_no_irreducibles(self):
        C = crown(3)
        assert C.n == 6
        assert not any(is_irreducible(C, x) for x in range(6))
        assert not is_dismantlable(C)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            named("lattice", 2)
