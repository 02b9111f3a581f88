import itertools
import json
from pathlib import Path

import pytest

from nonevasive.generators import all_posets, diamond
from nonevasive.poset import FinitePoset, antichain, chain, from_cover_relations

FIXTURES = Path(__file__).parent / "fixtures"


def small_posets(max_n):
    for n in range(1, max_n + 1):
        yield from all_posets(n)


def leq_closure(n, pairs):
    """Floyd-Warshall reachability, kept independent of the bitset code."""
    R = [[a == b for b in range(n)] for a in range(n)]
    for a, b in pairs:
        R[a][b] = True
    for k, i, j in itertools.product(range(n), repeat=3):
        if R[i][k] and R[k][j]:
            R[i][j] = True
    return R


@pytest.fixture(scope="session")
def counts_fixture():
    return json.loads((FIXTURES / "poset_counts.json").read_text())


@pytest.fixture
def chain2():
    return chain(2)


@pytest.fixture
def chain3():
    return chain(3)


@pytest.fixture
def anti2():
    return antichain(2)


@pytest.fixture
def anti3():
    return antichain(3)


@pytest.fixture
def dia():
    return diamond()


@pytest.fixture
def vee():
    # 0 below 1 and 2
    return from_cover_relations(3, [(0, 1), (0, 2)])


@pytest.fixture
def wedge():
    # 2 above 0 and 1
    return from_cover_relations(3, [(0, 2), (1, 2)])


@pytest.fixture
def bowtie():
    # minimal 0, 1; maximal 2, 3; all four cross relations
    return from_cover_relations(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.fixture
def npos():
    return from_cover_relations(4, [(0, 2), (1, 2), (1, 3)])


@pytest.fixture(scope="session")
def posets_upto5() -> list[FinitePoset]:
    return list(small_posets(5))


@pytest.fixture(scope="session")
def posets_upto6() -> list[FinitePoset]:
    return list(small_posets(6))
