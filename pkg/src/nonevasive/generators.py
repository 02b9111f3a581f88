"""Exhaustive and random posets, plus the named families used in tests."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator

from .poset import (
    FinitePoset,
    antichain,
    bits,
    brute_force_isomorphic,
    canonical_labeling_of,
    chain,
    from_cover_relations,
    relabel,
    to_mask,
)

MAX_EXHAUSTIVE_N = 7

# Unlabeled poset counts for n = 0..7 (OEIS A000112); n <= 5 re-derived by the
# labeled-enumeration oracle in the test suite.
KNOWN_COUNTS = (1, 1, 2, 5, 16, 63, 318, 2045)


def _down_sets(P: FinitePoset) -> Iterator[int]:
    """All order ideals of ``P`` as bitmasks, the empty one included."""
    elems = sorted(range(P.n), key=lambda a: bin(P.down[a]).count("1"))

    def rec(i: int, ideal: int, banned: int) -> Iterator[int]:
        if i == len(elems):
            yield ideal
            return
        a = elems[i]
        yield from rec(i + 1, ideal, banned | P.up[a])
        if not banned >> a & 1 and P.down[a] & ~(1 << a) & ~ideal == 0:
            yield from rec(i + 1, ideal | 1 << a, banned)

    yield from rec(0, 0, 0)


def _extend_by_maximal(P: FinitePoset, below: int) -> FinitePoset:
    new = P.n
    up = [row | (1 << new if below >> a & 1 else 0) for a, row in enumerate(P.up)]
    up.append(1 << new)
    return FinitePoset(P.n + 1, tuple(up))


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[FinitePoset, ...]:
    if n == 0:
        return (FinitePoset(0, ()),)
    seen: dict[bytes, FinitePoset] = {}
    for base in _classes(n - 1):
        for ideal in _down_sets(base):
            Q = _extend_by_maximal(base, ideal)
            key, perm = canonical_labeling_of(Q)
            if key not in seen:
                seen[key] = relabel(Q, perm)
    return tuple(seen[k] for k in sorted(seen))


def all_posets(n: int, allow_large: bool = False) -> Iterator[FinitePoset]:
    """One canonical representative per isomorphism class of ``n``-element posets.

    The order of the stream is deterministic (sorted by canonical key).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_EXHAUSTIVE_N and not allow_large:
        raise ValueError(f"exhaustive generation limited to n <= {MAX_EXHAUSTIVE_N}")
    yield from _classes(n)


def all_posets_up_to(max_n: int, min_n: int = 1) -> Iterator[FinitePoset]:
    for n in range(min_n, max_n + 1):
        yield from all_posets(n)


def labeled_posets(n: int) -> Iterator[FinitePoset]:
    """Every partial order on ``0..n-1`` by brute force over pair orientations.

    Independent of the canonical machinery; usable up to n = 5.
    """
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        up = [1 << a for a in range(n)]
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                up[a] |= 1 << b
            elif c == 2:
                up[b] |= 1 << a
        if all(up[b] & ~up[a] == 0 for a in range(n) for b in bits(up[a])):
            yield FinitePoset(n, tuple(up))


def automorphism_count(P: FinitePoset) -> int:
    count = 0
    for perm in itertools.permutations(range(P.n)):
        if all(P.up[perm[a]] == to_mask(perm[b] for b in bits(P.up[a])) for a in range(P.n)):
            count += 1
    return count


def oracle_classes(n: int) -> list[FinitePoset]:
    """Isomorphism-class representatives by pairwise brute-force isomorphism."""
    reps: list[FinitePoset] = []
    for P in labeled_posets(n):
        if not any(brute_force_isomorphic(P, R) for R in reps):
            reps.append(P)
    return reps


def random_poset(n: int, edge_bias: float, seed: int) -> FinitePoset:
    """Random DAG on a shuffled linear order, transitively closed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= edge_bias <= 1.0:
        raise ValueError("edge_bias must lie in [0, 1]")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    covers = [
        (order[i], order[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_bias
    ]
    return from_cover_relations(n, covers)


def diamond() -> FinitePoset:
    return from_cover_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def boolean_lattice(k: int) -> FinitePoset:
    n = 1 << k
    return FinitePoset(n, tuple(to_mask(b for b in range(n) if a & b == a) for a in range(n)))


def crown(k: int) -> FinitePoset:
    """Minimal ``0..k-1`` and maximal ``k..2k-1``; ``k+i`` sits above ``i`` and ``i+1 mod k``."""
    if k < 2:
        raise ValueError("crown needs k >= 2")
    covers = [(i, k + i) for i in range(k)] + [((i + 1) % k, k + i) for i in range(k)]
    return from_cover_relations(2 * k, covers)


FAMILIES = {
    "chain": chain,
    "antichain": antichain,
    "diamond": lambda k: diamond(),
    "boolean": boolean_lattice,
    "crown": crown,
}


def named(family: str, k: int) -> FinitePoset:
    try:
        build = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return build(k)
