"""Dismantlability by irreducibles and the order-preserving-map connectivity oracle."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from threading import Lock
from typing import Iterator, Mapping, Sequence

from .poset import FinitePoset, bits, canonical_form, induced_subposet

MAX_MAP_ENUMERATION_N = 6


@dataclass(frozen=True)
class DismantlingSequence:
    """``order[0]`` is the last remaining element, ``order[-1]`` is removed first."""

    order: tuple[int, ...]

    def to_json(self) -> dict:
        return {"order": list(self.order)}

    @classmethod
    def from_json(cls, data: Mapping) -> DismantlingSequence:
        return cls(tuple(int(x) for x in data["order"]))


def _irreducible_in(P: FinitePoset, mask: int, x: int) -> bool:
    below = P.down[x] & mask & ~(1 << x)
    above = P.up[x] & mask & ~(1 << x)
    lower = [m for m in bits(below) if P.up[m] & below == 1 << m]
    if len(lower) == 1:
        return True
    upper = [m for m in bits(above) if P.down[m] & above == 1 << m]
    return len(upper) == 1


def irreducibles_in(P: FinitePoset, mask: int) -> list[int]:
    return [x for x in bits(mask) if _irreducible_in(P, mask, x)]


class DismantleMemo:
    def __init__(self):
        self._table: dict[bytes, bool] = {}
        self._lock = Lock()

    def get(self, key: bytes) -> bool | None:
        with self._lock:
            return self._table.get(key)

    def put(self, key: bytes, value: bool) -> None:
        with self._lock:
            self._table[key] = value


_SHARED_MEMO = DismantleMemo()


def _backtrack(P: FinitePoset, mask: int, memo: DismantleMemo | None) -> list[int] | None:
    if mask & (mask - 1) == 0:
        return bits(mask)
    key = None
    if memo is not None:
        key = canonical_form(induced_subposet(P, bits(mask))[0])
        if memo.get(key) is False:
            return None
    for x in irreducibles_in(P, mask):
        rest = _backtrack(P, mask & ~(1 << x), memo)
        if rest is not None:
            if memo is not None:
                memo.put(key, True)
            return rest + [x]
    if memo is not None:
        memo.put(key, False)
    return None


def _greedy(P: FinitePoset, mask: int) -> list[int] | None:
    removed = []
    while mask & (mask - 1):
        cands = irreducibles_in(P, mask)
        if not cands:
            return None
        removed.append(cands[0])
        mask &= ~(1 << cands[0])
    return bits(mask) + removed[::-1]


def dismantling_sequence(
    P: FinitePoset, method: str = "backtrack", memo: DismantleMemo | None = _SHARED_MEMO
) -> DismantlingSequence | None:
    """A sequence removing one irreducible at a time down to one point, if any exists.

    ``method="greedy"`` always removes the lowest-id irreducible and never
    backtracks; the test suite checks it agrees with backtracking for n <= 6.
    """
    if P.n == 0:
        raise ValueError("dismantlability is defined for nonempty posets only")
    if method == "backtrack":
        order = _backtrack(P, P.full_mask, memo)
    elif method == "greedy":
        order = _greedy(P, P.full_mask)
    else:
        raise ValueError(f"unknown method {method!r}")
    return None if order is None else DismantlingSequence(tuple(order))


def is_dismantlable(P: FinitePoset, method: str = "backtrack") -> bool:
    return dismantling_sequence(P, method) is not None


def verify_dismantling_sequence(P: FinitePoset, seq: DismantlingSequence | Sequence[int]) -> bool:
    order = tuple(seq.order if isinstance(seq, DismantlingSequence) else seq)
    if sorted(order) != list(range(P.n)):
        raise ValueError("dismantling sequence must be a permutation of the elements")
    mask = P.full_mask
    for x in reversed(order[1:]):
        if not _irreducible_in(P, mask, x):
            return False
        mask &= ~(1 << x)
    return True


# -- order-preserving self maps ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class PosetMap:
    """A self-map restricted to ``domain``; values are ids of the same poset."""

    poset: FinitePoset
    values: Mapping[int, int]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PosetMap):
            return NotImplemented
        return self.poset == other.poset and dict(self.values) == dict(other.values)

    def __hash__(self) -> int:
        return hash((self.poset, tuple(sorted(self.values.items()))))

    def __call__(self, x: int) -> int:
        return self.values[x]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.values)

    def is_order_preserving(self) -> bool:
        P = self.poset
        return all(
            P.leq(self.values[a], self.values[b])
            for a in self.values for b in self.values if P.leq(a, b)
        )

    def maps_into(self, target: frozenset[int]) -> bool:
        return all(v in target for v in self.values.values())

    def pointwise_leq(self, other: PosetMap) -> bool:
        return all(self.poset.leq(self.values[x], other.values[x]) for x in self.values)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.values[x] for x in sorted(self.values))


def identity_map(P: FinitePoset, domain=None) -> PosetMap:
    dom = range(P.n) if domain is None else domain
    return PosetMap(P, {x: x for x in dom})


def constant_map(P: FinitePoset, p: int, domain=None) -> PosetMap:
    dom = range(P.n) if domain is None else domain
    return PosetMap(P, {x: p for x in dom})


def _guard(P: FinitePoset) -> None:
    if P.n > MAX_MAP_ENUMERATION_N:
        raise ValueError(f"map enumeration limited to n <= {MAX_MAP_ENUMERATION_N}")


def _linear_extension(P: FinitePoset) -> list[int]:
    return sorted(range(P.n), key=lambda a: (bin(P.down[a]).count("1"), a))


def iter_order_preserving(P: FinitePoset) -> Iterator[tuple[int, ...]]:
    """Value tuples ``f[0..n-1]`` of all order-preserving self maps."""
    order = _linear_extension(P)
    f = [0] * P.n

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == P.n:
            yield tuple(f)
            return
        x = order[i]
        allowed = P.full_mask
        for y in bits(P.down[x] & ~(1 << x)):
            allowed &= P.up[f[y]]
        for v in bits(allowed):
            f[x] = v
            yield from rec(i + 1)

    yield from rec(0)


def all_order_preserving_maps(P: FinitePoset) -> set[PosetMap]:
    _guard(P)
    return {PosetMap(P, dict(enumerate(vals))) for vals in iter_order_preserving(P)}


def _one_point_moves(P: FinitePoset, f: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for x in range(P.n):
        lo = P.full_mask
        for y in bits(P.up[x] & ~(1 << x)):
            lo &= P.down[f[y]]
        hi = P.full_mask
        for y in bits(P.down[x] & ~(1 << x)):
            hi &= P.up[f[y]]
        # comparable to f(x), inside the window forced by the neighbours
        for v in bits(lo & hi & (P.up[f[x]] | P.down[f[x]]) & ~(1 << f[x])):
            yield f[:x] + (v,) + f[x + 1:]


def identity_connected_to_constant(P: FinitePoset, method: str = "moves") -> bool:
    """Whether id_P and some constant map share a component of the comparability graph on P^P.

    ``method="moves"`` walks edges between maps that are comparable and differ
    at one point; any comparable pair f < g is joined by such a path, so the
    components coincide with those of the full comparability graph. ``"full"``
    builds the full graph and is only practical for n <= 4.
    """
    _guard(P)
    if P.n == 0:
        raise ValueError("need a nonempty poset")
    identity = tuple(range(P.n))
    constants = {(p,) * P.n for p in range(P.n)}
    if method == "full":
        maps = list(iter_order_preserving(P))
        adj: dict[tuple, list[tuple]] = {m: [] for m in maps}
        for i, f in enumerate(maps):
            for g in maps[i + 1:]:
                if all(P.leq(a, b) for a, b in zip(f, g)) or all(P.leq(b, a) for a, b in zip(f, g)):
                    adj[f].append(g)
                    adj[g].append(f)
        neighbours = adj.__getitem__
    elif method == "moves":
        def neighbours(f):
            return _one_point_moves(P, f)
    else:
        raise ValueError(f"unknown method {method!r}")
    seen = {identity}
    queue = deque([identity])
    while queue:
        f = queue.popleft()
        if f in constants:
            return True
        for g in neighbours(f):
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return False
