"""Finite posets on the ids ``0..n-1`` backed by bitset rows.

``up[a]`` is the bitmask of all ``b`` with ``a <= b`` and ``down[a]`` the
bitmask of all ``b`` with ``b <= a``. Both include ``a`` itself. Public
functions take and return ``frozenset`` element sets; the ``*_mask`` helpers
are the hot paths used by the checkers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .canon import canonical_labeling

ElementSet = frozenset


class InvalidOrderError(ValueError):
    """The supplied relation is not a partial order."""


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class FinitePoset:
    n: int
    up: tuple[int, ...]
    down: tuple[int, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if len(self.up) != self.n:
            raise InvalidOrderError("need one up-set row per element")
        if not self.down:
            down = [0] * self.n
            for a in range(self.n):
                for b in bits(self.up[a]):
                    down[b] |= 1 << a
            object.__setattr__(self, "down", tuple(down))
        self._validate()

    def _validate(self) -> None:
        full = (1 << self.n) - 1
        for a in range(self.n):
            row = self.up[a]
            if row & ~full:
                raise InvalidOrderError(f"element {a} related to out-of-range ids")
            if not row >> a & 1:
                raise InvalidOrderError(f"not reflexive at {a}")
            for b in bits(row & ~(1 << a)):
                if self.up[b] >> a & 1:
                    raise InvalidOrderError(f"not antisymmetric: {a} <= {b} <= {a}")
                if self.up[b] & ~row:
                    raise InvalidOrderError(f"not transitive through {a} <= {b}")

    @classmethod
    def from_leq(cls, matrix: Sequence[Sequence[bool]]) -> FinitePoset:
        n = len(matrix)
        return cls(n, tuple(to_mask(b for b in range(n) if matrix[a][b]) for a in range(n)))

    @property
    def elements(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def leq_matrix(self) -> list[list[bool]]:
        return [[self.leq(a, b) for b in range(self.n)] for a in range(self.n)]

    @cached_property
    def meet_table(self) -> tuple[tuple[int | None, ...], ...]:
        return tuple(
            tuple(_greatest(self, self.down[a] & self.down[b]) for b in range(self.n))
            for a in range(self.n)
        )

    @cached_property
    def join_table(self) -> tuple[tuple[int | None, ...], ...]:
        return tuple(
            tuple(_least(self, self.up[a] & self.up[b]) for b in range(self.n))
            for a in range(self.n)
        )

    @cached_property
    def lower_cover_masks(self) -> tuple[int, ...]:
        return tuple(_maximal_mask(self, self.down[y] & ~(1 << y)) for y in range(self.n))

    @cached_property
    def upper_cover_masks(self) -> tuple[int, ...]:
        return tuple(_minimal_mask(self, self.up[x] & ~(1 << x)) for x in range(self.n))

    def __str__(self) -> str:
        return to_text(self)


def _greatest(P: FinitePoset, mask: int) -> int | None:
    for m in bits(mask):
        if P.down[m] & mask == mask:
            return m
    return None


def _least(P: FinitePoset, mask: int) -> int | None:
    for m in bits(mask):
        if P.up[m] & mask == mask:
            return m
    return None


def _maximal_mask(P: FinitePoset, mask: int) -> int:
    return to_mask(m for m in bits(mask) if P.up[m] & mask == 1 << m)


def _minimal_mask(P: FinitePoset, mask: int) -> int:
    return to_mask(m for m in bits(mask) if P.down[m] & mask == 1 << m)


def _check_element(P: FinitePoset, x: int) -> None:
    if not 0 <= x < P.n:
        raise IndexError(f"element {x} not in poset of size {P.n}")


# -- construction -----------------------------------------------------------

def from_cover_relations(
    n: int, covers: Iterable[tuple[int, int]], warnings: list[str] | None = None
) -> FinitePoset:
    """Build the reflexive-transitive closure of a cover digraph.

    Pairs that turn out to be implied by other pairs are accepted; a message
    for each is appended to ``warnings`` when a list is given.
    """
    covers = list(covers)
    up = [1 << a for a in range(n)]
    for lo, hi in covers:
        if not (0 <= lo < n and 0 <= hi < n):
            raise InvalidOrderError(f"pair ({lo}, {hi}) out of range for n={n}")
        if lo == hi:
            raise InvalidOrderError(f"cycle: self-loop at {lo}")
        up[lo] |= 1 << hi
    # closure in reverse topological order would need a sort; Warshall is enough at this size
    for k in range(n):
        for a in range(n):
            if up[a] >> k & 1:
                up[a] |= up[k]
    for a in range(n):
        for b in bits(up[a] & ~(1 << a)):
            if up[b] >> a & 1:
                raise InvalidOrderError(f"cycle through {a} and {b}")
    P = FinitePoset(n, tuple(up))
    if warnings is not None:
        for lo, hi in covers:
            if not P.upper_cover_masks[lo] >> hi & 1:
                warnings.append(f"pair {lo} < {hi} is not a cover; implied by transitivity")
    return P


def antichain(n: int) -> FinitePoset:
    return FinitePoset(n, tuple(1 << a for a in range(n)))


def chain(n: int) -> FinitePoset:
    return FinitePoset(n, tuple(((1 << n) - 1) & ~((1 << a) - 1) for a in range(n)))


# -- sets and bounds ----------------------------------------------------------

def up_set(P: FinitePoset, x: int) -> ElementSet:
    _check_element(P, x)
    return frozenset(bits(P.up[x]))


def down_set(P: FinitePoset, x: int) -> ElementSet:
    _check_element(P, x)
    return frozenset(bits(P.down[x]))


def upper_bounds_mask(P: FinitePoset, mask: int) -> int:
    if not mask:
        raise ValueError("upper bounds of the empty set are not defined here")
    out = P.full_mask
    for q in bits(mask):
        out &= P.up[q]
    return out


def lower_bounds_mask(P: FinitePoset, mask: int) -> int:
    if not mask:
        raise ValueError("lower bounds of the empty set are not defined here")
    out = P.full_mask
    for q in bits(mask):
        out &= P.down[q]
    return out


def upper_bounds(P: FinitePoset, S: Iterable[int]) -> ElementSet:
    return frozenset(bits(upper_bounds_mask(P, to_mask(S))))


def lower_bounds(P: FinitePoset, S: Iterable[int]) -> ElementSet:
    return frozenset(bits(lower_bounds_mask(P, to_mask(S))))


def meet(P: FinitePoset, a: int, b: int) -> int | None:
    """Greatest lower bound of ``a`` and ``b``, or ``None`` when it does not exist."""
    _check_element(P, a)
    _check_element(P, b)
    return P.meet_table[a][b]


def join(P: FinitePoset, a: int, b: int) -> int | None:
    _check_element(P, a)
    _check_element(P, b)
    return P.join_table[a][b]


def meet_set(P: FinitePoset, S: Iterable[int]) -> int | None:
    return _greatest(P, lower_bounds_mask(P, to_mask(S)))


def join_set(P: FinitePoset, S: Iterable[int]) -> int | None:
    return _least(P, upper_bounds_mask(P, to_mask(S)))


def minimal_elements(P: FinitePoset, S: Iterable[int] | None = None) -> ElementSet:
    mask = P.full_mask if S is None else to_mask(S)
    return frozenset(bits(_minimal_mask(P, mask)))


def maximal_elements(P: FinitePoset, S: Iterable[int] | None = None) -> ElementSet:
    mask = P.full_mask if S is None else to_mask(S)
    return frozenset(bits(_maximal_mask(P, mask)))


# -- covers and irreducibility --------------------------------------------------

def lower_covers(P: FinitePoset, y: int) -> ElementSet:
    _check_element(P, y)
    return frozenset(bits(P.lower_cover_masks[y]))


def upper_covers(P: FinitePoset, x: int) -> ElementSet:
    _check_element(P, x)
    return frozenset(bits(P.upper_cover_masks[x]))


def cover_pairs(P: FinitePoset) -> list[tuple[int, int]]:
    return [(lo, hi) for lo in range(P.n) for hi in bits(P.upper_cover_masks[lo])]


def _single(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def is_irreducible(P: FinitePoset, x: int) -> bool:
    _check_element(P, x)
    return _single(P.lower_cover_masks[x]) or _single(P.upper_cover_masks[x])


def unique_lower_cover(P: FinitePoset, x: int) -> int | None:
    m = P.lower_cover_masks[x]
    return m.bit_length() - 1 if _single(m) else None


# -- derived posets ---------------------------------------------------------

def induced_subposet(P: FinitePoset, S: Iterable[int]) -> tuple[FinitePoset, dict[int, int]]:
    """Restrict the order to ``S``; returns the subposet and the old->new id map.

    New ids follow the ascending order of the old ones.
    """
    keep = sorted(set(S))
    if not keep:
        raise ValueError("induced subposet needs a nonempty element set")
    for x in keep:
        _check_element(P, x)
    remap = {old: new for new, old in enumerate(keep)}
    up = tuple(to_mask(remap[b] for b in bits(P.up[a]) if b in remap) for a in keep)
    return FinitePoset(len(keep), up), remap


def dual(P: FinitePoset) -> FinitePoset:
    return FinitePoset(P.n, P.down, P.up)


def relabel(P: FinitePoset, perm: Sequence[int]) -> FinitePoset:
    """Poset isomorphic to ``P`` where old element ``a`` becomes ``perm[a]``."""
    up = [0] * P.n
    for a in range(P.n):
        up[perm[a]] = to_mask(perm[b] for b in bits(P.up[a]))
    return FinitePoset(P.n, tuple(up))


def is_chain(P: FinitePoset, S: Iterable[int]) -> bool:
    return is_chain_mask(P, to_mask(S))


def is_chain_mask(P: FinitePoset, mask: int) -> bool:
    return all((P.up[a] | P.down[a]) & mask == mask for a in bits(mask))


def height_depth(P: FinitePoset) -> tuple[list[int], list[int]]:
    """Length of the longest chain ending (height) and starting (depth) at each element."""
    order = sorted(range(P.n), key=lambda a: bin(P.down[a]).count("1"))
    height = [0] * P.n
    for a in order:
        below = bits(P.lower_cover_masks[a])
        height[a] = 1 + max((height[b] for b in below), default=-1)
    depth = [0] * P.n
    for a in reversed(order):
        above = bits(P.upper_cover_masks[a])
        depth[a] = 1 + max((depth[b] for b in above), default=-1)
    return height, depth


# -- canonical form -----------------------------------------------------------

def _encode(P: FinitePoset, perm: Sequence[int]) -> bytes:
    rows = [0] * P.n
    for a in range(P.n):
        rows[perm[a]] = to_mask(perm[b] for b in bits(P.up[a]))
    width = max(1, (P.n + 7) // 8)
    return bytes([P.n]) + b"".join(r.to_bytes(width, "little") for r in rows)


def canonical_labeling_of(P: FinitePoset, marked: int | None = None) -> tuple[bytes, list[int]]:
    """Canonical key and the permutation (old id -> canonical id) realising it.

    With ``marked`` the key describes the pair (poset, distinguished element).
    """
    height, depth = height_depth(P)
    initial = [
        (a == marked, bin(P.down[a]).count("1"), bin(P.up[a]).count("1"), height[a], depth[a])
        for a in range(P.n)
    ]

    def signature(v: int, colors):
        return (
            tuple(sorted(colors[b] for b in bits(P.up[v] & ~(1 << v)))),
            tuple(sorted(colors[b] for b in bits(P.down[v] & ~(1 << v)))),
        )

    def swappable(u: int, v: int) -> bool:
        if marked in (u, v):
            return False
        keep = ~((1 << u) | (1 << v))
        return P.up[u] & keep == P.up[v] & keep and P.down[u] & keep == P.down[v] & keep

    def encode(perm) -> bytes:
        code = _encode(P, perm)
        return code if marked is None else code + bytes([perm[marked]])

    return canonical_labeling(P.n, initial, signature, encode, swappable)


def canonical_form(P: FinitePoset, marked: int | None = None) -> bytes:
    """Key equal for two posets exactly when they are isomorphic."""
    return canonical_labeling_of(P, marked)[0]


def canonical_poset(P: FinitePoset) -> FinitePoset:
    return relabel(P, canonical_labeling_of(P)[1])


def brute_force_isomorphic(P: FinitePoset, Q: FinitePoset) -> bool:
    """All-bijections isomorphism test; only for tiny posets."""
    if P.n != Q.n:
        return False
    for perm in itertools.permutations(range(P.n)):
        if all(Q.up[perm[a]] == to_mask(perm[b] for b in bits(P.up[a])) for a in range(P.n)):
            return True
    return False


# -- text format ----------------------------------------------------------------

class PosetParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def to_text(P: FinitePoset) -> str:
    lines = [f"n {P.n}"]
    lines += [f"{lo} < {hi}" for lo, hi in cover_pairs(P)]
    return "\n".join(lines) + "\n"


def parse_poset(text: str, warnings: list[str] | None = None) -> FinitePoset:
    """Parse ``n <count>`` followed by ``<i> < <j>`` lines; ``#`` starts a comment."""
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise PosetParseError("expected 'n <count>' header", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise PosetParseError(f"bad count {parts[1]!r}", lineno) from None
            if n < 0:
                raise PosetParseError("count must be nonnegative", lineno)
            continue
        left, sep, right = line.partition("<")
        try:
            lo, hi = int(left), int(right)
        except ValueError:
            raise PosetParseError(f"expected '<i> < <j>', got {raw.strip()!r}", lineno) from None
        if not sep or not (0 <= lo < n and 0 <= hi < n):
            raise PosetParseError(f"ids must be in 0..{n - 1}", lineno)
        pairs.append((lo, hi, lineno))
    if n is None:
        raise PosetParseError("missing 'n <count>' header")
    try:
        return from_cover_relations(n, [(lo, hi) for lo, hi, _ in pairs], warnings)
    except InvalidOrderError as exc:
        raise PosetParseError(str(exc)) from exc


def parse_poset_stream(text: str) -> list[FinitePoset]:
    """Split a ``---`` separated stream into posets."""
    chunks, current = [], []
    for line in text.splitlines():
        if line.strip() == "---":
            chunks.append("\n".join(current))
            current = []
        else:
            current.append(line)
    chunks.append("\n".join(current))
    return [parse_poset(c) for c in chunks if _has_content(c)]


def _has_content(text: str) -> bool:
    return any(line.split("#", 1)[0].strip() for line in text.splitlines())
