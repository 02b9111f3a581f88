"""Canonical labeling by colour refinement plus individualization.

The search is generic: a structure is described by an initial colouring of
``range(n)``, a signature function used for refinement, an encoder that turns
a relabeling into a comparable code, and a predicate telling whether swapping
two points is an automorphism. The canonical code is the minimum code over all
leaves of the search tree, so equal codes mean isomorphic structures.
"""

from __future__ import annotations

from typing import Callable, Hashable, Sequence

Signature = Callable[[int, Sequence[int]], Hashable]
Encoder = Callable[[Sequence[int]], Hashable]
SwapTest = Callable[[int, int], bool]


def _rank(keys: Sequence[Hashable]) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def refine(colors: Sequence[int], signature: Signature) -> list[int]:
    """Iterate signature refinement until the number of cells is stable."""
    colors = list(colors)
    cells = len(set(colors))
    while True:
        new = _rank([(colors[v], signature(v, colors)) for v in range(len(colors))])
        new_cells = len(set(new))
        if new_cells == cells:
            return new
        colors, cells = new, new_cells


def _twin_classes(n: int, swappable: SwapTest) -> list[int]:
    rep = list(range(n))
    for u in range(n):
        if rep[u] != u:
            continue
        for v in range(u + 1, n):
            if rep[v] == v and swappable(u, v):
                rep[v] = u
    return rep


def canonical_labeling(
    n: int,
    initial: Sequence[Hashable],
    signature: Signature,
    encode: Encoder,
    swappable: SwapTest | None = None,
) -> tuple[Hashable, list[int]]:
    """Return ``(code, perm)`` where ``perm[v]`` is the canonical label of ``v``.

    ``encode`` receives such a ``perm`` and must return a value that is
    comparable across leaves.
    """
    if n == 0:
        return encode([]), []
    twin = _twin_classes(n, swappable) if swappable else list(range(n))
    best: list = [None, None]

    def search(colors: list[int]) -> None:
        colors = refine(colors, signature)
        if len(set(colors)) == n:
            code = encode(colors)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, list(colors)
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min((size, c) for c, size in sizes.items() if size > 1)[1]
        seen_twins: set[int] = set()
        for v in range(n):
            if colors[v] != target or twin[v] in seen_twins:
                continue
            seen_twins.add(twin[v])
            keys = [(colors[u], 0 if u == v else 1) for u in range(n)]
            search(_rank(keys))

    search(_rank(initial))
    return best[0], best[1]
