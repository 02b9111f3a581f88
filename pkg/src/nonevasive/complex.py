"""Finite abstract simplicial complexes with the empty face as a face.

Vertices are bit positions; ``labels[i]`` is the external name of vertex
``i``. Faces are bitmasks. The empty family (no faces at all) and the void
complex ``{∅}`` are different objects and both are representable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .canon import canonical_labeling
from .poset import FinitePoset, bits, is_chain_mask, to_mask


class FaceError(ValueError):
    """A face argument is not a face of the complex."""


def down_closure(faces: Iterable[int]) -> frozenset[int]:
    closed: set[int] = set()
    stack = list(faces)
    while stack:
        f = stack.pop()
        if f in closed:
            continue
        closed.add(f)
        stack.extend(f & ~(1 << v) for v in bits(f))
    return frozenset(closed)


def maximal_faces(faces: Iterable[int]) -> frozenset[int]:
    ordered = sorted(set(faces), key=lambda f: -bin(f).count("1"))
    kept: list[int] = []
    for f in ordered:
        if not any(f & g == f for g in kept):
            kept.append(f)
    return frozenset(kept)


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    faces: frozenset[int]
    labels: tuple[Hashable, ...] = field(default=())

    def __post_init__(self):
        faces = frozenset(self.faces)
        object.__setattr__(self, "faces", faces)
        top = max((f.bit_length() for f in faces), default=0)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(top)))
        elif len(self.labels) < top:
            raise ValueError("labels do not cover every vertex position")

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_faces(
        cls, faces: Iterable[Iterable[Hashable]], universe: Sequence[Hashable] | None = None
    ) -> SimplicialComplex:
        """Build the down-closure of the given faces over labelled vertices."""
        faces = [tuple(f) for f in faces]
        if universe is None:
            seen: dict[Hashable, None] = {}
            for f in faces:
                for x in f:
                    seen.setdefault(x, None)
            universe = sorted(seen, key=_label_sort_key)
        index = {x: i for i, x in enumerate(universe)}
        masks = [to_mask(index[x] for x in f) for f in faces]
        return cls(down_closure(masks), tuple(universe))

    # -- basic queries -----------------------------------------------------------

    @cached_property
    def vertex_mask(self) -> int:
        return sum(1 << v for v in range(len(self.labels)) if (1 << v) in self.faces)

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.labels[v] for v in bits(self.vertex_mask))

    @cached_property
    def facets(self) -> frozenset[int]:
        return maximal_faces(self.faces)

    def is_down_closed(self) -> bool:
        return all(f & ~(1 << v) in self.faces for f in self.faces for v in bits(f))

    def is_valid(self) -> bool:
        return self.is_down_closed() and (not self.faces or 0 in self.faces)

    def mask_of(self, labels: Iterable[Hashable]) -> int:
        index = {x: i for i, x in enumerate(self.labels)}
        try:
            return to_mask(index[x] for x in labels)
        except KeyError as exc:
            raise FaceError(f"unknown vertex label {exc.args[0]!r}") from None

    def labelled(self, mask: int) -> frozenset:
        return frozenset(self.labels[v] for v in bits(mask))

    def face_sets(self) -> frozenset[frozenset]:
        return frozenset(self.labelled(f) for f in self.faces)

    def __contains__(self, face) -> bool:
        return self.mask_of(face) in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        if self.labels == other.labels:
            return self.faces == other.faces
        return self.face_sets() == other.face_sets()

    def __hash__(self) -> int:
        return hash(self.face_sets())

    def __repr__(self) -> str:
        shown = sorted((sorted(s, key=_label_sort_key) for s in self.face_sets()),
                       key=lambda f: (len(f), [_label_sort_key(x) for x in f]))
        return f"SimplicialComplex({shown})"

    def _with(self, faces: Iterable[int]) -> SimplicialComplex:
        return SimplicialComplex(frozenset(faces), self.labels)

    def _face_mask(self, sigma) -> int:
        mask = sigma if isinstance(sigma, int) else self.mask_of(sigma)
        if mask not in self.faces:
            raise FaceError(f"{sorted(self.labelled(mask), key=_label_sort_key)} is not a face")
        return mask

    # -- operations ----------------------------------------------------------------

    def restrict(self, W: Iterable[Hashable] | int) -> SimplicialComplex:
        w = W if isinstance(W, int) else self.mask_of(W)
        return self._with(f for f in self.faces if f & ~w == 0)

    def deletion(self, sigma) -> SimplicialComplex:
        """Faces avoiding every vertex of ``sigma``; ``sigma`` may be labels or a mask."""
        s = self._face_mask(sigma)
        return self._with(f for f in self.faces if f & s == 0)

    def star(self, sigma) -> SimplicialComplex:
        s = self._face_mask(sigma)
        return self._with(f for f in self.faces if f | s in self.faces)

    def link(self, sigma) -> SimplicialComplex:
        s = self._face_mask(sigma)
        return self._with(f for f in self.faces if f & s == 0 and f | s in self.faces)

    def cone_peaks(self) -> frozenset:
        return frozenset(self.labels[v] for v in self.cone_peak_indices())

    def cone_peak_indices(self) -> list[int]:
        # star(v) = Σ iff every facet contains v
        facets = self.facets
        return [v for v in bits(self.vertex_mask) if all(f >> v & 1 for f in facets)]

    def is_cone(self) -> bool:
        return bool(self.cone_peak_indices())

    def reduced_euler_characteristic(self) -> int:
        return sum(1 if bin(f).count("1") % 2 else -1 for f in self.faces)

    # -- canonical form --------------------------------------------------------------

    def canonical_labeling(self) -> tuple[tuple, list[int], list[int]]:
        """``(code, verts, perm)``; vertex ``verts[i]`` gets canonical label ``perm[i]``."""
        return canonical_key(self.facets, self.vertex_mask)


def _label_sort_key(x) -> tuple:
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


def canonical_key(facets: frozenset[int], vertex_mask: int) -> tuple[tuple, list[int], list[int]]:
    verts = bits(vertex_mask)
    pos = {v: i for i, v in enumerate(verts)}
    local = [to_mask(pos[v] for v in bits(f)) for f in facets]
    k = len(verts)
    containing = [[f for f in local if f >> i & 1] for i in range(k)]
    initial = [(len(containing[i]), sorted(bin(f).count("1") for f in containing[i])) for i in range(k)]
    initial = [(a, tuple(b)) for a, b in initial]

    def signature(i: int, colors):
        return tuple(sorted(tuple(sorted(colors[j] for j in bits(f))) for f in containing[i]))

    def encode(perm):
        return (k, tuple(sorted(to_mask(perm[j] for j in bits(f)) for f in local)))

    facet_set = frozenset(local)

    def swappable(i: int, j: int) -> bool:
        bi, bj = 1 << i, 1 << j
        for f in local:
            if bool(f & bi) != bool(f & bj):
                g = f ^ bi ^ bj
                if g not in facet_set:
                    return False
        return True

    code, perm = canonical_labeling(k, initial, signature, encode, swappable)
    return code, verts, perm


# -- order complexes ------------------------------------------------------------

def order_complex(P: FinitePoset) -> SimplicialComplex:
    """All chains of ``P`` (the empty chain included), vertices labelled by element id."""
    faces = [0]

    def extend(chain_mask: int, top: int) -> None:
        for b in bits(P.up[top] & ~(1 << top)):
            f = chain_mask | 1 << b
            faces.append(f)
            extend(f, b)

    for a in range(P.n):
        faces.append(1 << a)
        extend(1 << a, a)
    return SimplicialComplex(frozenset(faces), tuple(range(P.n)))


def order_complex_by_subsets(P: FinitePoset) -> SimplicialComplex:
    """Same complex by filtering all ``2^n`` subsets; the slow reference route."""
    return SimplicialComplex(
        frozenset(m for m in range(1 << P.n) if is_chain_mask(P, m)), tuple(range(P.n))
    )


# -- text format ------------------------------------------------------------------

def parse_complex(text: str) -> tuple[SimplicialComplex, bool]:
    """One face per line, comma separated labels; a blank line is the empty face.

    Lines starting with ``#`` are comments. Integer-looking labels become ints.
    Returns the down-closure and whether the input was already down-closed
    (the empty face counts as present whenever any face is listed).
    """
    faces: list[tuple] = []
    for raw in text.splitlines():
        if raw.lstrip().startswith("#"):
            continue
        line = raw.strip()
        if not line:
            faces.append(())
            continue
        faces.append(tuple(_parse_label(tok) for tok in line.split(",") if tok.strip()))
    given = {frozenset(f) for f in faces}
    if given:
        given.add(frozenset())
    cx = SimplicialComplex.from_faces(faces)
    return cx, cx.face_sets() == given


def _parse_label(tok: str):
    tok = tok.strip()
    try:
        return int(tok)
    except ValueError:
        return tok


def to_complex_text(cx: SimplicialComplex) -> str:
    rows = sorted(
        (sorted(s, key=_label_sort_key) for s in cx.face_sets()),
        key=lambda f: (len(f), [_label_sort_key(x) for x in f]),
    )
    return "\n".join(",".join(str(x) for x in f) for f in rows) + "\n"
