"""Non-evasiveness: decision by recursive search, certificates, partition test.

A complex is non-evasive when it is a single vertex ``{∅, {v}}``, or it has at
least two vertices and some vertex ``v`` has non-evasive deletion and link. A
certificate is the tree of successful vertex choices; ``LEAF`` marks a
single-vertex complex.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from threading import Lock
from typing import Union

from .complex import SimplicialComplex, canonical_key, maximal_faces
from .poset import bits

LEAF = "leaf"
DEFAULT_MAX_VERTICES = 20
ENV_MAX_VERTICES = "NONEVASIVE_MAX_VERTICES"


@dataclass(frozen=True)
class CertNode:
    vertex: object
    deletion: "Certificate"
    link: "Certificate"


Certificate = Union[CertNode, str]


class ComplexTooLargeError(ValueError):
    pass


def max_vertices() -> int:
    raw = os.environ.get(ENV_MAX_VERTICES)
    return int(raw) if raw else DEFAULT_MAX_VERTICES


# -- certificate (de)serialisation -----------------------------------------------

def cert_to_json(cert: Certificate):
    if cert == LEAF:
        return LEAF
    return {"vertex": cert.vertex, "del": cert_to_json(cert.deletion), "link": cert_to_json(cert.link)}


def cert_from_json(data) -> Certificate:
    if data == LEAF:
        return LEAF
    if not isinstance(data, dict) or set(data) != {"vertex", "del", "link"}:
        raise ValueError(f"malformed certificate node: {data!r}")
    return CertNode(data["vertex"], cert_from_json(data["del"]), cert_from_json(data["link"]))


def map_vertices(cert: Certificate, mapping) -> Certificate:
    if cert == LEAF:
        return LEAF
    return CertNode(mapping[cert.vertex], map_vertices(cert.deletion, mapping),
                    map_vertices(cert.link, mapping))


def cert_size(cert: Certificate) -> int:
    if cert == LEAF:
        return 1
    return 1 + cert_size(cert.deletion) + cert_size(cert.link)


# -- the search on raw face sets ------------------------------------------------------

def _vertex_mask(faces: frozenset[int]) -> int:
    v = 0
    for f in faces:
        if f and f & (f - 1) == 0:
            v |= f
    return v


def _split(faces: frozenset[int], v: int) -> tuple[frozenset[int], frozenset[int]]:
    b = 1 << v
    dl = frozenset(f for f in faces if not f & b)
    lk = frozenset(f ^ b for f in faces if f & b)
    return dl, lk


def search_plain(faces: frozenset[int]) -> Certificate | None:
    """Direct transcription of the recursive definition, no memo, no pruning.

    Certificates name vertices by bit position.
    """
    V = _vertex_mask(faces)
    if not V:
        return None
    if V & (V - 1) == 0:
        return LEAF if faces == {0, V} else None
    for v in bits(V):
        dl, lk = _split(faces, v)
        c_dl = search_plain(dl)
        if c_dl is None:
            continue
        c_lk = search_plain(lk)
        if c_lk is not None:
            return CertNode(v, c_dl, c_lk)
    return None


class EvasivenessMemo:
    """Results keyed by canonical form; certificates are stored in canonical labels.

    Lookups and stores are guarded by a lock so a single memo can be shared
    between threads.
    """

    def __init__(self):
        self._table: dict[tuple, Certificate | None] = {}
        self._lock = Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._table)

    def get(self, key):
        with self._lock:
            if key in self._table:
                self.hits += 1
                return True, self._table[key]
            self.misses += 1
            return False, None

    def put(self, key, value) -> None:
        with self._lock:
            self._table.setdefault(key, value)


_SHARED_MEMO = EvasivenessMemo()


def shared_memo() -> EvasivenessMemo:
    return _SHARED_MEMO


def _reduced_euler(faces: frozenset[int]) -> int:
    return sum(1 if bin(f).count("1") & 1 else -1 for f in faces)


def search_memo(faces: frozenset[int], memo: EvasivenessMemo) -> Certificate | None:
    """Same decision as :func:`search_plain`, memoized over isomorphism classes.

    Complexes whose reduced Euler characteristic is nonzero are rejected
    without search: deletion and link satisfy chi(Σ) = chi(dl) - chi(lk), and a
    single vertex has chi = 0, so every non-evasive complex has chi = 0.
    """
    V = _vertex_mask(faces)
    if not V:
        return None
    if V & (V - 1) == 0:
        return LEAF if faces == {0, V} else None
    if _reduced_euler(faces) != 0:
        return None
    code, verts, perm = canonical_key(maximal_faces(faces), V)
    found, stored = memo.get(code)
    if found:
        if stored is None:
            return None
        back = {perm[i]: verts[i] for i in range(len(verts))}
        return map_vertices(stored, back)
    result = None
    for v in bits(V):
        dl, lk = _split(faces, v)
        c_lk = search_memo(lk, memo)
        if c_lk is None:
            continue
        c_dl = search_memo(dl, memo)
        if c_dl is not None:
            result = CertNode(v, c_dl, c_lk)
            break
    forward = {verts[i]: perm[i] for i in range(len(verts))}
    memo.put(code, None if result is None else map_vertices(result, forward))
    return result


# -- public API ---------------------------------------------------------------------

def is_non_evasive(
    cx: SimplicialComplex,
    memo: EvasivenessMemo | None = None,
    use_memo: bool = True,
    allow_large: bool = False,
) -> Certificate | None:
    """Certificate (vertices named by label) if ``cx`` is non-evasive, else ``None``."""
    n_vertices = bin(cx.vertex_mask).count("1")
    if n_vertices > max_vertices() and not allow_large:
        raise ComplexTooLargeError(
            f"{n_vertices} vertices exceeds the limit of {max_vertices()}; "
            f"set {ENV_MAX_VERTICES} or pass allow_large=True"
        )
    if use_memo:
        raw = search_memo(cx.faces, memo if memo is not None else _SHARED_MEMO)
    else:
        raw = search_plain(cx.faces)
    if raw is None:
        return None
    return map_vertices(raw, cx.labels)


def verify_certificate(cx: SimplicialComplex, cert: Certificate) -> bool:
    """Replay a certificate against ``cx``; never raises on a bad certificate."""
    index = {x: i for i, x in enumerate(cx.labels)}

    def replay(faces: frozenset[int], c) -> bool:
        V = _vertex_mask(faces)
        if c == LEAF:
            return V != 0 and V & (V - 1) == 0 and faces == {0, V}
        if not isinstance(c, CertNode):
            return False
        try:
            v = index[c.vertex]
        except (KeyError, TypeError):
            return False
        if not V >> v & 1 or V & (V - 1) == 0:
            return False
        dl, lk = _split(faces, v)
        return replay(dl, c.deletion) and replay(lk, c.link)

    return replay(cx.faces, cert)


def cone_certificate(cx: SimplicialComplex, peak) -> Certificate:
    """Certificate for a cone: remove the other vertices one at a time, peak last.

    Deletion and link of a non-peak vertex are again cones with the same peak.
    """
    p = cx.mask_of([peak]).bit_length() - 1
    if p not in cx.cone_peak_indices():
        raise ValueError(f"{peak!r} is not a cone peak")

    def build(faces: frozenset[int]) -> Certificate:
        others = [v for v in bits(_vertex_mask(faces)) if v != p]
        if not others:
            return LEAF
        dl, lk = _split(faces, others[0])
        return CertNode(cx.labels[others[0]], build(dl), build(lk))

    return build(cx.faces)


def baclawski_partition_test(
    cx: SimplicialComplex, W, memo: EvasivenessMemo | None = None
) -> bool:
    """True when star(σ)|U is non-evasive for every face σ of cx|W, U = V \\ W.

    A true result certifies that ``cx`` is non-evasive; false is inconclusive.
    """
    if not cx.faces:
        raise ValueError("partition test needs a nonempty complex")
    w = W if isinstance(W, int) else cx.mask_of(W)
    if w & ~cx.vertex_mask:
        raise ValueError("W must be a subset of the vertex set")
    u = cx.vertex_mask & ~w
    for sigma in sorted(cx.restrict(w).faces):
        piece = cx.star(sigma).restrict(u)
        if is_non_evasive(piece, memo) is None:
            return False
    return True
