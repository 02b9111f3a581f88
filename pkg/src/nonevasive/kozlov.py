"""BW-type hypotheses on a pair (P, s) and the objects built from them.

Three hypothesis families are implemented literally:

* ``corollary15``: every x has ``s∨x`` or ``s∧x``; for ``x < y`` with ``s∧x``
  missing and ``s∧y`` present, ``(s∧y)∨x`` exists.
* ``theorem8``: the same first condition; for ``w < z`` with ``s∧w`` missing and
  ``s∧z`` present, ``z∧(w∨s)`` exists.
* ``bw``: the same first condition; for ``b < a`` with ``a∨s`` missing and
  ``b∨s`` present, ``a∧(b∨s)`` exists.

``corollary15`` on ``dual(P)`` is ``bw`` on ``P``. The second condition is only
evaluated once the first holds everywhere, since its terms (``w∨s`` in
particular) are only guaranteed to exist under the first. Failure witnesses
are ``("cond1", x)`` or ``("cond2", lower, upper)`` with the pair ordered in
the poset that was checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import SimplicialComplex, order_complex
from .dismantle import PosetMap, constant_map, identity_map, is_dismantlable
from .evasiveness import (
    CertNode,
    Certificate,
    baclawski_partition_test,
    cert_to_json,
    cone_certificate,
    is_non_evasive,
    map_vertices,
    verify_certificate,
)
from .poset import (
    FinitePoset,
    bits,
    canonical_labeling_of,
    dual,
    induced_subposet,
    is_chain_mask,
    to_mask,
    to_text,
    unique_lower_cover,
)

VARIANTS = ("corollary15", "theorem8", "bw")


class HypothesisError(ValueError):
    """An operation was called on an instance that does not satisfy its hypotheses."""


class FalsificationError(AssertionError):
    """A step that the proof guarantees has failed on a concrete instance."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


@dataclass(frozen=True)
class HypothesisCheck:
    holds: bool
    failures: tuple[tuple, ...]


def _cond1_failures(P: FinitePoset, s: int) -> list[tuple]:
    M, J = P.meet_table[s], P.join_table[s]
    return [("cond1", x) for x in range(P.n) if M[x] is None and J[x] is None]


def _check_element(P: FinitePoset, *xs: int) -> None:
    for x in xs:
        if not 0 <= x < P.n:
            raise IndexError(f"element {x} not in poset of size {P.n}")


def check_corollary15(P: FinitePoset, s: int) -> HypothesisCheck:
    _check_element(P, s)
    failures = _cond1_failures(P, s)
    if not failures:
        M, J = P.meet_table, P.join_table
        for x in range(P.n):
            if M[s][x] is not None:
                continue
            for y in bits(P.up[x] & ~(1 << x)):
                m = M[s][y]
                if m is not None and J[m][x] is None:
                    failures.append(("cond2", x, y))
    return HypothesisCheck(not failures, tuple(sorted(failures)))


def check_theorem8(P: FinitePoset, s: int) -> HypothesisCheck:
    _check_element(P, s)
    failures = _cond1_failures(P, s)
    if not failures:
        M, J = P.meet_table, P.join_table
        for w in range(P.n):
            if M[s][w] is not None:
                continue
            ws = J[w][s]  # exists: s∧w is missing and the first condition holds
            for z in bits(P.up[w] & ~(1 << w)):
                if M[s][z] is not None and M[z][ws] is None:
                    failures.append(("cond2", w, z))
    return HypothesisCheck(not failures, tuple(sorted(failures)))


def check_BW(P: FinitePoset, s: int) -> HypothesisCheck:
    _check_element(P, s)
    failures = _cond1_failures(P, s)
    if not failures:
        M, J = P.meet_table, P.join_table
        for b in range(P.n):
            bs = J[b][s]
            if bs is None:
                continue
            for a in bits(P.up[b] & ~(1 << b)):
                if J[a][s] is None and M[a][bs] is None:
                    failures.append(("cond2", b, a))
    return HypothesisCheck(not failures, tuple(sorted(failures)))


CHECKS = {"corollary15": check_corollary15, "theorem8": check_theorem8, "bw": check_BW}


def reorient_dual_witnesses(failures) -> tuple[tuple, ...]:
    """Express witnesses found on ``dual(P)`` with pairs ordered as in ``P``."""
    out = []
    for w in failures:
        out.append(("cond2", w[2], w[1]) if w[0] == "cond2" else w)
    return tuple(sorted(out))


def off_core_mask(P: FinitePoset, s: int) -> int:
    return P.full_mask & ~(P.up[s] | P.down[s])


def r_candidates(P: FinitePoset, s: int) -> list[int]:
    """Minimal elements of P \\ (↑s ∪ ↓s)."""
    off = off_core_mask(P, s)
    return [m for m in bits(off) if P.down[m] & off == 1 << m]


def check_BW_r(P: FinitePoset, s: int, r: int) -> bool:
    _check_element(P, s, r)
    return check_BW(P, s).holds and r in r_candidates(P, s)


def check_BWI(P: FinitePoset, s: int, r: int) -> bool:
    return check_BW_r(P, s, r) and unique_lower_cover(P, r) is None


# -- reports ------------------------------------------------------------------------

@dataclass
class BWReport:
    s: int
    variant: str
    bw: bool
    W: frozenset[int]
    U: frozenset[int]
    off_core: frozenset[int]
    r_candidates: frozenset[int]
    failures: dict[str, tuple] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "variant": self.variant,
            "bw": self.bw,
            "W": sorted(self.W),
            "U": sorted(self.U),
            "off_core": sorted(self.off_core),
            "r_candidates": sorted(self.r_candidates),
            "failures": {k: [list(w) for w in v] for k, v in self.failures.items()},
        }


def theorem8_partition(P: FinitePoset, s: int) -> tuple[frozenset[int], frozenset[int]]:
    """``W`` = elements with no meet with ``s``; ``U`` the rest."""
    _check_element(P, s)
    W = frozenset(y for y in range(P.n) if P.meet_table[s][y] is None)
    return W, frozenset(range(P.n)) - W


def bw_report(P: FinitePoset, s: int) -> BWReport:
    c15, t8, bw = check_corollary15(P, s), check_theorem8(P, s), check_BW(P, s)
    variant = {
        (True, True): "both",
        (True, False): "corollary15",
        (False, True): "theorem8",
        (False, False): "neither",
    }[(c15.holds, t8.holds)]
    W, U = theorem8_partition(P, s)
    return BWReport(
        s=s,
        variant=variant,
        bw=bw.holds,
        W=W,
        U=U,
        off_core=frozenset(bits(off_core_mask(P, s))),
        r_candidates=frozenset(r_candidates(P, s)),
        failures={"corollary15": c15.failures, "theorem8": t8.failures, "bw": bw.failures},
    )


# -- theorem 8 constructions -----------------------------------------------------------

def _require_theorem8(P: FinitePoset, s: int) -> None:
    check = check_theorem8(P, s)
    if not check.holds:
        raise HypothesisError(f"theorem8 hypotheses fail for s={s}: {list(check.failures)}")


def theorem8_U_map_f(P: FinitePoset, s: int) -> PosetMap:
    """``z -> s∧z`` on ``U``."""
    _require_theorem8(P, s)
    _, U = theorem8_partition(P, s)
    return PosetMap(P, {z: P.meet_table[s][z] for z in sorted(U)})


def _sorted_chain(P: FinitePoset, sigma) -> list[int]:
    ws = sorted(set(sigma), key=lambda a: bin(P.down[a]).count("1"))
    if not ws:
        raise ValueError("sigma must be a nonempty chain")
    if not is_chain_mask(P, to_mask(ws)):
        raise ValueError(f"{sorted(ws)} is not a chain")
    return ws


def theorem8_T(P: FinitePoset, s: int, sigma) -> frozenset[int]:
    """U ∩ [↓w1 ∪ (↑w1 ∩ ↓w2) ∪ ... ∪ ↑wn] for the chain w1 < ... < wn."""
    _require_theorem8(P, s)
    W, U = theorem8_partition(P, s)
    ws = _sorted_chain(P, sigma)
    if not set(ws) <= W:
        raise ValueError(f"sigma {sorted(ws)} is not inside W = {sorted(W)}")
    region = P.down[ws[0]] | P.up[ws[-1]]
    for lo, hi in zip(ws, ws[1:]):
        region |= P.up[lo] & P.down[hi]
    return frozenset(bits(region & to_mask(U)))


def theorem8_g(P: FinitePoset, s: int, sigma) -> PosetMap:
    """``t∧s`` below w1, otherwise ``t∧(wi∨s)`` for the largest i with wi ≤ t.

    Raises :class:`FalsificationError` if a required meet or join is missing.
    """
    T = theorem8_T(P, s, sigma)
    ws = _sorted_chain(P, sigma)
    M, J = P.meet_table, P.join_table
    values = {}
    for t in sorted(T):
        if P.leq(t, ws[0]):
            g = M[t][s]
            what = "t∧s"
        else:
            i = max(k for k, w in enumerate(ws) if P.leq(w, t))
            ws_join = J[ws[i]][s]
            if ws_join is None:
                raise FalsificationError("w_i∨s missing", {"t": t, "w_i": ws[i], "s": s})
            g = M[t][ws_join]
            what = "t∧(w_i∨s)"
        if g is None:
            raise FalsificationError(f"{what} missing", {"t": t, "sigma": ws, "s": s})
        values[t] = g
    return PosetMap(P, values)


def subposet_complex(P: FinitePoset, S) -> SimplicialComplex:
    """Δ of the induced subposet on ``S``, labelled by the ids of ``P``."""
    sub, remap = induced_subposet(P, S)
    inverse = {new: old for old, new in remap.items()}
    cx = order_complex(sub)
    return SimplicialComplex(cx.faces, tuple(inverse[i] for i in range(sub.n)))


def chains_in(P: FinitePoset, mask: int) -> list[int]:
    """All nonempty chains of P inside ``mask`` as bitmasks."""
    out = []
    elems = bits(mask)

    def rec(i: int, cur: int) -> None:
        if i == len(elems):
            if cur:
                out.append(cur)
            return
        rec(i + 1, cur)
        a = elems[i]
        if (P.up[a] | P.down[a]) & cur == cur:
            rec(i + 1, cur | 1 << a)

    rec(0, 0)
    return sorted(out)


def theorem8_failures(P: FinitePoset, s: int) -> list[dict]:
    """Check every object of the meet-based partition argument on one instance.

    Returns a list of failure records; empty means every step held.
    """
    _require_theorem8(P, s)
    fails: list[dict] = []
    W, U = theorem8_partition(P, s)
    sigma_cx = order_complex(P)
    u_mask = to_mask(U)

    f = theorem8_U_map_f(P, s)
    if s not in U:
        fails.append({"step": "s_in_U"})
    if not f.maps_into(U) or not f.is_order_preserving():
        fails.append({"step": "f_map"})
    if not (f.pointwise_leq(identity_map(P, U)) and f.pointwise_leq(constant_map(P, s, U))):
        fails.append({"step": "f_chain"})
    if not is_dismantlable(induced_subposet(P, U)[0]):
        fails.append({"step": "U_dismantlable"})
    if subposet_complex(P, U) != sigma_cx.star(0).restrict(u_mask):
        fails.append({"step": "U_complex"})

    for sigma in chains_in(P, to_mask(W)):
        ws = _sorted_chain(P, bits(sigma))
        T = theorem8_T(P, s, ws)
        where = {"sigma": ws}
        top = P.join_table[ws[-1]][s]
        if not T or top is None or top not in T:
            fails.append({"step": "T_nonempty", **where})
            continue
        if subposet_complex(P, T) != sigma_cx.star(sigma).restrict(u_mask):
            fails.append({"step": "T_complex", **where})
        try:
            g = theorem8_g(P, s, ws)
        except FalsificationError as exc:
            fails.append({"step": "g_defined", "reason": str(exc), **where})
            continue
        if not g.maps_into(T) or not g.is_order_preserving():
            fails.append({"step": "g_map", **where})
        if not (g.pointwise_leq(identity_map(P, T)) and g.pointwise_leq(constant_map(P, top, T))):
            fails.append({"step": "g_chain", **where})
        if not is_dismantlable(induced_subposet(P, T)[0]):
            fails.append({"step": "T_dismantlable", **where})

    if not baclawski_partition_test(sigma_cx, to_mask(W)):
        fails.append({"step": "partition_test"})
    return fails


# -- lemmas 11 to 13 -------------------------------------------------------------------

def lemma11_check(P: FinitePoset, s: int, r: int) -> bool:
    """Every lower cover of ``r`` lies strictly below ``s``."""
    if not check_BW_r(P, s, r):
        raise HypothesisError(f"BW(P, {s}, {r}) does not hold")
    return all(P.lt(c, s) for c in bits(P.lower_cover_masks[r]))


def lemma12_subinstance(P: FinitePoset, s: int, r: int) -> tuple[FinitePoset, int, dict[int, int]]:
    """``P \\ {r}`` with ``s`` remapped; raises if BW fails there."""
    if not check_BW_r(P, s, r):
        raise HypothesisError(f"BW(P, {s}, {r}) does not hold")
    sub, remap = induced_subposet(P, [x for x in range(P.n) if x != r])
    s2 = remap[s]
    check = check_BW(sub, s2)
    if not check.holds:
        raise FalsificationError(
            "BW fails after deleting r", {"poset": to_text(P), "s": s, "r": r,
                                          "failures": [list(w) for w in check.failures]})
    return sub, s2, remap


def lemma13_subinstance(P: FinitePoset, s: int, r: int) -> tuple[FinitePoset, int, dict[int, int]]:
    """``Q = (↑r ∪ ↓r) \\ {r}`` with ``q = r∨s``; raises if r∨s or BW(Q, q) fails."""
    if not check_BWI(P, s, r):
        raise HypothesisError(f"BWI(P, {s}, {r}) does not hold")
    q = P.join_table[r][s]
    if q is None:
        raise FalsificationError("r∨s does not exist", {"poset": to_text(P), "s": s, "r": r})
    if q == r or not P.leq(r, q):
        raise FalsificationError("r∨s is not strictly above r", {"poset": to_text(P), "s": s, "r": r})
    Q, remap = induced_subposet(P, bits((P.up[r] | P.down[r]) & ~(1 << r)))
    check = check_BW(Q, remap[q])
    if not check.holds:
        raise FalsificationError(
            "BW fails on (Q, r∨s)", {"poset": to_text(P), "s": s, "r": r,
                                     "failures": [list(w) for w in check.failures]})
    return Q, remap[q], remap


# -- theorem 14 replay ----------------------------------------------------------------

@dataclass
class InductionReport:
    poset: FinitePoset
    s: int
    variant: str
    holds: bool
    failures: list[dict] = field(default_factory=list)
    recursion: list[dict] = field(default_factory=list)
    certificate: Certificate | None = None
    certificate_valid: bool = False
    nonevasive: bool = False

    @property
    def ok(self) -> bool:
        return self.holds and not self.failures and self.certificate_valid and self.nonevasive

    def to_json(self) -> dict:
        return {
            "poset": to_text(self.poset),
            "s": self.s,
            "variant": self.variant,
            "holds": self.holds,
            "failures": self.failures,
            "nonevasive": self.nonevasive,
            "certificate": None if self.certificate is None else cert_to_json(self.certificate),
            "certificate_valid": self.certificate_valid,
            "recursion": self.recursion,
        }


class _Replay:
    def __init__(self, all_candidates: bool):
        self.all_candidates = all_candidates
        self.failures: list[dict] = []
        self.steps: list[dict] = []
        self.done: dict[bytes, Certificate | None] = {}

    def fail(self, step: str, P: FinitePoset, s: int, **extra) -> None:
        self.failures.append({"step": step, "poset": to_text(P), "s": s, **extra})

    def run(self, P: FinitePoset, s: int, depth: int) -> Certificate | None:
        """Certificate for Δ(P) in the ids of ``P``, assembled from the induction."""
        key, perm = canonical_labeling_of(P, marked=s)
        if key in self.done:
            stored = self.done[key]
            if stored is None:
                return None
            back = {c: a for a, c in enumerate(perm)}
            self.steps.append({"depth": depth, "n": P.n, "s": s, "step": "repeat"})
            return map_vertices(stored, back)
        cert = self._run(P, s, depth)
        self.done[key] = None if cert is None else map_vertices(cert, perm)
        return cert

    def _run(self, P: FinitePoset, s: int, depth: int) -> Certificate | None:
        cx = order_complex(P)
        candidates = r_candidates(P, s)
        if not candidates:
            self.steps.append({"depth": depth, "n": P.n, "s": s, "step": "cone"})
            if s not in cx.cone_peaks():
                self.fail("cone_peak", P, s)
                return None
            return cone_certificate(cx, s)
        chosen = None
        for r in candidates if self.all_candidates else candidates[:1]:
            cert = self._split(P, s, r, cx, depth)
            if chosen is None and cert is not None:
                chosen = cert
        return chosen

    def _split(self, P, s, r, cx, depth) -> Certificate | None:
        if not check_BW_r(P, s, r):
            self.fail("bw_r", P, s, r=r)
            return None
        if not lemma11_check(P, s, r):
            self.fail("lemma11", P, s, r=r)
        try:
            sub, s2, remap = lemma12_subinstance(P, s, r)
        except FalsificationError as exc:
            self.fail("lemma12", P, s, r=r, reason=str(exc))
            return None
        inverse = {new: old for old, new in remap.items()}
        if subposet_complex(P, list(remap)) != cx.deletion(1 << r):
            self.fail("deletion_complex", P, s, r=r)
        lower = unique_lower_cover(P, r)
        branch = "lemma5" if lower is not None else "lemma13"
        self.steps.append({"depth": depth, "n": P.n, "s": s, "r": r, "step": branch})
        cert_del = self.run(sub, s2, depth + 1)
        link = cx.link(1 << r)
        if lower is not None:
            if lower not in link.cone_peaks():
                self.fail("lemma5_cone", P, s, r=r, lower_cover=lower)
                return None
            cert_link = cone_certificate(link, lower)
        else:
            try:
                Q, q, qmap = lemma13_subinstance(P, s, r)
            except FalsificationError as exc:
                self.fail("lemma13", P, s, r=r, reason=str(exc))
                return None
            if subposet_complex(P, list(qmap)) != link:
                self.fail("link_complex", P, s, r=r)
            sub_cert = self.run(Q, q, depth + 1)
            if sub_cert is None:
                return None
            qinv = {new: old for old, new in qmap.items()}
            cert_link = map_vertices(sub_cert, qinv)
        if cert_del is None:
            return None
        return CertNode(r, map_vertices(cert_del, inverse), cert_link)


def verify_theorem14(P: FinitePoset, s: int, all_candidates: bool = True) -> InductionReport:
    """Replay the BW induction on (P, s) and confirm Δ(P) is non-evasive.

    The induction yields its own certificate, which is checked with
    :func:`verify_certificate`; the search-based decision is run as well.
    """
    check = check_BW(P, s)
    report = InductionReport(P, s, "bw", check.holds)
    if not check.holds:
        report.failures.append({"step": "hypothesis", "witnesses": [list(w) for w in check.failures]})
        return report
    replay = _Replay(all_candidates)
    cert = replay.run(P, s, 0)
    report.failures.extend(replay.failures)
    report.recursion = replay.steps
    cx = order_complex(P)
    if cert is None:
        report.failures.append({"step": "no_certificate"})
    else:
        report.certificate = cert
        report.certificate_valid = verify_certificate(cx, cert)
        if not report.certificate_valid:
            report.failures.append({"step": "certificate_replay"})
    report.nonevasive = is_non_evasive(cx) is not None
    if not report.nonevasive:
        report.failures.append({"step": "search"})
    return report


def verify_corollary15(P: FinitePoset, s: int, all_candidates: bool = True) -> InductionReport:
    """Join-based hypotheses through duality: BW holds on ``dual(P)`` and Δ(dual(P)) = Δ(P)."""
    check = check_corollary15(P, s)
    D = dual(P)
    report = verify_theorem14(D, s, all_candidates) if check.holds else InductionReport(D, s, "bw", False)
    report.poset = P
    report.variant = "corollary15"
    report.holds = check.holds
    if not check.holds:
        report.failures = [{"step": "hypothesis", "witnesses": [list(w) for w in check.failures]}]
        return report
    if report.certificate is not None and not verify_certificate(order_complex(P), report.certificate):
        report.failures.append({"step": "dual_certificate"})
    return report


def corollary10_peak(P: FinitePoset, s: int) -> bool:
    """For P = ↑s ∪ ↓s, whether s is a cone peak of Δ(P)."""
    if off_core_mask(P, s):
        raise HypothesisError("P is not ↑s ∪ ↓s")
    return s in order_complex(P).cone_peaks()

