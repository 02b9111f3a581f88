"""Exhaustive and randomized verification runs over (P, s) instances."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .complex import order_complex
from .evasiveness import cert_to_json, is_non_evasive, verify_certificate
from .generators import MAX_EXHAUSTIVE_N, all_posets, random_poset
from .kozlov import (
    CHECKS,
    VARIANTS,
    check_theorem8,
    theorem8_failures,
    verify_corollary15,
    verify_theorem14,
)
from .poset import FinitePoset, parse_poset, to_text


@dataclass
class InstanceResult:
    s: int
    holds: bool
    ok: bool = True
    failures: list = field(default_factory=list)
    report: dict | None = None


def check_instance(P: FinitePoset, s: int, variant: str, all_candidates: bool = True) -> InstanceResult:
    """Run the variant's hypothesis check and, when it holds, every verification step."""
    if variant == "corollary15":
        rep = verify_corollary15(P, s, all_candidates)
        return InstanceResult(s, rep.holds, rep.ok or not rep.holds,
                              rep.failures if rep.holds else [], rep.to_json())
    if variant == "bw":
        rep = verify_theorem14(P, s, all_candidates)
        return InstanceResult(s, rep.holds, rep.ok or not rep.holds,
                              rep.failures if rep.holds else [], rep.to_json())
    if variant == "theorem8":
        check = check_theorem8(P, s)
        if not check.holds:
            return InstanceResult(s, False)
        fails = theorem8_failures(P, s)
        cx = order_complex(P)
        cert = is_non_evasive(cx)
        if cert is None:
            fails.append({"step": "search"})
        elif not verify_certificate(cx, cert):
            fails.append({"step": "certificate_replay"})
        report = {
            "poset": to_text(P), "s": s, "variant": "theorem8", "holds": True,
            "failures": fails, "nonevasive": cert is not None,
            "certificate": None if cert is None else cert_to_json(cert), "recursion": [],
        }
        return InstanceResult(s, True, not fails, fails, report)
    raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")


def _poset_job(args) -> list[tuple[int, bool, bool, dict | None]]:
    text, variant, all_candidates = args
    P = parse_poset(text)
    out = []
    for s in range(P.n):
        res = check_instance(P, s, variant, all_candidates)
        out.append((s, res.holds, res.ok, None if res.ok else res.report))
    return out


def _run_batch(posets: list[FinitePoset], variant: str, all_candidates: bool, workers: int):
    jobs = [(to_text(P), variant, all_candidates) for P in posets]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_poset_job, jobs, chunksize=8))
    return [_poset_job(j) for j in jobs]


def _tally(posets, results) -> dict:
    pairs = holds = verified = 0
    failures = []
    for P, rows in zip(posets, results):
        for s, h, ok, report in rows:
            pairs += 1
            holds += h
            verified += h and ok
            if not ok:
                failures.append(report)
    return {"posets": len(posets), "pairs": pairs, "hypothesis_holds": holds,
            "verified": verified, "failures": failures}


def verify_conjecture(
    max_n: int,
    variant: str = "corollary15",
    seed: int | None = None,
    random_count: int = 0,
    random_max_n: int | None = None,
    workers: int = 1,
    all_candidates: bool = True,
    allow_large: bool = False,
) -> dict:
    """Summary over all posets with 1 <= n <= max_n and every choice of s.

    The summary is a plain dict whose content depends only on the arguments,
    not on ``workers`` or timing.
    """
    if variant not in CHECKS:
        raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")
    if max_n > MAX_EXHAUSTIVE_N and not allow_large:
        raise ValueError(f"max_n above {MAX_EXHAUSTIVE_N} needs allow_large")
    by_n = {}
    failures = []
    totals = {"posets": 0, "pairs": 0, "hypothesis_holds": 0, "verified": 0}
    for n in range(1, max_n + 1):
        posets = list(all_posets(n, allow_large=allow_large))
        tally = _tally(posets, _run_batch(posets, variant, all_candidates, workers))
        failures += tally.pop("failures")
        by_n[str(n)] = tally
        for k in totals:
            totals[k] += tally[k]

    summary = {
        "variant": variant,
        "max_n": max_n,
        "all_candidates": all_candidates,
        "seed": seed,
        "exhaustive": {"by_n": by_n, **totals},
    }
    if random_count:
        if seed is None:
            seed = summary["seed"] = 0
        rng = random.Random(seed)
        top = random_max_n or max_n + 2
        specs = [(rng.randint(1, top), round(rng.random(), 3), rng.getrandbits(32))
                 for _ in range(random_count)]
        posets = [random_poset(n, bias, sub_seed) for n, bias, sub_seed in specs]
        tally = _tally(posets, _run_batch(posets, variant, all_candidates, workers))
        failures += tally.pop("failures")
        summary["random"] = {"count": random_count, "max_n": top, **tally}
    summary["failures"] = failures
    summary["ok"] = not failures
    return summary


@dataclass(frozen=True)
class VerifyConfig:
    """Arguments of one :func:`verify_conjecture` run."""

    max_n: int = 6
    variant: str = "corollary15"
    seed: int | None = None
    random_count: int = 0
    random_max_n: int | None = None
    workers: int = 1
    all_candidates: bool = True
    allow_large: bool = False

    def run(self) -> dict:
        return verify_conjecture(**asdict(self))
