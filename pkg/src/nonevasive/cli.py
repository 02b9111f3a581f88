"""Command line entry point.

Exit codes: 0 success, 1 a property expected with ``--expect`` (or a
requested certificate) does not hold, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import __version__
from .complex import FaceError, SimplicialComplex, order_complex, parse_complex
from .dismantle import DismantlingSequence, dismantling_sequence, verify_dismantling_sequence
from .evasiveness import (
    ComplexTooLargeError,
    cert_from_json,
    cert_to_json,
    is_non_evasive,
    verify_certificate,
)
from .generators import FAMILIES, all_posets, named, random_poset
from .harness import VerifyConfig
from .kozlov import VARIANTS, bw_report
from .poset import (
    FinitePoset,
    PosetParseError,
    cover_pairs,
    dual,
    is_irreducible,
    parse_poset,
    to_text,
)

EXPECTABLE = ("nonevasive", "dismantlable", "corollary15", "theorem8", "bw")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _looks_like_poset(text: str) -> bool:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return re.fullmatch(r"n\s+\d+", line) is not None
    return False


def _load_poset(path: str, warnings: list[str] | None = None) -> FinitePoset:
    try:
        return parse_poset(_read(path), warnings)
    except PosetParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_complex(path: str, kind: str) -> tuple[SimplicialComplex, list[str]]:
    text = _read(path)
    if kind == "poset" or (kind == "auto" and _looks_like_poset(text)):
        warnings: list[str] = []
        try:
            P = parse_poset(text, warnings)
        except PosetParseError as exc:
            raise InputError(f"{path}: {exc}") from None
        return order_complex(P), warnings
    try:
        cx, closed = parse_complex(text)
    except (FaceError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None
    notes = [] if closed else ["input was not down-closed; using its down-closure"]
    return cx, notes


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2, sort_keys=True) + "\n" if args.json else text
    if getattr(args, "out", None):
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _warn(messages) -> None:
    for m in messages:
        print(f"warning: {m}", file=sys.stderr)


# -- subcommands ------------------------------------------------------------------

def cmd_check(args) -> int:
    warnings: list[str] = []
    P = _load_poset(args.path, warnings)
    _warn(warnings)
    seq = dismantling_sequence(P) if P.n else None
    cert = is_non_evasive(order_complex(P))
    reports = [bw_report(P, s) for s in range(P.n)]
    props = {
        "nonevasive": cert is not None,
        "dismantlable": seq is not None,
        "corollary15": any(r.variant in ("corollary15", "both") for r in reports),
        "theorem8": any(r.variant in ("theorem8", "both") for r in reports),
        "bw": any(r.bw for r in reports),
    }
    payload = {
        "n": P.n,
        "covers": [list(p) for p in cover_pairs(P)],
        "minimal": [x for x in range(P.n) if P.down[x] == 1 << x],
        "maximal": [x for x in range(P.n) if P.up[x] == 1 << x],
        "lattice": all(P.meet_table[a][b] is not None and P.join_table[a][b] is not None
                       for a in range(P.n) for b in range(P.n)),
        "irreducibles": [x for x in range(P.n) if is_irreducible(P, x)],
        "dismantling_sequence": None if seq is None else seq.to_json(),
        "certificate": None if cert is None else cert_to_json(cert),
        "witnesses": [r.to_json() for r in reports],
        **props,
    }
    yes = {True: "yes", False: "no"}
    lines = [
        f"elements: {P.n}",
        f"cover pairs: {len(payload['covers'])}",
        f"lattice: {yes[payload['lattice']]}",
        f"irreducibles: {payload['irreducibles']}",
        f"dismantlable: {yes[props['dismantlable']]}"
        + (f" (order {list(seq.order)})" if seq else ""),
        f"non-evasive: {yes[props['nonevasive']]}",
        "BW witnesses (s: hypotheses holding):",
    ]
    for r in reports:
        held = [v for v, ok in (("corollary15", r.variant in ("corollary15", "both")),
                                ("theorem8", r.variant in ("theorem8", "both")), ("bw", r.bw)) if ok]
        lines.append(f"  {r.s}: {', '.join(held) if held else '-'}")
    _emit(args, payload, "\n".join(lines) + "\n")
    if args.expect and not props[args.expect]:
        print(f"expected property {args.expect!r} does not hold", file=sys.stderr)
        return 1
    return 0


def cmd_generate(args) -> int:
    if args.family:
        posets = [named(args.family, args.k)]
    elif args.random:
        if args.n is None:
            raise InputError("--random needs --n")
        posets = [random_poset(args.n, args.edge_bias, args.seed + i) for i in range(args.random)]
    else:
        if args.n is None:
            raise InputError("give --n, --random with --n, or --family")
        posets = list(all_posets(args.n, allow_large=args.allow_large))
    text = "---\n".join(to_text(P) for P in posets)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_nonevasive(args) -> int:
    cx, notes = _load_complex(args.path, args.kind)
    _warn(notes)
    cert = is_non_evasive(cx)
    payload = {"nonevasive": cert is not None,
               "vertices": len(cx.vertices), "faces": len(cx),
               "certificate": None if cert is None else cert_to_json(cert)}
    text = f"non-evasive: {'yes' if cert else 'no'}\n"
    if cert is not None:
        text += json.dumps(cert_to_json(cert)) + "\n"
    _emit(args, payload, text)
    if args.expect and cert is None:
        return 1
    return 0


def cmd_dismantle(args) -> int:
    P = _load_poset(args.path)
    if P.n == 0:
        raise InputError("dismantlability needs a nonempty poset")
    seq = dismantling_sequence(P, method=args.method)
    payload = {"dismantlable": seq is not None, "sequence": None if seq is None else seq.to_json()}
    text = f"dismantlable: {'yes' if seq else 'no'}\n"
    if seq is not None:
        text += f"order: {' '.join(map(str, seq.order))}\n"
    _emit(args, payload, text)
    if args.expect and seq is None:
        return 1
    return 0


def cmd_dual(args) -> int:
    sys.stdout.write(to_text(dual(_load_poset(args.path))))
    return 0


def cmd_verify_conjecture(args) -> int:
    start = time.perf_counter()
    summary = VerifyConfig(
        max_n=args.max_n,
        variant=args.variant,
        seed=args.seed,
        random_count=args.random,
        workers=args.workers,
        all_candidates=not args.first_candidate,
        allow_large=args.allow_large,
    ).run()
    elapsed = time.perf_counter() - start
    ex = summary["exhaustive"]
    lines = [f"variant: {summary['variant']}  max_n: {summary['max_n']}  seed: {summary['seed']}"]
    for n, row in ex["by_n"].items():
        lines.append(f"  n={n}: {row['posets']} posets, {row['pairs']} pairs, "
                     f"{row['hypothesis_holds']} satisfy hypotheses, {row['verified']} verified")
    if "random" in summary:
        r = summary["random"]
        lines.append(f"  random: {r['posets']} posets, {r['hypothesis_holds']} satisfy, {r['verified']} verified")
    lines.append(f"failures: {len(summary['failures'])}")
    lines.append(f"runtime: {elapsed:.2f}s")
    if args.json:
        sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        print(f"runtime: {elapsed:.2f}s", file=sys.stderr)
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    if args.out:
        Path(args.out).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0 if summary["ok"] else 1


def cmd_certificate(args) -> int:
    if args.target == "dismantle":
        P = _load_poset(args.path)
        if args.verify:
            try:
                seq = DismantlingSequence.from_json(json.loads(_read(args.verify)))
                valid = verify_dismantling_sequence(P, seq)
            except (ValueError, KeyError, TypeError) as exc:
                raise InputError(f"{args.verify}: malformed certificate ({exc})") from None
            print("valid" if valid else "invalid")
            return 0 if valid else 1
        seq = dismantling_sequence(P) if P.n else None
        if seq is None:
            print("not dismantlable", file=sys.stderr)
            return 1
        data = seq.to_json()
    else:
        cx, notes = _load_complex(args.path, args.kind)
        _warn(notes)
        if args.verify:
            try:
                cert = cert_from_json(json.loads(_read(args.verify)))
            except ValueError as exc:
                raise InputError(f"{args.verify}: malformed certificate ({exc})") from None
            valid = verify_certificate(cx, cert)
            print("valid" if valid else "invalid")
            return 0 if valid else 1
        cert = is_non_evasive(cx)
        if cert is None:
            print("not non-evasive", file=sys.stderr)
            return 1
        data = cert_to_json(cert)
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonevasive", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p, kinds=False):
        p.add_argument("path", help="input file, or - for stdin")
        if kinds:
            p.add_argument("--kind", choices=("auto", "poset", "complex"), default="auto",
                           help="input format (auto: poset if it starts with 'n <count>')")

    p = sub.add_parser("check", help="order properties, BW witnesses, non-evasiveness of Δ(P)")
    add_input(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--expect", choices=EXPECTABLE)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="emit posets in the text format")
    p.add_argument("--n", type=int)
    p.add_argument("--random", type=int, default=0, metavar="COUNT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edge-bias", type=float, default=0.3)
    p.add_argument("--family", choices=sorted(FAMILIES))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("nonevasive", help="decide non-evasiveness of a complex or of Δ(P)")
    add_input(p, kinds=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--expect", action="store_true", help="exit 1 when not non-evasive")
    p.set_defaults(func=cmd_nonevasive)

    p = sub.add_parser("dismantle", help="find a dismantling sequence")
    add_input(p)
    p.add_argument("--method", choices=("backtrack", "greedy"), default="backtrack")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--expect", action="store_true", help="exit 1 when not dismantlable")
    p.set_defaults(func=cmd_dismantle)

    p = sub.add_parser("verify-conjecture", help="exhaustive check over all small posets")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--variant", choices=VARIANTS, default="corollary15")
    p.add_argument("--seed", type=int)
    p.add_argument("--random", type=int, default=0, metavar="COUNT")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--first-candidate", action="store_true",
                   help="follow only the first minimal r in the induction replay")
    p.add_argument("--allow-large", action="store_true", help="permit --max-n above 7")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write the JSON summary (with any falsification reports) here")
    p.set_defaults(func=cmd_verify_conjecture)

    p = sub.add_parser("certificate", help="emit or verify a certificate")
    add_input(p, kinds=True)
    p.add_argument("--target", choices=("nonevasive", "dismantle"), default="nonevasive")
    p.add_argument("--verify", metavar="CERT", help="replay this certificate instead of emitting one")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("dual", help="print the dual poset")
    add_input(p)
    p.set_defaults(func=cmd_dual)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ComplexTooLargeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
