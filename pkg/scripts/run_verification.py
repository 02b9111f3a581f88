#!/usr/bin/env python3
"""Exhaustive verification for every hypothesis variant; writes one JSON summary per variant.

    python scripts/run_verification.py --max-n 6 --out results/
"""

import argparse
import json
import time
from pathlib import Path

from nonevasive.harness import VerifyConfig
from nonevasive.kozlov import VARIANTS


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--random", type=int, default=200, help="random posets per variant")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    ok = True
    for variant in VARIANTS:
        cfg = VerifyConfig(max_n=args.max_n, variant=variant, seed=args.seed,
                           random_count=args.random, workers=args.workers)
        start = time.perf_counter()
        summary = cfg.run()
        elapsed = time.perf_counter() - start
        (args.out / f"{variant}.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        ex, rnd = summary["exhaustive"], summary.get("random", {})
        print(f"{variant:12s} exhaustive {ex['verified']}/{ex['hypothesis_holds']} verified, "
              f"random {rnd.get('verified', 0)}/{rnd.get('hypothesis_holds', 0)}, "
              f"failures {len(summary['failures'])}, {elapsed:.1f}s")
        ok &= summary["ok"]
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
