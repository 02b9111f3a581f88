#!/usr/bin/env python3
"""Count labeled and unlabeled posets without the canonical-form machinery.

Labeled posets on n points are built from those on n-1 points by adding a
new point with a chosen strict down-set D (an order ideal) and strict up-set U
(an order filter) such that every element of D is below every element of U.
Unlabeled classes are counted by brute-force isomorphism inside buckets of a
cheap invariant. The output is what tests/fixtures/poset_counts.json records.

    python scripts/count_posets_oracle.py --max-n 6
"""

import argparse
import itertools
import json
import time
from collections import defaultdict


def labeled(n):
    if n == 0:
        return [()]
    out = []
    for up in labeled(n - 1):
        m = n - 1
        down = [sum(1 << a for a in range(m) if up[a] >> b & 1) for b in range(m)]
        ideals = [S for S in range(1 << m)
                  if all(down[b] & ~S == 0 for b in range(m) if S >> b & 1)]
        filters = [S for S in range(1 << m)
                   if all(up[b] & ~S == 0 for b in range(m) if S >> b & 1)]
        for D in ideals:
            for F in filters:
                if D & F:
                    continue
                if not all(up[d] & F == F for d in range(m) if D >> d & 1):
                    continue
                rows = [r | ((1 << m) if D >> a & 1 else 0) for a, r in enumerate(up)]
                rows.append((1 << m) | F)
                out.append(tuple(rows))
    return out


def invariant(up):
    n = len(up)
    downs = [sum(1 for a in range(n) if up[a] >> b & 1) for b in range(n)]
    ups = [bin(r).count("1") for r in up]
    return tuple(sorted(zip(ups, downs)))


def isomorphic(p, q):
    n = len(p)
    for perm in itertools.permutations(range(n)):
        if all(q[perm[a]] == sum(1 << perm[b] for b in range(n) if p[a] >> b & 1) for a in range(n)):
            return True
    return False


def classes(n):
    buckets = defaultdict(list)
    for p in labeled(n):
        reps = buckets[invariant(p)]
        if not any(isomorphic(p, r) for r in reps):
            reps.append(p)
    return sum(len(v) for v in buckets.values())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=6)
    args = parser.parse_args()
    result = {"labeled": {}, "unlabeled": {}}
    for n in range(1, args.max_n + 1):
        t = time.perf_counter()
        result["labeled"][str(n)] = len(labeled(n))
        result["unlabeled"][str(n)] = classes(n)
        print(f"n={n}: {result['labeled'][str(n)]} labeled, {result['unlabeled'][str(n)]} classes "
              f"({time.perf_counter() - t:.1f}s)", flush=True)
    print(json.dumps(result, indent=2))


if __name__ == "__main__":
    main()
