#!/usr/bin/env python3
"""Count (P, s) pairs where the meet-based and BW hypothesis families give different answers.

Both families imply non-evasiveness, so each disagreeing pair is also checked
for a non-evasive order complex.

    python scripts/hypothesis_disagreement.py --max-n 7
"""

import argparse

from nonevasive.complex import order_complex
from nonevasive.evasiveness import is_non_evasive
from nonevasive.generators import all_posets
from nonevasive.kozlov import check_BW, check_theorem8
from nonevasive.poset import to_text


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=7)
    parser.add_argument("--show", type=int, default=3, help="examples to print per n")
    args = parser.parse_args()
    for n in range(1, args.max_n + 1):
        diff = []
        for P in all_posets(n):
            for s in range(n):
                bw, t8 = check_BW(P, s).holds, check_theorem8(P, s).holds
                if bw != t8:
                    diff.append((P, s, bw, t8))
        nonev = sum(is_non_evasive(order_complex(P)) is not None for P, *_ in diff)
        print(f"n={n}: {len(diff)} disagreeing pairs, {nonev} with non-evasive complex")
        for P, s, bw, t8 in diff[:args.show]:
            covers = to_text(P).strip().replace("\n", "; ")
            print(f"    s={s} bw={bw} meet-form={t8}: {covers}")


if __name__ == "__main__":
    main()
