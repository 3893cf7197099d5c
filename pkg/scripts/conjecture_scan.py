#!/usr/bin/env python3
"""Probe the hyperplane genus-sum identity beyond the proven m = 2 case.

For every admissible subgroup at the requested (p, n, m), sums the
quotient genera over all index-p subgroups of the deck group and compares
with the genus of the covering surface.  At m = 2 equality is a theorem;
for m >= 3 the scan gathers evidence.
"""

import argparse
from collections import Counter

from zpaction.enumeration import ActionParams, enumerate_actions
from zpaction.geometry import conjecture_probe

DEFAULT_CONFIGS = "2,5,3 2,5,4 3,4,3 2,4,3 3,5,3"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--configs", default=DEFAULT_CONFIGS,
                        help="space-separated p,n,m triples")
    args = parser.parse_args()
    for token in args.configs.split():
        p, n, m = (int(x) for x in token.split(","))
        params = ActionParams(p, n, m)
        keys = enumerate_actions(params)
        outcomes = Counter()
        gaps = Counter()
        for key in keys:
            probe = conjecture_probe(key)
            outcomes["equal" if probe.equal else "unequal"] += 1
            if not probe.equal:
                gaps[probe.genus_sum - probe.total] += 1
        line = f"(p={p}, n={n}, m={m}): {len(keys)} subgroups, {dict(outcomes)}"
        if gaps:
            line += f", genus-sum gaps {dict(sorted(gaps.items()))}"
        print(line)


if __name__ == "__main__":
    main()
