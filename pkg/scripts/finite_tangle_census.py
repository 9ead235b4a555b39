#!/usr/bin/env python3
"""Tabulate order-k tangle counts for small graph families.

Usage: python scripts/finite_tangle_census.py [--max-n 6] [--max-k 4]
"""

import argparse

from tangles.finite_tangles import ResourceGuardError, count_tangles
from tangles.graphs import complete_graph, cycle_graph, grid_graph, path_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--max-k", type=int, default=4)
    args = ap.parse_args()

    families = {
        "path": path_graph,
        "cycle": cycle_graph,
        "clique": complete_graph,
        "grid2x": lambda n: grid_graph(2, n),
    }
    ks = list(range(1, args.max_k + 1))
    header = "graph      " + "".join(f"  k={k}" for k in ks)
    print(header)
    print("-" * len(header))
    for fname, build in families.items():
        for n in range(2, args.max_n + 1):
            row = [f"{fname}({n})".ljust(11)]
            for k in ks:
                try:
                    row.append(f"{count_tangles(build(n), k):5d}")
                except ResourceGuardError:
                    row.append("    -")
            print("".join(row))


if __name__ == "__main__":
    main()
