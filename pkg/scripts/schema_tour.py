#!/usr/bin/env python3
"""Walk the built-in schemas: census, representatives, kernels, closedness.

Usage: python scripts/schema_tour.py [--seed 0] [--samples 30]
"""

import argparse
import random

from tangles.builtin import SUITE, EXTRAS, load
from tangles.infinite_tangles import (
    axiom_check,
    census,
    end_count_estimate,
    minimal_witness,
    suite_tangles,
)
from tangles.schema import vertex_text
from tangles.topology import is_closed, kernel


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=30)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    for name in SUITE + EXTRAS:
        schema = load(name)
        rep = census(schema)
        print(f"== {name}: ends={rep['end_count']} uf_classes={len(rep['uf_classes'])} "
              f"estimate(20)={end_count_estimate(schema, 20)}")
        for t in suite_tangles(schema):
            bits = [t.id(), "closed" if is_closed(t) else "open", f"kernel={kernel(t).text()}"]
            if t.kind == "uf":
                bits.append(
                    "witness={" + ",".join(map(vertex_text, sorted(minimal_witness(t)))) + "}"
                )
            ax = axiom_check(t, rng, star_samples=args.samples,
                             perturbation_samples=10, member_samples=10)
            bits.append("axioms=ok" if ax["ok"] else f"axioms=FAIL {ax['findings'][:1]}")
            print("   " + "  ".join(bits))


if __name__ == "__main__":
    main()
