"""Check  phi <> psi |= theta  iff  phi |= psi -> theta  for every update kind.

Runs over the seeded triple pool on every domain size in --sizes and prints
a per-kind tally.  Exit status 1 if any violation is found.
"""

import argparse
import sys
from collections import Counter

from teamlog import Structure, entails_batch
from teamlog.pool import adjoint_triples

PAIRS = {"confident": ("oplus", "c->"), "credulous": ("otimes", "l->"),
         "skeptical": ("ominus", "s->"), "openminded": ("odot", "o->")}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2,3")
    ap.add_argument("--triples", type=int, default=24)
    ap.add_argument("--vars", default="x,y")
    args = ap.parse_args()

    models = [Structure.build(range(int(n)), constants={"c0": "0", "c1": "1"}) for n in args.sizes.split(",")]
    scope = tuple(args.vars.split(","))
    violations = 0
    for kind, (upd, imp) in PAIRS.items():
        tally = Counter()
        for phi, psi, theta in adjoint_triples(args.triples):
            left = entails_batch(models, f"({phi}) {upd} ({psi})", theta, scope)
            right = entails_batch(models, phi, f"({psi}) {imp} ({theta})", scope)
            for a, b in zip(left.results, right.results):
                tally["agree" if a.holds == b.holds else "VIOLATION"] += 1
                tally["entailed" if a.holds else "not entailed"] += 1
        violations += tally["VIOLATION"]
        print(f"{kind:>10}: {dict(sorted(tally.items()))}")
    sys.exit(1 if violations else 0)


if __name__ == "__main__":
    main()
