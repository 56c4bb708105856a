"""Tabulate the atom decompositions by full enumeration on a two-element model."""

import argparse

from teamlog import Engine, Structure, team_to_json
from teamlog.pool import DECOMPOSITIONS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=2)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    m = Structure.build(range(args.size), constants={"c0": "0", "c1": "1"})
    engine = Engine(m, workers=args.workers)
    for lhs, rhs, scope in DECOMPOSITIONS:
        r = engine.equivalent(lhs, rhs, scope)
        mark = "==" if r.holds else "!="
        print(f"{lhs:>16} {mark} {rhs}   [{r.examined} teams]")
        if not r.holds:
            print("    counterexample:", team_to_json(r.counterexample, m))


if __name__ == "__main__":
    main()
