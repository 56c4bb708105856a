"""Show that credulous distributivity breaks once an inclusion atom is involved.

Prints the three verdicts on the two-row team over (x, y, z) and the
split witnesses found by the evaluator.
"""

import argparse

from teamlog import Evaluator, Structure, Team, parse


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=2, help="domain size (at least 2)")
    args = ap.parse_args()

    m = Structure.build(range(args.size), constants={"c0": "0", "c1": "1"})
    x = Team.from_names(m, ("x", "y", "z"), [("0", "1", "1"), ("1", "0", "0")])
    ev = Evaluator(m)
    print(x.pretty(m))
    for text in (
        "B(z = c1) otimes inc(x; y)",
        "B(z = c1) otimes B(z = c0)",
        "B(z = c1) otimes B(z = c1) otimes (inc(x; y) and B(z = c0))",
    ):
        v = ev.evaluate(x, parse(text))
        print(f"{'holds' if v.holds else 'fails'}  {text}")
        for w in v.witness or ():
            print("    part:", sorted(tuple(m.name(e) for e in r) for r in w.rows))


if __name__ == "__main__":
    main()
