"""Fixed regression pool of formulas for the property suites.

Everything here is deterministic: bump ``POOL_VERSION`` whenever a list or
the generator changes, so stored results can be told apart.
"""

from __future__ import annotations

import itertools
import random

from .syntax import (
    And, Belief, CondIndependence, Conj, Constancy, Dependence, Disj, Eq, Exclusion, Formula,
    Inclusion, Independence, Neg, Not, Or, Possible, Quantified, Quantifier, Update, AdjointImp,
    UpdateKind, Var, parse,
)

POOL_VERSION = 1
SEED = 20130907


def atoms(variables=("x", "y", "z")) -> list[Formula]:
    """Every dependency atom over single variables, plus basic B/P literals."""
    vs = [Var(v) for v in variables]
    out: list[Formula] = []
    for a in vs:
        out.append(Constancy((a,)))
    for a, b in itertools.permutations(vs, 2):
        out += [Dependence((a,), (b,)), Inclusion((a,), (b,)), Exclusion((a,), (b,)), Independence((a,), (b,))]
        out += [Belief(Eq(a, b)), Possible(Eq(a, b)), Belief(Neg(Eq(a, b)))]
    for a, b, c in itertools.permutations(vs, 3):
        out.append(CondIndependence((a,), (b,), (c,)))
    for a in vs:
        out += [Belief(Eq(a, Var("c0"))), Possible(Eq(a, Var("c1")))]
    return out


# Equivalences stated informally in the literature on team semantics, as
# (lhs, rhs, scope).  The conditional-independence unfolding uses the
# corrected disjuncts (tests/test_entailment.py checks that the literal form is refuted).
DECOMPOSITIONS: list[tuple[str, str, tuple[str, ...]]] = [
    ("dep(x; y)", "A u. E v. B(u != x | v = y)", ("x", "y")),
    ("inc(x; y)", "A u. (B(u != x) or P(u = y))", ("x", "y")),
    ("exc(x; y)", "A u. (B(u != x) or B(u != y))", ("x", "y")),
    ("const(x)", "ind(x; x)", ("x", "y")),
    ("dep(x; y)", "cind(x; y; y)", ("x", "y")),
    ("dep(x; y)", "const(x) s-> const(y)", ("x", "y")),
    ("dep(x; y)", "const(x) c-> const(y)", ("x", "y")),
    ("cind(x; y; z)", "const(x) hook-> ind(y; z)", ("x", "y", "z")),
    ("B(x = y | y = z)", "not P(!(x = y | y = z))", ("x", "y", "z")),
    (
        "cind(x; y; z)",
        "A u1. A u2. A u3. (B(u1 != x | u2 != y) or B(u1 != x | u3 != z) or P(u1 = x & u2 = y & u3 = z))",
        ("x", "y", "z"),
    ),
]

# Downward-closed formulas over {x, y, z}: const/dep/exc atoms, B literals and
# their closure under `and` and `otimes`.
DOWNWARD_CLOSED: list[str] = [
    "const(x)", "const(y)", "const(z)",
    "dep(x; y)", "dep(y; z)", "dep(x, y; z)", "dep(z; x)",
    "exc(x; y)", "exc(y; z)",
    "B(x = y)", "B(z = c1)", "B(x != z)", "B(x = c0 | y = c1)",
    "const(x) and B(y = z)",
    "dep(x; y) otimes const(z)",
    "const(x) otimes const(y)",
    "exc(x; z) and dep(y; x)",
]

# Formulas over {x, y} used for the adjointness triples.
ADJOINT_BASE: list[str] = [
    "const(x)", "const(y)", "dep(x; y)", "inc(x; y)", "exc(x; y)", "ind(x; y)",
    "B(x = y)", "P(x = c1)", "B(x = c0) otimes B(y = c1)", "not const(x)",
]


def adjoint_triples(n: int = 24, seed: int = SEED) -> list[tuple[str, str, str]]:
    rng = random.Random(seed)
    triples = [
        ("const(x)", "const(x)", "const(x)"),
        ("ind(x; y)", "B(x = y)", "const(x)"),
        ("inc(x; y)", "const(y)", "dep(x; y)"),
        ("P(x = c1)", "exc(x; y)", "P(x = c1)"),
    ]
    while len(triples) < n:
        triples.append(tuple(rng.choice(ADJOINT_BASE) for _ in range(3)))
    return triples


_KINDS = list(UpdateKind)


def random_formula(rng: random.Random, depth: int, variables=("x", "y", "z"), bound=()) -> Formula:
    """A random team formula of nesting depth ``<= depth``."""
    names = list(variables) + list(bound)
    if depth <= 0 or rng.random() < 0.25:
        a, b = (Var(rng.choice(names)) for _ in range(2))
        c = Var(rng.choice(names))
        return rng.choice([
            Constancy((a,)), Dependence((a,), (b,)), Inclusion((a,), (b,)), Exclusion((a,), (b,)),
            Independence((a,), (b,)), CondIndependence((a,), (b,), (c,)),
            Belief(Eq(a, b)), Belief(Disj(Eq(a, Var("c0")), Neg(Eq(b, c)))),
            Possible(Eq(a, b)), Possible(Conj(Eq(a, Var("c1")), Eq(b, c))),
        ])
    sub = lambda: random_formula(rng, depth - 1, variables, bound)  # noqa: E731
    choice = rng.randrange(7)
    if choice == 0:
        return And(sub(), sub())
    if choice == 1:
        return Or(sub(), sub())
    if choice == 2:
        return Not(sub())
    if choice in (3, 4):
        return Update(rng.choice(_KINDS), sub(), sub())
    if choice == 5:
        return AdjointImp(rng.choice(_KINDS), sub(), sub())
    u = f"u{len(bound)}"
    q = rng.choice([Quantifier.EXISTS, Quantifier.FORALL])
    return Quantified(q, u, random_formula(rng, depth - 1, variables, tuple(bound) + (u,)))


def random_pool(n: int = 50, depth: int = 3, seed: int = SEED, variables=("x", "y", "z")) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, depth, variables) for _ in range(n)]


def regression_pool() -> list[Formula]:
    """Atoms over {x, y, z}, both sides of every decomposition, and 50 random formulas."""
    out = atoms()
    for lhs, rhs, _ in DECOMPOSITIONS:
        out += [parse(lhs), parse(rhs)]
    return out + random_pool()
