"""Binary belief-update operators as first-class values.

An operator maps a pair of teams to the *set* of possible outcomes; an empty
set means the update is refused.  The four built-ins are deterministic, but
everything here (orders, minimal updates, derived operators, law checks) also
accepts user-supplied, possibly nondeterministic operators.
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from . import bitsets
from .errors import ModelError
from .model import Team, TeamSpace, enumerate_teams
from .syntax import UpdateKind

Outcome = frozenset[Team]


@dataclass(frozen=True)
class UpdateOp:
    name: str
    fn: Callable[[Team, Team], Iterable[Team]]
    kind: UpdateKind | None = None

    def __call__(self, x: Team, y: Team) -> Outcome:
        if x.scope != y.scope:
            raise ModelError(f"scope mismatch: {x.scope} vs {y.scope}")
        return frozenset(self.fn(x, y))

    def __repr__(self) -> str:
        return f"UpdateOp({self.name})"


def _confident(x: Team, y: Team):
    return (x & y,)


def _credulous(x: Team, y: Team):
    return (x | y,)


def _skeptical(x: Team, y: Team):
    return (y,) if y <= x else ()


def _openminded(x: Team, y: Team):
    return (y,) if x <= y else ()


BUILTINS: dict[UpdateKind, UpdateOp] = {
    UpdateKind.CONFIDENT: UpdateOp("confident", _confident, UpdateKind.CONFIDENT),
    UpdateKind.CREDULOUS: UpdateOp("credulous", _credulous, UpdateKind.CREDULOUS),
    UpdateKind.SKEPTICAL: UpdateOp("skeptical", _skeptical, UpdateKind.SKEPTICAL),
    UpdateKind.OPENMINDED: UpdateOp("openminded", _openminded, UpdateKind.OPENMINDED),
}

SYMMETRIC_DIFFERENCE = UpdateOp("symdiff", lambda x, y: (x ^ y,))


def operator(op: UpdateKind | UpdateOp | str) -> UpdateOp:
    if isinstance(op, UpdateOp):
        return op
    if isinstance(op, str):
        if op == SYMMETRIC_DIFFERENCE.name:
            return SYMMETRIC_DIFFERENCE
        op = UpdateKind(op)
    return BUILTINS[op]


def apply_update(kind: UpdateKind | UpdateOp, x: Team, y: Team) -> Outcome:
    return operator(kind)(x, y)


# orders


def leq(op: UpdateKind | UpdateOp, x: Team, y: Team, space: TeamSpace | None = None) -> bool:
    """``x ≤ y`` in the order induced by ``op``: some update of ``x`` can yield ``y``.

    Built-ins use the closed forms (⊇ for confident/skeptical, ⊆ for
    credulous/openminded); custom operators need ``space`` for the search.
    """
    op = operator(op)
    if x.scope != y.scope:
        raise ModelError(f"scope mismatch: {x.scope} vs {y.scope}")
    if op.kind in (UpdateKind.CONFIDENT, UpdateKind.SKEPTICAL):
        return y <= x
    if op.kind in (UpdateKind.CREDULOUS, UpdateKind.OPENMINDED):
        return x <= y
    if space is None:
        raise ValueError(f"leq for custom operator {op.name} needs a TeamSpace")
    return leq_existential(op, x, y, space)


def leq_existential(op: UpdateKind | UpdateOp, x: Team, y: Team, space: TeamSpace) -> bool:
    op = operator(op)
    return any(y in op(x, other) for other in enumerate_teams(space.with_scope(x.scope)))


# minimal updates


def outcomes(op: UpdateKind | UpdateOp, x: Team, family: Iterable[Team]) -> frozenset[Team]:
    """``X ◊ V``: every outcome of updating ``x`` with some member of ``family``."""
    op = operator(op)
    return frozenset(z for y in family for z in op(x, y))


def minimal_apply(
    op: UpdateKind | UpdateOp, x: Team, family: Iterable[Team], space: TeamSpace | None = None
) -> frozenset[Team]:
    """The ``≤◊``-minimal members of ``X ◊ V``; empty when no update applies."""
    op = operator(op)
    reach = outcomes(op, x, family)
    return frozenset(
        z for z in reach
        if not any(w != z and leq(op, w, z, space) for w in reach)
    )


def minimal_apply_explicit(kind: UpdateKind, x: Team, family: Iterable[Team]) -> frozenset[Team]:
    """The four minimal updates written out directly, one clause per operator."""
    family = frozenset(family)
    if kind is UpdateKind.CONFIDENT:
        reach = {x & y for y in family}
        return frozenset(z for z in reach if not any(z < w for w in reach))
    if kind is UpdateKind.CREDULOUS:
        reach = {x | y for y in family}
        return frozenset(z for z in reach if not any(w < z for w in reach))
    if kind is UpdateKind.SKEPTICAL:
        return frozenset(
            z for z in family
            if z <= x and not any(z < w <= x for w in family)
        )
    if kind is UpdateKind.OPENMINDED:
        return frozenset(
            z for z in family
            if x <= z and not any(x <= w < z for w in family)
        )
    raise ValueError(kind)


def minimal_masks(kind: UpdateKind, x: int, family: Iterable[int]) -> list[int]:
    """Bitmask kernel of :func:`minimal_apply` for the built-ins, sorted increasingly."""
    if kind is UpdateKind.CONFIDENT:
        return bitsets.maximal(x & y for y in family)
    if kind is UpdateKind.CREDULOUS:
        return bitsets.minimal(x | y for y in family)
    if kind is UpdateKind.SKEPTICAL:
        return bitsets.maximal(y for y in family if y & ~x == 0)
    if kind is UpdateKind.OPENMINDED:
        return bitsets.minimal(y for y in family if x & ~y == 0)
    raise ValueError(kind)


def derived_operator(op: UpdateKind | UpdateOp, space: TeamSpace | None = None) -> UpdateOp:
    """``X ◊' Y ↦ Z`` iff ``X ≤◊ Y`` and ``X ◊ Y ↦ Z``."""
    base = operator(op)

    def fn(x: Team, y: Team):
        return base(x, y) if leq(base, x, y, space) else ()

    return UpdateOp(f"derived({base.name})", fn)


# algebraic laws


class Law(enum.Enum):
    IDEMPOTENCE = "idempotence"
    ASSOCIATIVITY = "associativity"
    MONOTONICITY = "monotonicity"


@dataclass(frozen=True)
class LawReport:
    law: Law
    passed: bool
    counterexample: tuple[Team, ...] | None = None
    checked: int = 0


def check_idempotence(op: UpdateOp, teams: list[Team]) -> LawReport:
    for x in teams:
        if op(x, x) != frozenset({x}):
            return LawReport(Law.IDEMPOTENCE, False, (x,), len(teams))
    return LawReport(Law.IDEMPOTENCE, True, None, len(teams))


def check_associativity(op: UpdateOp, teams: list[Team]) -> LawReport:
    """Counterexample layout: ``(X1, X2, X3, Y, Z)`` with ``X1◊X2↦Y``, ``Y◊X3↦Z``."""
    n = 0
    for x1 in teams:
        for x2 in teams:
            for y in sorted(op(x1, x2), key=_team_key):
                for x3 in teams:
                    n += 1
                    right = op(x2, x3)
                    for z in sorted(op(y, x3), key=_team_key):
                        if not any(z in op(x1, w) for w in right):
                            return LawReport(Law.ASSOCIATIVITY, False, (x1, x2, x3, y, z), n)
    return LawReport(Law.ASSOCIATIVITY, True, None, n)


def check_monotonicity(op: UpdateOp, teams: list[Team]) -> LawReport:
    """Counterexample layout: ``(X, Y, Z, W)`` with ``X◊Y↦Z``, ``Z◊W↦X`` and ``X ≠ Z``."""
    n = 0
    for x in teams:
        for y in teams:
            for z in sorted(op(x, y), key=_team_key):
                if z == x:
                    n += len(teams)
                    continue
                for w in teams:
                    n += 1
                    if x in op(z, w):
                        return LawReport(Law.MONOTONICITY, False, (x, y, z, w), n)
    return LawReport(Law.MONOTONICITY, True, None, n)


def check_laws(op: UpdateKind | UpdateOp, space: TeamSpace) -> list[LawReport]:
    """Exhaustively test idempotence, associativity and monotonicity over ``space``."""
    op = operator(op)
    teams = list(enumerate_teams(space))
    return [check_idempotence(op, teams), check_associativity(op, teams), check_monotonicity(op, teams)]


def _team_key(t: Team):
    return (len(t.rows), t.sorted_rows())
