"""Finite structures, assignments, teams and the team-space enumeration primitives.

Elements are identified by their index in ``Structure.domain``; names are only
used at the JSON boundary and for display.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, NamedTuple

from .bitsets import bits, nonempty_submasks
from .errors import ModelError, SpaceTooLarge

DEFAULT_CAP = 4096


class Relation(NamedTuple):
    arity: int | None  # None for an empty relation declared without arity
    tuples: frozenset[tuple[str, ...]]


class Function(NamedTuple):
    arity: int
    table: Mapping[tuple[str, ...], str]


@dataclass(frozen=True, eq=False)
class Structure:
    """A finite first-order structure.

    Construct directly for raw (possibly invalid) data and call
    :func:`validate_structure`, or use :meth:`build` / :func:`load_structure`,
    which validate eagerly.
    """

    domain: tuple[str, ...]
    relations: Mapping[str, Relation] = field(default_factory=dict)
    functions: Mapping[str, Function] = field(default_factory=dict)
    constants: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        domain: Iterable[Any],
        relations: Mapping[str, Iterable[Any]] | None = None,
        functions: Mapping[str, Mapping[Any, Any]] | None = None,
        constants: Mapping[str, Any] | None = None,
    ) -> Structure:
        """Convenience constructor; element names are coerced to ``str``.

        Relation tuples may be given as plain values for unary relations.
        Function tables map argument tuples (or single values) to results.
        """
        rels = {}
        for name, tuples in (relations or {}).items():
            ts = frozenset(_as_tuple(t) for t in tuples)
            arity = len(next(iter(ts))) if ts else None
            rels[name] = Relation(arity, ts)
        fns = {}
        for name, table in (functions or {}).items():
            tab = {_as_tuple(k): str(v) for k, v in table.items()}
            arity = len(next(iter(tab))) if tab else 0
            fns[name] = Function(arity, tab)
        consts = {name: str(v) for name, v in (constants or {}).items()}
        s = cls(tuple(str(d) for d in domain), rels, fns, consts)
        report = validate_structure(s)
        if not report:
            raise ModelError("; ".join(report.violations))
        return s

    @property
    def size(self) -> int:
        return len(self.domain)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.domain)}

    def element(self, name: str) -> int:
        try:
            return self.index[str(name)]
        except KeyError:
            raise ModelError(f"unknown element {name!r}") from None

    def name(self, element: int) -> str:
        return self.domain[element]

    @cached_property
    def relation_table(self) -> dict[str, tuple[int | None, frozenset[tuple[int, ...]]]]:
        return {
            name: (rel.arity, frozenset(tuple(self.element(e) for e in t) for t in rel.tuples))
            for name, rel in self.relations.items()
        }

    @cached_property
    def function_table(self) -> dict[str, tuple[int, dict[tuple[int, ...], int]]]:
        return {
            name: (
                fn.arity,
                {tuple(self.element(e) for e in k): self.element(v) for k, v in fn.table.items()},
            )
            for name, fn in self.functions.items()
        }

    @cached_property
    def constant_table(self) -> dict[str, int]:
        return {name: self.element(v) for name, v in self.constants.items()}


def _as_tuple(value: Any) -> tuple[str, ...]:
    if isinstance(value, (tuple, list)):
        return tuple(str(v) for v in value)
    return (str(value),)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_structure(s: Structure) -> ValidationReport:
    """Check every structural invariant, collecting all violations."""
    problems: list[str] = []
    if not s.domain:
        problems.append("domain is empty")
    if len(set(s.domain)) != len(s.domain):
        problems.append("domain contains duplicate elements")
    known = set(s.domain)

    for name, rel in s.relations.items():
        for t in sorted(rel.tuples):
            if rel.arity is not None and len(t) != rel.arity:
                problems.append(f"relation {name}: tuple {t} has arity {len(t)}, expected {rel.arity}")
            for e in t:
                if e not in known:
                    problems.append(f"relation {name}: unknown element {e!r}")

    for name, fn in s.functions.items():
        for args, val in fn.table.items():
            if len(args) != fn.arity:
                problems.append(f"function {name}: entry {args} has arity {len(args)}, expected {fn.arity}")
            for e in (*args, val):
                if e not in known:
                    problems.append(f"function {name}: unknown element {e!r}")
        if known:
            missing = [
                args
                for args in itertools.product(s.domain, repeat=fn.arity)
                if args not in fn.table
            ]
            if missing:
                problems.append(f"function {name}: partial, undefined on {missing[0]} and {len(missing) - 1} more")

    for name, e in s.constants.items():
        if e not in known:
            problems.append(f"constant {name}: unknown element {e!r}")
    return ValidationReport(tuple(problems))


@dataclass(frozen=True)
class Assignment:
    """A total map from ``scope`` to element indices."""

    scope: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.scope) != len(self.values):
            raise ModelError("assignment values do not match its scope")

    def __getitem__(self, var: str) -> int:
        try:
            return self.values[self.scope.index(var)]
        except ValueError:
            raise KeyError(var) from None

    def __contains__(self, var: object) -> bool:
        return var in self.scope

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.scope, self.values))


@dataclass(frozen=True)
class Team:
    """A set of assignments over a fixed, ordered variable scope.

    Rows are tuples of element indices positionally matching ``scope``.
    Teams over different scopes never compare equal, including empty ones.
    """

    scope: tuple[str, ...]
    rows: frozenset[tuple[int, ...]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        object.__setattr__(self, "rows", frozenset(tuple(r) for r in self.rows))
        if len(set(self.scope)) != len(self.scope):
            raise ModelError(f"duplicate variable in scope {self.scope}")
        for r in self.rows:
            if len(r) != len(self.scope):
                raise ModelError(f"row {r} does not match scope {self.scope}")

    @classmethod
    def from_names(cls, structure: Structure, scope: Iterable[str], rows: Iterable[Iterable[Any]]) -> Team:
        return cls(tuple(scope), frozenset(tuple(structure.element(e) for e in r) for r in rows))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[Assignment]:
        for r in self.sorted_rows():
            yield Assignment(self.scope, r)

    def sorted_rows(self) -> list[tuple[int, ...]]:
        return sorted(self.rows)

    def _check(self, other: Team) -> None:
        if not isinstance(other, Team):
            raise TypeError(f"expected Team, got {type(other).__name__}")
        if other.scope != self.scope:
            raise ModelError(f"scope mismatch: {self.scope} vs {other.scope}")

    def __and__(self, other: Team) -> Team:
        self._check(other)
        return Team(self.scope, self.rows & other.rows)

    def __or__(self, other: Team) -> Team:
        self._check(other)
        return Team(self.scope, self.rows | other.rows)

    def __xor__(self, other: Team) -> Team:
        self._check(other)
        return Team(self.scope, self.rows ^ other.rows)

    def __sub__(self, other: Team) -> Team:
        self._check(other)
        return Team(self.scope, self.rows - other.rows)

    def __le__(self, other: Team) -> bool:
        self._check(other)
        return self.rows <= other.rows

    def __lt__(self, other: Team) -> bool:
        self._check(other)
        return self.rows < other.rows

    def __ge__(self, other: Team) -> bool:
        return other <= self

    def __gt__(self, other: Team) -> bool:
        return other < self

    def pretty(self, structure: Structure) -> str:
        rows = ", ".join(
            "(" + ", ".join(f"{v}:{structure.name(e)}" for v, e in zip(self.scope, r)) + ")"
            for r in self.sorted_rows()
        )
        return "{" + rows + "}"


@dataclass(frozen=True, eq=False)
class TeamSpace:
    """All assignments over ``scope`` into the structure's domain, in canonical order.

    Canonical order is lexicographic: the first variable is the most
    significant digit, element indices are the digit values.
    """

    structure: Structure
    scope: tuple[str, ...]
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        if len(set(self.scope)) != len(self.scope):
            raise ModelError(f"duplicate variable in scope {self.scope}")
        if self.size > self.cap:
            raise SpaceTooLarge(
                f"space too large: {self.structure.size}^{len(self.scope)} = {self.size} assignments "
                f"exceeds cap {self.cap}"
            )
        object.__setattr__(self, "_derived", {})

    @property
    def size(self) -> int:
        return self.structure.size ** len(self.scope)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @property
    def team_count(self) -> int:
        return 1 << self.size

    @cached_property
    def assignments(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.structure.size), repeat=len(self.scope)))

    @cached_property
    def _positions(self) -> dict[tuple[int, ...], int]:
        return {a: i for i, a in enumerate(self.assignments)}

    def index(self, values: tuple[int, ...]) -> int:
        return self._positions[values]

    def team(self, mask: int) -> Team:
        a = self.assignments
        return Team(self.scope, frozenset(a[i] for i in bits(mask)))

    def mask(self, team: Team) -> int:
        if team.scope != self.scope:
            raise ModelError(f"team scope {team.scope} does not match space scope {self.scope}")
        m = 0
        for r in team.rows:
            try:
                m |= 1 << self._positions[r]
            except KeyError:
                raise ModelError(f"row {r} is not an assignment of this space") from None
        return m

    def with_scope(self, scope: tuple[str, ...]) -> TeamSpace:
        key = ("scope", scope)
        if key not in self._derived:
            self._derived[key] = TeamSpace(self.structure, scope, self.cap)
        return self._derived[key]

    def extend(self, var: str) -> TeamSpace:
        """Space over ``scope ∪ {var}``; ``var`` goes last when new."""
        return self if var in self.scope else self.with_scope(self.scope + (var,))

    def drop(self, var: str) -> TeamSpace:
        return self.with_scope(tuple(v for v in self.scope if v != var)) if var in self.scope else self

    def projection(self, var: str) -> tuple[TeamSpace, list[int]]:
        """The space without ``var`` and, per assignment here, the index of its restriction."""
        key = ("proj", var)
        if key not in self._derived:
            target = self.drop(var)
            if target is self:
                keys = list(range(self.size))
            else:
                pos = self.scope.index(var)
                keys = [target.index(a[:pos] + a[pos + 1:]) for a in self.assignments]
            self._derived[key] = (target, keys)
        return self._derived[key]

    def fibers(self, var: str) -> tuple[TeamSpace, list[int]]:
        """For ``var`` in scope: the restricted space and, per restricted
        assignment, the mask of its preimage here."""
        key = ("fib", var)
        if key not in self._derived:
            target, keys = self.projection(var)
            fib = [0] * target.size
            for i, k in enumerate(keys):
                fib[k] |= 1 << i
            self._derived[key] = (target, fib)
        return self._derived[key]

    def restrict_mask(self, mask: int, var: str) -> tuple[TeamSpace, int]:
        target, keys = self.projection(var)
        if target is self:
            return self, mask
        out = 0
        for i in bits(mask):
            out |= 1 << keys[i]
        return target, out


def enumerate_assignments(space: TeamSpace) -> list[Assignment]:
    return [Assignment(space.scope, a) for a in space.assignments]


def enumerate_teams(space: TeamSpace) -> Iterator[Team]:
    """Every team of the space, in bitmask order over the canonical assignments."""
    for mask in range(space.team_count):
        yield space.team(mask)


def restrict_team(team: Team, var: str) -> Team:
    if var not in team.scope:
        return team
    pos = team.scope.index(var)
    return Team(
        team.scope[:pos] + team.scope[pos + 1:],
        frozenset(r[:pos] + r[pos + 1:] for r in team.rows),
    )


def blanket_expand(team: Team, var: str, structure: Structure) -> Team:
    """``X[M/x]``: every row extended (or overwritten) with every element at ``var``."""
    n = structure.size
    if var in team.scope:
        pos = team.scope.index(var)
        rows = {r[:pos] + (m,) + r[pos + 1:] for r in team.rows for m in range(n)}
        return Team(team.scope, frozenset(rows))
    return Team(team.scope + (var,), frozenset(r + (m,) for r in team.rows for m in range(n)))


def x_variants(team: Team, var: str, space: TeamSpace) -> Iterator[Team]:
    """Every ``Y`` over ``scope(team) ∪ {var}`` with ``Y`` and ``team`` agreeing once ``var`` is forgotten.

    ``space`` supplies the structure and cap; its own scope is not used.
    """
    base = space.with_scope(team.scope)
    target = base.extend(var)
    keyspace, fib = target.fibers(var)
    key_mask = keyspace.mask(restrict_team(team, var))
    choices = [nonempty_submasks(fib[k]) for k in bits(key_mask)]
    for combo in itertools.product(*choices):
        m = 0
        for part in combo:
            m |= part
        yield target.team(m)


# JSON formats


def load_structure(source: str | Path | Mapping[str, Any]) -> Structure:
    data = _load_json(source)
    if not isinstance(data, Mapping) or "domain" not in data:
        raise ModelError("structure file must be an object with a 'domain' key")
    functions = {}
    for name, spec in (data.get("functions") or {}).items():
        if not isinstance(spec, Mapping) or "map" not in spec:
            raise ModelError(f"function {name}: expected {{'arity': k, 'map': [[args, value], ...]}}")
        table = {}
        for entry in spec["map"]:
            args, val = entry
            table[_as_tuple(args)] = str(val)
        functions[name] = Function(int(spec.get("arity", len(next(iter(table), ())))), table)
    relations = {}
    for name, tuples in (data.get("relations") or {}).items():
        ts = frozenset(_as_tuple(t) for t in tuples)
        relations[name] = Relation(len(next(iter(ts))) if ts else None, ts)
    s = Structure(
        tuple(str(d) for d in data["domain"]),
        relations,
        functions,
        {k: str(v) for k, v in (data.get("constants") or {}).items()},
    )
    report = validate_structure(s)
    if not report:
        raise ModelError("invalid structure: " + "; ".join(report.violations))
    return s


def structure_to_json(s: Structure) -> dict[str, Any]:
    return {
        "domain": list(s.domain),
        "relations": {n: [list(t) for t in sorted(r.tuples)] for n, r in s.relations.items()},
        "functions": {
            n: {"arity": f.arity, "map": [[list(k), v] for k, v in sorted(f.table.items())]}
            for n, f in s.functions.items()
        },
        "constants": dict(s.constants),
    }


def load_team(source: str | Path | Mapping[str, Any], structure: Structure) -> Team:
    data = _load_json(source)
    if not isinstance(data, Mapping) or "vars" not in data or "rows" not in data:
        raise ModelError("team file must be an object with 'vars' and 'rows' keys")
    scope = tuple(str(v) for v in data["vars"])
    rows = []
    for r in data["rows"]:
        if len(r) != len(scope):
            raise ModelError(f"team row {r} does not match vars {list(scope)}")
        rows.append(r)
    return Team.from_names(structure, scope, rows)


def team_to_json(team: Team, structure: Structure) -> dict[str, Any]:
    return {
        "vars": list(team.scope),
        "rows": [[structure.name(e) for e in r] for r in team.sorted_rows()],
    }


def _load_json(source: str | Path | Mapping[str, Any]) -> Any:
    if isinstance(source, Mapping):
        return source
    try:
        with open(source, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{source}: malformed JSON ({exc})") from exc
