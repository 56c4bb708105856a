"""Team satisfaction ``M ⊨_X φ`` by exhaustive search.

Inside an :class:`Evaluator` teams are bitmasks over the canonical assignment
list of a :class:`~teamlog.model.TeamSpace`.  Verdicts are memoized per
(formula, scope, team) for the lifetime of the evaluator, so one evaluator
should be used per structure and, for thread safety, per thread.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .bitsets import bits, nonempty_submasks, popcount, submasks, supermasks
from .errors import ArityError, ScopeError, SpaceTooLarge
from .fo_eval import eval_term, tarski_sat
from .model import DEFAULT_CAP, Structure, Team, TeamSpace
from .syntax import (
    AdjointImp, And, Belief, CondIndependence, Constancy, Dependence, Exclusion, FoFormula, Formula,
    Inclusion, Independence, Lit, MinImp, MinUpdate, Not, Or, Possible, Quantified, Quantifier, Term,
    Update, UpdateKind, free_variables, substitute,
)
from .updates import minimal_masks

# Largest number of bits any single exhaustive search may range over
# (2**16 teams, or 2**16 split candidates).
DEFAULT_SEARCH_BITS = 16

# Spaces with at most this many assignments evaluate oplus/otimes by
# combining the two Bel sets once, instead of searching splits per team.
DEFAULT_REACH_BITS = 8

_Witness = list[tuple[TeamSpace, int]] | None


@dataclass(frozen=True)
class Query:
    structure: Structure
    team: Team
    formula: Formula
    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``witness`` holds the teams found by an existential search when the
    formula holds (e.g. the ``(Y, Z)`` split of an update), or the offending
    team when a universal search fails (e.g. the ``Y`` refuting an implication).
    """

    holds: bool
    witness: tuple[Team, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def evaluate(q: Query) -> Verdict:
    return Evaluator(q.structure, cap=q.cap).evaluate(q.team, q.formula)


class Evaluator:
    def __init__(
        self,
        structure: Structure,
        cap: int = DEFAULT_CAP,
        search_bits: int = DEFAULT_SEARCH_BITS,
        reach_bits: int = DEFAULT_REACH_BITS,
    ):
        self.structure = structure
        self.cap = cap
        self.search_bits = search_bits
        self.reach_bits = reach_bits
        self._spaces: dict[tuple[str, ...], TeamSpace] = {}
        self._memo: dict[tuple[Formula, tuple[str, ...]], dict[int, bool]] = defaultdict(dict)
        self._columns: dict[tuple, list[tuple[int, ...]]] = {}
        self._fo: dict[tuple, int] = {}
        self._bel: dict[tuple, list[int]] = {}
        self._reach: dict[tuple, dict] = {}

    # public API

    def space(self, scope: tuple[str, ...]) -> TeamSpace:
        scope = tuple(scope)
        if scope not in self._spaces:
            self._spaces[scope] = TeamSpace(self.structure, scope, self.cap)
        return self._spaces[scope]

    def check_scope(self, f: Formula, scope: tuple[str, ...]) -> None:
        missing = sorted(v for v in free_variables(f) - set(scope) if v not in self.structure.constants)
        if missing:
            raise ScopeError(f"free variables {missing} not in team scope {list(scope)}")

    def evaluate(self, team: Team, f: Formula) -> Verdict:
        self.check_scope(f, team.scope)
        sp = self.space(team.scope)
        holds, wit = self._check(f, sp, sp.mask(team))
        return Verdict(holds, tuple(s.team(m) for s, m in wit) if wit is not None else None)

    def satisfies(self, team: Team, f: Formula) -> bool:
        self.check_scope(f, team.scope)
        sp = self.space(team.scope)
        return self.sat(f, sp, sp.mask(team))

    def sat(self, f: Formula, sp: TeamSpace, mask: int) -> bool:
        table = self._memo[(f, sp.scope)]
        v = table.get(mask)
        if v is None:
            v = table[mask] = self._check(f, sp, mask)[0]
        return v

    def bel_masks(self, f: Formula, sp: TeamSpace) -> list[int]:
        """Every team of ``sp`` satisfying ``f``, in canonical order."""
        key = (f, sp.scope)
        if key not in self._bel:
            self.guard(sp.size, "team space")
            self._bel[key] = [m for m in range(sp.team_count) if self.sat(f, sp, m)]
        return self._bel[key]

    # helpers

    def guard(self, nbits: int, what: str) -> None:
        if nbits > self.search_bits:
            raise SpaceTooLarge(f"{what} search over 2^{nbits} candidates exceeds limit 2^{self.search_bits}")

    def fo_mask(self, phi: FoFormula, sp: TeamSpace) -> int:
        """Mask of the assignments of ``sp`` satisfying ``phi``."""
        key = (phi, sp.scope)
        if key not in self._fo:
            m = 0
            for i, a in enumerate(sp.assignments):
                if tarski_sat(self.structure, dict(zip(sp.scope, a)), phi):
                    m |= 1 << i
            self._fo[key] = m
        return self._fo[key]

    def column(self, terms: tuple[Term, ...], sp: TeamSpace) -> list[tuple[int, ...]]:
        """Value of the term tuple at every assignment of ``sp``."""
        key = (terms, sp.scope)
        if key not in self._columns:
            M = self.structure
            self._columns[key] = [
                tuple(eval_term(M, dict(zip(sp.scope, a)), t) for t in terms) for a in sp.assignments
            ]
        return self._columns[key]

    # dispatch

    def _check(self, f: Formula, sp: TeamSpace, x: int) -> tuple[bool, _Witness]:
        if isinstance(f, Belief):
            return x & ~self.fo_mask(f.body, sp) == 0, None
        if isinstance(f, Possible):
            return x & self.fo_mask(f.body, sp) != 0, None
        if isinstance(f, (Constancy, Dependence, Inclusion, Exclusion, Independence, CondIndependence)):
            return self._atom(f, sp, x), None
        if isinstance(f, And):
            return self.sat(f.left, sp, x) and self.sat(f.right, sp, x), None
        if isinstance(f, Or):
            return self.sat(f.left, sp, x) or self.sat(f.right, sp, x), None
        if isinstance(f, Not):
            return not self.sat(f.body, sp, x), None
        if isinstance(f, Quantified):
            return self._quantifier(f, sp, x)
        if isinstance(f, Update):
            return self._update(f.kind, f.left, f.right, sp, x)
        if isinstance(f, AdjointImp):
            return self._adjoint_imp(f.kind, f.left, f.right, sp, x)
        if isinstance(f, MinUpdate):
            return self._min_update(f.kind, f.left, f.right, sp, x)
        if isinstance(f, MinImp):
            return self._min_imp(f.kind, f.left, f.right, sp, x)
        raise TypeError(f"not a team formula: {f!r}")

    # atoms

    def _atom(self, f: Formula, sp: TeamSpace, x: int) -> bool:
        rows = bits(x)
        if isinstance(f, Constancy):
            col = self.column(f.terms, sp)
            return len({col[i] for i in rows}) <= 1
        if isinstance(f, CondIndependence):
            cond, left, right = (self.column(ts, sp) for ts in (f.cond, f.left, f.right))
            groups: dict[tuple, tuple[set, set, set]] = {}
            for i in rows:
                ls, rs, pairs = groups.setdefault(cond[i], (set(), set(), set()))
                ls.add(left[i])
                rs.add(right[i])
                pairs.add((left[i], right[i]))
            return all(len(p) == len(ls) * len(rs) for ls, rs, p in groups.values())
        if isinstance(f, (Inclusion, Exclusion)) and len(f.left) != len(f.right):
            raise ArityError(f"{type(f).__name__.lower()} atom needs tuples of equal length")
        left, right = self.column(f.left, sp), self.column(f.right, sp)
        if isinstance(f, Dependence):
            seen: dict[tuple, tuple] = {}
            return all(seen.setdefault(left[i], right[i]) == right[i] for i in rows)
        if isinstance(f, Inclusion):
            return {left[i] for i in rows} <= {right[i] for i in rows}
        if isinstance(f, Exclusion):
            return not ({left[i] for i in rows} & {right[i] for i in rows})
        if isinstance(f, Independence):
            ls = {left[i] for i in rows}
            rs = {right[i] for i in rows}
            return len({(left[i], right[i]) for i in rows}) == len(ls) * len(rs)
        raise TypeError(f)

    # update connectives

    def _update(self, kind: UpdateKind, phi: Formula, psi: Formula, sp: TeamSpace, x: int):
        full = sp.full
        if kind in (UpdateKind.CREDULOUS, UpdateKind.CONFIDENT) and sp.size <= self.reach_bits:
            key = ("upd", kind, phi, psi, sp.scope)
            if key not in self._reach:
                combine = int.__or__ if kind is UpdateKind.CREDULOUS else int.__and__
                right = self.bel_masks(psi, sp)
                reach: dict[int, tuple[int, int]] = {}
                for y in self.bel_masks(phi, sp):
                    for z in right:
                        reach.setdefault(combine(y, z), (y, z))
                self._reach[key] = reach
            pair = self._reach[key].get(x)
            return (True, [(sp, pair[0]), (sp, pair[1])]) if pair else (False, None)
        if kind is UpdateKind.CREDULOUS:
            # X = Y ∪ Z: every row of X goes to Y only, Z only, or both.
            self.guard(popcount(x), "credulous split")
            for y in submasks(x):
                if not self.sat(phi, sp, y):
                    continue
                rest = x & ~y
                for w in submasks(y):
                    if self.sat(psi, sp, rest | w):
                        return True, [(sp, y), (sp, rest | w)]
            return False, None
        if kind is UpdateKind.CONFIDENT:
            # X = Y ∩ Z: every assignment outside X goes to Y only, Z only, or neither.
            comp = full & ~x
            self.guard(popcount(comp), "confident split")
            for u in submasks(comp):
                if not self.sat(phi, sp, x | u):
                    continue
                for v in submasks(comp & ~u):
                    if self.sat(psi, sp, x | v):
                        return True, [(sp, x | u), (sp, x | v)]
            return False, None
        if not self.sat(psi, sp, x):
            return False, None
        if kind is UpdateKind.SKEPTICAL:
            self.guard(sp.size - popcount(x), "superset")
            candidates = supermasks(x, full)
        else:
            self.guard(popcount(x), "subset")
            candidates = submasks(x)
        for y in candidates:
            if self.sat(phi, sp, y):
                return True, [(sp, y), (sp, x)]
        return False, None

    def _adjoint_imp(self, kind: UpdateKind, phi: Formula, psi: Formula, sp: TeamSpace, x: int):
        if kind is UpdateKind.CONFIDENT:
            for y in self.bel_masks(phi, sp):
                if not self.sat(psi, sp, x & y):
                    return False, [(sp, y)]
            return True, None
        if kind is UpdateKind.CREDULOUS:
            for y in self.bel_masks(phi, sp):
                if not self.sat(psi, sp, x | y):
                    return False, [(sp, y)]
            return True, None
        if kind is UpdateKind.SKEPTICAL:
            self.guard(popcount(x), "subset")
            candidates = submasks(x)
        else:
            self.guard(sp.size - popcount(x), "superset")
            candidates = supermasks(x, sp.full)
        for y in candidates:
            if self.sat(phi, sp, y) and not self.sat(psi, sp, y):
                return False, [(sp, y)]
        return True, None

    # minimal updates

    def _family(self, kind: UpdateKind, f: Formula, sp: TeamSpace, x: int) -> list[int]:
        """Members of Bel(f) that can matter for a minimal update of ``x``."""
        if kind is UpdateKind.SKEPTICAL:
            self.guard(popcount(x), "subset")
            return [y for y in submasks(x) if self.sat(f, sp, y)]
        if kind is UpdateKind.OPENMINDED:
            self.guard(sp.size - popcount(x), "superset")
            return [y for y in supermasks(x, sp.full) if self.sat(f, sp, y)]
        return self.bel_masks(f, sp)

    def _min_update(self, kind: UpdateKind, phi: Formula, psi: Formula, sp: TeamSpace, x: int):
        key = ("box", kind, phi, psi, sp.scope)
        if key not in self._reach:
            family = self.bel_masks(psi, sp)
            reach: dict[int, int] = {}
            for y in self.bel_masks(phi, sp):
                for z in minimal_masks(kind, y, family):
                    reach.setdefault(z, y)
            self._reach[key] = reach
        y = self._reach[key].get(x)
        return (True, [(sp, y)]) if y is not None else (False, None)

    def _min_imp(self, kind: UpdateKind, phi: Formula, psi: Formula, sp: TeamSpace, x: int):
        for z in minimal_masks(kind, x, self._family(kind, phi, sp, x)):
            if not self.sat(psi, sp, z):
                return False, [(sp, z)]
        return True, None

    # team quantifiers

    def _variants(self, key_bits: list[int], fib: list[int]):
        return (
            sum(combo)  # fibers are disjoint, so + is |
            for combo in itertools.product(*(nonempty_submasks(fib[k]) for k in key_bits))
        )

    def _quantifier(self, f: Quantified, sp: TeamSpace, x: int):
        q, var, body = f.quant, f.var, f.body
        if q in (Quantifier.EXISTS, Quantifier.FORALL):
            results = (self.sat(substitute(body, var, Lit(m)), sp, x) for m in range(self.structure.size))
            return (any(results) if q is Quantifier.EXISTS else all(results)), None
        if q is Quantifier.FORGETTING:
            target, y = sp.restrict_mask(x, var)
            return self.sat(body, target, y), [(target, y)]
        if q is Quantifier.FORGOTTEN and var in sp.scope:
            raise ScopeError(f"'forgotten {var}.' evaluated on a team that still carries {var!r}")

        ext = sp.extend(var)
        keyspace, fib = ext.fibers(var)
        _, key = sp.restrict_mask(x, var)
        key_bits = bits(key)
        n = self.structure.size

        if q is Quantifier.DOUBTING:
            y = 0
            for k in key_bits:
                y |= fib[k]
            return self.sat(body, ext, y), [(ext, y)]
        if q is Quantifier.DOUBTED:
            if var not in sp.scope:
                return False, None
            saturated = 0
            for k in key_bits:
                saturated |= fib[k]
            if saturated != x:
                return False, None
        self.guard(len(key_bits) * n, "x-variant")
        if q is Quantifier.REGARDLESS:
            for y in self._variants(key_bits, fib):
                if not self.sat(body, ext, y):
                    return False, [(ext, y)]
            return True, None
        # FORGOTTEN, DISBELIEF, DOUBTED: some variant satisfies the body
        for y in self._variants(key_bits, fib):
            if self.sat(body, ext, y):
                return True, [(ext, y)]
        return False, None


# Per-connective entry points over explicit teams.


def eval_belief(structure: Structure, team: Team, phi: FoFormula) -> bool:
    return Evaluator(structure).satisfies(team, Belief(phi))


def eval_possible(structure: Structure, team: Team, phi: FoFormula) -> bool:
    return Evaluator(structure).satisfies(team, Possible(phi))


def eval_atom(structure: Structure, team: Team, atom: Formula) -> bool:
    if not isinstance(atom, (Constancy, Dependence, Inclusion, Exclusion, Independence, CondIndependence)):
        raise TypeError(f"not a dependency atom: {atom!r}")
    return Evaluator(structure).satisfies(team, atom)


def eval_classical(structure: Structure, team: Team, f: Formula) -> bool:
    return Evaluator(structure).satisfies(team, f)


def eval_update_conn(structure: Structure, team: Team, kind: UpdateKind, phi: Formula, psi: Formula) -> Verdict:
    return Evaluator(structure).evaluate(team, Update(kind, phi, psi))


def eval_adjoint_imp(structure: Structure, team: Team, kind: UpdateKind, phi: Formula, psi: Formula) -> Verdict:
    return Evaluator(structure).evaluate(team, AdjointImp(kind, phi, psi))


def eval_min_conn(
    structure: Structure, team: Team, kind: UpdateKind, phi: Formula, psi: Formula, implication: bool = False
) -> Verdict:
    f = MinImp(kind, phi, psi) if implication else MinUpdate(kind, phi, psi)
    return Evaluator(structure).evaluate(team, f)


def eval_quantifier(structure: Structure, team: Team, quant: Quantifier, var: str, body: Formula) -> Verdict:
    return Evaluator(structure).evaluate(team, Quantified(quant, var, body))
