"""Model-relative entailment by enumerating the team space.

``T1 ⊨_M T2`` holds when every team satisfying all of ``T1`` satisfies all of
``T2``.  Only a fixed structure (or an explicit batch of structures) is ever
checked; a pass over a batch is a bounded search, not a proof of validity.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import TeamlogError
from .evaluator import DEFAULT_SEARCH_BITS, Evaluator
from .model import DEFAULT_CAP, Structure, Team, TeamSpace
from .syntax import Formula, parse

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Theory:
    formulas: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))
        if not self.formulas:
            raise ValueError("a theory needs at least one formula")

    @classmethod
    def of(cls, *items: Formula | str | Theory) -> Theory:
        out: list[Formula] = []
        for item in items:
            if isinstance(item, Theory):
                out.extend(item.formulas)
            elif isinstance(item, str):
                out.append(parse(item))
            else:
                out.append(item)
        return cls(tuple(out))

    def __iter__(self):
        return iter(self.formulas)


TheoryLike = Theory | Formula | str | Sequence[Formula | str]


def as_theory(t: TheoryLike) -> Theory:
    if isinstance(t, Theory):
        return t
    if isinstance(t, (list, tuple)):
        return Theory.of(*t)
    return Theory.of(t)


@dataclass(frozen=True)
class EntailmentResult:
    holds: bool
    counterexample: Team | None = None
    examined: int = 0

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class BatchResult:
    holds: bool
    results: tuple[EntailmentResult | None, ...]
    errors: tuple[str | None, ...] = ()
    warnings: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.holds


class Engine:
    """Entailment queries against one structure, sharing one memo across queries."""

    def __init__(
        self,
        structure: Structure,
        cap: int = DEFAULT_CAP,
        search_bits: int = DEFAULT_SEARCH_BITS,
        workers: int = 1,
    ):
        self.structure = structure
        self.cap = cap
        self.search_bits = search_bits
        self.workers = max(1, workers)
        self.evaluator = Evaluator(structure, cap, search_bits)

    def _space(self, scope: Iterable[str], theories: Iterable[Theory]) -> TeamSpace:
        scope = tuple(scope)
        sp = self.evaluator.space(scope)
        for t in theories:
            for f in t:
                self.evaluator.check_scope(f, scope)
        self.evaluator.guard(sp.size, "team space")
        return sp

    def _scan(self, test, sp: TeamSpace, stop_early: bool) -> list[int]:
        """Masks of ``sp`` passing ``test(evaluator, sp, mask)``, in canonical order.

        With several workers the space is cut into contiguous chunks, each
        checked by its own evaluator; results are concatenated in chunk order.
        """
        n = sp.team_count
        if self.workers == 1 or n < 2 * self.workers:
            hits = []
            for m in range(n):
                if test(self.evaluator, sp, m):
                    hits.append(m)
                    if stop_early:
                        break
            return hits

        step = -(-n // self.workers)
        chunks = [(lo, min(n, lo + step)) for lo in range(0, n, step)]

        def run(bounds):
            lo, hi = bounds
            ev = Evaluator(self.structure, self.cap, self.search_bits)
            local = ev.space(sp.scope)
            out = []
            for m in range(lo, hi):
                if test(ev, local, m):
                    out.append(m)
                    if stop_early:
                        break
            return out

        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            parts = list(pool.map(run, chunks))
        hits = [m for part in parts for m in part]
        return hits[:1] if stop_early else hits

    def bel(self, theory: TheoryLike, scope: Iterable[str]) -> list[Team]:
        """``Bel_M(T)``: all teams over ``scope`` satisfying every member of ``T``."""
        t = as_theory(theory)
        sp = self._space(scope, [t])
        hits = self._scan(lambda ev, s, m: all(ev.sat(f, s, m) for f in t), sp, stop_early=False)
        return [sp.team(m) for m in hits]

    def entails(self, lhs: TheoryLike, rhs: TheoryLike, scope: Iterable[str]) -> EntailmentResult:
        t1, t2 = as_theory(lhs), as_theory(rhs)
        sp = self._space(scope, [t1, t2])

        def refutes(ev, s, m):
            return all(ev.sat(f, s, m) for f in t1) and not all(ev.sat(f, s, m) for f in t2)

        hits = self._scan(refutes, sp, stop_early=True)
        if hits:
            return EntailmentResult(False, sp.team(hits[0]), hits[0] + 1)
        return EntailmentResult(True, None, sp.team_count)

    def equivalent(self, phi: Formula | str, psi: Formula | str, scope: Iterable[str]) -> EntailmentResult:
        phi, psi = (parse(f) if isinstance(f, str) else f for f in (phi, psi))
        sp = self._space(scope, [Theory((phi, psi))])
        hits = self._scan(lambda ev, s, m: ev.sat(phi, s, m) != ev.sat(psi, s, m), sp, stop_early=True)
        if hits:
            return EntailmentResult(False, sp.team(hits[0]), hits[0] + 1)
        return EntailmentResult(True, None, sp.team_count)


def bel(structure: Structure, theory: TheoryLike, scope: Iterable[str], cap: int = DEFAULT_CAP,
        workers: int = 1) -> list[Team]:
    return Engine(structure, cap, workers=workers).bel(theory, scope)


def entails(structure: Structure, lhs: TheoryLike, rhs: TheoryLike, scope: Iterable[str],
            cap: int = DEFAULT_CAP, workers: int = 1) -> EntailmentResult:
    return Engine(structure, cap, workers=workers).entails(lhs, rhs, scope)


def equivalent(structure: Structure, phi: Formula | str, psi: Formula | str, scope: Iterable[str],
               cap: int = DEFAULT_CAP, workers: int = 1) -> EntailmentResult:
    return Engine(structure, cap, workers=workers).equivalent(phi, psi, scope)


def entails_batch(models: Sequence[Structure], lhs: TheoryLike, rhs: TheoryLike, scope: Iterable[str],
                  cap: int = DEFAULT_CAP) -> BatchResult:
    """Run :func:`entails` on every model; errors are collected per model, not raised."""
    scope = tuple(scope)
    if not models:
        msg = "no models supplied: entailment holds vacuously"
        log.warning(msg)
        return BatchResult(True, (), (), (msg,))
    results: list[EntailmentResult | None] = []
    errors: list[str | None] = []
    for m in models:
        try:
            results.append(entails(m, lhs, rhs, scope, cap))
            errors.append(None)
        except TeamlogError as exc:
            results.append(None)
            errors.append(f"{type(exc).__name__}: {exc}")
    holds = all(r is not None and r.holds for r in results)
    return BatchResult(holds, tuple(results), tuple(errors))
