"""Tarski semantics for terms and first-order formulas over a single assignment.

An assignment here is any mapping from variable names to element indices.
A free variable missing from the assignment falls back to a structure
constant of the same name.
"""

from __future__ import annotations

from collections.abc import Mapping

from .errors import ArityError, ScopeError, UnknownSymbol
from .model import Structure
from .syntax import App, Conj, Const, Disj, Eq, Exists, FoFormula, Forall, Lit, Neg, Rel, Term, Var


def eval_term(structure: Structure, s: Mapping[str, int], t: Term) -> int:
    if isinstance(t, Var):
        if t.name in s:
            return s[t.name]
        if t.name in structure.constant_table:
            return structure.constant_table[t.name]
        raise ScopeError(f"unbound variable {t.name!r}")
    if isinstance(t, Const):
        try:
            return structure.constant_table[t.name]
        except KeyError:
            raise UnknownSymbol(f"unknown constant {t.name!r}") from None
    if isinstance(t, Lit):
        if not 0 <= t.element < structure.size:
            raise UnknownSymbol(f"element literal #{t.element} outside the domain")
        return t.element
    if isinstance(t, App):
        try:
            arity, table = structure.function_table[t.func]
        except KeyError:
            raise UnknownSymbol(f"unknown function {t.func!r}") from None
        if len(t.args) != arity:
            raise ArityError(f"function {t.func} expects {arity} arguments, got {len(t.args)}")
        return table[tuple(eval_term(structure, s, a) for a in t.args)]
    raise TypeError(f"not a term: {t!r}")


def tarski_sat(structure: Structure, s: Mapping[str, int], phi: FoFormula) -> bool:
    if isinstance(phi, Eq):
        return eval_term(structure, s, phi.left) == eval_term(structure, s, phi.right)
    if isinstance(phi, Rel):
        try:
            arity, tuples = structure.relation_table[phi.name]
        except KeyError:
            raise UnknownSymbol(f"unknown relation {phi.name!r}") from None
        if arity is not None and len(phi.args) != arity:
            raise ArityError(f"relation {phi.name} expects {arity} arguments, got {len(phi.args)}")
        return tuple(eval_term(structure, s, a) for a in phi.args) in tuples
    if isinstance(phi, Neg):
        return not tarski_sat(structure, s, phi.body)
    if isinstance(phi, Conj):
        return tarski_sat(structure, s, phi.left) and tarski_sat(structure, s, phi.right)
    if isinstance(phi, Disj):
        return tarski_sat(structure, s, phi.left) or tarski_sat(structure, s, phi.right)
    if isinstance(phi, (Exists, Forall)):
        env = dict(s)
        test = any if isinstance(phi, Exists) else all
        def holds(m: int) -> bool:
            env[phi.var] = m
            return tarski_sat(structure, env, phi.body)
        return test(holds(m) for m in range(structure.size))
    raise TypeError(f"not a first-order formula: {phi!r}")
