"""Formula AST, concrete grammar, parser and printer.

Two layers: first-order formulas (only ever found inside ``B(...)`` / ``P(...)``)
and team formulas built from atoms, classical connectives, update connectives,
their adjoint and minimal implications, and the team quantifiers.

Concrete syntax (team layer, loosest to tightest)::

    formula := upd (IMP formula)?          IMP  c-> l-> s-> o-> [c]-> [l]-> [s]-> [o]-> hook->
    upd     := disj (UPD disj)*            UPD  oplus otimes ominus odot boxplus boxtimes boxminus boxdot
    disj    := conj ("or" conj)*
    conj    := unary ("and" unary)*
    unary   := "not" unary | QUANT var "." unary | atom | "(" formula ")"

A chain of update operators must use a single operator; mixing requires
parentheses.  First-order layer: ``|`` < ``&`` < ``!`` / ``forall x.`` /
``exists x.`` < ``t = t``, ``t != t``, ``R(t, ...)``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError

# --- terms ---


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    func: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Lit:
    """Internal element literal, used to instantiate ``E x.`` / ``A x.``.

    Has no concrete syntax of its own, so it can never clash with a user constant.
    """

    element: int


Term = Union[Var, Const, App, Lit]

# --- first-order layer ---


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg:
    body: FoFormula


@dataclass(frozen=True)
class Conj:
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True)
class Disj:
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True)
class Exists:
    var: str
    body: FoFormula


@dataclass(frozen=True)
class Forall:
    var: str
    body: FoFormula


FoFormula = Union[Rel, Eq, Neg, Conj, Disj, Exists, Forall]

# --- team layer ---


class UpdateKind(enum.Enum):
    CONFIDENT = "confident"
    CREDULOUS = "credulous"
    SKEPTICAL = "skeptical"
    OPENMINDED = "openminded"


class Quantifier(enum.Enum):
    EXISTS = "E"
    FORALL = "A"
    FORGOTTEN = "forgotten"
    FORGETTING = "forgetting"
    DISBELIEF = "disbelief"
    REGARDLESS = "regardless"
    DOUBTED = "doubted"
    DOUBTING = "doubting"


@dataclass(frozen=True)
class Belief:
    body: FoFormula


@dataclass(frozen=True)
class Possible:
    body: FoFormula


@dataclass(frozen=True)
class Constancy:
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class Dependence:
    left: tuple[Term, ...]
    right: tuple[Term, ...]


@dataclass(frozen=True)
class Inclusion:
    left: tuple[Term, ...]
    right: tuple[Term, ...]


@dataclass(frozen=True)
class Exclusion:
    left: tuple[Term, ...]
    right: tuple[Term, ...]


@dataclass(frozen=True)
class Independence:
    left: tuple[Term, ...]
    right: tuple[Term, ...]


@dataclass(frozen=True)
class CondIndependence:
    """``left`` independent of ``right`` given ``cond``; written ``cind(cond; left; right)``."""

    cond: tuple[Term, ...]
    left: tuple[Term, ...]
    right: tuple[Term, ...]


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class Quantified:
    quant: Quantifier
    var: str
    body: Formula


@dataclass(frozen=True)
class Update:
    kind: UpdateKind
    left: Formula
    right: Formula


@dataclass(frozen=True)
class AdjointImp:
    kind: UpdateKind
    left: Formula
    right: Formula


@dataclass(frozen=True)
class MinUpdate:
    kind: UpdateKind
    left: Formula
    right: Formula


@dataclass(frozen=True)
class MinImp:
    kind: UpdateKind
    left: Formula
    right: Formula


Atom = Union[Belief, Possible, Constancy, Dependence, Inclusion, Exclusion, Independence, CondIndependence]
Formula = Union[Atom, And, Or, Not, Quantified, Update, AdjointImp, MinUpdate, MinImp]
BINARY_TEAM = (And, Or, Update, AdjointImp, MinUpdate, MinImp)

_K = UpdateKind
UPDATE_TOKENS = {"oplus": _K.CONFIDENT, "otimes": _K.CREDULOUS, "ominus": _K.SKEPTICAL, "odot": _K.OPENMINDED}
BOX_TOKENS = {"boxplus": _K.CONFIDENT, "boxtimes": _K.CREDULOUS, "boxminus": _K.SKEPTICAL, "boxdot": _K.OPENMINDED}
IMP_TOKENS = {"c->": _K.CONFIDENT, "l->": _K.CREDULOUS, "s->": _K.SKEPTICAL, "o->": _K.OPENMINDED}
MIN_IMP_TOKENS = {"[c]->": _K.CONFIDENT, "[l]->": _K.CREDULOUS, "[s]->": _K.SKEPTICAL, "[o]->": _K.OPENMINDED,
                  "hook->": _K.SKEPTICAL}
QUANT_TOKENS = {q.value: q for q in Quantifier}
TUPLE_ATOMS = {"dep": Dependence, "inc": Inclusion, "exc": Exclusion, "ind": Independence}

_BY_KIND = {
    Update: {v: k for k, v in UPDATE_TOKENS.items()},
    MinUpdate: {v: k for k, v in BOX_TOKENS.items()},
    AdjointImp: {v: k for k, v in IMP_TOKENS.items()},
    MinImp: {v: k for k, v in MIN_IMP_TOKENS.items() if k != "hook->"},
}

# --- lexer ---

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<imp>\[[clso]\]->|hook->|[clso]->)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>!=|[()\[\],;.=&|!])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "imp", "ident", "op", "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


# --- parser ---


class _Parser:
    def __init__(self, text: str, constants: frozenset[str]):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.constants = constants
        self.bound: frozenset[str] = frozenset()

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {found}", self.text, tok.pos)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident", "imp") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def ident(self) -> str:
        if self.tok.kind != "ident":
            raise self.error("expected identifier")
        return self.advance().text

    # team layer

    def formula(self) -> Formula:
        left = self.update_chain()
        if self.tok.kind == "imp":
            op = self.advance().text
            right = self.formula()
            if op in IMP_TOKENS:
                return AdjointImp(IMP_TOKENS[op], left, right)
            return MinImp(MIN_IMP_TOKENS[op], left, right)
        return left

    def update_chain(self) -> Formula:
        left = self.disjunction()
        first = None
        while self.tok.kind == "ident" and (self.tok.text in UPDATE_TOKENS or self.tok.text in BOX_TOKENS):
            tok = self.advance()
            if first is not None and tok.text != first:
                raise self.error(f"cannot mix {first!r} and {tok.text!r} without parentheses", tok)
            first = tok.text
            right = self.disjunction()
            if tok.text in UPDATE_TOKENS:
                left = Update(UPDATE_TOKENS[tok.text], left, right)
            else:
                left = MinUpdate(BOX_TOKENS[tok.text], left, right)
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at("or"):
            self.advance()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at("and"):
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.tok
        if self.at("not"):
            self.advance()
            return Not(self.unary())
        if tok.kind == "ident" and tok.text in QUANT_TOKENS and self.peek().kind == "ident" \
                and self.peek(2).text == ".":
            self.advance()
            var = self.ident()
            self.expect(".")
            outer = self.bound
            self.bound = outer | {var}
            try:
                body = self.unary()
            finally:
                self.bound = outer
            return Quantified(QUANT_TOKENS[tok.text], var, body)
        if self.at("("):
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "ident" and self.peek().text == "(":
            return self.atom()
        if tok.kind == "ident" and self.peek().text in ("=", "!="):
            raise self.error("first-order formulas must be wrapped in B(...) or P(...)")
        raise self.error("expected a team formula (atom, 'not', quantifier or '(')")

    def atom(self) -> Formula:
        tok = self.advance()
        name = tok.text
        self.expect("(")
        if name in ("B", "P"):
            body = self.fo_formula(self.bound)
            self.expect(")")
            return Belief(body) if name == "B" else Possible(body)
        if name == "const":
            terms = self.terms(self.bound)
            self.expect(")")
            return Constancy(terms)
        if name in TUPLE_ATOMS:
            left = self.terms(self.bound)
            self.expect(";")
            right = self.terms(self.bound)
            self.expect(")")
            if name in ("inc", "exc") and len(left) != len(right):
                raise ParseError(
                    f"{name}: tuple lengths differ ({len(left)} vs {len(right)})", self.text, tok.pos
                )
            return TUPLE_ATOMS[name](left, right)
        if name == "cind":
            cond = self.terms(self.bound)
            self.expect(";")
            left = self.terms(self.bound)
            self.expect(";")
            right = self.terms(self.bound)
            self.expect(")")
            return CondIndependence(cond, left, right)
        raise ParseError(
            f"unknown atom {name!r} (first-order formulas must be wrapped in B(...) or P(...))",
            self.text,
            tok.pos,
        )

    def terms(self, bound: frozenset[str] = frozenset()) -> tuple[Term, ...]:
        out = [self.term(bound)]
        while self.at(","):
            self.advance()
            out.append(self.term(bound))
        return tuple(out)

    def term(self, bound: frozenset[str] = frozenset()) -> Term:
        name = self.ident()
        if self.at("("):
            self.advance()
            args = self.terms(bound)
            self.expect(")")
            return App(name, args)
        if name in self.constants and name not in bound:
            return Const(name)
        return Var(name)

    # first-order layer

    def fo_formula(self, bound: frozenset[str]) -> FoFormula:
        left = self.fo_conjunction(bound)
        while self.at("|"):
            self.advance()
            left = Disj(left, self.fo_conjunction(bound))
        return left

    def fo_conjunction(self, bound: frozenset[str]) -> FoFormula:
        left = self.fo_unary(bound)
        while self.at("&"):
            self.advance()
            left = Conj(left, self.fo_unary(bound))
        return left

    def fo_unary(self, bound: frozenset[str]) -> FoFormula:
        if self.at("!"):
            self.advance()
            return Neg(self.fo_unary(bound))
        if (self.at("forall") or self.at("exists")) and self.peek().kind == "ident" and self.peek(2).text == ".":
            q = self.advance().text
            var = self.ident()
            self.expect(".")
            body = self.fo_unary(bound | {var})
            return Forall(var, body) if q == "forall" else Exists(var, body)
        if self.at("("):
            self.advance()
            f = self.fo_formula(bound)
            self.expect(")")
            return f
        return self.fo_atom(bound)

    def fo_atom(self, bound: frozenset[str]) -> FoFormula:
        if self.tok.kind != "ident":
            raise self.error("expected a first-order formula")
        start = self.i
        if self.peek().text == "(":
            name = self.ident()
            self.advance()
            args = self.terms(bound)
            self.expect(")")
            if not (self.at("=") or self.at("!=")):
                return Rel(name, args)
            self.i = start
        left = self.term(bound)
        if self.at("="):
            self.advance()
            return Eq(left, self.term(bound))
        if self.at("!="):
            self.advance()
            return Neg(Eq(left, self.term(bound)))
        raise self.error("expected '=' or '!='")


def parse(text: str, constants=()) -> Formula:
    """Parse a team formula.

    Bare identifiers become :class:`Var` unless listed in ``constants`` (and not
    bound by an enclosing first-order quantifier).  Free variables that name a
    structure constant are resolved at evaluation time either way.
    """
    p = _Parser(text, frozenset(constants))
    f = p.formula()
    if p.tok.kind != "eof":
        raise p.error("unexpected trailing input")
    return f


def parse_fo(text: str, constants=()) -> FoFormula:
    p = _Parser(text, frozenset(constants))
    f = p.fo_formula(frozenset())
    if p.tok.kind != "eof":
        raise p.error("unexpected trailing input")
    return f


# --- printer ---


def term_str(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, App):
        return f"{t.func}({', '.join(term_str(a) for a in t.args)})"
    if isinstance(t, Lit):
        return f"#{t.element}"
    raise TypeError(f"not a term: {t!r}")


def _terms_str(ts: tuple[Term, ...]) -> str:
    return ", ".join(term_str(t) for t in ts)


def fo_str(f: FoFormula) -> str:
    def wrap(g: FoFormula) -> str:
        s = fo_str(g)
        return f"({s})" if isinstance(g, (Conj, Disj)) else s

    if isinstance(f, Rel):
        return f"{f.name}({_terms_str(f.args)})"
    if isinstance(f, Eq):
        return f"{term_str(f.left)} = {term_str(f.right)}"
    if isinstance(f, Neg):
        if isinstance(f.body, Eq):
            return f"{term_str(f.body.left)} != {term_str(f.body.right)}"
        return "!" + wrap(f.body)
    if isinstance(f, Conj):
        return f"{wrap(f.left)} & {wrap(f.right)}"
    if isinstance(f, Disj):
        return f"{wrap(f.left)} | {wrap(f.right)}"
    if isinstance(f, (Exists, Forall)):
        q = "exists" if isinstance(f, Exists) else "forall"
        return f"{q} {f.var}. {wrap(f.body)}"
    raise TypeError(f"not a first-order formula: {f!r}")


def to_str(f: Formula) -> str:
    """Canonical concrete syntax; every binary subformula is parenthesized."""

    def wrap(g: Formula) -> str:
        s = to_str(g)
        return f"({s})" if isinstance(g, BINARY_TEAM) else s

    if isinstance(f, Belief):
        return f"B({fo_str(f.body)})"
    if isinstance(f, Possible):
        return f"P({fo_str(f.body)})"
    if isinstance(f, Constancy):
        return f"const({_terms_str(f.terms)})"
    if isinstance(f, CondIndependence):
        return f"cind({_terms_str(f.cond)}; {_terms_str(f.left)}; {_terms_str(f.right)})"
    for name, cls in TUPLE_ATOMS.items():
        if type(f) is cls:
            return f"{name}({_terms_str(f.left)}; {_terms_str(f.right)})"
    if isinstance(f, And):
        return f"{wrap(f.left)} and {wrap(f.right)}"
    if isinstance(f, Or):
        return f"{wrap(f.left)} or {wrap(f.right)}"
    if isinstance(f, Not):
        return "not " + wrap(f.body)
    if isinstance(f, Quantified):
        return f"{f.quant.value} {f.var}. {wrap(f.body)}"
    if isinstance(f, (Update, AdjointImp, MinUpdate, MinImp)):
        return f"{wrap(f.left)} {_BY_KIND[type(f)][f.kind]} {wrap(f.right)}"
    raise TypeError(f"not a team formula: {f!r}")


# --- variables and substitution ---


def term_variables(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return set().union(*(term_variables(a) for a in t.args))
    return set()


def _tuple_variables(*tuples: tuple[Term, ...]) -> set[str]:
    return set().union(*(term_variables(t) for ts in tuples for t in ts))


def fo_free_variables(f: FoFormula) -> set[str]:
    if isinstance(f, Rel):
        return _tuple_variables(f.args)
    if isinstance(f, Eq):
        return term_variables(f.left) | term_variables(f.right)
    if isinstance(f, Neg):
        return fo_free_variables(f.body)
    if isinstance(f, (Conj, Disj)):
        return fo_free_variables(f.left) | fo_free_variables(f.right)
    if isinstance(f, (Exists, Forall)):
        return fo_free_variables(f.body) - {f.var}
    raise TypeError(f"not a first-order formula: {f!r}")


def free_variables(f: Formula) -> set[str]:
    """Free variables; every team quantifier binds its variable."""
    if isinstance(f, (Belief, Possible)):
        return fo_free_variables(f.body)
    if isinstance(f, Constancy):
        return _tuple_variables(f.terms)
    if isinstance(f, CondIndependence):
        return _tuple_variables(f.cond, f.left, f.right)
    if isinstance(f, (Dependence, Inclusion, Exclusion, Independence)):
        return _tuple_variables(f.left, f.right)
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, Quantified):
        return free_variables(f.body) - {f.var}
    if isinstance(f, BINARY_TEAM):
        return free_variables(f.left) | free_variables(f.right)
    raise TypeError(f"not a team formula: {f!r}")


def substitute_term(t: Term, var: str, value: Term) -> Term:
    if isinstance(t, Var):
        return value if t.name == var else t
    if isinstance(t, App):
        return App(t.func, tuple(substitute_term(a, var, value) for a in t.args))
    return t


def _sub_tuple(ts: tuple[Term, ...], var: str, value: Term) -> tuple[Term, ...]:
    return tuple(substitute_term(t, var, value) for t in ts)


def substitute_fo(f: FoFormula, var: str, value: Term) -> FoFormula:
    if isinstance(f, Rel):
        return Rel(f.name, _sub_tuple(f.args, var, value))
    if isinstance(f, Eq):
        return Eq(substitute_term(f.left, var, value), substitute_term(f.right, var, value))
    if isinstance(f, Neg):
        return Neg(substitute_fo(f.body, var, value))
    if isinstance(f, (Conj, Disj)):
        return type(f)(substitute_fo(f.left, var, value), substitute_fo(f.right, var, value))
    if isinstance(f, (Exists, Forall)):
        return f if f.var == var else type(f)(f.var, substitute_fo(f.body, var, value))
    raise TypeError(f"not a first-order formula: {f!r}")


def substitute(f: Formula, var: str, value: Term) -> Formula:
    """Replace free occurrences of ``var``; ``value`` must be closed (a constant or literal)."""
    if isinstance(f, (Belief, Possible)):
        return type(f)(substitute_fo(f.body, var, value))
    if isinstance(f, Constancy):
        return Constancy(_sub_tuple(f.terms, var, value))
    if isinstance(f, CondIndependence):
        return CondIndependence(*(_sub_tuple(ts, var, value) for ts in (f.cond, f.left, f.right)))
    if isinstance(f, (Dependence, Inclusion, Exclusion, Independence)):
        return type(f)(_sub_tuple(f.left, var, value), _sub_tuple(f.right, var, value))
    if isinstance(f, Not):
        return Not(substitute(f.body, var, value))
    if isinstance(f, Quantified):
        return f if f.var == var else Quantified(f.quant, f.var, substitute(f.body, var, value))
    if isinstance(f, (And, Or)):
        return type(f)(substitute(f.left, var, value), substitute(f.right, var, value))
    if isinstance(f, (Update, AdjointImp, MinUpdate, MinImp)):
        return type(f)(f.kind, substitute(f.left, var, value), substitute(f.right, var, value))
    raise TypeError(f"not a team formula: {f!r}")
