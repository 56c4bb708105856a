import pytest
from hypothesis import given, settings, strategies as st

from teamlog import ParseError, free_variables, parse, parse_fo, to_str
from teamlog.syntax import (
    AdjointImp, And, App, Belief, CondIndependence, Conj, Const, Constancy, Dependence, Disj, Eq, Exclusion,
    Exists, Forall, Inclusion, Independence, MinImp, MinUpdate, Neg, Not, Or, Possible, Quantified,
    Quantifier, Rel, Update, UpdateKind, Var,
)

VARS = ["x", "y", "z", "u", "w1"]
CONSTS = ["c0", "c1"]

terms = st.recursive(
    st.sampled_from(VARS).map(Var) | st.sampled_from(CONSTS).map(Const),
    lambda sub: st.builds(App, st.sampled_from(["f", "g"]), st.lists(sub, min_size=1, max_size=2).map(tuple)),
    max_leaves=3,
)
term_tuples = st.lists(terms, min_size=1, max_size=2).map(tuple)

fo = st.recursive(
    st.builds(Eq, terms, terms) | st.builds(Rel, st.sampled_from(["R", "Female"]), term_tuples),
    lambda sub: (
        st.builds(Neg, sub)
        | st.builds(Conj, sub, sub)
        | st.builds(Disj, sub, sub)
        | st.builds(Exists, st.sampled_from(VARS), sub)
        | st.builds(Forall, st.sampled_from(VARS), sub)
    ),
    max_leaves=4,
)


@st.composite
def equal_pair(draw, cls):
    n = draw(st.integers(1, 2))
    left = tuple(draw(st.lists(terms, min_size=n, max_size=n)))
    right = tuple(draw(st.lists(terms, min_size=n, max_size=n)))
    return cls(left, right)


atoms = (
    st.builds(Belief, fo)
    | st.builds(Possible, fo)
    | st.builds(Constancy, term_tuples)
    | st.builds(Dependence, term_tuples, term_tuples)
    | equal_pair(Inclusion)
    | equal_pair(Exclusion)
    | st.builds(Independence, term_tuples, term_tuples)
    | st.builds(CondIndependence, term_tuples, term_tuples, term_tuples)
)
kinds = st.sampled_from(list(UpdateKind))

team_formulas = st.recursive(
    atoms,
    lambda sub: (
        st.builds(And, sub, sub)
        | st.builds(Or, sub, sub)
        | st.builds(Not, sub)
        | st.builds(Quantified, st.sampled_from(list(Quantifier)), st.sampled_from(VARS), sub)
        | st.builds(Update, kinds, sub, sub)
        | st.builds(AdjointImp, kinds, sub, sub)
        | st.builds(MinUpdate, kinds, sub, sub)
        | st.builds(MinImp, kinds, sub, sub)
    ),
    max_leaves=6,
)


@settings(max_examples=1000)
@given(team_formulas)
def test_round_trip(f):
    text = to_str(f)
    assert parse(text, constants=CONSTS) == f
    assert to_str(parse(text, constants=CONSTS)) == text


@given(fo)
def test_fo_round_trip(phi):
    assert parse_fo(to_str(Belief(phi))[2:-1], constants=CONSTS) == phi


@pytest.mark.parametrize(
    "text,expected",
    [
        ("dep(w2; w1)", Dependence((Var("w2"),), (Var("w1"),))),
        ("B(exists x. w1 = x)", Belief(Exists("x", Eq(Var("w1"), Var("x"))))),
        ("inc(x; y) and B(z = c0)", And(Inclusion((Var("x"),), (Var("y"),)), Belief(Eq(Var("z"), Var("c0"))))),
    ],
)
def test_examples(text, expected):
    assert parse(text) == expected


def test_print_examples():
    assert to_str(Dependence((Var("w2"),), (Var("w1"),))) == "dep(w2; w1)"
    a, b, c = (Constancy((Var(v),)) for v in "xyz")
    nested = Update(UpdateKind.CREDULOUS, Update(UpdateKind.CREDULOUS, a, b), c)
    assert to_str(nested) == "(const(x) otimes const(y)) otimes const(z)"


def test_constants_are_resolved_unless_bound():
    assert parse("B(x = c0)", constants=["c0"]) == Belief(Eq(Var("x"), Const("c0")))
    assert parse("B(exists c0. x = c0)", constants=["c0"]) == Belief(Exists("c0", Eq(Var("x"), Var("c0"))))
    assert parse("E c0. const(c0)", constants=["c0"]) == Quantified(Quantifier.EXISTS, "c0", Constancy((Var("c0"),)))


def test_every_connective_is_reachable():
    texts = [
        "B(R(x))", "P(x = y)", "const(x, y)", "dep(x; y)", "inc(x; y)", "exc(x; y)", "ind(x; y)",
        "cind(x; y; z)", "const(x) and const(y)", "const(x) or const(y)", "not const(x)",
    ]
    texts += [f"{q.value} u. const(u)" for q in Quantifier]
    for tok in ("oplus", "otimes", "ominus", "odot", "boxplus", "boxtimes", "boxminus", "boxdot"):
        texts.append(f"const(x) {tok} const(y)")
    for tok in ("c->", "l->", "s->", "o->", "[c]->", "[l]->", "[s]->", "[o]->", "hook->"):
        texts.append(f"const(x) {tok} const(y)")
    seen = {type(parse(t)) for t in texts}
    kinds_seen = {(type(f), f.kind) for f in map(parse, texts) if hasattr(f, "kind")}
    quants = {f.quant for f in map(parse, texts) if isinstance(f, Quantified)}
    assert len(seen) == 16
    assert quants == set(Quantifier)
    assert len(kinds_seen) == 16


def test_hook_is_skeptical_min_imp():
    f = parse("const(x) hook-> ind(y; z)")
    assert f == parse("const(x) [s]-> ind(y; z)")
    assert isinstance(f, MinImp) and f.kind is UpdateKind.SKEPTICAL
    assert to_str(f) == "const(x) [s]-> ind(y; z)"


def test_precedence():
    f = parse("const(x) and const(y) or const(z) otimes B(x = y) s-> not const(x) c-> const(y)")
    assert isinstance(f, AdjointImp) and f.kind is UpdateKind.SKEPTICAL
    assert isinstance(f.right, AdjointImp) and f.right.kind is UpdateKind.CONFIDENT
    assert isinstance(f.left, Update)
    assert isinstance(f.left.left, Or) and isinstance(f.left.left.left, And)
    assert isinstance(f.right.left, Not)


def test_quantifier_body_is_unary():
    f = parse("E u. B(u = x) and const(y)")
    assert isinstance(f, And) and isinstance(f.left, Quantified)


def test_update_chain_left_associative():
    f = parse("const(x) otimes const(y) otimes const(z)")
    assert isinstance(f.left, Update) and f.right == Constancy((Var("z"),))


def test_implication_right_associative():
    f = parse("const(x) s-> const(y) s-> const(z)")
    assert isinstance(f.right, AdjointImp)


def test_fo_precedence():
    assert parse_fo("!a = b & c = d | e = f") == Disj(
        Conj(Neg(Eq(Var("a"), Var("b"))), Eq(Var("c"), Var("d"))), Eq(Var("e"), Var("f"))
    )
    assert parse_fo("f(x) = y") == Eq(App("f", (Var("x"),)), Var("y"))
    assert parse_fo("R(f(x), y)") == Rel("R", (App("f", (Var("x"),)), Var("y")))


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("const(x) otimes const(y) oplus const(z)", 1, 26),
        ("dep(x; y", 1, 9),
        ("const(x)\n  and $", 2, 7),
        ("inc(x, y; z)", 1, 1),
        ("x = y", 1, 1),
        ("Female(w1)", 1, 1),
        ("const(x) const(y)", 1, 10),
    ],
)
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == line
    assert exc.value.column == col
    assert f"line {line}" in str(exc.value)


def test_free_variables():
    assert free_variables(parse("dep(x; y)")) == {"x", "y"}
    assert free_variables(parse("E u. B(u != x)")) == {"x"}
    assert free_variables(parse("forgetting x. const(y)")) == {"y"}
    assert free_variables(parse("B(exists v. R(v, w)) and doubted x. const(x, z)")) == {"w", "z"}
    assert free_variables(parse("B(f(c0) = y)", constants=["c0"])) == {"y"}
