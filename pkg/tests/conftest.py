import pytest
from hypothesis import settings

from teamlog import Structure, Team

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

AXIOM = "!(exists x. ((w1 = x & w2 = x) | (w2 = x & w3 = x) | (w1 = x & w3 = x)))"


@pytest.fixture(scope="session")
def m2():
    return Structure.build(["0", "1"], constants={"c0": "0", "c1": "1"})


@pytest.fixture(scope="session")
def m3():
    return Structure.build(["0", "1", "2"], constants={"c0": "0", "c1": "1", "c2": "2"})


@pytest.fixture(scope="session")
def tourney():
    # Female is a fixture choice; nothing in the golden examples depends on who is in it
    return Structure.build(["Tom", "Bob", "Jack"], relations={"Female": ["Jack"]})


@pytest.fixture(scope="session")
def xa_two(tourney):
    return Team.from_names(tourney, ("w1", "w2", "w3"), [("Tom", "Bob", "Jack"), ("Bob", "Tom", "Jack")])


@pytest.fixture(scope="session")
def xa_five(tourney):
    rows = [
        ("Bob", "Tom", "Tom"),
        ("Tom", "Bob", "Bob"),
        ("Tom", "Bob", "Jack"),
        ("Jack", "Bob", "Bob"),
        ("Jack", "Bob", "Jack"),
    ]
    return Team.from_names(tourney, ("w1", "w2", "w3"), rows)


@pytest.fixture(scope="session")
def nurmi(m2):
    return Team.from_names(m2, ("x", "y", "z"), [("0", "1", "1"), ("1", "0", "0")])


@pytest.fixture(scope="session")
def diag(m2):
    return Team.from_names(m2, ("x", "y"), [("0", "0"), ("1", "1")])
