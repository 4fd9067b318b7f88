import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from starcox.graph import Character, GeneralizedCharacter, WeightedPair, make_graph
from starcox.matrix_reps import OperatorTuple

EXTENDED_SHAPES = {
    "D4~": (1, 1, 1, 1),
    "E6~": (2, 2, 2),
    "E7~": (3, 3, 1),
    "E8~": (5, 2, 1),
}


def partitions(total, largest=None):
    """Multisets of positive integers summing to ``total``, largest part first."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for p in range(min(total, largest), 0, -1):
        for rest in partitions(total - p, p):
            yield (p,) + rest


def all_stars(max_total):
    for t in range(1, max_total + 1):
        yield from partitions(t)


def random_fraction(rng, lo=-20, hi=20, maxden=12):
    return Fraction(rng.randint(lo * maxden, hi * maxden), rng.randint(1, maxden))


def random_character(rng, lengths, maxden=12):
    """Positive, strictly increasing rational weights on each branch."""
    rows = []
    for k in lengths:
        acc, row = Fraction(0), []
        for _ in range(k):
            acc += Fraction(rng.randint(1, 10 * maxden), rng.randint(1, maxden))
            row.append(acc)
        rows.append(tuple(row))
    return Character(tuple(rows))


def random_generalized(rng, lengths):
    return GeneralizedCharacter(tuple(tuple(random_fraction(rng) for _ in range(k)) for k in lengths))


@pytest.fixture
def rng():
    return random.Random(20261016)


# hypothesis strategies
fractions_st = st.fractions(min_value=-50, max_value=50, max_denominator=30)
positive_steps = st.fractions(min_value=Fraction(1, 30), max_value=20, max_denominator=30)


@st.composite
def star_shapes(draw, max_branches=6, max_len=5):
    return tuple(draw(st.lists(st.integers(1, max_len), min_size=1, max_size=max_branches)))


@st.composite
def generalized_pairs(draw, shape=None):
    if shape is None:
        shape = draw(star_shapes())
    rows = tuple(tuple(draw(fractions_st) for _ in range(k)) for k in shape)
    return WeightedPair(GeneralizedCharacter(rows), draw(fractions_st))


@st.composite
def characters(draw, shape):
    rows = []
    for k in shape:
        steps = draw(st.lists(positive_steps, min_size=k, max_size=k))
        acc, row = Fraction(0), []
        for d in steps:
            acc += d
            row.append(acc)
        rows.append(tuple(row))
    return Character(tuple(rows))


def projection(theta):
    v = np.array([np.cos(theta), np.sin(theta)])
    return np.outer(v, v).astype(complex)


@pytest.fixture
def d4_projection_tuple():
    """Rank-one projections at 0, 90, 45 and 135 degrees in C^2; they sum to 2I."""
    mats = [projection(np.deg2rad(a)) for a in (0, 90, 45, 135)]
    return OperatorTuple(2, 2.0, mats, [[0, 1]] * 4)


@pytest.fixture(params=sorted(EXTENDED_SHAPES))
def extended_graph(request):
    return make_graph(list(EXTENDED_SHAPES[request.param]))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_criterion_" in rep.nodeid and rep.when == "call":
                name = rep.nodeid.split("::")[-1]
                lines.append((name, outcome))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines, key=lambda x: int(x[0].split("_")[2])):
            terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
