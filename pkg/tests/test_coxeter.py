import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXTENDED_SHAPES, generalized_pairs, random_character, random_fraction
from starcox.coxeter import (
    EQUALS,
    EXCEEDS,
    NONPOSITIVE,
    PERIODS,
    SPECIAL_POINT,
    STEP_LIMIT,
    apply_S,
    apply_ST,
    apply_T,
    apply_TS,
    orbit,
    reduce,
    step_bound,
    verify_periodicity,
)
from starcox.errors import StarcoxError
from starcox.functionals import evaluate, exact_functional
from starcox.graph import (
    GeneralizedCharacter,
    WeightedPair,
    make_character,
    make_graph,
    special_character,
    special_omega,
)


def pair(rows, lam):
    return WeightedPair(GeneralizedCharacter(tuple(tuple(F(a) for a in r) for r in rows)), F(lam))


def rows(p):
    return [list(b) for b in p.character.branches]


def test_apply_S_examples():
    p = apply_S(pair([[1]] * 4, 1))
    assert rows(p) == [[1]] * 4 and p.lam == 3
    p = apply_S(pair([[1, 2]] * 3, 3))
    assert rows(p) == [[1, 2]] * 3 and p.lam == 3
    p = apply_S(pair([[1, 3]], 0))
    assert rows(p) == [[2, 3]] and p.lam == 3


def test_apply_T_examples():
    p = apply_T(pair([[1, 2]] * 3, 3))
    assert rows(p) == [[1, 2]] * 3 and p.lam == 3
    p = apply_T(pair([[1]] * 4, F(3, 2)))
    assert rows(p) == [[F(1, 2)]] * 4 and p.lam == F(3, 2)
    p = apply_T(pair([[1]] * 4, 1))
    assert rows(p) == [[0]] * 4 and p.lam == 1


def test_st_examples():
    gamma = F(1, 4)
    p = pair([[1]] * 4, 2 - gamma)
    once = apply_ST(p)
    assert rows(once) == [[1 - gamma]] * 4 and once.lam == 2 - 3 * gamma
    twice = apply_ST(once)
    assert rows(twice) == [[F(1, 2)]] * 4 and twice.lam == F(3, 4)
    assert twice.lam == 2 - 5 * gamma


def test_s_first_convention_breaks_periodicity():
    # the opposite composite order fails the D4~ identity, which pins the convention
    gamma = F(1, 4)
    p = pair([[1]] * 4, 2 - gamma)
    q = apply_TS(apply_TS(p))
    assert (rows(q), q.lam) != ([[1 - 2 * gamma]] * 4, 2 - 5 * gamma)


@settings(max_examples=200)
@given(generalized_pairs())
def test_involutions(p):
    assert apply_S(apply_S(p)) == p
    assert apply_T(apply_T(p)) == p


@settings(max_examples=100)
@given(generalized_pairs())
def test_shape_preserved(p):
    assert apply_S(p).graph == p.graph
    assert apply_T(p).graph == p.graph


@settings(max_examples=50)
@given(generalized_pairs(), st.integers(1, 6))
def test_orbit_word_matches_repeated_st(p, m):
    trace = orbit(p, "ST" * m)
    q = p
    for _ in range(m):
        q = apply_ST(q)
    assert trace[-1].pair == q
    assert len(trace) == 2 * m + 1
    assert [s.op for s in trace[1:3]] == ["T", "S"]


def test_orbit_step_limit_marker():
    trace = orbit(pair([[1]], 1), "STSTST", max_steps=3)
    assert trace[-1].op == STEP_LIMIT
    assert len(trace) == 5
    with pytest.raises(StarcoxError):
        orbit(pair([[1]], 1), "SX")


def test_gap_preserved_by_st(extended_graph):
    rng = random.Random(11)
    omega = exact_functional(extended_graph)
    for _ in range(30):
        chi = random_character(rng, extended_graph.branch_lengths)
        lam = random_fraction(rng, 0, 50)
        q = apply_ST(WeightedPair(chi, lam))
        assert evaluate(omega, q.character) - q.lam == evaluate(omega, chi) - lam


def test_periodicity_examples():
    g = make_graph([1, 1, 1, 1])
    chi = special_character(g)
    res = verify_periodicity(g, chi, F(7, 4), 1)
    assert res.ok
    assert rows(res.image) == [[F(1, 2)]] * 4 and res.image.lam == F(3, 4)

    g = make_graph([2, 2, 2])
    for k in (1, 2, 5):
        assert verify_periodicity(g, special_character(g), 3, k).ok


def test_periodicity_e8_random():
    g = make_graph([5, 2, 1])
    rng = random.Random(3)
    chi = random_character(rng, g.branch_lengths)
    chi = chi.scaled(special_omega(g) / evaluate(exact_functional(g), chi))
    assert evaluate(exact_functional(g), chi) == 6
    res = verify_periodicity(g, chi, 5, 1)
    assert res.ok and res.lambda_residual == 0


def test_periodicity_input_errors():
    with pytest.raises(StarcoxError):
        verify_periodicity(make_graph([1, 1, 1]), special_character(make_graph([1, 1, 1, 1])), 1, 1)
    g = make_graph([1, 1, 1, 1])
    with pytest.raises(StarcoxError):
        verify_periodicity(g, special_character(g).scaled(2), 1, 1)


def test_reduce_examples():
    g = make_graph([1, 1, 1, 1])
    chi = special_character(g)
    out = reduce(g, chi, 1)
    assert (out.terminal, out.steps, out.reflected) == (EQUALS, 0, False)

    out = reduce(g, chi, F(3, 2))
    assert (out.terminal, out.steps) == (EQUALS, 1)
    assert rows(out.trace[-1].pair) == [[F(1, 2)]] * 4 and out.trace[-1].pair.lam == F(1, 2)

    out = reduce(g, chi, F(7, 4))
    assert (out.terminal, out.steps) == (EQUALS, 3)

    out = reduce(g, chi, 3)
    assert out.reflected and out.steps == 0
    assert out.trace[1].op == "S" and out.trace[1].pair.lam == 1

    out = reduce(g, chi, 2)
    assert out.terminal == SPECIAL_POINT and out.steps == 0 and len(out.trace) == 1


def test_reduce_exceeds_and_nonpositive_tags():
    g = make_graph([1, 1, 1, 1])
    out = reduce(g, make_character(g, [[1], [1], [1], [3]]), F(5, 2))
    assert out.terminal == EXCEEDS and out.location == (3, 0)
    # T sends an entry equal to lam to zero, but the equality is caught first
    out = reduce(g, make_character(g, [[1], [1], [1], [1]]), F(1, 2))
    assert out.terminal == EXCEEDS


def test_reduce_rejects_bad_input():
    g = make_graph([1, 1, 1, 1])
    with pytest.raises(StarcoxError):
        reduce(g, special_character(g), 0)
    with pytest.raises(StarcoxError):
        reduce(g, GeneralizedCharacter(((F(-1),),) * 4), 1)
    with pytest.raises(StarcoxError):
        reduce(make_graph([1, 1, 1]), special_character(make_graph([2, 2, 2])), 1)


def test_reduce_step_limit():
    g = make_graph([1, 2, 5])
    chi = special_character(g)
    out = reduce(g, chi, 6 - F(1, 1000), max_steps=5)
    assert out.terminal == STEP_LIMIT


def test_reduce_terminates_within_bound(extended_graph):
    rng = random.Random(5)
    omega = exact_functional(extended_graph)
    for _ in range(20):
        chi = random_character(rng, extended_graph.branch_lengths)
        w = evaluate(omega, chi)
        lam = w * F(rng.randint(1, 999), 1000)
        out = reduce(extended_graph, chi, lam)
        assert out.terminal in (EXCEEDS, EQUALS, NONPOSITIVE)
        assert out.steps <= step_bound(extended_graph, chi, lam)


def test_terminal_tag_order():
    from starcox.coxeter import _terminal

    assert _terminal(pair([[0]], 1)) == (NONPOSITIVE, (0, 0))
    assert _terminal(pair([[F(1, 2)], [1], [3]], 1)) == (EXCEEDS, (2, 0))
    assert _terminal(pair([[-1], [1]], 1)) == (EQUALS, (1, 0))
    assert _terminal(pair([[F(1, 2), F(2, 3)]], 1)) == (None, None)


def test_periods_table():
    assert PERIODS == {"D4~": (2, 2, 4), "E6~": (6, 3, 9), "E7~": (12, 4, 16), "E8~": (30, 6, 36)}
    assert set(PERIODS) == set(EXTENDED_SHAPES)
