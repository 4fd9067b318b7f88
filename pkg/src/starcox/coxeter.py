"""Reflection functors S and T acting on (character, lambda) pairs.

Composite words use operator notation: ``ST`` is S after T, so T acts first,
and ``orbit(p, "STST")`` applies the letters right to left.  With this
convention the extended Dynkin periodicity identities hold, for example on D4~
``(ST)^2 (chi, lam) = (chi - 2*gamma*chi_G, lam - 4*gamma)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidShapeError, StarcoxError
from .functionals import evaluate, exact_functional
from .graph import (
    Character,
    GeneralizedCharacter,
    StarGraph,
    WeightedPair,
    classify_structural,
    decompose,
    special_character,
    special_omega,
)

DEFAULT_MAX_STEPS = 10000

# name -> (orbit length m, character shift c, lambda shift d)
PERIODS = {
    "D4~": (2, 2, 4),
    "E6~": (6, 3, 9),
    "E7~": (12, 4, 16),
    "E8~": (30, 6, 36),
}

EXCEEDS = "CoefficientExceedsLambda"
EQUALS = "CoefficientEqualsLambda"
NONPOSITIVE = "NonpositiveCoefficient"
SPECIAL_POINT = "SpecialPoint"
STEP_LIMIT = "StepLimit"


def apply_S(p: WeightedPair) -> WeightedPair:
    branches = []
    for branch in p.character.branches:
        top = branch[-1]
        lower = (0,) + branch[:-1]
        branches.append(tuple(top - a for a in reversed(lower)))
    lam = sum(p.character.tops()) - p.lam
    return WeightedPair(GeneralizedCharacter(tuple(branches)), lam)


def apply_T(p: WeightedPair) -> WeightedPair:
    lam = p.lam
    branches = tuple(tuple(lam - a for a in reversed(branch)) for branch in p.character.branches)
    return WeightedPair(GeneralizedCharacter(branches), lam)


def apply_ST(p: WeightedPair) -> WeightedPair:
    return apply_S(apply_T(p))


def apply_TS(p: WeightedPair) -> WeightedPair:
    return apply_T(apply_S(p))


_OPS = {"S": apply_S, "T": apply_T}


@dataclass(frozen=True)
class OrbitStep:
    index: int
    pair: WeightedPair
    op: str | None  # "S", "T", None for the input, STEP_LIMIT for a truncation marker

    def to_json(self):
        out = {"step": self.index, "op": self.op}
        out.update(self.pair.to_json())
        return out


def orbit(p: WeightedPair, word: str, max_steps: int = DEFAULT_MAX_STEPS) -> list[OrbitStep]:
    """Replay ``word`` on ``p`` right to left, recording every pair.

    If the word is longer than ``max_steps`` the trace stops there and ends
    with a StepLimit marker.
    """
    word = word.upper()
    bad = set(word) - set(_OPS)
    if bad:
        raise StarcoxError(f"word may only contain S and T, got {sorted(bad)}")
    trace = [OrbitStep(0, p, None)]
    for i, letter in enumerate(reversed(word), start=1):
        if i > max_steps:
            trace.append(OrbitStep(i - 1, p, STEP_LIMIT))
            break
        p = _OPS[letter](p)
        trace.append(OrbitStep(i, p, letter))
    return trace


def _power_ST(p: WeightedPair, times: int) -> WeightedPair:
    for _ in range(times):
        p = apply_ST(p)
    return p


@dataclass(frozen=True)
class PeriodicityCheck:
    ok: bool
    character_residual: GeneralizedCharacter
    lambda_residual: Fraction
    image: WeightedPair


def verify_periodicity(g: StarGraph, chi: GeneralizedCharacter, lam, k: int) -> PeriodicityCheck:
    """Check (ST)^(m*k) (chi, lam) = (chi - c*k*gamma*chi_G, lam - d*k*gamma).

    ``chi`` must already be normalized so that omega(chi) is the special value.
    """
    name = classify_structural(g).name
    if name not in PERIODS:
        raise StarcoxError(f"periodicity is only defined for extended Dynkin stars, not {name}")
    if k < 1:
        raise StarcoxError("k must be a positive integer")
    if chi.graph != g:
        raise InvalidShapeError("character does not match graph")
    w_special = special_omega(g)
    if evaluate(exact_functional(g), chi) != w_special:
        raise StarcoxError(f"character is not normalized: omega(chi) must equal {w_special}")
    lam = Fraction(lam)
    m, c, d = PERIODS[name]
    gamma = w_special - lam
    image = _power_ST(WeightedPair(chi, lam), m * k)
    expected_chi = chi - special_character(g).scaled(c * k * gamma)
    expected_lam = lam - d * k * gamma
    char_res = image.character - expected_chi
    lam_res = image.lam - expected_lam
    ok = lam_res == 0 and all(a == 0 for _, _, a in char_res.entries())
    return PeriodicityCheck(ok, char_res, lam_res, image)


@dataclass(frozen=True)
class ReductionOutcome:
    terminal: str
    location: tuple[int, int] | None  # (branch, position), 0-based
    steps: int  # ST applications inside the loop
    reflected: bool  # True when an initial S moved lam below omega
    trace: list[OrbitStep] = field(repr=False)

    def to_json(self, with_trace=True):
        out = {
            "terminal": self.terminal,
            "location": None if self.location is None else list(self.location),
            "steps": self.steps,
            "reflected": self.reflected,
        }
        if with_trace:
            out["trace"] = [s.to_json() for s in self.trace]
        return out


def _terminal(p: WeightedPair):
    entries = list(p.character.entries())
    for tag, test in (
        (EXCEEDS, lambda a: a > p.lam),
        (EQUALS, lambda a: a == p.lam),
        (NONPOSITIVE, lambda a: a <= 0),
    ):
        for l, j, a in entries:
            if test(a):
                return tag, (l, j)
    return None, None


def _check_reduce_input(g: StarGraph, chi, lam):
    if not isinstance(chi, Character):
        chi = Character(chi.branches)
    if chi.graph != g:
        raise InvalidShapeError("character does not match graph")
    lam = Fraction(lam)
    if lam <= 0:
        raise StarcoxError("lambda must be positive")
    return chi, lam


def reduce(g: StarGraph, chi: GeneralizedCharacter, lam, max_steps: int = DEFAULT_MAX_STEPS) -> ReductionOutcome:
    """Push (chi, lam) along the ST orbit until a coefficient leaves (0, lam).

    Terminal tags name the first offending entry: one exceeding lam (its
    projection must vanish), one equal to lam, or a nonpositive one.  At
    lam = omega(chi) nothing is iterated; above it a single S is applied first.
    """
    chi, lam = _check_reduce_input(g, chi, lam)
    omega = exact_functional(g)
    p = WeightedPair(chi, lam)
    trace = [OrbitStep(0, p, None)]
    w = evaluate(omega, chi)
    if lam == w:
        return ReductionOutcome(SPECIAL_POINT, None, 0, False, trace)
    reflected = lam > w
    if reflected:
        p = apply_S(p)
        trace.append(OrbitStep(1, p, "S"))
    steps = 0
    while True:
        tag, loc = _terminal(p)
        if tag is not None:
            return ReductionOutcome(tag, loc, steps, reflected, trace)
        if steps >= max_steps:
            return ReductionOutcome(STEP_LIMIT, None, steps, reflected, trace)
        q = apply_T(p)
        trace.append(OrbitStep(len(trace), q, "T"))
        p = apply_S(q)
        trace.append(OrbitStep(len(trace), p, "S"))
        steps += 1


def step_bound(g: StarGraph, chi: GeneralizedCharacter, lam) -> int:
    """Upper bound on the ST steps ``reduce`` needs when lam != omega(chi).

    After normalization lam drops by d*gamma every m steps, so within
    ceil(omega_G * m / (d * gamma)) + m steps it falls below every entry.
    """
    chi, lam = _check_reduce_input(g, chi, lam)
    w = evaluate(exact_functional(g), chi)
    if lam == w:
        return 0
    p = WeightedPair(chi, lam)
    if lam > w:
        p = apply_S(p)
    gamma = decompose(g, p.character, p.lam).gamma
    m, _, d = PERIODS[classify_structural(g).name]
    return math.ceil(special_omega(g) * m / (d * gamma)) + m
