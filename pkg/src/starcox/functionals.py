"""Linear functionals on characters that are invariant under TS.

A functional ``omega(chi) = sum a_j^(l) * alpha_j^(l)`` is TS-invariant when
pushing the pair ``(chi, omega(chi))`` through S then T lands on a pair of the
same form.  Such functionals exist exactly at the roots ``s`` of the spectral
equation and have coefficients

    a_j^(l) = (s-1)^j / (1 + (s-1) + ... + (s-1)^(k_l)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidShapeError, UnsupportedGraphError
from .graph import GeneralizedCharacter, StarGraph, WeightedPair, classify_structural
from .rational import format_number
from .spectral import DEFAULT_TOL, classify_analytic

# Coefficients per arm length, written out for each extended Dynkin star.
_CLOSED_FORMS = {
    "D4~": {1: (Fraction(1, 2),)},
    "E6~": {2: (Fraction(1, 3),) * 2},
    "E7~": {3: (Fraction(1, 4),) * 3, 1: (Fraction(2, 4),)},
    "E8~": {5: (Fraction(1, 6),) * 5, 2: (Fraction(2, 6),) * 2, 1: (Fraction(3, 6),)},
}


@dataclass(frozen=True)
class InvariantFunctional:
    graph: StarGraph
    s: object  # Fraction(2) for extended Dynkin stars, float otherwise; None if ad hoc
    coeffs: tuple[tuple, ...]

    @property
    def exact(self) -> bool:
        return all(not isinstance(a, float) for row in self.coeffs for a in row)

    def __call__(self, chi: GeneralizedCharacter):
        return evaluate(self, chi)

    def to_json(self):
        s = None if self.s is None else format_number(self.s)
        return {"s": s, "coeffs": [[format_number(a) for a in row] for row in self.coeffs]}


def coefficients(g: StarGraph, s) -> tuple[tuple, ...]:
    """Coefficient table for root ``s``; exact when ``s`` is rational."""
    x = s - 1
    rows = []
    for k in g.branch_lengths:
        powers = [x**j for j in range(k + 1)]
        denom = sum(powers)
        rows.append(tuple(powers[j] / denom for j in range(1, k + 1)))
    return tuple(rows)


def exact_functional(g: StarGraph) -> InvariantFunctional:
    """The unique invariant functional of an extended Dynkin star (s = 2)."""
    cls = classify_structural(g)
    if not cls.is_extended:
        raise UnsupportedGraphError(f"graph {list(g.branch_lengths)} is not an extended Dynkin star")
    coeffs = coefficients(g, Fraction(2))
    closed = _CLOSED_FORMS[cls.name]
    expected = tuple(closed[k] for k in g.branch_lengths)
    if coeffs != expected:
        raise AssertionError(f"coefficients {coeffs} disagree with closed form {expected}")
    return InvariantFunctional(g, Fraction(2), coeffs)


def build_functionals(g: StarGraph, tol: float = DEFAULT_TOL) -> list[InvariantFunctional]:
    """All TS-invariant functionals of ``g``: none, one, or two."""
    res = classify_analytic(g, tol)
    if res.kind == "dynkin":
        return []
    if res.kind == "extended":
        return [exact_functional(g)]
    out = []
    for root in res.roots:
        s = float(root.value)
        coeffs = coefficients(g, s)
        if any(a < 0 for row in coeffs for a in row):
            raise ArithmeticError(f"negative coefficient at s={s}; root finder is off")
        out.append(InvariantFunctional(g, s, coeffs))
    return out


def evaluate(omega: InvariantFunctional, chi: GeneralizedCharacter):
    if chi.graph != omega.graph:
        raise InvalidShapeError(
            f"character shape {list(chi.graph.branch_lengths)} "
            f"does not match functional shape {list(omega.graph.branch_lengths)}"
        )
    total = 0
    for row, branch in zip(omega.coeffs, chi.branches):
        for a, alpha in zip(row, branch):
            total += a * alpha
    return total


@dataclass(frozen=True)
class InvarianceCheck:
    ok: bool
    residual: object
    image: WeightedPair


def verify_invariance(
    omega: InvariantFunctional, chi: GeneralizedCharacter, tol: float = 1e-9
) -> InvarianceCheck:
    """Check that TS(chi, omega(chi)) = (chi~, omega(chi~)).

    Exact functionals are checked for exact equality and ``tol`` is ignored.
    """
    from .coxeter import apply_TS

    image = apply_TS(WeightedPair(chi, evaluate(omega, chi)))
    residual = evaluate(omega, image.character) - image.lam
    if omega.exact and not isinstance(residual, float):
        return InvarianceCheck(residual == 0, residual, image)
    return InvarianceCheck(abs(residual) < tol, abs(residual), image)
