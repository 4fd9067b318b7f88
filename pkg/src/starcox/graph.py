"""Star-shaped graphs, characters on them, and structural classification.

A star graph is a root vertex with ``n`` paths (branches) hanging off it; the
``l``-th branch has ``k_l`` non-root vertices.  A character assigns a weight to
every non-root vertex, branch by branch, with weights increasing towards the
root.  The root weight ``lambda`` is carried separately in a WeightedPair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidShapeError, UnsupportedGraphError
from .rational import format_number, parse_rational

DYNKIN = "dynkin"
EXTENDED = "extended"
HYPERBOLIC = "hyperbolic"

# sorted branch lengths -> name
_EXTENDED_SHAPES = {
    (1, 1, 1, 1): "D4~",
    (2, 2, 2): "E6~",
    (1, 3, 3): "E7~",
    (1, 2, 5): "E8~",
}
_EXCEPTIONAL_SHAPES = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}

# Arm values of the special character, keyed by sorted shape.  Each arm is
# listed by length; special_character() lays them out in the graph's order.
_SPECIAL_ARMS = {
    (1, 1, 1, 1): {1: (1,)},
    (2, 2, 2): {2: (1, 2)},
    (1, 3, 3): {3: (1, 2, 3), 1: (2,)},
    (1, 2, 5): {5: (1, 2, 3, 4, 5), 2: (2, 4), 1: (3,)},
}
_SPECIAL_OMEGA = {"D4~": 2, "E6~": 3, "E7~": 4, "E8~": 6}


@dataclass(frozen=True)
class StarGraph:
    branch_lengths: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.branch_lengths)

    @property
    def vertex_count(self) -> int:
        return 1 + sum(self.branch_lengths)

    def shape(self) -> tuple[int, ...]:
        return tuple(sorted(self.branch_lengths))

    def to_json(self):
        return {"branches": list(self.branch_lengths)}


def make_graph(branch_lengths: Sequence[int]) -> StarGraph:
    lengths = tuple(branch_lengths)
    if not lengths:
        raise InvalidShapeError("a star graph needs at least one branch")
    for k in lengths:
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise InvalidShapeError(f"branch lengths must be positive integers, got {k!r}")
    return StarGraph(lengths)


@dataclass(frozen=True)
class GraphClass:
    kind: str  # DYNKIN, EXTENDED or HYPERBOLIC
    name: str

    @property
    def is_dynkin(self) -> bool:
        return self.kind == DYNKIN

    @property
    def is_extended(self) -> bool:
        return self.kind == EXTENDED

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == HYPERBOLIC


def classify_structural(g: StarGraph) -> GraphClass:
    """Classify by pattern matching on the multiset of branch lengths."""
    shape = g.shape()
    if len(shape) <= 2:
        return GraphClass(DYNKIN, f"A{g.vertex_count}")
    if len(shape) == 3:
        if shape[:2] == (1, 1):
            return GraphClass(DYNKIN, f"D{g.vertex_count}")
        if shape in _EXCEPTIONAL_SHAPES:
            return GraphClass(DYNKIN, _EXCEPTIONAL_SHAPES[shape])
    if shape in _EXTENDED_SHAPES:
        return GraphClass(EXTENDED, _EXTENDED_SHAPES[shape])
    return GraphClass(HYPERBOLIC, HYPERBOLIC)


def _require_extended(g: StarGraph) -> str:
    cls = classify_structural(g)
    if not cls.is_extended:
        raise UnsupportedGraphError(
            f"graph {list(g.branch_lengths)} is {cls.name}, not an extended Dynkin star"
        )
    return cls.name


def special_omega(g: StarGraph) -> Fraction:
    """Value of the invariant functional on the special character (2, 3, 4 or 6)."""
    return Fraction(_SPECIAL_OMEGA[_require_extended(g)])


@dataclass(frozen=True, eq=False)
class GeneralizedCharacter:
    """Per-branch weights with no sign or ordering constraint.

    Entries are Fractions for exact work; floats appear only when a pair is
    pushed through the functors with an irrational (float) root weight.
    """

    branches: tuple[tuple, ...]

    # Character and GeneralizedCharacter with equal entries compare equal.
    def __eq__(self, other):
        if not isinstance(other, GeneralizedCharacter):
            return NotImplemented
        return self.branches == other.branches

    def __hash__(self):
        return hash(self.branches)

    @property
    def graph(self) -> StarGraph:
        return StarGraph(tuple(len(b) for b in self.branches))

    def entries(self):
        for l, branch in enumerate(self.branches):
            for j, a in enumerate(branch):
                yield l, j, a

    def tops(self):
        return [branch[-1] for branch in self.branches]

    def scaled(self, c) -> GeneralizedCharacter:
        return GeneralizedCharacter(tuple(tuple(c * a for a in b) for b in self.branches))

    def __add__(self, other: GeneralizedCharacter) -> GeneralizedCharacter:
        _check_same_shape(self, other)
        return GeneralizedCharacter(
            tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.branches, other.branches))
        )

    def __sub__(self, other: GeneralizedCharacter) -> GeneralizedCharacter:
        return self + other.scaled(-1)

    def is_valid_character(self) -> bool:
        for branch in self.branches:
            prev = 0
            for a in branch:
                if not a > prev:
                    return False
                prev = a
        return True

    def to_json(self):
        return {"branches": [[format_number(a) for a in b] for b in self.branches]}


class Character(GeneralizedCharacter):
    """A character proper: 0 < a_1 < ... < a_k on every branch."""

    def __init__(self, branches):
        super().__init__(branches)
        if not self.is_valid_character():
            raise InvalidShapeError(
                "character weights must be positive and strictly increasing on each branch"
            )


def _check_same_shape(a: GeneralizedCharacter, b: GeneralizedCharacter) -> None:
    if a.graph != b.graph:
        raise InvalidShapeError(
            f"shape mismatch: {list(a.graph.branch_lengths)} vs {list(b.graph.branch_lengths)}"
        )


def make_character(g: StarGraph | None, branches, generalized: bool = False) -> GeneralizedCharacter:
    """Build a character from nested lists of rationals (strings or ints).

    With ``g`` given, the branch shape must match it exactly.
    """
    try:
        rows = tuple(tuple(parse_rational(a) for a in b) for b in branches)
    except TypeError:
        raise InvalidShapeError("character must be a list of lists of rationals") from None
    if not rows or any(len(r) == 0 for r in rows):
        raise InvalidShapeError("every branch of a character needs at least one weight")
    if g is not None and tuple(len(r) for r in rows) != g.branch_lengths:
        raise InvalidShapeError(
            f"character shape {[len(r) for r in rows]} does not match graph {list(g.branch_lengths)}"
        )
    return GeneralizedCharacter(rows) if generalized else Character(rows)


def zero_character(g: StarGraph) -> GeneralizedCharacter:
    return GeneralizedCharacter(tuple((Fraction(0),) * k for k in g.branch_lengths))


@dataclass(frozen=True)
class WeightedPair:
    character: GeneralizedCharacter
    lam: object  # Fraction, or float for hyperbolic functionals

    @property
    def graph(self) -> StarGraph:
        return self.character.graph

    def to_json(self):
        return {"character": self.character.to_json()["branches"], "lambda": format_number(self.lam)}


def special_character(g: StarGraph) -> Character:
    """The canonical character of an extended Dynkin star, in ``g``'s branch order."""
    _require_extended(g)
    arms = _SPECIAL_ARMS[g.shape()]
    return Character(tuple(tuple(Fraction(a) for a in arms[k]) for k in g.branch_lengths))


@dataclass(frozen=True)
class Decomposition:
    scale: Fraction
    residual: GeneralizedCharacter
    gamma: Fraction

    def recompose(self, g: StarGraph) -> GeneralizedCharacter:
        return (special_character(g) + self.residual).scaled(1 / self.scale)


def decompose(g: StarGraph, chi: GeneralizedCharacter, lam) -> Decomposition:
    """Split ``chi`` as (special character + residual) after normalizing omega.

    ``scale`` multiplies ``chi`` so that omega(scale * chi) equals the special
    value; ``gamma`` is the special value minus ``scale * lam``.
    """
    from .functionals import exact_functional, evaluate

    _check_same_shape(chi, special_character(g))
    omega = exact_functional(g)
    w = evaluate(omega, chi)
    if w == 0:
        raise InvalidShapeError("cannot normalize a character with omega = 0")
    target = special_omega(g)
    scale = target / w
    residual = chi.scaled(scale) - special_character(g)
    return Decomposition(scale, residual, target - scale * parse_rational(lam))
