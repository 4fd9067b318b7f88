"""Coxeter functors, invariant functionals and type classification on star graphs."""

from .coxeter import (
    apply_S,
    apply_ST,
    apply_T,
    apply_TS,
    orbit,
    reduce,
    step_bound,
    verify_periodicity,
)
from .errors import (
    DomainError,
    InvalidShapeError,
    NotHermitianError,
    StarcoxError,
    UnsupportedGraphError,
)
from .functionals import InvariantFunctional, build_functionals, evaluate, verify_invariance
from .graph import (
    Character,
    GeneralizedCharacter,
    GraphClass,
    StarGraph,
    WeightedPair,
    classify_structural,
    decompose,
    make_character,
    make_graph,
    special_character,
)
from .matrix_reps import (
    OperatorTuple,
    centralizer_dim,
    joint_commutant_dim,
    rigidity_index,
    verify_tuple,
)
from .spectral import classify_analytic, eval_f, eval_f_prime, hyperbolic_roots

__version__ = "0.1.0"
