"""The scalar equation that tells Dynkin, extended Dynkin and the rest apart.

For a star graph with branch lengths ``k_1..k_n`` put

    f(s) = n - s - sum_l phi_{k_l}(s - 1),   phi_k(x) = 1 / (1 + x + ... + x^k).

On ``[1, inf)`` the function is concave with ``f(1) = -1`` and ``f(n) < 0``.
Its maximum is negative for Dynkin stars, exactly zero (at ``s = 2``) for the
four extended Dynkin stars, and positive otherwise, in which case there are
two roots ``1 < s1 < 2 < s2 < n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, UnsupportedGraphError
from .graph import DYNKIN, EXTENDED, HYPERBOLIC, StarGraph

DEFAULT_TOL = 1e-12
_MAX_BISECT = 400


def _geometric(x, k):
    """Return (1 + x + ... + x^k, its derivative in x)."""
    total, deriv, p = 1, 0, 1  # p = x^(i-1)
    for i in range(1, k + 1):
        deriv += i * p
        p *= x
        total += p
    return total, deriv


def _f_and_fprime(g: StarGraph, s):
    x = s - 1
    f = g.n - s
    fp = -1
    for k in g.branch_lengths:
        total, deriv = _geometric(x, k)
        if total == 0:
            raise DomainError(f"geometric denominator vanishes at s={s}")
        f -= 1 / total
        fp += deriv / (total * total)
    return f, fp


def eval_f(g: StarGraph, s) -> Fraction:
    """Exact value of f at a rational point (floats are evaluated in floats)."""
    if not isinstance(s, float):
        s = Fraction(s)
    return _f_and_fprime(g, s)[0]


def eval_f_prime(g: StarGraph, s) -> Fraction:
    if not isinstance(s, float):
        s = Fraction(s)
    return _f_and_fprime(g, s)[1]


@dataclass(frozen=True)
class RootRecord:
    value: object  # Fraction(2) when exact, float otherwise
    residual: float
    exact: bool

    def to_json(self):
        return {
            "s": str(self.value) if self.exact else float(self.value),
            "residual": float(self.residual),
            "exact": self.exact,
        }


@dataclass(frozen=True)
class SpectralResult:
    kind: str
    roots: tuple[RootRecord, ...]
    # a point where f > 0 (hyperbolic) or None
    witness: Fraction | None = None

    def to_json(self):
        return {"class": self.kind, "roots": [r.to_json() for r in self.roots]}


def _peak_sign(g: StarGraph):
    """Sign of max f on [1, n] plus a point attaining a positive value.

    f' is strictly decreasing, so the maximizer is bracketed by exact bisection
    on the sign of f'.  On a bracket [a, b] the maximum is at least
    max(f(a), f(b)) and at most the value where the tangents at a and b meet.
    """
    a, b = Fraction(1), Fraction(g.n)
    fa, fpa = _f_and_fprime(g, a)
    if fpa <= 0:
        return -1, None
    fb, fpb = _f_and_fprime(g, b)
    if fpb >= 0:
        return (1, b) if fb > 0 else (-1, None)
    for _ in range(_MAX_BISECT):
        if fa > 0:
            return 1, a
        if fb > 0:
            return 1, b
        # tangent lines meet at x; the concave f stays below both
        x = (fb - fa + fpa * a - fpb * b) / (fpa - fpb)
        if fa + fpa * (x - a) < 0:
            return -1, None
        mid = (a + b) / 2
        fm, fpm = _f_and_fprime(g, mid)
        if fpm == 0:
            if fm == 0:
                # only the extended Dynkin stars are tangent, and only at s=2
                raise ArithmeticError(f"unexpected tangency at s={mid}")
            return (1, mid) if fm > 0 else (-1, None)
        if fpm > 0:
            a, fa, fpa = mid, fm, fpm
        else:
            b, fb, fpb = mid, fm, fpm
    raise ArithmeticError("peak of f not resolved; bisection limit reached")


def _refine_root(g: StarGraph, lo: float, hi: float) -> RootRecord:
    """Float bisection on a sign-changing bracket down to float resolution."""

    def f(s):
        return _f_and_fprime(g, s)[0]

    flo = f(lo)
    best, best_res = lo, abs(flo)
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) < best_res:
            best, best_res = mid, abs(fm)
        if fm == 0.0 or mid in (lo, hi):
            break
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return RootRecord(best, best_res, False)


def classify_analytic(g: StarGraph, tol: float = DEFAULT_TOL) -> SpectralResult:
    """Classify ``g`` from the roots of f on [1, n]."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    two = Fraction(2)
    if g.n >= 2:
        f2, fp2 = _f_and_fprime(g, two)
        if f2 == 0 and fp2 == 0:
            return SpectralResult(EXTENDED, (RootRecord(two, 0.0, True),))
    sign, witness = _peak_sign(g)
    if sign < 0:
        return SpectralResult(DYNKIN, ())
    p = float(witness)
    s1 = _refine_root(g, 1.0, p)
    s2 = _refine_root(g, p, float(g.n))
    if max(s1.residual, s2.residual) >= tol:
        raise ArithmeticError(f"roots of f not resolved to tol={tol}")
    return SpectralResult(HYPERBOLIC, (s1, s2), witness)


def hyperbolic_roots(g: StarGraph, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    res = classify_analytic(g, tol)
    if res.kind != HYPERBOLIC:
        raise UnsupportedGraphError(f"graph {list(g.branch_lengths)} is {res.kind}, not hyperbolic")
    return res.roots[0].value, res.roots[1].value
