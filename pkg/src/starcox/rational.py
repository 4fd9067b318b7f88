"""Exact rational parsing and formatting used at the JSON boundary."""

import re
from fractions import Fraction
from numbers import Rational

from .errors import StarcoxError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(value, allow_sign=True):
    """Parse ``"p/q"``, ``"p"`` or a Python int into a Fraction.

    Floats are rejected: values crossing the boundary must be exact.
    """
    if isinstance(value, bool):
        raise StarcoxError(f"not a rational: {value!r}")
    if isinstance(value, Rational):
        q = Fraction(value)
    elif isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m is None:
            raise StarcoxError(f"not a rational string: {value!r}")
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise StarcoxError(f"zero denominator: {value!r}")
        q = Fraction(int(num), int(den) if den is not None else 1)
    else:
        raise StarcoxError(f"not a rational: {value!r}")
    if not allow_sign and q < 0:
        raise StarcoxError(f"negative value not allowed here: {value!r}")
    return q


def format_number(x):
    """Exact values become ``"p/q"`` strings, floats stay floats."""
    if isinstance(x, Rational):
        return str(Fraction(x))
    return float(x)
