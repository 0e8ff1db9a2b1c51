"""Rational number backend.

Every exact value in the package bottoms out in a rational type chosen here.
``gmpy2.mpq`` is used when it imports; setting ``HYPERMOMENT_PURE_PYTHON=1``
forces the standard-library :class:`fractions.Fraction` instead.  Both types
hash and compare identically, so results never depend on the backend, only
the speed does.
"""

import os
from fractions import Fraction

PURE_ENV = "HYPERMOMENT_PURE_PYTHON"


def _want_pure():
    return os.environ.get(PURE_ENV, "").strip().lower() not in ("", "0", "false", "no")


if _want_pure():
    rational = Fraction
    BACKEND = "fraction"
else:
    try:
        from gmpy2 import mpq as rational
        BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover - depends on the environment
        rational = Fraction
        BACKEND = "fraction"

RATIONAL_TYPE = type(rational(0))
ZERO = rational(0)
ONE = rational(1)


def to_rational(x):
    """Convert an int, Fraction, mpq or ``"p/q"`` string to the backend type."""
    if type(x) is RATIONAL_TYPE:
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(x, int):
        return rational(x)
    if isinstance(x, str):
        p, sep, q = x.strip().partition("/")
        return rational(int(p), int(q)) if sep else rational(int(p))
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return rational(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")
