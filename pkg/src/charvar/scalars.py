"""Scalar plumbing: exact rationals (``Fraction``) or floats with a tolerance.

Every routine in the package is written against plain Python numbers, so
``int``/``Fraction`` inputs stay exact and ``float`` inputs use ``tol``.
"""
from fractions import Fraction
import math

DEFAULT_TOL = 1e-9


def is_exact(x):
    return isinstance(x, (int, Fraction))


def lift(x):
    """Promote ints to Fractions so that division stays exact."""
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def lift_all(xs):
    return tuple(lift(x) for x in xs)


def sign(x, tol=DEFAULT_TOL):
    """-1, 0 or +1.  Floats within ``tol`` of zero count as zero."""
    if not is_exact(x) and abs(x) <= tol:
        return 0
    return (x > 0) - (x < 0)


def cmp(x, y, tol=DEFAULT_TOL):
    """Three-way comparison, tolerant for floats (relative to max(1, |y|))."""
    d = x - y
    if not (is_exact(x) and is_exact(y)):
        if abs(d) <= tol * max(1.0, abs(y)):
            return 0
    return (d > 0) - (d < 0)


def to_scalar(v):
    """Parse a JSON value: ints stay ints, "p/q" strings become Fractions,
    decimal strings become exact Fractions, floats stay floats."""
    if isinstance(v, bool):
        raise TypeError("boolean is not a scalar")
    if isinstance(v, (int, Fraction, float)):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot read scalar from {v!r}")


def exactify(v):
    """Like ``to_scalar`` but floats are converted to their exact binary value."""
    v = to_scalar(v)
    if isinstance(v, float):
        return Fraction(v)
    return v


def to_json(x):
    """Exact values print as "p/q" (or bare ints); floats print via repr."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(x)


def sqrt(x):
    """Square root; exact for perfect-square rationals, float otherwise."""
    if is_exact(x):
        x = Fraction(x)
        if x >= 0:
            n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
            if n * n == x.numerator and d * d == x.denominator:
                return Fraction(n, d)
    return math.sqrt(x)
