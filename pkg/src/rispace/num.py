"""Scalar arithmetic shared by the whole package.

Numbers are either ``fractions.Fraction`` (exact) or ``float``.  Integers are
coerced to ``Fraction`` on entry so that a value stays exact until an
irrational operation (root, log, exp, fractional power) genuinely forces a
float.  Python's cross-type equality and hashing make the two kinds mix
safely in comparisons and as dict keys.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Real = Union[Fraction, float]

INF = math.inf
NEG_INF = -math.inf


def as_real(x) -> Real:
    """Coerce a number (or an exact string like "3/7" or "0.1") to Real.

    Decimal strings are read exactly: as_real("0.1") == Fraction(1, 10).
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if math.isnan(x):
            raise ValueError("NaN is not a valid value")
        return x
    if isinstance(x, str):
        s = x.strip()
        if s == "inf":
            return INF
        if s == "-inf":
            return NEG_INF
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a real number")


def is_finite(x: Real) -> bool:
    return not (isinstance(x, float) and math.isinf(x))


def to_float(x: Real) -> float:
    """Best-effort float image; huge rationals overflow to +-inf."""
    if isinstance(x, float):
        return x
    try:
        return float(x)
    except OverflowError:
        return INF if x > 0 else NEG_INF


def exact_float(x: Real) -> bool:
    """True when float(x) round-trips exactly back to x."""
    if isinstance(x, float):
        return True
    f = to_float(x)
    if math.isinf(f):
        return False
    return Fraction(f) == x


def _int_nth_root(a: int, n: int) -> int:
    """floor(a ** (1/n)) for nonnegative integers, exactly (Newton)."""
    if a < 0:
        raise ValueError("negative radicand")
    if a == 0:
        return 0
    if n == 1:
        return a
    # initial guess from floats, then Newton on integers
    try:
        r = int(round(a ** (1.0 / n)))
    except OverflowError:
        r = 1 << ((a.bit_length() + n - 1) // n)
    r = max(r, 1)
    while True:
        rn = r**n
        if rn == a:
            return r
        if rn < a:
            if (r + 1) ** n > a:
                return r
            r = (r * (n - 1) + a // r ** (n - 1)) // n + 1
        else:
            r = (r * (n - 1) + a // r ** (n - 1)) // n
            if r < 1:
                return 1


def nth_root(x: Real, n: int) -> Real:
    """x ** (1/n) for x >= 0; exact Fraction when x is a perfect n-th power."""
    if n < 1:
        raise ValueError("root index must be >= 1")
    if isinstance(x, float):
        if x < 0:
            raise ValueError("negative radicand")
        return x ** (1.0 / n)
    if x < 0:
        raise ValueError("negative radicand")
    if n == 1:
        return x
    rp = _int_nth_root(x.numerator, n)
    rq = _int_nth_root(x.denominator, n)
    if rp**n == x.numerator and rq**n == x.denominator:
        return Fraction(rp, rq)
    return to_float(x) ** (1.0 / n)


def rational_pow(x: Real, e: Real) -> Real:
    """x ** e for x >= 0, exact whenever the result is rational.

    e may be a Fraction or float; Fraction exponents attempt exact roots.
    """
    if isinstance(x, float) and math.isinf(x):
        if e == 0:
            return Fraction(1)
        return INF if e > 0 else Fraction(0)
    if x < 0:
        raise ValueError("negative base")
    if e == 0:
        return Fraction(1)
    if x == 0:
        if e < 0:
            return INF
        return Fraction(0)
    if isinstance(e, float):
        return to_float(x) ** e
    if e < 0:
        inv = rational_pow(x, -e)
        if isinstance(inv, Fraction):
            return 1 / inv
        return 1.0 / inv
    if e.denominator == 1:
        if isinstance(x, Fraction):
            return x ** e.numerator
        return x ** int(e)
    root = nth_root(x, e.denominator)
    if isinstance(root, Fraction):
        return root**e.numerator
    return root ** e.numerator if abs(e.numerator) < 512 else to_float(x) ** to_float(e)


def log_real(x: Real) -> float:
    """Natural log; handles Fractions with huge numerator/denominator."""
    if x <= 0:
        raise ValueError("log of nonpositive value")
    if isinstance(x, float):
        return math.log(x)
    return math.log(x.numerator) - math.log(x.denominator)


def fmt_real(x: Real) -> str:
    """Shortest round-trip text: float repr, exact "p/q" otherwise, "inf"."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if x == 0.0:
            return "0.0"
        return repr(x)
    if x.denominator == 1:
        return str(x.numerator)
    if exact_float(x):
        return repr(float(x))
    return f"{x.numerator}/{x.denominator}"


def json_real(x: Real):
    """JSON image: a number when exactly representable, else "p/q" / "inf"."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return 0.0 if x == 0.0 else x
    if x.denominator == 1 and abs(x.numerator) <= 2**53:
        return int(x.numerator)
    if exact_float(x):
        return float(x)
    return f"{x.numerator}/{x.denominator}"
