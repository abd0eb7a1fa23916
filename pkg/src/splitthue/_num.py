"""Conversions between exact rationals and mpmath reals."""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp


def to_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def to_fraction(x) -> Fraction:
    """Exact value of an int, Fraction or finite mpf."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raw = x._mpf_ if isinstance(x, mpmath.mpf) else mp.mpf(x)._mpf_  # no rounding to context
    sign, man, exp, _ = raw
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def log_abs(x) -> float:
    """``log|x|`` as a float, for any magnitude (huge ints, tiny mpfs)."""
    if isinstance(x, int):
        if x == 0:
            raise ValueError("log of zero")
        b = abs(x).bit_length()
        if b < 1000:
            return float(mpmath.log(abs(x)))
        with mp.workprec(64):
            return float(mpmath.log(mp.mpf(abs(x))))
    if isinstance(x, Fraction):
        return log_abs(x.numerator) - log_abs(x.denominator)
    with mp.workprec(max(mp.prec, 64)):
        v = abs(mp.mpf(x))
        if v == 0:
            raise ValueError("log of zero")
        return float(mpmath.log(v))


def bit_size(x) -> int:
    """Rough ``ceil(log2|x|)`` for ints and Fractions (0 for zero)."""
    if isinstance(x, Fraction):
        return abs(x.numerator).bit_length() - abs(x.denominator).bit_length() + 1
    return abs(int(x)).bit_length()


def fmt(x, digits: int = 15) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return mpmath.nstr(mp.mpf(x), digits)
