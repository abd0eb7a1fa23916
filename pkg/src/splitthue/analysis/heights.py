"""Logarithmic Weil heights via the Mahler measure."""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp

from .. import poly

LOG2 = mpmath.log(2)


def weil_height(alg, precision: int = 128):
    """Absolute logarithmic height.

    ``alg`` is either an exact rational (``int`` or ``Fraction``), giving
    ``log max(|p|, |q|)``, or the ascending integer coefficient list of the
    minimal polynomial, giving ``(1/D) (log|lead| + sum log max(1, |root|))``.
    Irreducibility of the polynomial is the caller's responsibility.
    """
    with mp.workprec(precision):
        if isinstance(alg, (int, Fraction)):
            q = Fraction(alg)
            return mpmath.log(max(abs(q.numerator), q.denominator, 1))
        p = poly.trim(alg)
        D = len(p) - 1
        if D < 1:
            raise ValueError("need a polynomial of degree >= 1")
        roots = mpmath.polyroots(p[::-1], maxsteps=400, extraprec=2 * precision)
        logm = mpmath.log(abs(p[-1])) + mpmath.fsum(mpmath.log(max(1, abs(r))) for r in roots)
        return logm / D


def modified_height(h, log_alpha, field_degree: int):
    """``(1/D) max(h, |log alpha|, 1)``."""
    return max(mp.mpf(h), abs(mp.mpf(log_alpha)), mp.mpf(1)) / field_degree


def height_sum_bound(h1, h2):
    """Upper bound for ``h(a +- b)``."""
    return h1 + h2 + LOG2


def height_product_bound(h1, h2):
    """Upper bound for ``h(a b)`` and ``h(a / b)``."""
    return h1 + h2
