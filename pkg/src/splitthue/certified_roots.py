"""Certified real roots of ``f_n(x, 1)`` and the root-approximation checks.

Every interval returned here has been checked to carry a sign change of
``f_n(x, 1)`` using exact rational evaluation.  Floating point (mpmath)
is only used to *propose* endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import mpmath
from mpmath import mp

from . import poly
from ._num import to_fraction, to_mpf
from .errors import DominantRootError, PrecisionInsufficient, RootCountMismatch
from .family import FormInstance, ThueFamily, instantiate
from .sequences import family_structures, gamma_eps


@dataclass(frozen=True)
class CertifiedRoot:
    """Isolating interval for the root nearest ``G_index(n)`` (1-based index)."""

    index: int
    lo: Fraction
    hi: Fraction
    refined_value: object

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def correction_denominators(g_values) -> list[int]:
    """``P_i = prod_{k != i} (G_i - G_k)`` for every ``i``."""
    return [prod(gi - gk for k, gk in enumerate(g_values) if k != i) for i, gi in enumerate(g_values)]


def _sign(p, x: Fraction) -> int:
    return poly.sign_at(p, x)


def _seed_bracket(p, g_values, i, eps_power=None):
    gi = g_values[i]
    P = correction_denominators(g_values)[i]
    xi = gi + Fraction(1, P)
    tries = []
    if eps_power is not None and eps_power > 1:
        e = 1 / Fraction(eps_power)
        tries.append(tuple(sorted((gi + (1 - e) / P, gi + (1 + e) / P))))
    half = min(abs(gi - gk) for k, gk in enumerate(g_values) if k != i) / Fraction(2)
    w = 2 * abs(Fraction(1, P))
    while True:
        w = min(w, half)
        tries.append((max(xi - w, gi - half), min(xi + w, gi + half)))
        if w == half:
            break
        w *= 4
    for lo, hi in tries:
        s_lo, s_hi = _sign(p, lo), _sign(p, hi)
        if s_lo == 0:
            return lo, lo
        if s_hi == 0:
            return hi, hi
        if s_lo * s_hi < 0:
            return lo, hi
    return None


def _newton(g_values, x0, bits: int):
    """High-precision Newton on the product form of ``f_n(x, 1)``."""
    with mp.workprec(bits + 64):
        x = to_mpf(x0)
        gs = [mp.mpf(g) for g in g_values]
        tol = mp.mpf(2) ** (-(bits + 8))
        for _ in range(200):
            t = [x - g for g in gs]
            if any(v == 0 for v in t):
                x += tol
                continue
            pr = mpmath.fprod(t)
            fx = pr - 1
            dfx = pr * mpmath.fsum(1 / v for v in t)
            step = fx / dfx
            x -= step
            if abs(step) <= tol * max(1, abs(x)):
                break
        return x


def _certify_near(p, x, bits: int, lo: Fraction, hi: Fraction):
    """Try a dyadic bracket of width ``2^-bits`` around the Newton value ``x``."""
    m = bits + 1
    a = int(mpmath.nint(x * mp.mpf(2) ** m))
    for spread in (1, 2, 8):
        c_lo, c_hi = Fraction(a - spread, 2**m), Fraction(a + spread, 2**m)
        if c_lo < lo or c_hi > hi:
            continue
        s_lo, s_hi = _sign(p, c_lo), _sign(p, c_hi)
        if s_lo * s_hi < 0:
            if c_hi - c_lo <= Fraction(1, 2**bits):
                return c_lo, c_hi
            return poly.bisect_refine(p, c_lo, c_hi, bits)
        if s_lo == 0:
            return c_lo, c_lo
        if s_hi == 0:
            return c_hi, c_hi
    return None


def default_width_bits(form: FormInstance) -> int:
    pmax = max(abs(v) for v in correction_denominators(form.g_values))
    return 64 + 2 * pmax.bit_length()


def _refine(p, g_values, lo, hi, bits):
    if lo == hi:
        return lo, hi
    with mp.workprec(bits + 64):
        x = _newton(g_values, (lo + hi) / 2, bits)
        got = None
        if lo <= to_fraction(x) <= hi:
            got = _certify_near(p, x, bits, lo, hi)
    return got if got is not None else poly.bisect_refine(p, lo, hi, bits)


def _wrap(i, lo, hi, bits):
    with mp.workprec(bits + 64):
        return CertifiedRoot(i + 1, lo, hi, to_mpf((lo + hi) / 2))


def isolate_roots(form: FormInstance, target_width_bits: int | None = None,
                  eps_powers=None) -> list[CertifiedRoot]:
    """The ``d`` real roots of ``f_n(x, 1)``, ordered as ``g_values``.

    ``eps_powers`` optionally gives ``gamma_eps(i)^n`` per root, which lets
    the first bracket probe ``G_i + (1 +- gamma_eps^-n) / P_i``.
    """
    p = form.poly_x
    g = list(form.g_values)
    d = form.d
    bits = target_width_bits if target_width_bits is not None else default_width_bits(form)
    if len(set(g)) < d:
        raise RootCountMismatch(f"n={form.n}: coinciding G values {g}; roots cannot be matched to indices")
    order = sorted(range(d), key=lambda k: g[k])
    brackets = {}
    for i in range(d):
        b = _seed_bracket(p, g, i, None if eps_powers is None else eps_powers[i])
        if b is None:
            break
        brackets[i] = b
    if len(brackets) < d:
        # fall back to full isolation and match by proximity
        iso = poly.isolate_real_roots(p, 8)
        if len(iso) != d:
            raise RootCountMismatch(f"n={form.n}: found {len(iso)} real roots, expected {d}")
        for rank, (lo, hi) in enumerate(iso):
            brackets[order[rank]] = (lo, hi)
    roots = [_wrap(i, *_refine(p, g, *brackets[i], bits), bits) for i in range(d)]
    ivs = sorted((r.lo, r.hi) for r in roots)
    if any(a[1] >= b[0] for a, b in zip(ivs, ivs[1:]) if a != b) or len(set(ivs)) < d:
        raise RootCountMismatch(f"n={form.n}: isolating intervals overlap")
    return roots


def verify_certificate(form: FormInstance, root: CertifiedRoot) -> bool:
    """Independent exact re-check of the sign change (or exact root)."""
    p = form.poly_x
    if root.lo == root.hi:
        return _sign(p, root.lo) == 0
    return _sign(p, root.lo) * _sign(p, root.hi) < 0


# -- root-approximation checks --------------------------------------------


@dataclass(frozen=True)
class Lemma1Prediction:
    index: int
    xi: Fraction
    correction: Fraction
    error_exponent: object  # gamma_eps(i), or None if undefined for the family


@dataclass(frozen=True)
class Lemma1Residual:
    n: int
    index: int
    xi: Fraction
    residual: object
    predicted_base: object
    root: CertifiedRoot


def predictions(form: FormInstance, structures=None) -> list[Lemma1Prediction]:
    g = form.g_values
    out = []
    for i, P in enumerate(correction_denominators(g)):
        ge = gamma_eps(structures, i + 1) if structures is not None else None
        out.append(Lemma1Prediction(i + 1, g[i] + Fraction(1, P), Fraction(1, P), ge))
    return out


def lemma1_residual(family: ThueFamily, n: int, precision: int = 512,
                    target_width_bits: int | None = None) -> list[Lemma1Residual]:
    """Normalised residuals ``r_i(n) = |alpha_i - xi_i| * |P_i|``.

    ``xi_i = G_i(n) + 1/P_i`` is exact; the root is certified to a width far
    below the correction term before the residual is formed at
    ``precision`` bits.
    """
    form = instantiate(family, n)
    try:
        structures = family_structures(family)
        preds = predictions(form, structures)
    except DominantRootError:
        preds = predictions(form)
    pmax = max(abs(pr.correction.denominator) for pr in preds)
    bits = target_width_bits if target_width_bits is not None else precision + pmax.bit_length()
    eps_powers = None
    if all(pr.error_exponent is not None for pr in preds):
        eps_powers = [Fraction(pr.error_exponent) ** n for pr in preds]
    roots = isolate_roots(form, bits, eps_powers)
    out = []
    with mp.workprec(precision):
        for pr, r in zip(preds, roots):
            if r.width * 2 > abs(pr.correction):
                raise PrecisionInsufficient(f"n={n}, i={pr.index}: root width exceeds half the correction")
            alpha = to_mpf(r.midpoint)
            res = abs(alpha - to_mpf(pr.xi)) * abs(pr.correction.denominator)
            out.append(Lemma1Residual(n, pr.index, pr.xi, res, pr.error_exponent, r))
    return out


def residual_threshold(family: ThueFamily, n_values, precision: int = 256) -> int | None:
    """Smallest tested ``n`` from which every ``r_i(n) < 1`` on the rest of ``n_values``."""
    ok = {}
    for n in n_values:
        ok[n] = all(r.residual < 1 for r in lemma1_residual(family, n, precision))
    best = None
    for n in sorted(ok, reverse=True):
        if not ok[n]:
            break
        best = n
    return best


@dataclass(frozen=True)
class RootGap:
    i: int
    j: int
    gap: object
    gap_to_g: object
    base: object
    normalized: object
    normalized_to_g: object


def root_gap_check(roots: list[CertifiedRoot], family: ThueFamily, n: int,
                   precision: int = 128) -> list[RootGap]:
    """``|alpha_i - alpha_j|`` and ``|alpha_i - G_j(n)|`` against the predicted base.

    The base is ``|delta_d|`` for the top pair and ``max(gamma_i, gamma_j)``
    otherwise.
    """
    d = len(roots)
    st = family_structures(family)
    g = family.g_values(n)
    out = []
    with mp.workprec(precision):
        for i in range(d):
            for j in range(i + 1, d):
                if (i, j) == (d - 2, d - 1):
                    base = abs(st[d - 1].delta)
                else:
                    base = max(st[i].gamma, st[j].gamma)
                a_i, a_j = to_mpf(roots[i].midpoint), to_mpf(roots[j].midpoint)
                gap = abs(a_i - a_j)
                gap_g = abs(a_i - g[j])
                scale = to_mpf(base) ** n
                out.append(RootGap(i + 1, j + 1, gap, gap_g, base, gap / scale, gap_g / scale))
    return out
