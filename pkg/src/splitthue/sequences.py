"""Simple linear recurrence sequences and the growth hypotheses on them.

A sequence is given either by an integer recurrence

    G(n) = c_1 G(n-1) + ... + c_k G(n-k),   G(offset), ..., G(offset+k-1) given,

or by an explicit exponential sum ``G(n) = sum_i coeff_i * root_i**n`` with
rational coefficients and distinct rational roots.  The exponential-sum
form is exact all the way through the condition checker; the recurrence
form falls back to numerical roots of the characteristic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import mpmath
from mpmath import mp

from . import poly
from ._num import fmt, to_fraction, to_mpf
from .errors import (
    ComplexDominantRoot,
    NegativeDominantRoot,
    NoDominantRoot,
    NonIntegralValue,
    PrecisionInsufficient,
)

_INTEGRALITY_SAMPLE = 12


@dataclass(frozen=True)
class RecurrenceSpec:
    """Exact definition of one integer sequence ``G(n)``, ``n >= 0``.

    Use :meth:`recurrence`, :meth:`exponential` or :meth:`zero` rather than
    the raw constructor.
    """

    name: str = ""
    coefficients: tuple[int, ...] | None = None
    initial: tuple[int, ...] | None = None
    offset: int = 0
    terms: tuple[tuple[Fraction, Fraction], ...] | None = None

    def __post_init__(self):
        if (self.terms is None) == (self.coefficients is None):
            raise ValueError("give exactly one of recurrence coefficients or exponential-sum terms")
        if self.terms is not None:
            terms = tuple((Fraction(c), Fraction(r)) for c, r in self.terms if Fraction(c) != 0)
            roots = [r for _, r in terms]
            if len(set(roots)) != len(roots):
                raise ValueError(f"{self.name or 'sequence'}: exponential-sum roots must be distinct")
            if any(r == 0 for r in roots):
                raise ValueError(f"{self.name or 'sequence'}: root 0 is not allowed in an exponential sum")
            object.__setattr__(self, "terms", terms)
            for n in range(_INTEGRALITY_SAMPLE):
                eval_exact(self, n)
        else:
            coeffs = tuple(int(c) for c in self.coefficients)
            init = tuple(int(v) for v in (self.initial or ()))
            if len(coeffs) < 1:
                raise ValueError("recurrence order must be at least 1")
            if len(init) != len(coeffs):
                raise ValueError(
                    f"{self.name or 'sequence'}: {len(coeffs)} recurrence coefficients need "
                    f"{len(coeffs)} initial terms, got {len(init)}"
                )
            if self.offset < 0:
                raise ValueError("offset must be non-negative")
            object.__setattr__(self, "coefficients", coeffs)
            object.__setattr__(self, "initial", init)
            cp = characteristic_polynomial(self)
            if len(cp) > 2 and poly.discriminant(cp) == 0:
                raise ValueError(
                    f"{self.name or 'sequence'}: characteristic polynomial has a repeated root "
                    "(only simple recurrences are supported)"
                )

    @classmethod
    def recurrence(cls, coefficients, initial, name: str = "", offset: int = 0) -> "RecurrenceSpec":
        return cls(name=name, coefficients=tuple(coefficients), initial=tuple(initial), offset=offset)

    @classmethod
    def exponential(cls, terms, name: str = "") -> "RecurrenceSpec":
        return cls(name=name, terms=tuple((Fraction(c), Fraction(r)) for c, r in terms))

    @classmethod
    def zero(cls, name: str = "0") -> "RecurrenceSpec":
        return cls(name=name, terms=())

    @property
    def is_exponential(self) -> bool:
        return self.terms is not None

    @property
    def is_zero(self) -> bool:
        if self.terms is not None:
            return not self.terms
        return not any(self.initial)

    def __call__(self, n: int) -> int:
        return eval_exact(self, n)


def characteristic_polynomial(spec: RecurrenceSpec) -> list[int]:
    """Integer characteristic polynomial, ascending coefficients.

    For the exponential form this is ``prod (q_i x - p_i)`` over the roots
    ``p_i/q_i``, made primitive.
    """
    if spec.terms is not None:
        out = [1]
        for _, r in spec.terms:
            out = poly.mul(out, [-r.numerator, r.denominator])
        return poly.primitive(out)
    return [-c for c in reversed(spec.coefficients)] + [1]


def eval_exact(spec: RecurrenceSpec, n: int) -> int:
    """``G(n)`` as an exact integer."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if spec.terms is not None:
        v = sum((c * r**n for c, r in spec.terms), Fraction(0))
        if v.denominator != 1:
            raise NonIntegralValue(f"{spec.name or 'sequence'}({n}) = {v} is not an integer")
        return v.numerator
    coeffs, k, o = spec.coefficients, len(spec.coefficients), spec.offset
    window = list(spec.initial)
    if n >= o:
        if n < o + k:
            return window[n - o]
        for _ in range(n - o - k + 1):
            nxt = sum(c * window[-1 - i] for i, c in enumerate(coeffs))
            window = window[1:] + [nxt]
        return window[-1]
    # run the recurrence backwards from G(offset)
    ck = coeffs[-1]
    for _ in range(o - n):
        if ck == 0:
            raise NonIntegralValue(f"{spec.name or 'sequence'}: cannot run backwards (c_k = 0)")
        num = window[k - 1] - sum(coeffs[i - 1] * window[k - 1 - i] for i in range(1, k))
        q, r = divmod(num, ck)
        if r:
            raise NonIntegralValue(f"{spec.name or 'sequence'}: backward extension to n={n} is not integral")
        window = [q] + window[:-1]
    return window[0]


def values(spec: RecurrenceSpec, ns) -> list[int]:
    return [eval_exact(spec, n) for n in ns]


def subsequence(spec: RecurrenceSpec, parity: int, name: str | None = None) -> RecurrenceSpec:
    """The reindexed sequence ``n -> G(2n + parity)``.

    This is how a sequence with a negative dominant root is turned into two
    sequences with a positive one.
    """
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    name = name if name is not None else f"{spec.name}[2n+{parity}]"
    if spec.terms is not None:
        merged: dict[Fraction, Fraction] = {}
        for c, r in spec.terms:
            merged[r * r] = merged.get(r * r, Fraction(0)) + c * r**parity
        return RecurrenceSpec.exponential([(c, r) for r, c in merged.items() if c != 0], name=name)
    p = characteristic_polynomial(spec)
    k = len(p) - 1
    even = poly.mul(p, poly.compose_neg(p))
    q = [even[2 * i] for i in range(k + 1)]
    if q[-1] < 0:
        q = [-c for c in q]
    q = poly.squarefree_part(q)
    if q[-1] != 1:
        raise ArithmeticError("squared characteristic polynomial is not monic")
    order = len(q) - 1
    coeffs = [-q[order - i] for i in range(1, order + 1)]
    initial = [eval_exact(spec, 2 * m + parity) for m in range(order)]
    return RecurrenceSpec.recurrence(coeffs, initial, name=name)


# -- dominant root structure ---------------------------------------------


@dataclass(frozen=True)
class DominantStructure:
    """Dominant and second dominant root data of one sequence.

    Numeric fields are :class:`~fractions.Fraction` when the sequence was
    given as an exponential sum (exact) and mpmath reals otherwise.
    ``enclosures`` maps ``gamma``, ``g``, ``delta_abs``, ``h`` and
    ``radius`` to rational ``(lo, hi)`` enclosures used by the condition
    checker.
    """

    gamma: object
    g: object
    delta: object | None
    h: object | None
    remaining_spectral_radius: object
    exact: bool
    enclosures: dict = field(default_factory=dict, compare=False)

    @property
    def is_zero(self) -> bool:
        return self.gamma == 0


def _exact_pair(x) -> tuple[Fraction, Fraction]:
    x = Fraction(x)
    return (x, x)


def dominant_structure(spec: RecurrenceSpec, precision: int = 128) -> DominantStructure:
    if spec.is_zero:
        z = Fraction(0)
        return DominantStructure(z, z, None, None, z, True,
                                 {"gamma": _exact_pair(0), "g": _exact_pair(0), "radius": _exact_pair(0)})
    if spec.terms is not None:
        return _structure_exact(spec)
    return _structure_numeric(spec, precision)


def _structure_exact(spec: RecurrenceSpec) -> DominantStructure:
    terms = sorted(spec.terms, key=lambda t: -abs(t[1]))
    (g, gamma) = terms[0]
    if len(terms) > 1 and abs(terms[1][1]) == abs(gamma):
        raise NoDominantRoot(f"{spec.name}: roots {fmt(gamma)} and {fmt(terms[1][1])} have equal modulus")
    if gamma < 0:
        raise NegativeDominantRoot(
            f"{spec.name}: dominant root {fmt(gamma)} is negative; use subsequence(spec, 0) and "
            "subsequence(spec, 1) to treat even and odd indices separately"
        )
    delta = h = None
    rest = terms[1:]
    if rest and (len(rest) == 1 or abs(rest[1][1]) < abs(rest[0][1])):
        h, delta = rest[0]
        rest = rest[1:]
    radius = abs(rest[0][1]) if rest else Fraction(0)
    enc = {"gamma": _exact_pair(gamma), "g": _exact_pair(g), "radius": _exact_pair(radius)}
    if delta is not None:
        enc["delta_abs"] = _exact_pair(abs(delta))
        enc["h"] = _exact_pair(h)
    return DominantStructure(gamma, g, delta, h, radius, True, enc)


def _numeric_pair(x, prec: int) -> tuple[Fraction, Fraction]:
    """Heuristic enclosure ``x +- 2^(-prec/2) (1 + |x|)`` for a numerically computed value."""
    c = to_fraction(x)
    eps = Fraction(1, 2 ** (prec // 2)) * (1 + abs(c))
    return (c - eps, c + eps)


def _certified_real_pair(cp, x, prec: int) -> tuple[Fraction, Fraction]:
    """Rational bracket around a real root ``x`` of ``cp``, certified by an exact sign change."""
    c = to_fraction(x)
    if poly.sign_at(cp, c) == 0:
        return (c, c)
    eps = Fraction(1, 2 ** (prec // 2)) * (1 + abs(c))
    for _ in range(8):
        lo, hi = c - eps, c + eps
        if poly.sign_at(cp, lo) * poly.sign_at(cp, hi) < 0:
            return (lo, hi)
        eps *= 4
    for lo, hi in poly.isolate_real_roots(cp, prec // 2):
        if lo - eps <= c <= hi + eps:
            return (lo, hi)
    raise PrecisionInsufficient(f"could not certify real root near {fmt(x)}")


def _structure_numeric(spec: RecurrenceSpec, precision: int) -> DominantStructure:
    cp = characteristic_polynomial(spec)
    k = len(cp) - 1
    with mp.workprec(precision + 32):
        roots = mpmath.polyroots(cp[::-1], maxsteps=400, extraprec=precision + 64)
        roots = [mp.mpc(r) for r in roots]
        V = mp.matrix(k, k)
        for m in range(k):
            for c, r in enumerate(roots):
                V[m, c] = r ** (spec.offset + m)
        rhs = mp.matrix([mp.mpf(v) for v in spec.initial])
        coeffs = mp.lu_solve(V, rhs)
        tol = mp.mpf(2) ** (-(precision // 2))
        scale = max([abs(coeffs[c]) for c in range(k)] + [mp.mpf(1)])
        pairs = [(roots[c], coeffs[c]) for c in range(k) if abs(coeffs[c]) > tol * scale]
        if not pairs:
            raise NoDominantRoot(f"{spec.name}: all closed-form coefficients vanish numerically")
        pairs.sort(key=lambda t: -abs(t[0]))

        def tied(a, b):
            return abs(abs(a) - abs(b)) <= tol * (1 + abs(a))

        def real(z):
            return abs(mp.im(z)) <= tol * (1 + abs(z))

        gamma, g = pairs[0]
        if len(pairs) > 1 and tied(gamma, pairs[1][0]):
            if real(gamma):
                raise NoDominantRoot(f"{spec.name}: no strictly dominant root (tie at modulus {fmt(abs(gamma))})")
            raise ComplexDominantRoot(f"{spec.name}: dominant roots form a complex pair")
        if not real(gamma):
            raise ComplexDominantRoot(f"{spec.name}: dominant root {gamma} is not real")
        gamma, g = mp.re(gamma), mp.re(g)
        if gamma <= 0:
            if gamma < 0:
                raise NegativeDominantRoot(
                    f"{spec.name}: dominant root {fmt(gamma)} is negative; use subsequence(spec, 0) and "
                    "subsequence(spec, 1) to treat even and odd indices separately"
                )
            raise NoDominantRoot(f"{spec.name}: dominant root is zero but the sequence is not identically zero")
        enc = {"gamma": _certified_real_pair(cp, gamma, precision), "g": _numeric_pair(g, precision)}
        delta = h = None
        rest = pairs[1:]
        if rest and (len(rest) == 1 or not tied(rest[0][0], rest[1][0])) and real(rest[0][0]):
            delta, h = mp.re(rest[0][0]), mp.re(rest[0][1])
            rest = rest[1:]
            lo, hi = _certified_real_pair(cp, delta, precision)
            enc["delta_abs"] = (lo, hi) if lo >= 0 else (-hi, -lo)
            enc["h"] = _numeric_pair(h, precision)
        radius = abs(rest[0][0]) if rest else mp.mpf(0)
        enc["radius"] = _numeric_pair(radius, precision)
        return DominantStructure(gamma, g, delta, h, radius, False, enc)


# -- Growth conditions ---------------------------------------------------


def _less(a, b):
    """Strict ``a < b`` on rational intervals: True, False, or None if undecided."""
    if a[1] < b[0]:
        return True
    if a[0] >= b[1]:
        return False
    return None


def _equal(a, b, exact: bool, tol: Fraction):
    if exact:
        return a[0] == b[0]
    ma, mb = (a[0] + a[1]) / 2, (b[0] + b[1]) / 2
    return abs(ma - mb) <= tol * (1 + abs(ma))


def _mul(a, b):
    return (a[0] * b[0], a[1] * b[1])  # non-negative intervals only


@dataclass(frozen=True)
class FamilyConditionsReport:
    degree: int
    condition1: bool
    condition2: bool
    condition3: bool
    details: tuple[str, ...]
    witnesses: dict
    precision: int

    @property
    def passed(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "condition1": self.condition1,
            "condition2": self.condition2,
            "condition3": self.condition3,
            "passed": self.passed,
            "details": list(self.details),
            "witnesses": self.witnesses,
            "precision": self.precision,
        }


def _specs(family) -> list[RecurrenceSpec]:
    return list(getattr(family, "sequences", family))


def family_structures(family, precision: int = 128) -> list[DominantStructure]:
    return [dominant_structure(s, precision) for s in _specs(family)]


def check_theorem_conditions(family, precision: int = 128) -> FamilyConditionsReport:
    """Certify the three growth conditions on a family of ``d >= 4`` sequences.

    Strict inequalities are decided on rational enclosures; an overlap
    raises :class:`PrecisionInsufficient` instead of guessing.
    """
    specs = _specs(family)
    d = len(specs)
    if d < 4:
        raise ValueError(f"the condition checker needs d >= 4 sequences, got {d}")
    details: list[str] = []
    try:
        st = family_structures(specs, precision)
    except (NoDominantRoot, ComplexDominantRoot, NegativeDominantRoot) as exc:
        return FamilyConditionsReport(d, False, False, False, (f"condition (1): {exc}",), {}, precision)

    tol = Fraction(1, 2 ** (precision // 2))

    def decide(what, verdict, a=None, b=None):
        if verdict is None and a is not None and _equal(a, b, False, tol):
            verdict = False  # numerically equal: the strict inequality fails
        if verdict is None:
            raise PrecisionInsufficient(f"cannot decide {what} at {precision} bits")
        if not verdict:
            details.append(f"fails: {what}")
        return verdict

    names = [s.name or f"G{i + 1}" for i, s in enumerate(specs)]
    gam = [s.enclosures["gamma"] for s in st]

    # (1) 0 <= gamma_1 < ... < gamma_{d-2} < gamma_{d-1} = gamma_d
    c1 = True
    for i in range(d - 2):
        c1 &= decide(f"gamma_{i + 1} < gamma_{i + 2}", _less(gam[i], gam[i + 1]), gam[i], gam[i + 1])
    both_exact = st[d - 2].exact and st[d - 1].exact
    eq = _equal(gam[d - 2], gam[d - 1], both_exact, tol)
    if not eq:
        details.append(f"fails: gamma_{d - 1} = gamma_{d}")
    c1 &= eq

    # (2) g_{d-1} = g_d
    c2 = _equal(st[d - 2].enclosures["g"], st[d - 1].enclosures["g"], both_exact, tol)
    if not c2:
        details.append(f"fails: g_{d - 1} = g_{d}")

    # (3) |delta_{d-1}| < |delta_d| < gamma_{d-2} and gamma_{d-2}^2 < gamma |delta_d|
    c3 = True
    dd = st[d - 1].enclosures.get("delta_abs")
    dd1 = st[d - 2].enclosures.get("delta_abs")
    if dd is None:
        details.append(f"fails: {names[d - 1]} has no strictly second dominant root")
        c3 = False
    else:
        if dd1 is None:
            details.append(f"note: {names[d - 2]} has no second dominant root; |delta_{d - 1}| taken as 0")
            dd1 = (Fraction(0), Fraction(0))
        c3 &= decide(f"|delta_{d - 1}| < |delta_{d}|", _less(dd1, dd), dd1, dd)
        c3 &= decide(f"|delta_{d}| < gamma_{d - 2}", _less(dd, gam[d - 3]), dd, gam[d - 3])
        c3 &= decide(f"gamma_{d - 2}^2 < gamma |delta_{d}|",
                     _less(_mul(gam[d - 3], gam[d - 3]), _mul(gam[d - 1], dd)),
                     _mul(gam[d - 3], gam[d - 3]), _mul(gam[d - 1], dd))

    def val(x):
        return None if x is None else fmt(x)

    witnesses = {
        "gamma": [val(s.gamma) for s in st],
        "g": [val(s.g) for s in st],
        "delta": [val(s.delta) for s in st],
        "h": [val(s.h) for s in st],
    }
    if dd is not None:
        witnesses["gamma_dm2_squared"] = fmt(_exact_or_mid(_mul(gam[d - 3], gam[d - 3])))
        witnesses["gamma_times_abs_delta_d"] = fmt(_exact_or_mid(_mul(gam[d - 1], dd)))
    return FamilyConditionsReport(d, bool(c1), bool(c2), bool(c3), tuple(details), witnesses, precision)


def _exact_or_mid(iv):
    return iv[0] if iv[0] == iv[1] else to_mpf((iv[0] + iv[1]) / 2)


class GrowthGap(NamedTuple):
    value: int
    predicted_base: object


def growth_gap(family, i: int, j: int, n: int, precision: int = 64) -> GrowthGap:
    """``|G_i(n) - G_j(n)|`` (1-based indices) and its predicted growth base.

    The base is ``|delta_d|`` for the top pair ``{d-1, d}`` and
    ``max(gamma_i, gamma_j)`` otherwise.
    """
    specs = _specs(family)
    d = len(specs)
    if i == j:
        raise ValueError("growth_gap needs two distinct indices")
    i, j = sorted((i, j))
    if not (1 <= i < j <= d):
        raise ValueError(f"indices must lie in 1..{d}")
    value = abs(eval_exact(specs[i - 1], n) - eval_exact(specs[j - 1], n))
    if (i, j) == (d - 1, d):
        delta = dominant_structure(specs[d - 1], precision).delta
        if delta is None:
            raise NoDominantRoot(f"{specs[d - 1].name}: no second dominant root")
        base = abs(delta)
    else:
        base = max(dominant_structure(specs[i - 1], precision).gamma,
                   dominant_structure(specs[j - 1], precision).gamma)
    return GrowthGap(value, base)


def gamma_eps(structures: Sequence[DominantStructure], i: int):
    """Error exponent base for root ``i`` (1-based).

    ``gamma_i^(i-1) * prod_{k=i+1}^{d-2} gamma_k * gamma^2`` for
    ``i <= d-2`` and ``gamma^(d-2) |delta_d|`` for ``i`` in ``{d-1, d}``.
    """
    d = len(structures)
    gam = [s.gamma for s in structures]
    top = gam[d - 1]
    if i in (d - 1, d):
        delta = structures[d - 1].delta
        if delta is None:
            raise NoDominantRoot("last sequence has no second dominant root")
        return top ** (d - 2) * abs(delta)
    out = gam[i - 1] ** (i - 1) if i > 1 else 1
    for k in range(i + 1, d - 1):
        out *= gam[k - 1]
    return out * top * top
