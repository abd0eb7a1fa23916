"""Siegel's identity, the S-unit equation and the linear form in two logarithms."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from .._num import to_fraction, to_mpf
from ..errors import BoundViolated, IndexChoiceInvalid
from ..sequences import gamma_eps
from .cramer import BetaVector
from .heights import height_product_bound, height_sum_bound, modified_height, weil_height


def _alphas(roots):
    return [to_mpf(r.midpoint) for r in roots]


def siegel_residual(roots, vector: BetaVector, indices) -> object:
    """Relative residual of
    ``(a3 - a2) b1 + (a1 - a3) b2 + (a2 - a1) b3 = 0`` for 1-based ``(i1, i2, i3)``.

    The sum is formed exactly from the root midpoints and the computed
    ``beta`` values, so the result measures the rounding in ``beta`` only.
    """
    i1, i2, i3 = indices
    if len({i1, i2, i3}) != 3:
        raise IndexChoiceInvalid("Siegel's identity needs three distinct indices")
    a = [r.midpoint for r in roots]
    b = [to_fraction(v) for v in vector.beta]
    t = [(a[i3 - 1] - a[i2 - 1]) * b[i1 - 1],
         (a[i1 - 1] - a[i3 - 1]) * b[i2 - 1],
         (a[i2 - 1] - a[i1 - 1]) * b[i3 - 1]]
    s = sum(t)
    m = max(abs(v) for v in t)
    with mp.workprec(vector.precision + 32):
        return to_mpf(abs(s) / m) if m else to_mpf(abs(s))


def choose_indices(j: int, d: int, override=None) -> tuple[int, int]:
    """``(k, l)`` for type ``j``: ``(1, 2)`` if ``j`` is in ``{d-1, d}``,
    ``(d, d-1)`` otherwise."""
    if override is not None:
        k, l = override
        if len({j, k, l}) != 3 or not all(1 <= v <= d for v in (k, l)):
            raise IndexChoiceInvalid(f"indices (j, k, l) = ({j}, {k}, {l}) must be distinct and in 1..{d}")
        return k, l
    if j in (d - 1, d):
        k, l = 1, 2
        if l >= d - 1:
            raise IndexChoiceInvalid(f"d = {d}: no two indices outside {{d-1, d}} for j = {j}")
        return k, l
    return d, d - 1


@dataclass(frozen=True)
class LinearFormEvaluation:
    n: int
    indices: tuple
    lam: object
    lhs: object
    rhs: object
    agreement: object
    envelope: object
    heights: tuple
    modified_heights: tuple
    field_degree: int
    lambda_zero: bool
    precision: int
    baker_constant: object = None
    baker_lower: object = None

    def as_dict(self) -> dict:
        f = lambda v: None if v is None else float(v)  # noqa: E731
        return {
            "n": self.n, "indices": list(self.indices), "lambda": f(self.lam),
            "log_abs_lambda": None if self.lambda_zero else float(mpmath.log(abs(self.lam))),
            "agreement": f(self.agreement), "envelope": f(self.envelope),
            "heights": [f(h) for h in self.heights], "modified_heights": [f(h) for h in self.modified_heights],
            "field_degree": self.field_degree, "lambda_zero": self.lambda_zero,
            "baker_constant": f(self.baker_constant), "baker_lower": f(self.baker_lower),
        }


def s_unit_form(roots, vector: BetaVector, form, structures=None, indices=None,
                field_degree: int | None = None) -> LinearFormEvaluation:
    """Both sides of the S-unit equation and the linear form
    ``log|b_l/b_k| + log|(a_j - a_k)/(a_j - a_l)|``.

    ``form`` supplies ``f_n(x, 1)`` for the height of the roots.  With
    ``structures`` the envelope
    ``max(|delta_d|, gamma_2)^n / (|y|^2 gamma_eps(j)^n gamma^(2n))`` is
    attached.  Argument heights are upper bounds from the sum/product rules.
    """
    if abs(vector.y) < 2:
        raise ValueError("the S-unit form needs |y| >= 2")
    d = len(roots)
    j = vector.type_j
    k, l = choose_indices(j, d, indices)
    D = field_degree if field_degree is not None else d
    p = vector.precision
    with mp.workprec(p + 32):
        a = _alphas(roots)
        b = vector.beta
        aj, ak, al = a[j - 1], a[k - 1], a[l - 1]
        bj, bk, bl = b[j - 1], b[k - 1], b[l - 1]
        lhs = (al - ak) / (aj - al) * bj / bk + 1
        rhs = (aj - ak) / (aj - al) * bl / bk
        agreement = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
        alpha1 = bl / bk
        alpha2 = (aj - ak) / (aj - al)
        lam = mpmath.log(abs(alpha1)) + mpmath.log(abs(alpha2))
        zero = abs(lam) < mp.mpf(2) ** (-p + 40)
        env = None
        if structures is not None:
            st = structures
            n = form.n
            top = max(abs(to_mpf(st[d - 1].delta)), to_mpf(st[1].gamma))
            env = top**n / (mp.mpf(vector.y) ** 2 * to_mpf(gamma_eps(st, j)) ** n * to_mpf(st[d - 1].gamma) ** (2 * n))
        h_alpha = weil_height(form.poly_x, p)
        hx = mpmath.log(max(1, abs(to_mpf(vector.x))))
        hy = mpmath.log(max(1, abs(mp.mpf(vector.y))))
        h_beta = height_sum_bound(hx, height_product_bound(h_alpha, hy))
        h1 = height_product_bound(h_beta, h_beta)
        h_diff = height_sum_bound(h_alpha, h_alpha)
        h2 = height_product_bound(h_diff, h_diff)
        mh = (modified_height(h1, mpmath.log(abs(alpha1)), D), modified_height(h2, mpmath.log(abs(alpha2)), D))
    return LinearFormEvaluation(form.n, (j, k, l), lam, lhs, rhs, agreement, env, (h1, h2), mh, D,
                                bool(zero), p)


def baker_lower_bound(ev: LinearFormEvaluation, baker_c) -> LinearFormEvaluation:
    """Attach ``-c h'(alpha_1) h'(alpha_2)`` and check ``log|Lambda|`` exceeds it.

    The coefficient vector is ``(1 : 1)``, whose contribution is taken as 1.
    """
    if ev.lambda_zero:
        raise BoundViolated(f"n={ev.n}: linear form vanishes to working precision")
    with mp.workprec(ev.precision):
        bound = -mp.mpf(baker_c) * ev.modified_heights[0] * ev.modified_heights[1]
        if not mpmath.log(abs(ev.lam)) > bound:
            raise BoundViolated(f"n={ev.n}: log|Lambda| = {mpmath.nstr(mpmath.log(abs(ev.lam)), 8)} "
                                f"is not above {mpmath.nstr(bound, 8)}")
    return LinearFormEvaluation(**{**ev.__dict__, "baker_constant": baker_c, "baker_lower": bound})


def linear_form_at(family, n: int, y: int, j: int, precision: int = 256, x=None, value: int = 1,
                   indices=None, field_degree: int | None = None) -> LinearFormEvaluation:
    """Evaluate the linear form for a solution (``x`` given) or a synthetic
    type-``j`` near-solution.  A vanishing ``Lambda`` triggers one rerun at
    doubled precision; only if it still vanishes is it reported as such."""
    from ..eta_system import build_for
    from ..family import SolutionRecord
    from ..sequences import family_structures
    from .cramer import beta_vector, near_solution

    st = family_structures(family)
    ev = None
    for p in (precision, 2 * precision):
        form, roots, _ = build_for(family, n, p)
        xv = near_solution(roots, y, j, value, p) if x is None else x
        rec = SolutionRecord(n, x if isinstance(x, int) else 0, y, value)
        vec = beta_vector(rec, roots, p, x=xv)
        ev = s_unit_form(roots, vec, form, st, indices, field_degree)
        if not ev.lambda_zero:
            break
    return ev
