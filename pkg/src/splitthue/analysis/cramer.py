"""Solution vectors ``beta_i = x - alpha_i y`` and the Cramer system built
from the rows ``i != j`` of the log matrix."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .._num import to_fraction, to_mpf
from ..certified_roots import CertifiedRoot
from ..errors import SingularSystem
from ..eta_system import EtaSystem, build_for, determinant
from ..family import SolutionRecord, ThueFamily
from ..sequences import family_structures, gamma_eps
from .fitting import AsymptoticFit, fit_asymptotics


@dataclass(frozen=True)
class BetaVector:
    """``beta`` for one solution; ``type_j`` is 1-based."""

    record: SolutionRecord
    x: object
    y: int
    beta: tuple
    type_j: int
    product: object
    product_ok: bool
    separation_ok: bool
    upper_ok: bool | None
    precision: int


def _betas(x, y, roots, precision):
    with mp.workprec(precision + 32):
        if isinstance(x, (int, Fraction)):
            return tuple(to_mpf(Fraction(x) - r.midpoint * y) for r in roots)
        return tuple(mp.mpf(x) - to_mpf(r.midpoint) * y for r in roots)


def beta_vector(record: SolutionRecord, roots: list[CertifiedRoot], precision: int = 256,
                x=None) -> BetaVector:
    """``beta`` for ``record`` (or for a real ``x`` replacing ``record.x``).

    Checks the product identity, the separation inequality
    ``2|beta_i| >= |y| |alpha_j - alpha_i|`` and the upper bound
    ``|beta_j| <= prod_{i != j} 2 / (|y| |alpha_j - alpha_i|)``.
    """
    xv = record.x if x is None else x
    y = record.y
    d = len(roots)
    beta = _betas(xv, y, roots, precision)
    with mp.workprec(precision + 32):
        mags = [abs(b) for b in beta]
        j = min(range(d), key=lambda i: mags[i])
        prod = mpmath.fprod(beta)
        tol = mp.mpf(2) ** (-precision + 10)
        product_ok = abs(prod - record.value) <= tol * max(1, abs(prod))
        alphas = [to_mpf(r.midpoint) for r in roots]
        sep = all(2 * mags[i] >= abs(y) * abs(alphas[j] - alphas[i]) * (1 - tol) for i in range(d) if i != j)
        upper = None
        if y != 0:
            bound = mpmath.fprod(2 / (abs(y) * abs(alphas[j] - alphas[i])) for i in range(d) if i != j)
            upper = bool(mags[j] <= bound * (1 + tol))
    return BetaVector(record, xv, y, beta, j + 1, prod, bool(product_ok), bool(sep), upper, precision)


def near_solution(roots: list[CertifiedRoot], y: int, j: int, value: int = 1, precision: int = 256) -> Fraction:
    """Rational ``x`` near ``alpha_j y`` with ``prod_i (x - alpha_i y) = value``
    to relative accuracy ``2^-(precision + 40)`` (``alpha_i`` = root midpoints).

    These synthetic points behave like type-``j`` solutions with any ``|y|``
    and are used where no integer solutions are available.  Newton runs on
    the offset ``t = x - alpha_j y`` so the tiny factor keeps full accuracy.
    """
    A = [r.midpoint * y for r in roots]
    aj = A[j - 1]
    gaps = [aj - a for i, a in enumerate(A) if i != j - 1]
    with mp.workprec(precision + 64):
        g = [to_mpf(v) for v in gaps]
        t = mp.mpf(value) / mpmath.fprod(g)
        for _ in range(200):
            fac = [t] + [v + t for v in g]
            pr = mpmath.fprod(fac)
            step = (pr - value) / (pr * mpmath.fsum(1 / v for v in fac))
            t -= step
            if abs(step) <= abs(t) * mp.mpf(2) ** (-(precision + 40)):
                break
        return aj + to_fraction(t)


@dataclass(frozen=True)
class LogBetaReport:
    type_j: int
    discrepancies: tuple
    envelope: object
    b_over_I: tuple
    residual: object


def _rows_without(system: EtaSystem, j: int):
    d = system.d
    return [i for i in range(d) if i != j - 1]


def log_beta_two_ways(vector: BetaVector, system: EtaSystem, gamma_eps_value=None) -> LogBetaReport:
    """Compare ``log|beta_i|`` with ``log|y| + log|eta_j^(i)|`` and solve
    ``sum_k (b_k/I) log|eta_k^(i)| = log|beta_i|`` (rows ``i != j``)."""
    if vector.y == 0:
        raise ValueError("the two-way representation needs y != 0")
    j = vector.type_j
    d = system.d
    rows = _rows_without(system, j)
    with mp.workprec(system.precision + 32):
        ly = mpmath.log(abs(mp.mpf(vector.y)))
        disc = tuple(mpmath.log(abs(vector.beta[i])) - ly - system.log_abs[i][j - 1] for i in rows)
        env = None
        if gamma_eps_value is not None:
            env = 1 / (abs(mp.mpf(vector.y)) * to_mpf(gamma_eps_value) ** system.n)
        M = mp.matrix([[system.log_abs[i][k] for k in range(d - 1)] for i in rows])
        rhs = mp.matrix([mpmath.log(abs(vector.beta[i])) for i in rows])
        if determinant([[system.log_abs[i][k] for k in range(d - 1)] for i in rows], system.precision) == 0:
            raise SingularSystem(f"type {j}: log matrix with row {j} removed is singular")
        sol = mp.lu_solve(M, rhs)
        res = mp.norm(M * sol - rhs)
        return LogBetaReport(j, disc, env, tuple(sol[k] for k in range(d - 1)), res)


# -- u/v determinants ----------------------------------------------------


@dataclass(frozen=True)
class CramerSystem:
    n: int
    j: int
    R: object
    u: tuple
    v: tuple
    combined_u: object
    combined_v: object
    structural_zero: object
    scale: object


def cramer_uv(system: EtaSystem, j: int) -> CramerSystem:
    """All ``u_k`` and ``v_k`` for type ``j`` (1-based).

    ``u_k`` replaces column ``k`` of the rows-``i != j`` log matrix by ones,
    ``v_k`` by the column ``log|eta_j^(i)|``.  For ``j <= d-2`` the combined
    quantities are ``u_{d-1}, v_{d-1}``; for ``j`` in ``{d-1, d}`` they are
    ``u_{d-2} - u_{d-3}`` and ``v_{d-2} - v_{d-3}``.  ``structural_zero``
    is the largest ``|v|`` that must vanish, relative to ``max |u_k|``.
    """
    d = system.d
    if not 1 <= j <= d:
        raise ValueError(f"j must lie in 1..{d}")
    if d < 4:
        raise ValueError("the Cramer analysis needs d >= 4")
    rows = _rows_without(system, j)
    p = system.precision
    base = [[system.log_abs[i][k] for k in range(d - 1)] for i in rows]
    with mp.workprec(p + 32):
        R = determinant(base, p)
        u, v = [], []
        for k in range(d - 1):
            mu = [r[:k] + [mp.mpf(1)] + r[k + 1:] for r in base]
            mv = [r[:k] + [system.log_abs[i][j - 1]] + r[k + 1:] for r, i in zip(base, rows)]
            u.append(determinant(mu, p))
            v.append(determinant(mv, p))
        if j <= d - 2:
            cu, cv = u[d - 2], v[d - 2]
            zeros = [v[k] for k in range(d - 1) if k != j - 1]
        else:
            cu, cv = u[d - 3] - u[d - 4], v[d - 3] - v[d - 4]
            zeros = [cv] + ([v[k] for k in range(d - 1) if k != j - 1] if j == d - 1 else [])
        scale = max(abs(x) for x in u)
        sz = max(abs(z) for z in zeros) / scale
        return CramerSystem(system.n, j, R, tuple(u), tuple(v), cu, cv, sz, scale)


@dataclass(frozen=True)
class UAsymptotics:
    j: int
    fit: AsymptoticFit
    predicted_a: int
    predicted_r: object
    samples: tuple

    def as_dict(self) -> dict:
        return {"j": self.j, "fit": self.fit.as_dict(), "predicted_a": self.predicted_a,
                "predicted_r": float(self.predicted_r),
                "samples": [[n, float(q)] for n, q in self.samples]}


def predicted_u_base(structures, j: int):
    d = len(structures)
    gamma = structures[d - 1].gamma
    if j <= d - 2:
        return abs(structures[d - 1].delta) / gamma
    return structures[d - 3].gamma / gamma


def u_asymptotics(family: ThueFamily, n_range, j: int, precision: int = 256,
                  check_stability: bool = True) -> UAsymptotics:
    """Fit ``|u_{d-1}|`` (``j <= d-2``) or ``|u_{d-2} - u_{d-3}|`` over ``n_range``."""
    d = family.degree
    st = family_structures(family)
    samples = []
    for n in n_range:
        _, _, system = build_for(family, n, precision)
        samples.append((n, abs(cramer_uv(system, j).combined_u)))
    fit = fit_asymptotics(samples, "full", check_stability)
    return UAsymptotics(j, fit, d - 3, predicted_u_base(st, j), tuple(samples))


@dataclass(frozen=True)
class LogYLowerBound:
    n: int
    j: int
    poly_exponent: int
    base_good_j: object
    base_any_j: object
    envelope_good_j: float
    envelope_any_j: float
    fitted_envelope: float | None

    def as_dict(self) -> dict:
        return {"n": self.n, "j": self.j, "poly_exponent": self.poly_exponent,
                "base_good_j": float(self.base_good_j), "base_any_j": float(self.base_any_j),
                "envelope_good_j": self.envelope_good_j, "envelope_any_j": self.envelope_any_j,
                "fitted_envelope": self.fitted_envelope}


def lower_bound_log_y(family: ThueFamily, n: int, j: int, u_fit: AsymptoticFit | None = None,
                      scale: float = 1.0) -> LogYLowerBound:
    """Envelopes ``n^-(d-4) (gamma/|delta_d|)^n`` and ``n^-(d-4) (gamma/gamma_{d-2})^n``.

    The second holds for every type ``j``.  With a fitted ``u`` the envelope
    ``scale / |u(n)|`` is reported too, ``scale`` standing in for ``R/I``.
    """
    st = family_structures(family)
    d = len(st)
    gamma = st[d - 1].gamma
    good = gamma / abs(st[d - 1].delta)
    anyj = gamma / st[d - 3].gamma
    e = -(d - 4)
    fitted = None
    if u_fit is not None:
        fitted = float(scale / mpmath.exp(u_fit.log_value(n)))
    return LogYLowerBound(n, j, e, good, anyj,
                          float(mp.mpf(n) ** e * to_mpf(good) ** n),
                          float(mp.mpf(n) ** e * to_mpf(anyj) ** n), fitted)


def gamma_eps_for(family: ThueFamily, j: int):
    return gamma_eps(family_structures(family), j)

