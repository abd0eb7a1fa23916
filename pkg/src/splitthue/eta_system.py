"""The unit grid ``eta_j^(i) = alpha_i - G_j(n)`` and what is built on it.

Indices in the public API are 1-based (``i, j, k`` as in the usual
notation); matrices are stored 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mp

from . import poly
from ._num import to_mpf
from .certified_roots import CertifiedRoot, correction_denominators, isolate_roots
from .errors import PrecisionInsufficient, ZeroDiscriminant
from .family import FormInstance, ThueFamily, instantiate

DEFAULT_POHST_C = 0.01


@dataclass(frozen=True)
class EtaSystem:
    n: int
    d: int
    precision: int
    eta: tuple
    log_abs: tuple
    row_sums: tuple
    classification: tuple
    sign_pattern_ok: bool
    roots: tuple

    def entry(self, i: int, j: int):
        return self.eta[i - 1][j - 1]

    def log_entry(self, i: int, j: int):
        return self.log_abs[i - 1][j - 1]

    def B(self, k: int) -> "LogMatrix":
        """Top-left ``k x k`` block of the log matrix."""
        if not 1 <= k <= self.d:
            raise ValueError(f"k must lie in 1..{self.d}")
        return LogMatrix(k, tuple(tuple(self.log_abs[i][:k]) for i in range(k)), None)

    def max_row_sum(self):
        return max(abs(s) for s in self.row_sums)


@dataclass(frozen=True)
class LogMatrix:
    k: int
    entries: tuple
    excluded_row: int | None = None


def classify_entry(i: int, j: int, d: int) -> str:
    if i == j:
        return "diagonal"
    if {i, j} == {d - 1, d}:
        return "top_pair"
    return "generic"


def roots_width_bits(form: FormInstance, precision: int) -> int:
    """Root width needed for ``log|eta|`` to carry ``precision`` good bits."""
    pmax = max(abs(v) for v in correction_denominators(form.g_values))
    return precision + 2 * pmax.bit_length() + 16


def build_eta(roots: list[CertifiedRoot], form: FormInstance, precision: int = 256) -> EtaSystem:
    d = form.d
    g = form.g_values
    with mp.workprec(precision + 32):
        eta, logs, sums, cls = [], [], [], []
        signs_ok = True
        for i in range(d):
            # subtract exactly first: alpha_i and G_i share their leading bits
            row = [to_mpf(roots[i].midpoint - g[j]) for j in range(d)]
            diag = abs(row[i])
            if diag == 0 or to_mpf(roots[i].width) >= diag:
                raise PrecisionInsufficient(f"n={form.n}: root {i + 1} width is not below |eta_{i + 1}^({i + 1})|")
            lrow = [mpmath.log(abs(v)) for v in row]
            eta.append(tuple(row))
            logs.append(tuple(lrow))
            sums.append(mpmath.fsum(lrow))
            cls.append(tuple(classify_entry(i + 1, j + 1, d) for j in range(d)))
            for j in range(d):
                if j != i and (row[j] > 0) != (g[i] > g[j]):
                    signs_ok = False
    tol = d * mp.mpf(2) ** (-precision + 10)
    bad = [s for s in sums if abs(s) > tol]
    if bad:
        raise PrecisionInsufficient(f"n={form.n}: row sums of log|eta| reach {mpmath.nstr(max(abs(s) for s in bad), 5)}")
    return EtaSystem(form.n, d, precision, tuple(eta), tuple(logs), tuple(sums), tuple(cls), signs_ok, tuple(roots))


def build_for(family: ThueFamily, n: int, precision: int = 256):
    """Instantiate, isolate roots at a sufficient width and build the grid."""
    form = instantiate(family, n)
    roots = isolate_roots(form, roots_width_bits(form, precision))
    return form, roots, build_eta(roots, form, precision)


# -- linear algebra -------------------------------------------------------


def _det_once(rows, prec: int):
    with mp.workprec(prec):
        a = [[mp.mpf(v) for v in r] for r in rows]
        k = len(a)
        det = mp.mpf(1)
        for c in range(k):
            piv = max(range(c, k), key=lambda r: abs(a[r][c]))
            if a[piv][c] == 0:
                return mp.mpf(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            for r in range(c + 1, k):
                f = a[r][c] / a[c][c]
                if f:
                    for cc in range(c, k):
                        a[r][cc] -= f * a[c][cc]
        return det


def determinant(rows, precision: int = 256):
    """Pivoted Gaussian elimination, re-run at doubled precision while the
    estimated rounding error exceeds 1% of the result."""
    k = len(rows)
    if k == 0:
        return mp.mpf(1)
    prec = precision
    for _ in range(6):
        with mp.workprec(prec):
            hadamard = mpmath.fprod(mpmath.sqrt(mpmath.fsum(mp.mpf(v) ** 2 for v in r)) for r in rows)
            det = _det_once(rows, prec)
            err = hadamard * k**3 * mp.mpf(2) ** (-prec + 4)
            if det != 0 and err <= abs(det) / 100:
                return +det
        prec *= 2
    return det


def det_Bk(system: EtaSystem, k: int):
    if not 1 <= k <= system.d - 1:
        raise ValueError(f"k must lie in 1..{system.d - 1}")
    return determinant(system.B(k).entries, system.precision)


def gershgorin_disks(matrix) -> list[tuple[object, object]]:
    """``(a_ii, sum_{j != i} |a_ij|)`` for each row."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return [(rows[i][i], sum(abs(rows[i][j]) for j in range(n) if j != i)) for i in range(n)]


def in_disk_union(z: complex, disks, slack: float = 1e-9) -> bool:
    return any(abs(z - complex(c)) <= float(r) * (1 + slack) + slack for c, r in disks)


@dataclass(frozen=True)
class EigBoundReport:
    n: int
    k: int
    row_bounds: tuple
    min_bound: float
    min_eig_modulus: float
    ok: bool
    log_eta_last: tuple

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "row_bounds": list(self.row_bounds),
                "min_bound": self.min_bound, "min_eig_modulus": self.min_eig_modulus,
                "ok": self.ok, "log_eta_last": list(self.log_eta_last)}


def eig_lower_bound_check(system: EtaSystem, k: int) -> EigBoundReport:
    """Gershgorin lower bound on the smallest eigenvalue modulus of ``B_k``.

    Row ``i`` gives ``max(0, |l_ii| - sum_{j<=k, j!=i} |l_ij|)``; the
    numerically computed spectrum (numpy) is the oracle.
    """
    if not 1 <= k <= system.d - 1:
        raise ValueError(f"k must lie in 1..{system.d - 1}")
    B = [[float(v) for v in r] for r in system.B(k).entries]
    bounds = tuple(max(0.0, abs(B[i][i]) - sum(abs(B[i][j]) for j in range(k) if j != i)) for i in range(k))
    eig = np.linalg.eigvals(np.array(B))
    m = float(np.min(np.abs(eig)))
    lb = min(bounds)
    last = tuple(float(system.log_abs[i][system.d - 1]) for i in range(system.d - 1))
    return EigBoundReport(system.n, k, bounds, lb, m, m >= lb * (1 - 1e-9), last)


# -- discriminant, regulator, index --------------------------------------


def discriminant(form: FormInstance) -> int:
    disc = poly.discriminant(form.poly_x)
    if disc == 0:
        raise ZeroDiscriminant(f"n={form.n}: f_n(x, 1) has a repeated root")
    return disc


@dataclass(frozen=True)
class RegulatorEstimates:
    n: int
    R_G: object
    disc: int
    log_disc: object
    pohst_lower: object
    index_upper: object
    pohst_c: float

    def as_dict(self) -> dict:
        return {"n": self.n, "R_G": self.R_G, "disc": str(self.disc), "log_disc": self.log_disc,
                "pohst_lower": self.pohst_lower, "index_upper": self.index_upper, "pohst_c": self.pohst_c}


def regulator_matrix(system: EtaSystem, dropped_row: int | None = None) -> list[list]:
    """Log matrix on columns ``1..d-1`` with row ``dropped_row`` (default ``d``) removed."""
    d = system.d
    drop = d if dropped_row is None else dropped_row
    return [list(system.log_abs[i][: d - 1]) for i in range(d) if i != drop - 1]


def regulator(system: EtaSystem, dropped_row: int | None = None):
    return abs(determinant(regulator_matrix(system, dropped_row), system.precision))


def regulator_estimates(system: EtaSystem, form: FormInstance,
                        pohst_c: float = DEFAULT_POHST_C) -> RegulatorEstimates:
    """``R_G = |det B_{d-1}|``, the exact discriminant and the index bound
    ``R_G / (c log|disc|)`` for a configurable constant ``c``."""
    if pohst_c <= 0:
        raise ValueError("pohst_c must be positive")
    disc = discriminant(form)
    R = regulator(system)
    with mp.workprec(system.precision):
        ld = mpmath.log(abs(mp.mpf(disc)))
        lower = mp.mpf(pohst_c) * ld
        return RegulatorEstimates(form.n, R, disc, ld, lower, R / lower, pohst_c)

