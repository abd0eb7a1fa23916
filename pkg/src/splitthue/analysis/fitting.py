"""Least-squares fits of ``|Q(n)| ~ c * n^a * r^n``.

Three models share one code path: ``"full"`` fits ``(log c, a, log r)``,
``"exp"`` pins ``a = 0`` and ``"poly"`` pins ``r = 1``.  A fit is *stable*
when refitting on the second half of the sample moves ``a`` by less than
``A_TOL`` and ``log r`` by less than ``R_TOL * max(1, |log r|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._num import log_abs
from ..errors import FitUnstable, NonPositiveSample

MODELS = ("full", "exp", "poly")
MIN_SAMPLES = 8
A_TOL = 0.3
R_TOL = 0.02


@dataclass(frozen=True)
class AsymptoticFit:
    model: str
    log_c: float
    a: float
    log_r: float
    rms: float
    n_min: int
    n_max: int
    count: int
    half_a: float
    half_log_r: float

    @property
    def r(self) -> float:
        return math.exp(self.log_r)

    @property
    def stable(self) -> bool:
        return (abs(self.a - self.half_a) < A_TOL
                and abs(self.log_r - self.half_log_r) < R_TOL * max(1.0, abs(self.log_r)))

    def log_value(self, n: float) -> float:
        """Fitted ``log|Q(n)|``."""
        return self.log_c + self.a * math.log(n) + n * self.log_r

    def as_dict(self) -> dict:
        return {
            "model": self.model, "log_c": self.log_c, "a": self.a, "log_r": self.log_r, "r": self.r,
            "rms": self.rms, "n_min": self.n_min, "n_max": self.n_max, "count": self.count,
            "half_a": self.half_a, "half_log_r": self.half_log_r, "stable": self.stable,
        }


def _design(ns: np.ndarray, model: str) -> np.ndarray:
    cols = [np.ones_like(ns)]
    if model in ("full", "poly"):
        cols.append(np.log(ns))
    if model in ("full", "exp"):
        cols.append(ns)
    return np.column_stack(cols)


def _solve(ns, ys, model):
    X = _design(ns, model)
    coef, *_ = np.linalg.lstsq(X, ys, rcond=None)
    resid = ys - X @ coef
    log_c = coef[0]
    if model == "full":
        a, log_r = coef[1], coef[2]
    elif model == "exp":
        a, log_r = 0.0, coef[1]
    else:
        a, log_r = coef[1], 0.0
    return float(log_c), float(a), float(log_r), float(np.sqrt(np.mean(resid**2)))


def fit_asymptotics(samples, model: str = "full", check_stability: bool = True) -> AsymptoticFit:
    """Fit ``log|Q(n)| = log c + a log n + n log r`` to ``(n, Q)`` pairs.

    ``Q`` may be an int of any size, a Fraction or an mpmath real.
    """
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    samples = sorted(samples, key=lambda t: t[0])
    if len(samples) < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {len(samples)}")
    ns, ys = [], []
    for n, q in samples:
        if n <= 0:
            raise ValueError("sample positions n must be positive")
        if q == 0 or (hasattr(q, "__lt__") and not isinstance(q, complex) and q < 0):
            raise NonPositiveSample(f"sample at n={n} is not positive: {q}")
        ns.append(float(n))
        ys.append(log_abs(q))
    ns_a, ys_a = np.array(ns), np.array(ys)
    log_c, a, log_r, rms = _solve(ns_a, ys_a, model)
    h = len(ns) // 2
    _, ha, hr, _ = _solve(ns_a[h:], ys_a[h:], model)
    fit = AsymptoticFit(model, log_c, a, log_r, rms, int(ns[0]), int(ns[-1]), len(ns), ha, hr)
    if check_stability and not fit.stable:
        raise FitUnstable(
            f"refit on the second half moved a by {abs(a - ha):.3g} and log r by {abs(log_r - hr):.3g}", fit
        )
    return fit


def abs_samples(samples):
    """``(n, |Q|)`` pairs, dropping nothing; zero values raise at fit time."""
    return [(n, abs(q)) for n, q in samples]
