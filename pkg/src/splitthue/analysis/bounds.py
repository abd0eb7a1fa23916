"""Height growth and the comparison of the exponential lower envelope for
``log|y|`` with the ``n log n`` upper envelope.

The crossover ``n*`` computed here is an empirical illustration built from
fitted envelopes and user-chosen constants; it is not an effective bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..eta_system import discriminant
from ..family import ThueFamily, instantiate
from .cramer import UAsymptotics, u_asymptotics
from .fitting import AsymptoticFit, fit_asymptotics
from .heights import weil_height

N_STAR_LIMIT = 10**6


def baker_wustholz_constant(logs: int, field_degree: int) -> float:
    """``18 (m+1)! m^(m+1) (32 D)^(m+2) log(2 m D)`` for ``m`` logarithms.

    Externally sourced (Baker and Wustholz, 1993); only used as a default.
    """
    m, D = logs, field_degree
    return 18 * math.factorial(m + 1) * m ** (m + 1) * (32 * D) ** (m + 2) * math.log(2 * m * D)


@dataclass(frozen=True)
class HeightGrowth:
    fit: AsymptoticFit
    samples: tuple

    def as_dict(self) -> dict:
        return {"fit": self.fit.as_dict(), "samples": [[n, float(h)] for n, h in self.samples]}


def height_growth(family: ThueFamily, n_range, precision: int = 128) -> HeightGrowth:
    """Fit ``h(alpha^(j))`` over ``n``; all roots share one minimal polynomial."""
    samples = tuple((n, weil_height(instantiate(family, n).poly_x, precision)) for n in n_range)
    return HeightGrowth(fit_asymptotics(samples, "full"), samples)


@dataclass(frozen=True)
class BoundComparison:
    baker_c: float
    pohst_c: float
    u: UAsymptotics
    log_disc: AsymptoticFit
    n_star: int | None
    curve: tuple

    def lower_log(self, n: float) -> float:
        return _lower_log(n, self.pohst_c, self.u.fit, self.log_disc)

    def upper_log(self, n: float) -> float:
        return _upper_log(n, self.baker_c)

    def as_dict(self) -> dict:
        return {
            "label": "empirical illustration from fitted envelopes, not an effective constant",
            "n_star": self.n_star,
            "lower_envelope": {"form": "pohst_c * log|disc(n)| / |u(n)|", "pohst_c": self.pohst_c,
                               "u_fit": self.u.fit.as_dict(), "log_disc_fit": self.log_disc.as_dict()},
            "upper_envelope": {"form": "baker_c * n * log n", "baker_c": self.baker_c},
            "curve": [{"n": n, "log_lower": lo, "log_upper": up} for n, lo, up in self.curve],
        }


def _lower_log(n, pohst_c, u_fit, disc_fit):
    return math.log(pohst_c) + disc_fit.log_value(n) - u_fit.log_value(n)


def _upper_log(n, baker_c):
    return math.log(baker_c) + math.log(n) + math.log(math.log(n))


def crossover(baker_c: float, pohst_c: float, u_fit: AsymptoticFit, disc_fit: AsymptoticFit,
              start: int = 3, limit: int = N_STAR_LIMIT) -> int | None:
    """First ``n >= start`` where the lower envelope exceeds the upper one."""
    for n in range(max(start, 3), limit + 1):
        if _lower_log(n, pohst_c, u_fit, disc_fit) > _upper_log(n, baker_c):
            return n
    return None


def bound_comparison_report(family: ThueFamily, n_range, baker_c: float, pohst_c: float = 0.01,
                            precision: int = 256) -> BoundComparison:
    """Overlay both envelopes and locate their crossover.

    The lower envelope uses the type-independent ``u`` combination
    (``j = d``) and a fit of ``log|disc|``.
    """
    n_range = list(n_range)
    d = family.degree
    u = u_asymptotics(family, n_range, d, precision)
    ld = [(n, math.log(abs(discriminant(instantiate(family, n))))) for n in n_range]
    disc_fit = fit_asymptotics(ld, "full")
    n_star = crossover(baker_c, pohst_c, u.fit, disc_fit, n_range[0])
    end = (n_star if n_star is not None else n_range[-1]) + 10
    curve = tuple((n, _lower_log(n, pohst_c, u.fit, disc_fit), _upper_log(n, baker_c))
                  for n in range(max(3, n_range[0]), end + 1))
    return BoundComparison(baker_c, pohst_c, u, disc_fit, n_star, curve)
