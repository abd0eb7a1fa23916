"""Exact solution of ``f_n(x, y) = +-1`` for ``|y| <= y_max``.

Any real root of ``P(x) = prod_i (x - G_i y) - c`` has some factor with
``|x - G_i y| <= |c|^(1/d)``, so all integer solutions for a fixed ``y``
lie in ``d`` windows around the points ``G_i y``.  The root-guided
strategy counts real roots of ``P`` in those windows with a Sturm chain
and narrows down to single integers; the exhaustive strategy evaluates
every integer in the windows.  Only ``y > 0`` is searched by the
root-guided strategy: ``f(-x, -y) = (-1)^d f(x, y)`` gives the rest.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import poly
from .errors import DegenerateInstance
from .family import (
    FormInstance,
    SolutionRecord,
    ThueFamily,
    classify_small_y,
    evaluate,
    instantiate,
    is_trivial,
    trivial_solutions,
)

STRATEGIES = ("root", "exhaustive")


def iroot(c: int, d: int) -> int:
    """``floor(c^(1/d))`` for ``c >= 0``."""
    if c < 0:
        raise ValueError("iroot needs c >= 0")
    if c < 2:
        return c
    x = 1 << -(-c.bit_length() // d)
    while True:
        y = ((d - 1) * x + c // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    while x**d > c:
        x -= 1
    while (x + 1) ** d <= c:
        x += 1
    return x


def windows(centers, bound: int) -> list[tuple[int, int]]:
    """Merged integer windows ``[c - bound, c + bound]``."""
    out: list[list[int]] = []
    for c in sorted(centers):
        lo, hi = c - bound, c + bound
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(a, b) for a, b in out]


def _integer_roots_in(p, chain, a: int, b: int) -> list[int]:
    """Integer roots of monic ``p`` in ``[a, b]``.

    Counting on half-integers is exact: a monic integer polynomial has no
    non-integral rational roots, so ``p(m + 1/2) != 0``.
    """
    found = []

    def var(m2):  # sign variations at m2/2
        return poly.variations_at(chain, m2, 2)

    stack = [(a, b, var(2 * a - 1), var(2 * b + 1))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        k = vlo - vhi
        if k <= 0:
            continue
        if lo == hi:
            if poly.evaluate(p, lo) == 0:
                found.append(lo)
            continue
        if k == 1:
            s_lo = poly.eval_scaled(p, 2 * lo - 1, 2) > 0
            s_hi = poly.eval_scaled(p, 2 * hi + 1, 2) > 0
            if s_lo != s_hi:
                # one simple root: plain bisection on the sign of p
                while lo < hi:
                    mid = (lo + hi) // 2
                    if (poly.eval_scaled(p, 2 * mid + 1, 2) > 0) == s_lo:
                        lo = mid + 1
                    else:
                        hi = mid
                if poly.evaluate(p, lo) == 0:
                    found.append(lo)
                continue
        mid = (lo + hi) // 2
        vm = var(2 * mid + 1)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid + 1, hi, vm, vhi))
    return found


def _solve_y_root(form: FormInstance, y: int) -> list[SolutionRecord]:
    d = form.d
    base = poly.from_roots([g * y for g in form.g_values])
    out = []
    for t in (1, -1):
        c = y**d + t
        p = list(base)
        p[0] -= c
        chain = poly.sturm_sequence(p)
        bound = iroot(abs(c), d) + 1
        for a, b in windows([g * y for g in form.g_values], bound):
            for x in _integer_roots_in(p, chain, a, b):
                out.append(SolutionRecord(form.n, x, y, t))
    return out


def _chunk_root(form: FormInstance, ys: list[int]) -> list[SolutionRecord]:
    res = []
    for y in ys:
        res.extend(_solve_y_root(form, y))
    return res


_FLOAT_SAFE = 2**50


def _solve_y_exhaustive(form: FormInstance, y: int) -> list[SolutionRecord]:
    """Every integer ``x`` in the windows for ``|c| <= |y|^d + 1`` is tried."""
    d = form.d
    bound = iroot(abs(y) ** d + 1, d) + 1
    cands = []
    big = max(abs(g * y) for g in form.g_values) + bound > _FLOAT_SAFE
    for a, b in windows([g * y for g in form.g_values], bound):
        if big:
            cands.extend(range(a, b + 1))
            continue
        xs = np.arange(a, b + 1, dtype=np.float64)
        prod = np.ones_like(xs)
        for g in form.g_values:
            prod *= xs - float(g * y)
        val = prod - float(y) ** d
        slack = 1e-12 * (np.abs(prod) + float(abs(y)) ** d) + 2.0
        keep = np.nonzero(np.abs(val) <= 1.0 + slack)[0]
        cands.extend(int(a + k) for k in keep)
    out = []
    for x in cands:
        v = evaluate(form, x, y)
        if v in (1, -1):
            out.append(SolutionRecord(form.n, x, y, v))
    return out


def _chunk_exhaustive(form: FormInstance, ys: list[int]) -> list[SolutionRecord]:
    res = []
    for y in ys:
        res.extend(_solve_y_exhaustive(form, y))
    return res


def _label(form: FormInstance, r: SolutionRecord) -> SolutionRecord:
    return SolutionRecord(r.n, r.x, r.y, r.value, trivial=is_trivial(form, r.x, r.y))


def _run_chunks(fn, form, ys, jobs):
    if jobs <= 1 or len(ys) < 64:
        return fn(form, ys)
    chunks = [ys[k::jobs] for k in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(fn, [form] * jobs, chunks))
    return [r for part in parts for r in part]


def solve_instance(form: FormInstance, y_max: int, strategy: str = "root", jobs: int = 1) -> list[SolutionRecord]:
    """All integer solutions with ``|y| <= y_max``, sorted."""
    if y_max < 1:
        raise ValueError("y_max must be at least 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    sols: set[SolutionRecord] = set()
    if strategy == "root":
        sols |= set(classify_small_y(form).solutions)
        found = _run_chunks(_chunk_root, form, list(range(2, y_max + 1)), jobs)
        sign = (-1) ** form.d
        for r in found:
            sols.add(r)
            sols.add(SolutionRecord(r.n, -r.x, -r.y, r.value * sign))
    else:
        ys = [y for y in range(-y_max, y_max + 1) if y != 0]
        sols |= set(_run_chunks(_chunk_exhaustive, form, ys, jobs))
        for x in range(-2, 3):
            if evaluate(form, x, 0) in (1, -1):
                sols.add(SolutionRecord(form.n, x, 0, evaluate(form, x, 0)))
    out = sorted(_label(form, r) for r in sols)
    for r in out:
        if evaluate(form, r.x, r.y) != r.value:
            raise AssertionError(f"record {r} does not re-evaluate")
    return out


@dataclass
class SolveReport:
    y_max: int
    strategy: str
    per_n: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    missing: dict = field(default_factory=dict)
    degenerate: list = field(default_factory=list)
    seconds: dict = field(default_factory=dict)

    @property
    def nontrivial_found(self) -> bool:
        return any(self.extras.values())

    def as_dict(self) -> dict:
        return {
            "y_max": self.y_max,
            "strategy": self.strategy,
            "nontrivial_found": self.nontrivial_found,
            "degenerate_n": list(self.degenerate),
            "instances": [
                {
                    "n": n,
                    "solution_count": len(recs),
                    "solutions": [r.as_dict() for r in recs],
                    "extras": [r.as_dict() for r in self.extras.get(n, [])],
                    "missing_trivial": [r.as_dict() for r in self.missing.get(n, [])],
                }
                for n, recs in sorted(self.per_n.items())
            ],
        }


def verify_corollary(family: ThueFamily, n_range, y_max: int, strategy: str = "root",
                     jobs: int = 1) -> SolveReport:
    """Solve every ``n`` in ``n_range`` and diff against the trivial set."""
    rep = SolveReport(y_max, strategy)
    for n in n_range:
        t0 = time.perf_counter()
        try:
            form = instantiate(family, n)
        except DegenerateInstance:
            form = instantiate(family, n, allow_degenerate=True)
            rep.degenerate.append(n)
        recs = solve_instance(form, y_max, strategy, jobs)
        triv = trivial_solutions(form)
        keys = {r.key for r in triv}
        got = {r.key for r in recs}
        rep.per_n[n] = recs
        rep.extras[n] = [r for r in recs if r.key not in keys]
        rep.missing[n] = sorted(r for r in triv if r.key not in got)
        rep.seconds[n] = time.perf_counter() - t0
    return rep

