"""Verification pipelines behind the ``check``, ``solve`` and ``verify`` commands.

Each pipeline returns a :class:`PipelineResult` holding a JSON payload,
named checks, findings (failed checks and reported errors), and flat rows
for CSV output.  Per-``n`` work is farmed out to worker processes when
``jobs > 1``; results are collected in ``n`` order, so output does not
depend on the number of workers.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath
from mpmath import mp

from ._num import log_abs, to_mpf
from .analysis import (
    baker_lower_bound,
    baker_wustholz_constant,
    beta_vector,
    bound_comparison_report,
    cramer_uv,
    fit_asymptotics,
    height_growth,
    linear_form_at,
    log_beta_two_ways,
    lower_bound_log_y,
    near_solution,
    predicted_u_base,
    siegel_residual,
)
from .certified_roots import lemma1_residual
from .errors import BoundViolated, FitUnstable, NonPositiveSample, PrecisionInsufficient, SplitThueError
from .eta_system import build_for, det_Bk, eig_lower_bound_check, regulator, regulator_estimates
from .family import SolutionRecord, ThueFamily, evaluate
from .sequences import check_theorem_conditions, family_structures, gamma_eps, growth_gap
from .solver import verify_corollary

VERIFY_KINDS = ("lemma1", "eta", "det", "regulator", "cramer", "siegel", "baker", "bounds")
SYNTHETIC_Y = 10**6


@dataclass
class PipelineResult:
    kind: str
    payload: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    fit_rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def check(self, name, ok, observed=None, expected=None, tolerance=None, **extra):
        c = {"name": name, "ok": bool(ok), "observed": observed, "expected": expected,
             "tolerance": tolerance, **extra}
        self.checks.append(c)
        if not ok:
            self.findings.append({"type": "check_failed", **c})
        return bool(ok)

    def finding(self, type_, message, **extra):
        self.findings.append({"type": type_, "message": message, **extra})

    def as_dict(self) -> dict:
        return {**self.payload, "checks": self.checks, "findings": self.findings, "ok": self.ok}


def _pmap(fn, args, jobs):
    args = list(args)
    if jobs <= 1 or len(args) < 2:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, *zip(*args)))


def _fit(res: PipelineResult, series: str, samples, model: str, *, base=None, base_tol=None,
         decay=False, at_least=None, a=None, a_tol=None, a_max=None):
    """Fit one series, record rows, and attach the requested checks.

    The observed base is ``r``, or ``1/r`` if ``decay``.  ``base`` with
    ``base_tol`` is a two-sided check on it; ``at_least`` is a one-sided
    check (10% slack) used for bounds that only hold in one direction.
    """
    try:
        fit = fit_asymptotics(samples, model)
    except FitUnstable as e:
        fit = e.fit
        res.finding("fit_unstable", str(e), series=series)
    except NonPositiveSample as e:
        res.finding("non_positive_sample", str(e), series=series)
        return None
    for n, q in samples:
        res.rows.append({"series": series, "n": n, "log_abs_value": log_abs(q),
                         "fitted_log_abs_value": fit.log_value(n)})
    res.fit_rows.append({"series": series, **fit.as_dict()})
    observed = 1 / fit.r if decay else fit.r
    if base is not None:
        b = float(base)
        res.check(f"{series}: {'decay' if decay else 'growth'} base", abs(observed / b - 1) <= base_tol,
                  observed, b, base_tol, series=series)
    if at_least is not None:
        e = float(at_least)
        res.check(f"{series}: {'decay' if decay else 'growth'} base lower envelope", observed >= e * 0.9,
                  observed, e, 0.1, series=series, relation="observed >= expected")
    if a is not None:
        res.check(f"{series}: polynomial exponent", abs(fit.a - a) <= a_tol, fit.a, a, a_tol, series=series)
    if a_max is not None:
        res.check(f"{series}: polynomial exponent upper", fit.a <= a_max, fit.a, a_max, 0, series=series)
    return fit


def _ns(n_range) -> list[int]:
    return list(n_range)


# -- check / solve -------------------------------------------------------------


def run_check(family: ThueFamily, precision: int = 128) -> PipelineResult:
    res = PipelineResult("conditions")
    res.payload = {"family": family.name, "degree": family.degree, "n_min": family.n_min}
    try:
        rep = check_theorem_conditions(family, precision)
    except ValueError as e:
        res.payload["conditions"] = None
        res.finding("conditions_not_applicable", str(e))
        return res
    res.payload["conditions"] = rep.as_dict()
    for k, v in (("condition 1", rep.condition1), ("condition 2", rep.condition2), ("condition 3", rep.condition3)):
        res.check(k, v)
    return res


def run_solve(family: ThueFamily, n_range, y_max: int, strategy: str = "root", jobs: int = 1) -> PipelineResult:
    res = PipelineResult("solve")
    rep = verify_corollary(family, n_range, y_max, strategy, jobs)
    res.payload = {"family": family.name, **rep.as_dict()}
    for n in sorted(rep.per_n):
        for r in rep.per_n[n]:
            res.rows.append({"n": n, "x": r.x, "y": r.y, "value": r.value, "trivial": r.trivial})
        for r in rep.extras[n]:
            res.finding("nontrivial_solution", f"n={n}: ({r.x}, {r.y}) gives {r.value}", n=n, x=r.x, y=r.y)
        for r in rep.missing[n]:
            res.finding("missing_trivial_solution", f"n={n}: ({r.x}, {r.y}) not found", n=n, x=r.x, y=r.y)
    return res


# -- verify -------------------------------------------------------------------


def _lemma1_worker(family, n, precision):
    digits = int(precision * 0.30103) + 5
    with mp.workprec(precision + 64):
        return [(r.index, r.residual, mpmath.nstr(to_mpf(r.root.lo), digits, strip_zeros=False),
                 mpmath.nstr(to_mpf(r.root.hi), digits, strip_zeros=False))
                for r in lemma1_residual(family, n, precision)]


def verify_lemma1(family, n_range, precision=512, jobs=1, **_):
    res = PipelineResult("lemma1")
    st = family_structures(family)
    d = family.degree
    ns = _ns(n_range)
    per_n = _pmap(_lemma1_worker, [(family, n, precision) for n in ns], jobs)
    res.payload = {"family": family.name, "precision": precision, "n_range": [ns[0], ns[-1]],
                   "gamma_eps": [float(gamma_eps(st, i)) for i in range(1, d + 1)], "fits": {}}
    for n, rows in zip(ns, per_n):
        for i, resid, lo, hi in rows:
            res.rows.append({"series": "root", "n": n, "i": i, "lo": lo, "hi": hi, "residual": resid,
                             "predicted_base": gamma_eps(st, i)})
    for i in range(1, d + 1):
        samples = [(n, next(r for ii, r, _, _ in rows if ii == i)) for n, rows in zip(ns, per_n)]
        fit = _fit(res, f"residual_{i}", samples, "exp", base=gamma_eps(st, i), base_tol=0.10, decay=True)
        if fit is not None:
            res.payload["fits"][f"residual_{i}"] = fit.as_dict()
    return res


def _eta_worker(family, n, precision):
    _, _, s = build_for(family, n, precision)
    return s.max_row_sum(), s.sign_pattern_ok, [[abs(v) for v in row] for row in s.eta]


def verify_eta(family, n_range, precision=256, jobs=1, **_):
    res = PipelineResult("eta")
    st = family_structures(family)
    d = family.degree
    ns = _ns(n_range)
    per_n = _pmap(_eta_worker, [(family, n, precision) for n in ns], jobs)
    tol = d * mp.mpf(2) ** (-precision + 10)
    for n, (rs, signs, _) in zip(ns, per_n):
        res.check(f"n={n}: row products equal 1", rs <= tol, rs, 0, tol, n=n)
        res.check(f"n={n}: sign pattern", signs, n=n)
    diag_base = st[d - 1].gamma ** 2
    for k in range(1, d - 2):
        diag_base *= st[k].gamma
    res.payload = {"family": family.name, "precision": precision, "n_range": [ns[0], ns[-1]],
                   "diagonal_decay_base": float(diag_base)}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            samples = [(n, m[i - 1][j - 1]) for n, (_, _, m) in zip(ns, per_n)]
            name = f"eta[{i},{j}]"
            if i == j:
                _fit(res, name, samples, "exp", base=diag_base, base_tol=0.10, decay=True)
            elif {i, j} == {d - 1, d}:
                _fit(res, name, samples, "exp", base=growth_gap(family, i, j, ns[0]).predicted_base, base_tol=0.10)
            else:
                _fit(res, name, samples, "exp", at_least=growth_gap(family, i, j, ns[0]).predicted_base)
    return res


def _det_worker(family, n, precision):
    _, _, s = build_for(family, n, precision)
    ks = range(1, s.d)
    return [abs(det_Bk(s, k)) for k in ks], [eig_lower_bound_check(s, k).ok for k in ks]


def verify_det(family, n_range, precision=256, jobs=1, **_):
    res = PipelineResult("det")
    d = family.degree
    ns = _ns(n_range)
    per_n = _pmap(_det_worker, [(family, n, precision) for n in ns], jobs)
    res.payload = {"family": family.name, "precision": precision, "n_range": [ns[0], ns[-1]], "fits": {}}
    for k in range(1, d):
        for n, (_, eig) in zip(ns, per_n):
            res.check(f"n={n}: Gershgorin bound for B_{k}", eig[k - 1], n=n, k=k)
        samples = [(n, dets[k - 1]) for n, (dets, _) in zip(ns, per_n)]
        fit = _fit(res, f"det_B{k}", samples, "full", a=k, a_tol=0.25, base=1, base_tol=0.02)
        if fit is not None:
            res.payload["fits"][f"det_B{k}"] = fit.as_dict()
    return res


def _regulator_worker(family, n, precision, pohst_c):
    form, _, s = build_for(family, n, precision)
    est = regulator_estimates(s, form, pohst_c)
    alt = [regulator(s, r) for r in range(1, s.d + 1)]
    spread = (max(alt) - min(alt)) / max(alt)
    return est, spread


def verify_regulator(family, n_range, precision=256, jobs=1, pohst_c=0.01, **_):
    res = PipelineResult("regulator")
    d = family.degree
    ns = _ns(n_range)
    per_n = _pmap(_regulator_worker, [(family, n, precision, pohst_c) for n in ns], jobs)
    tol = mp.mpf(2) ** (-precision // 2)
    for n, (est, spread) in zip(ns, per_n):
        res.check(f"n={n}: R_G independent of dropped row", spread < tol, spread, 0, tol, n=n)
    ests = [e for e, _ in per_n]
    res.payload = {"family": family.name, "precision": precision, "pohst_c": pohst_c,
                   "n_range": [ns[0], ns[-1]], "estimates": [e.as_dict() for e in ests]}
    _fit(res, "R_G", [(e.n, e.R_G) for e in ests], "full", a=d - 1, a_tol=0.25)
    _fit(res, "log_disc", [(e.n, e.log_disc) for e in ests], "full", a=1, a_tol=0.2)
    _fit(res, "index_upper", [(e.n, e.index_upper) for e in ests], "full", a_max=d - 2 + 0.25)
    return res


def _trivial_records(form):
    return [SolutionRecord(form.n, g, 1, evaluate(form, g, 1)) for g in form.g_values]


def _cramer_worker(family, n, precision):
    form, roots, s = build_for(family, n, precision)
    d = s.d
    systems = [cramer_uv(s, j) for j in range(1, d + 1)]
    st = family_structures(family)
    bi = []
    for i, rec in enumerate(_trivial_records(form), start=1):
        vec = beta_vector(rec, roots, precision)
        if not vec.product_ok:
            raise PrecisionInsufficient(f"n={n}: product check failed for trivial solution {i}")
        rep = log_beta_two_ways(vec, s, gamma_eps(st, vec.type_j))
        want = [1 if k == i else 0 for k in range(1, d)] if i < d else [-1] * (d - 1)
        err = max(abs(b - w) for b, w in zip(rep.b_over_I, want))
        disc = max(abs(x) for x in rep.discrepancies)
        bi.append((i, vec.type_j, err, disc))
    return [(c.j, c.structural_zero, abs(c.combined_u)) for c in systems], bi


def verify_cramer(family, n_range, precision=256, jobs=1, **_):
    res = PipelineResult("cramer")
    st = family_structures(family)
    d = family.degree
    if d < 4:
        raise ValueError("the Cramer analysis needs d >= 4")
    ns = _ns(n_range)
    per_n = _pmap(_cramer_worker, [(family, n, precision) for n in ns], jobs)
    tol = mp.mpf(2) ** (-precision // 2)
    for n, (cs, bi) in zip(ns, per_n):
        for j, sz, _ in cs:
            res.check(f"n={n}, j={j}: structural zeros of v", sz < tol, sz, 0, tol, n=n, j=j)
        for i, tj, err, disc in bi:
            res.check(f"n={n}: trivial solution {i} has type {i}", tj == i, tj, i, n=n)
            res.check(f"n={n}: b/I identity for trivial solution {i}", err < tol, err, 0, tol, n=n)
            res.check(f"n={n}: two-way discrepancy for trivial solution {i}", disc < tol, disc, 0, tol, n=n)
    res.payload = {"family": family.name, "precision": precision, "n_range": [ns[0], ns[-1]], "u_fits": {},
                   "lower_bounds": []}
    for j in sorted({1, d}):
        samples = [(n, next(u for jj, _, u in cs if jj == j)) for n, (cs, _) in zip(ns, per_n)]
        fit = _fit(res, f"u_j{j}", samples, "full", base=predicted_u_base(st, j), base_tol=0.05, a=d - 3, a_tol=0.3)
        if fit is not None:
            res.payload["u_fits"][f"j{j}"] = {"fit": fit.as_dict(), "predicted_r": float(predicted_u_base(st, j))}
            res.payload["lower_bounds"].append(lower_bound_log_y(family, ns[-1], j, fit).as_dict())
    return res


def _siegel_worker(family, n, precision, y):
    _, roots, _ = build_for(family, n, precision)
    triples = list(itertools.combinations(range(1, family.degree + 1), 3))
    out = []
    for j in range(1, family.degree + 1):
        ev = linear_form_at(family, n, y, j, precision)
        x = near_solution(roots, y, j, 1, precision)
        vec = beta_vector(SolutionRecord(n, 0, y, 1), roots, precision, x=x)
        out.append((j, ev, max(siegel_residual(roots, vec, t) for t in triples)))
    return out


def verify_siegel(family, n_range, precision=256, jobs=1, **_):
    res = PipelineResult("siegel")
    st = family_structures(family)
    d = family.degree
    ns = _ns(n_range)
    y = SYNTHETIC_Y
    per_n = _pmap(_siegel_worker, [(family, n, precision, y) for n in ns], jobs)
    tol = mp.mpf(2) ** (-precision + 20)
    evals = []
    for n, rows in zip(ns, per_n):
        for j, ev, sres in rows:
            res.check(f"n={n}, j={j}: Siegel identity", sres < tol, sres, 0, tol, n=n, j=j)
            res.check(f"n={n}, j={j}: S-unit equation sides agree", ev.agreement < tol, ev.agreement, 0, tol,
                      n=n, j=j)
            if ev.lambda_zero:
                res.finding("lambda_zero", f"n={n}, j={j}: linear form vanishes at doubled precision", n=n, j=j)
            else:
                res.check(f"n={n}, j={j}: |Lambda| below envelope", abs(ev.lam) <= ev.envelope,
                          abs(ev.lam), ev.envelope, n=n, j=j)
            evals.append(ev.as_dict())
    top = max(abs(st[d - 1].delta), st[1].gamma)
    for j in range(1, d + 1):
        env_base = gamma_eps(st, j) * st[d - 1].gamma ** 2 / top
        samples = [(n, abs(ev.lam)) for n, rows in zip(ns, per_n) for jj, ev, _ in rows if jj == j
                   and not ev.lambda_zero]
        if j in (d - 1, d):
            _fit(res, f"lambda_j{j}", samples, "exp", base=env_base, base_tol=0.10, decay=True)
        else:
            _fit(res, f"lambda_j{j}", samples, "exp", at_least=env_base, decay=True)
    res.payload = {"family": family.name, "precision": precision, "synthetic_y": y,
                   "n_range": [ns[0], ns[-1]], "evaluations": evals}
    return res


def _baker_worker(family, n, precision, y, baker_c):
    out = []
    for j in range(1, family.degree + 1):
        ev = linear_form_at(family, n, y, j, precision)
        try:
            ev = baker_lower_bound(ev, baker_c)
            out.append((j, ev, None))
        except BoundViolated as e:
            out.append((j, ev, str(e)))
    return out


def verify_baker(family, n_range, precision=256, jobs=1, baker_c=None, **_):
    res = PipelineResult("baker")
    d = family.degree
    c = baker_c if baker_c is not None else baker_wustholz_constant(2, d)
    ns = _ns(n_range)
    per_n = _pmap(_baker_worker, [(family, n, precision, SYNTHETIC_Y, c) for n in ns], jobs)
    evals = []
    for n, rows in zip(ns, per_n):
        for j, ev, err in rows:
            if err is not None:
                res.finding("bound_violated", err, n=n, j=j)
            else:
                res.check(f"n={n}, j={j}: log|Lambda| above the lower bound", True,
                          float(mpmath.log(abs(ev.lam))), float(ev.baker_lower), n=n, j=j)
            evals.append(ev.as_dict())
    hg = height_growth(family, ns)
    _fit(res, "height", list(hg.samples), "full", a=1, a_tol=0.2, base=1, base_tol=0.02)
    res.payload = {"family": family.name, "precision": precision, "baker_c": c,
                   "baker_c_source": "default: Baker-Wustholz (1993) constant" if baker_c is None else "user",
                   "synthetic_y": SYNTHETIC_Y, "n_range": [ns[0], ns[-1]], "evaluations": evals,
                   "height_growth": hg.as_dict()}
    return res


def verify_bounds(family, n_range, precision=256, jobs=1, baker_c=None, pohst_c=0.01, **_):
    res = PipelineResult("bounds")
    d = family.degree
    c = baker_c if baker_c is not None else baker_wustholz_constant(2, d)
    rep = bound_comparison_report(family, n_range, c, pohst_c, precision)
    res.payload = {"family": family.name, "precision": precision, **rep.as_dict()}
    for n, lo, up in rep.curve:
        res.rows.append({"series": "envelopes", "n": n, "log_lower": lo, "log_upper": up})
    res.fit_rows.append({"series": "u", **rep.u.fit.as_dict()})
    res.fit_rows.append({"series": "log_disc", **rep.log_disc.as_dict()})
    res.check("finite crossover", rep.n_star is not None, rep.n_star)
    return res


VERIFY = {
    "lemma1": verify_lemma1, "eta": verify_eta, "det": verify_det, "regulator": verify_regulator,
    "cramer": verify_cramer, "siegel": verify_siegel, "baker": verify_baker, "bounds": verify_bounds,
}

DEFAULT_RANGES = {
    "lemma1": range(4, 15), "eta": range(4, 21), "det": range(6, 31), "regulator": range(6, 21),
    "cramer": range(8, 31), "siegel": range(6, 21), "baker": range(6, 21), "bounds": range(8, 31),
}


def run_verify(kind: str, family: ThueFamily, n_range=None, precision: int | None = None, **kw) -> PipelineResult:
    if kind not in VERIFY:
        raise ValueError(f"unknown verification {kind!r}; choose from {', '.join(VERIFY_KINDS)}")
    n_range = DEFAULT_RANGES[kind] if n_range is None else n_range
    if precision is None:
        precision = 512 if kind == "lemma1" else 256
    try:
        return VERIFY[kind](family, n_range, precision=precision, **kw)
    except SplitThueError as e:
        res = PipelineResult(kind, {"family": family.name})
        res.finding(type(e).__name__, str(e))
        return res

