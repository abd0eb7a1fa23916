import pytest

from splitthue.pipelines import run_check, run_solve, run_verify


def names_failed(res):
    return {c["name"] for c in res.checks if not c["ok"]}


@pytest.mark.parametrize("kind, n", [
    ("det", range(6, 20)), ("regulator", range(6, 16)), ("cramer", range(8, 20)),
    ("siegel", range(6, 15)), ("baker", range(6, 15)), ("bounds", range(8, 25)),
])
def test_pipelines_clean_on_t1(t1, kind, n):
    res = run_verify(kind, t1, n)
    assert res.ok, res.findings
    assert res.checks


def test_eta_pipeline_parts(t1):
    res = run_verify("eta", t1, range(4, 16))
    failed = names_failed(res)
    assert not any("row products" in f for f in failed)
    for name in ("eta[1,1]: decay base", "eta[2,2]: decay base", "eta[3,4]: growth base",
                 "eta[4,3]: growth base"):
        assert name not in failed
    assert not any("lower envelope" in f for f in failed)


def test_lemma1_rows(t1):
    res = run_verify("lemma1", t1, range(4, 12), precision=256)
    roots = [r for r in res.rows if r["series"] == "root"]
    assert len(roots) == 4 * 8
    from fractions import Fraction
    assert all(Fraction(r["lo"]) <= Fraction(r["hi"]) for r in roots)


def test_check_and_solve(t1, fl):
    assert run_check(t1).ok
    assert not run_check(fl).ok
    assert run_solve(t1, range(1, 4), 200).ok


def test_jobs_invariance(t1):
    a = run_verify("det", t1, range(6, 16))
    b = run_verify("det", t1, range(6, 16), jobs=2)
    assert a.as_dict() == b.as_dict()


def test_unknown_kind(t1):
    with pytest.raises(ValueError):
        run_verify("nope", t1)


def test_cramer_refuses_cubic(fl):
    with pytest.raises(ValueError):
        run_verify("cramer", fl, range(4, 14))
