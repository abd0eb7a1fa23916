import pytest

from splitthue.config import RunConfig, builtin_family, load_family, loads_family, parse_n_range
from splitthue.errors import FamilyFileError

GOOD = """
schema_version = 1
name = "demo"
degree = 4

[[sequences]]
name = "zero"
terms = []

[[sequences]]
terms = [{ coeff = "1/2", root = 3 }, { coeff = "1/2", root = 1 }]

[[sequences]]
name = "F"
recurrence = { coeffs = [1, 1], initial = [1, 1], offset = 1 }

[[sequences]]
recurrence = { coeffs = [7, -10], initial = [2, 7] }
"""


def test_good_file():
    fam = loads_family(GOOD)
    assert fam.name == "demo" and fam.degree == 4
    assert fam.g_values(4) == [0, 41, 3, 641]


def test_builtins_match_definitions(t1, fl):
    assert t1.g_values(3) == [8, 27, 126, 133]
    assert fl.g_values(10) == [0, 55, 123]


def test_load_from_path(tmp_path):
    p = tmp_path / "fam.toml"
    p.write_text(GOOD)
    assert load_family(p).g_values(1) == [0, 2, 1, 7]


@pytest.mark.parametrize("text, line, field", [
    ("degree = 3\n[[sequences]]\nterms = []\n[[sequences]]\nterms = [{coeff = 1, root = 2}]\n"
     "[[sequences]]\nrecurrence = {coeffs = [1, 1], initial = [1]}\n", 7, "sequences[2].recurrence"),
    ("[[sequences]]\nterms = [{coeff = \"x\", root = 2}]\n", 2, "sequences[0].terms"),
    ("[[sequences]]\nterms = []\nbogus = 1\n", 3, "sequences[0].bogus"),
    ("degree = 5\n[[sequences]]\nterms = []\n[[sequences]]\nterms = [{coeff = 1, root = 2}]\n"
     "[[sequences]]\nterms = [{coeff = 1, root = 3}]\n", 1, "degree"),
    ("schema_version = 2\n", 1, "schema_version"),
    ("x = [1,\n", None, None),
])
def test_errors_cite_location(text, line, field):
    with pytest.raises(FamilyFileError) as e:
        loads_family(text, "f.toml")
    if line is not None:
        assert e.value.line == line
    assert e.value.field == field
    assert "f.toml" in str(e.value)


def test_syntax_error_has_line():
    with pytest.raises(FamilyFileError) as e:
        loads_family("a = 1\nb = = 2\n", "f.toml")
    assert e.value.line == 2


def test_missing_file(tmp_path):
    with pytest.raises(FamilyFileError):
        load_family(tmp_path / "nope.toml")


def test_n_range():
    assert parse_n_range("3..5") == range(3, 6)
    assert parse_n_range("7") == range(7, 8)
    for bad in ("5..3", "a..b", "-1..2"):
        with pytest.raises(ValueError):
            parse_n_range(bad)


def test_run_config_validation():
    RunConfig("t1", "check", range(1, 2))
    with pytest.raises(ValueError):
        RunConfig("t1", "check", range(1, 2), precision=32)
    with pytest.raises(ValueError):
        RunConfig("t1", "check", range(2, 2))


def test_builtin_unknown():
    with pytest.raises(FamilyFileError):
        builtin_family("nope")
