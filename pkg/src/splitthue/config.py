"""Family definition files and run configuration.

A family file is TOML; see ``docs/formats.md`` for the schema.  Every
error is a :class:`FamilyFileError` carrying the path, line and field.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import FamilyFileError, SplitThueError
from .family import ThueFamily
from .sequences import RecurrenceSpec

SCHEMA_VERSION = 1
_HEADER = re.compile(r"^\s*\[\[\s*sequences\s*\]\]")
_AT_LINE = re.compile(r"line (\d+)")


def _line_of(text: str, seq_index: int | None, key: str | None) -> int | None:
    lines = text.splitlines()
    lo, hi = 0, len(lines)
    if seq_index is not None:
        heads = [k for k, s in enumerate(lines) if _HEADER.match(s)]
        if seq_index < len(heads):
            lo = heads[seq_index]
            hi = heads[seq_index + 1] if seq_index + 1 < len(heads) else len(lines)
            if key is None:
                return lo + 1
    if key is not None:
        pat = re.compile(rf"^\s*{re.escape(key)}\s*=")
        for k in range(lo, hi):
            if pat.match(lines[k]):
                return k + 1
        return lo + 1 if seq_index is not None and lo < len(lines) else None
    return None


def _rational(v, where: str) -> Fraction:
    if isinstance(v, bool):
        raise ValueError(f"{where}: expected an integer or 'p/q' string, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{where}: cannot read {v!r} as an exact rational") from None
    raise ValueError(f"{where}: expected an integer or 'p/q' string, got {type(v).__name__}")


def _int_list(v, where: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in v):
        raise ValueError(f"{where}: expected a list of integers")
    return v


def _sequence(entry, k: int) -> RecurrenceSpec:
    if not isinstance(entry, dict):
        raise ValueError(f"sequences[{k}]: expected a table")
    name = entry.get("name", f"G{k + 1}")
    unknown = set(entry) - {"name", "recurrence", "terms"}
    if unknown:
        raise KeyError(sorted(unknown)[0])
    has_rec, has_terms = "recurrence" in entry, "terms" in entry
    if has_rec == has_terms:
        raise ValueError(f"sequences[{k}] ({name}): give exactly one of 'recurrence' or 'terms'")
    if has_rec:
        rec = entry["recurrence"]
        if not isinstance(rec, dict) or not {"coeffs", "initial"} <= set(rec):
            raise ValueError(f"sequences[{k}].recurrence: needs 'coeffs' and 'initial'")
        offset = rec.get("offset", 0)
        if not isinstance(offset, int) or isinstance(offset, bool):
            raise ValueError(f"sequences[{k}].recurrence.offset: expected an integer")
        return RecurrenceSpec.recurrence(_int_list(rec["coeffs"], f"sequences[{k}].recurrence.coeffs"),
                                         _int_list(rec["initial"], f"sequences[{k}].recurrence.initial"),
                                         name, offset)
    terms = entry["terms"]
    if not isinstance(terms, list):
        raise ValueError(f"sequences[{k}].terms: expected a list of {{coeff, root}} tables")
    pairs = []
    for t, term in enumerate(terms):
        where = f"sequences[{k}].terms[{t}]"
        if not isinstance(term, dict) or set(term) != {"coeff", "root"}:
            raise ValueError(f"{where}: expected {{coeff = ..., root = ...}}")
        pairs.append((_rational(term["coeff"], where + ".coeff"), _rational(term["root"], where + ".root")))
    return RecurrenceSpec.exponential(pairs, name)


def family_from_dict(data: dict, text: str = "", path: str | None = None) -> ThueFamily:
    def fail(msg, seq=None, key=None):
        field = key if seq is None else f"sequences[{seq}]" + (f".{key}" if key else "")
        raise FamilyFileError(msg, path, _line_of(text, seq, key), field)

    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        fail(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})", key="schema_version")
    unknown = set(data) - {"schema_version", "name", "degree", "sequences"}
    if unknown:
        k = sorted(unknown)[0]
        fail(f"unknown top-level key {k!r}", key=k)
    seqs = data.get("sequences")
    if not isinstance(seqs, list) or not seqs:
        fail("'sequences' must be a non-empty array of tables", key="sequences")
    specs = []
    for k, entry in enumerate(seqs):
        try:
            specs.append(_sequence(entry, k))
        except KeyError as e:
            fail(f"sequences[{k}]: unknown key {e.args[0]!r}", k, e.args[0])
        except (ValueError, SplitThueError) as e:
            key = "recurrence" if isinstance(entry, dict) and "recurrence" in entry else "terms"
            fail(str(e), k, key)
    degree = data.get("degree")
    if degree is not None and degree != len(specs):
        fail(f"degree = {degree} but {len(specs)} sequences are given", key="degree")
    try:
        return ThueFamily(tuple(specs), str(data.get("name", Path(path).stem if path else "")))
    except (ValueError, SplitThueError) as e:
        fail(str(e), key="sequences")


def loads_family(text: str, path: str | None = None) -> ThueFamily:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        line = getattr(e, "lineno", None)
        if line is None:
            m = _AT_LINE.search(str(e))
            line = int(m.group(1)) if m else None
        raise FamilyFileError(f"TOML syntax error: {e}", path, line) from None
    return family_from_dict(data, text, path)


def load_family(path) -> ThueFamily:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise FamilyFileError(f"cannot read family file: {e.strerror}", str(p)) from None
    return loads_family(text, str(p))


def builtin_family(name: str) -> ThueFamily:
    """``"t1"`` or ``"fib_lucas"``, shipped with the package."""
    return load_family(Path(__file__).parent / "data" / f"{name}.toml")


def parse_n_range(spec: str) -> range:
    """``"a..b"`` (inclusive) or a single ``"n"``."""
    try:
        if ".." in spec:
            a, b = spec.split("..", 1)
            r = range(int(a), int(b) + 1)
        else:
            r = range(int(spec), int(spec) + 1)
    except ValueError:
        raise ValueError(f"cannot read n range {spec!r}; use a..b") from None
    if len(r) == 0:
        raise ValueError(f"n range {spec!r} is empty")
    if r.start < 0:
        raise ValueError("n must be non-negative")
    return r


@dataclass(frozen=True)
class RunConfig:
    family_path: str
    command: str
    n_range: range
    y_max: int = 1000
    precision: int = 256
    pohst_c: float = 0.01
    baker_c: float | None = None
    out: str | None = None
    fmt: str = "json"
    jobs: int = 1
    strategy: str = "root"

    def __post_init__(self):
        if self.precision < 64:
            raise ValueError("precision must be at least 64 bits")
        if len(self.n_range) == 0:
            raise ValueError("n range is empty")
        if self.fmt not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.y_max < 1:
            raise ValueError("y_max must be at least 1")
