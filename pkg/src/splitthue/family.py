"""The split Thue form ``f_n(x, y) = prod_i (x - G_i(n) y) - y^d``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import poly
from .errors import DegenerateInstance
from .sequences import RecurrenceSpec, eval_exact

_NMIN_SCAN = 64


@dataclass(frozen=True)
class ThueFamily:
    """``d`` sequences ``G_1, ..., G_d`` defining one split family.

    ``n_min`` is the least ``n`` from which the values ``G_i(n)`` are
    pairwise distinct throughout the scanned range ``[0, 64]``.
    """

    sequences: tuple[RecurrenceSpec, ...]
    name: str = ""
    conditions: object = field(default=None, compare=False)
    n_min: int = field(default=0, init=False)

    def __post_init__(self):
        seqs = tuple(self.sequences)
        if len(seqs) < 3:
            raise ValueError(f"a split family needs d >= 3 sequences, got {len(seqs)}")
        object.__setattr__(self, "sequences", seqs)
        last_bad = -1
        for n in range(_NMIN_SCAN + 1):
            vals = [eval_exact(s, n) for s in seqs]
            if len(set(vals)) < len(vals):
                last_bad = n
        object.__setattr__(self, "n_min", last_bad + 1)

    @property
    def degree(self) -> int:
        return len(self.sequences)

    def g_values(self, n: int) -> list[int]:
        return [eval_exact(s, n) for s in self.sequences]

    def with_conditions(self, report) -> "ThueFamily":
        return ThueFamily(self.sequences, self.name, report)


@dataclass(frozen=True)
class FormInstance:
    """``f_n`` for one parameter value.

    ``coefficients[k]`` is the coefficient of ``x^k y^(d-k)``, so the list
    doubles as the ascending coefficient list of ``f_n(x, 1)``.
    ``g_values`` are in family order, which is strictly increasing unless
    ``degenerate`` is set.
    """

    n: int
    d: int
    coefficients: tuple[int, ...]
    g_values: tuple[int, ...]
    degenerate: bool = False

    def __post_init__(self):
        expanded = poly.from_roots(self.g_values)
        expanded[0] -= 1
        if tuple(expanded) != tuple(self.coefficients):
            raise AssertionError("expanded coefficients disagree with the product form")
        if self.coefficients[-1] != 1 or len(self.coefficients) != self.d + 1:
            raise AssertionError("form is not monic of degree d")

    @property
    def poly_x(self) -> list[int]:
        """``f_n(x, 1)`` as an ascending integer coefficient list."""
        return list(self.coefficients)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "coefficients": [str(c) for c in self.coefficients],
            "g_values": [str(g) for g in self.g_values],
            "degenerate": self.degenerate,
        }


def instantiate(family: ThueFamily, n: int, allow_degenerate: bool = False) -> FormInstance:
    g = family.g_values(n)
    ok = all(a < b for a, b in zip(g, g[1:]))
    if not ok and not allow_degenerate:
        if len(set(g)) < len(g):
            raise DegenerateInstance(f"n={n}: coinciding values G(n) = {g}")
        raise DegenerateInstance(f"n={n}: values G(n) = {g} are not increasing in family order")
    coeffs = poly.from_roots(g)
    coeffs[0] -= 1
    return FormInstance(n, len(g), tuple(coeffs), tuple(g), not ok)


def evaluate_product(form: FormInstance, x: int, y: int) -> int:
    out = 1
    for g in form.g_values:
        out *= x - g * y
    return out - y**form.d


def evaluate(form: FormInstance, x: int, y: int) -> int:
    """``f_n(x, y)``; the expanded and product forms are cross-checked."""
    a = poly.eval_scaled(form.coefficients, x, y)
    b = evaluate_product(form, x, y)
    if a != b:
        raise AssertionError(f"f_{form.n}({x}, {y}): expanded {a} != product {b}")
    return a


@dataclass(frozen=True, order=True)
class SolutionRecord:
    n: int
    x: int
    y: int
    value: int
    trivial: bool = field(default=False, compare=False)
    type_j: int | None = field(default=None, compare=False)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.n, self.x, self.y)

    def as_dict(self) -> dict:
        return {"n": self.n, "x": str(self.x), "y": str(self.y), "value": self.value,
                "trivial": self.trivial, "type_j": self.type_j}


def _trivial_pairs(g: Sequence[int]):
    yield 1, 0
    yield -1, 0
    for v in g:
        yield v, 1
        yield -v, -1


def trivial_solutions(family: ThueFamily | FormInstance, n: int | None = None,
                      convention: str = "abs") -> set[SolutionRecord]:
    """The pairs ``(+-1, 0)`` and ``+-(G_i(n), 1)``.

    ``convention="abs"`` keeps all of them (``|f| = 1``); ``"plus"`` and
    ``"minus"`` keep only those with ``f = +1`` or ``f = -1``.
    """
    if isinstance(family, FormInstance):
        form = family
    else:
        form = instantiate(family, n, allow_degenerate=True)
    want = {"abs": (1, -1), "plus": (1,), "minus": (-1,)}[convention]
    out = set()
    for x, y in _trivial_pairs(form.g_values):
        v = evaluate(form, x, y)
        if v not in (1, -1):
            raise AssertionError(f"trivial pair ({x}, {y}) gives {v}")
        if v in want:
            out.add(SolutionRecord(form.n, x, y, v, trivial=True))
    return out


def is_trivial(form: FormInstance, x: int, y: int) -> bool:
    return (y == 0 and x in (1, -1)) or (y in (1, -1) and x * y in form.g_values)


@dataclass(frozen=True)
class SmallYReport:
    n: int
    solutions: frozenset
    zero_factor: frozenset
    product_two: frozenset
    product_two_impossible: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "solutions": [r.as_dict() for r in sorted(self.solutions)],
            "product_two": [r.as_dict() for r in sorted(self.product_two)],
            "product_two_impossible_by_distinctness": self.product_two_impossible,
        }


def classify_small_y(form: FormInstance) -> SmallYReport:
    """All solutions of ``f_n(x, y) = +-1`` with ``|y| <= 1``.

    ``y = 0`` forces ``x^d = +-1``.  For ``y = 1`` either some factor
    ``x - G_i`` vanishes or the product of the factors is 2; every factor
    then divides 2, so ``x`` lies within 2 of ``G_1`` and a five-point scan
    (plus the zeros ``x = G_i``) is exhaustive.  ``y = -1`` follows from
    ``f(-x, -y) = (-1)^d f(x, y)``.
    """
    d, n = form.d, form.n
    sols, zero, two = set(), set(), set()
    for x in (1, -1):
        v = evaluate(form, x, 0)
        sols.add(SolutionRecord(n, x, 0, v, trivial=True))
    g1 = form.g_values[0]
    for x in sorted(set(range(g1 - 2, g1 + 3)) | set(form.g_values)):
        prod = evaluate_product(form, x, 1) + 1
        if prod not in (0, 2):
            continue
        v = prod - 1
        for xx, yy, vv in ((x, 1, v), (-x, -1, v * (-1) ** d)):
            assert evaluate(form, xx, yy) == vv
            rec = SolutionRecord(n, xx, yy, vv, trivial=is_trivial(form, xx, yy))
            sols.add(rec)
            (zero if prod == 0 else two).add(rec)
    # d distinct integers dividing 2 are drawn from {1, -1, 2, -2} and at most
    # three of them multiply to +-2
    impossible = d >= 4 and not form.degenerate
    if impossible and two:
        raise AssertionError("product-two solution found where distinctness forbids one")
    return SmallYReport(n, frozenset(sols), frozenset(zero), frozenset(two), impossible)
