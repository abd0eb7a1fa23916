"""Exact univariate polynomial arithmetic over the integers.

Polynomials are plain lists of Python ints in ascending order:
``[c0, c1, ..., cd]`` stands for ``c0 + c1*x + ... + cd*x**d``.  The zero
polynomial is ``[]``.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Poly = list  # list[int], ascending


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[int]) -> int:
    """Degree, with ``-1`` for the zero polynomial."""
    return len(trim(p)) - 1


def lead(p: Sequence[int]) -> int:
    p = trim(p)
    return p[-1] if p else 0


def add(p, q) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q) -> Poly:
    return add(p, [-c for c in q])


def mul(p, q) -> Poly:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c) -> Poly:
    return trim([c * a for a in p])


def from_roots(roots: Sequence[int]) -> Poly:
    """Expand ``prod (x - r)``."""
    out = [1]
    for r in roots:
        out = mul(out, [-r, 1])
    return out


def derivative(p) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p, x):
    """Horner evaluation; exact for int and Fraction arguments."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_scaled(p, num: int, den: int) -> int:
    """Return ``den**deg(p) * p(num/den)`` as an exact integer.

    For ``den > 0`` the result carries the sign of ``p(num/den)``.
    """
    p = trim(p)
    if not p:
        return 0
    d = len(p) - 1
    acc = 0
    dpow = 1
    # sum c_k num^k den^(d-k), accumulated from the top so powers of den grow
    for c in reversed(p):
        acc = acc * num + c * dpow
        dpow *= den
    return acc


def sign_at(p, x) -> int:
    """Exact sign of ``p(x)`` for an int or Fraction ``x``."""
    if isinstance(x, Fraction):
        v = eval_scaled(p, x.numerator, x.denominator)
    else:
        v = evaluate(p, x)
    return (v > 0) - (v < 0)


def content(p) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def primitive(p) -> Poly:
    """Divide by the positive content; the sign of the polynomial is kept."""
    p = trim(p)
    g = content(p)
    if g in (0, 1):
        return p
    return [c // g for c in p]


def compose_neg(p) -> Poly:
    """``p(-x)``."""
    return [c if i % 2 == 0 else -c for i, c in enumerate(p)]


def prem(a, b) -> Poly:
    """Pseudo-remainder: ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    db = len(b) - 1
    delta = len(a) - 1 - db
    if delta < 0:
        return a
    lb = b[-1]
    r = list(a)
    e = delta + 1
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [lb * c for c in r]
        for i, c in enumerate(b):
            r[i + k] -= lr * c
        r = trim(r)
        e -= 1
    if e > 0:
        r = [c * lb**e for c in r]
    return r


def exact_div(p, q) -> Poly:
    """Exact quotient of integer polynomials; raises if not exact."""
    p, q = trim(p), trim(q)
    dq = len(q) - 1
    if dq < 0:
        raise ZeroDivisionError("division by zero polynomial")
    out = [0] * max(len(p) - dq, 0)
    r = list(p)
    lq = q[-1]
    while r and len(r) - 1 >= dq:
        k = len(r) - 1 - dq
        c, rem = divmod(r[-1], lq)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c
        for i, a in enumerate(q):
            r[i + k] -= c * a
        r = trim(r)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return trim(out)


# -- Sturm sequences ------------------------------------------------------


def sturm_sequence(p) -> list[Poly]:
    """Sturm chain of ``p`` with integer members.

    Each member equals the classical ``-rem`` chain up to a positive
    factor, so sign-variation counts are unchanged.  Works for
    non-squarefree input: the count is then of distinct real roots.
    """
    p0 = primitive(p)
    p1 = primitive(derivative(p0))
    chain = [p0]
    if not p1:
        return chain
    chain.append(p1)
    while True:
        a, b = chain[-2], chain[-1]
        if len(b) == 1:
            break
        r = prem(a, b)
        if not r:
            break
        # prem multiplies by lc(b)^(delta+1); undo its sign
        if b[-1] < 0 and (len(a) - len(b) + 1) % 2 == 1:
            r = [-c for c in r]
        chain.append(primitive([-c for c in r]))
    return chain


def _variations(signs) -> int:
    last = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def variations_at(chain, num: int, den: int = 1) -> int:
    signs = []
    for q in chain:
        v = eval_scaled(q, num, den)
        signs.append((v > 0) - (v < 0))
    return _variations(signs)


def variations_at_infinity(chain, negative: bool = False) -> int:
    signs = []
    for q in chain:
        q = trim(q)
        s = (q[-1] > 0) - (q[-1] < 0)
        if negative and (len(q) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_roots(chain, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in ``(lo, hi]`` (zeros are skipped in the sign count)."""
    lo, hi = Fraction(lo), Fraction(hi)
    return (variations_at(chain, lo.numerator, lo.denominator)
            - variations_at(chain, hi.numerator, hi.denominator))


def count_real_roots(chain) -> int:
    return variations_at_infinity(chain, negative=True) - variations_at_infinity(chain)


def cauchy_bound(p) -> int:
    """Integer ``B`` with every complex root of ``p`` satisfying ``|z| < B``."""
    p = trim(p)
    lc = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=0)
    return 1 + -(-m // lc)


# -- resultants and discriminants ----------------------------------------


def resultant(a, b) -> int:
    """Resultant of two integer polynomials by the subresultant PRS.

    Follows the classical sub-resultant algorithm (Collins / Brown), with
    all intermediate divisions exact in Z[x].
    """
    a, b = trim(a), trim(b)
    if not a or not b:
        return 0
    ca, cb = content(a), content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    da, db = len(a) - 1, len(b) - 1
    if ca < 0:
        ca, a = -ca, [-c for c in a]
    if cb < 0:
        cb, b = -cb, [-c for c in b]
    t = ca**db * cb**da
    s = 1
    if da < db:
        a, b = b, a
        if da % 2 == 1 and db % 2 == 1:
            s = -1
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            break
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = prem(a, b)
        if not r:
            return 0
        divisor = g * h**delta
        a, b = b, [c // divisor for c in r]
        g = a[-1]
        if delta == 0:
            pass  # h unchanged
        else:
            h = g**delta // h ** (delta - 1)
    da = len(a) - 1
    lb = b[-1]
    if da == 0:
        return s * t
    # h^(1-da) * lb^da, exact
    hh = lb**da // h ** (da - 1)
    return s * t * hh


def discriminant(p) -> int:
    """``(-1)^(d(d-1)/2) * Res(p, p') / lc(p)``."""
    p = trim(p)
    d = len(p) - 1
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    res = resultant(p, derivative(p))
    q, r = divmod(res, p[-1])
    if r:
        raise ArithmeticError("resultant not divisible by leading coefficient")
    return -q if (d * (d - 1) // 2) % 2 else q


def to_str(p, var: str = "x") -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and c == 1:
            terms.append(mono)
        elif mono and c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(terms).replace("+ -", "- ") or "0"


def gcd_poly(a, b) -> Poly:
    """Primitive gcd in Z[x], normalised to a positive leading coefficient."""
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = primitive(prem(a, b))
        a, b = b, r
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def squarefree_part(p) -> Poly:
    g = gcd_poly(p, derivative(p))
    if len(g) <= 1:
        return primitive(p)
    return primitive(exact_div(scale(p, abs(g[-1]) ** (len(p) - len(g) + 1)), g))


# -- exact real-root isolation -------------------------------------------


def isolate_real_roots(p, width_bits: int = 0) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals ``(lo, hi)``, one per distinct real root.

    Sturm counting plus dyadic bisection, all in exact arithmetic.  Each
    returned interval satisfies ``hi - lo <= 2**-width_bits`` and contains
    exactly one root.  Exact rational roots come back as ``(r, r)``.
    """
    sf = squarefree_part(p)
    if len(sf) <= 1:
        return []
    chain = sturm_sequence(sf)
    b = cauchy_bound(sf)
    stack = [(Fraction(-b), Fraction(b))]
    found = []
    while stack:
        lo, hi = stack.pop()
        k = count_roots(chain, lo, hi)
        if k == 0:
            continue
        if k == 1:
            shi = sign_at(sf, hi)
            if shi == 0:
                found.append((hi, hi))
                continue
            if sign_at(sf, lo) * shi < 0:
                found.append(bisect_refine(sf, lo, hi, width_bits))
                continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    found.sort()
    return found


def bisect_refine(p, lo: Fraction, hi: Fraction, width_bits: int) -> tuple[Fraction, Fraction]:
    """Shrink a sign-change bracket of ``p`` to width ``<= 2**-width_bits``."""
    lo, hi = Fraction(lo), Fraction(hi)
    slo = sign_at(p, lo)
    shi = sign_at(p, hi)
    if slo * shi >= 0:
        raise ValueError("bracket does not show a sign change")
    target = Fraction(1, 2**width_bits) if width_bits >= 0 else Fraction(2 ** -width_bits)
    while hi - lo > target:
        mid = (lo + hi) / 2
        s = sign_at(p, mid)
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi
