"""Minimal univariate polynomial arithmetic over a prime field F_q.

Polynomials are tuples of coefficients in ascending degree order with no
trailing zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations

import itertools
import re

from .errors import InputError


def trim(coeffs, q):
    c = [int(a) % q for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f):
    return len(f) - 1


def make_monic(coeffs, q):
    f = trim(coeffs, q)
    if not f:
        raise InputError("the zero polynomial does not generate a prime ideal")
    inv = pow(f[-1], -1, q)
    return tuple((a * inv) % q for a in f)


def poly_rem(a, b, q):
    """Remainder of ``a`` modulo the monic polynomial ``b``."""
    r = list(a)
    db = degree(b)
    while len(r) - 1 >= db and r:
        lead = r[-1]
        shift = len(r) - 1 - db
        for k, c in enumerate(b):
            r[shift + k] = (r[shift + k] - lead * c) % q
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def monic_polys(q, d):
    """All monic polynomials of degree ``d``, ordered by descending-degree coefficients."""
    for tail in itertools.product(range(q), repeat=d):
        yield tuple(reversed(tail)) + (1,)


def is_irreducible(f, q):
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for g in monic_polys(q, k):
            if not poly_rem(f, g, q):
                return False
    return True


def monic_irreducibles(q):
    """Infinite stream of monic irreducibles in canonical order (degree first)."""
    for d in itertools.count(1):
        for f in monic_polys(q, d):
            if is_irreducible(f, q):
                yield f


def sort_key(f):
    return (degree(f), tuple(reversed(f)))


def format_poly(f):
    terms = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        mono = "x" if k == 1 else f"x^{k}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\^(\d+))?)?")


def parse_poly(text, q):
    """Parse ``"x^2+x+1"``-style text into an ascending coefficient tuple."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty polynomial")
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise InputError(f"cannot parse polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        k = 0 if not m.group(3) else int(m.group(4) or 1)
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    top = max(coeffs)
    return trim([coeffs.get(k, 0) for k in range(top + 1)], q)
