"""Finitely generated modules over Z and Z_(p), and Matlis duals over Z.

All modules are stored by canonical invariants (free rank plus primary
torsion), so isomorphism is equality.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import sympy
from sympy.utilities.iterables import partitions

from ..errors import InputError
from .snf import IntMatrix, cokernel, local_cokernel


def _is_prime(p):
    return isinstance(p, int) and p > 1 and bool(sympy.isprime(p))


def _relations(rank, orders):
    # generators: ``rank`` free ones first, then one per cyclic summand
    m = IntMatrix.zeros(rank + len(orders), len(orders))
    for j, a in enumerate(orders):
        m.data[rank + j][j] = a
    return m


@dataclass(frozen=True)
class FgZModule:
    """``Z^rank`` plus ``(Z/p^e)^mult`` for each ``(p, e, mult)`` in ``torsion``."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if int(self.rank) < 0:
            raise InputError("rank must be non-negative")
        counts = Counter()
        for entry in self.torsion:
            try:
                p, e, mult = (int(x) for x in entry)
            except (TypeError, ValueError):
                raise InputError(f"torsion entry {entry!r} is not a (p, e, mult) triple") from None
            if not _is_prime(p) or e < 1 or mult < 0:
                raise InputError(f"bad torsion entry {entry!r}")
            counts[(p, e)] += mult
        object.__setattr__(self, "rank", int(self.rank))
        object.__setattr__(self, "torsion", tuple(
            (p, e, m) for (p, e), m in sorted(counts.items()) if m))

    @classmethod
    def from_cyclic(cls, orders):
        """Direct sum of cyclic groups ``Z/a``; ``a = 0`` means ``Z``, ``a = 1`` is dropped."""
        rank, counts = 0, Counter()
        for a in orders:
            a = abs(int(a))
            if a == 0:
                rank += 1
            elif a > 1:
                for p, e in sympy.factorint(a).items():
                    counts[(p, e)] += 1
        return cls(rank, tuple((p, e, m) for (p, e), m in counts.items()))

    @classmethod
    def from_presentation(cls, relations):
        """Cokernel of an integer relation matrix (columns are relations)."""
        free, factors = cokernel(relations)
        return cls.from_cyclic([0] * free + factors)

    @property
    def is_finite(self):
        return self.rank == 0

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion

    def order(self):
        if self.rank:
            raise InputError("infinite module has no finite order")
        out = 1
        for p, e, m in self.torsion:
            out *= p ** (e * m)
        return out

    def cyclic_orders(self):
        """Primary decomposition as a list of orders, ``0`` standing for ``Z``."""
        return [0] * self.rank + [p ** e for p, e, m in self.torsion for _ in range(m)]

    def invariant_factors(self):
        """Torsion invariant factors ``d_1 | d_2 | ...`` (each > 1)."""
        by_prime = {}
        for p, e, m in self.torsion:
            by_prime.setdefault(p, []).extend([p ** e] * m)
        width = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * width
        for powers in by_prime.values():
            powers.sort()
            for k, q in enumerate(powers):
                factors[width - len(powers) + k] *= q
        return factors

    def support(self):
        """Primes ``p`` with non-zero p-torsion."""
        return sorted({p for p, _, _ in self.torsion})

    def p_part(self, p):
        return FgZModule(0, tuple(t for t in self.torsion if t[0] == p))

    def torsion_part(self):
        return FgZModule(0, self.torsion)

    def local_torsion(self, p):
        """``((e, mult), ...)`` of the p-primary part."""
        return tuple((e, m) for q, e, m in self.torsion if q == p)

    def __add__(self, other):
        return FgZModule(self.rank + other.rank, self.torsion + other.torsion)

    def presentation(self):
        """Injective relation matrix whose cokernel is this module."""
        return _relations(self.rank, [a for a in self.cyclic_orders() if a])

    def __str__(self):
        return _format(self.rank, "Z", [(f"Z/{p ** e}", m) for p, e, m in self.torsion])

    def to_json(self):
        return {"rank": self.rank, "torsion": [list(t) for t in self.torsion]}


@dataclass(frozen=True)
class LocalizedModule:
    """A finitely generated ``Z_(p)``-module: ``Z_(p)^rank`` plus ``(Z_(p)/p^e)^mult``."""

    p: int
    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InputError(f"{self.p} is not a prime")
        if int(self.rank) < 0:
            raise InputError("rank must be non-negative")
        counts = Counter()
        for entry in self.torsion:
            e, mult = (int(x) for x in entry)
            if e < 1 or mult < 0:
                raise InputError(f"bad torsion entry {entry!r}")
            counts[e] += mult
        object.__setattr__(self, "rank", int(self.rank))
        object.__setattr__(self, "torsion", tuple((e, m) for e, m in sorted(counts.items()) if m))

    @classmethod
    def from_exponents(cls, p, rank, exponents):
        return cls(p, rank, tuple(Counter(e for e in exponents if e > 0).items()))

    @classmethod
    def from_presentation(cls, p, relations):
        free, exps = local_cokernel(relations, p)
        return cls.from_exponents(p, free, exps)

    @property
    def is_finite(self):
        return self.rank == 0

    def exponents(self):
        return [e for e, m in self.torsion for _ in range(m)]

    def cyclic_orders(self):
        return [0] * self.rank + [self.p ** e for e in self.exponents()]

    def presentation(self):
        """Integer relation matrix whose cokernel over ``Z_(p)`` is this module."""
        return _relations(self.rank, [self.p ** e for e in self.exponents()])

    def as_z_module(self):
        """The underlying abelian group of the torsion part (a finite p-group)."""
        return FgZModule(0, tuple((self.p, e, m) for e, m in self.torsion))

    def __str__(self):
        p = self.p
        return _format(self.rank, f"Z_({p})", [(f"Z/{p ** e}", m) for e, m in self.torsion])

    def to_json(self):
        return {"p": self.p, "rank": self.rank, "torsion": [list(t) for t in self.torsion]}


@dataclass(frozen=True)
class MatlisModule:
    """``(Q/Z)^divisible_rank`` plus a finite module: the dual of a f.g. Z-module."""

    divisible_rank: int = 0
    finite_part: FgZModule = FgZModule()

    def __post_init__(self):
        if int(self.divisible_rank) < 0:
            raise InputError("divisible rank must be non-negative")
        if self.finite_part.rank:
            raise InputError("finite part of a Matlis module must have rank 0")

    def support(self):
        return self.finite_part.support()

    def __str__(self):
        parts = _format(self.divisible_rank, "Q/Z", [])
        if self.finite_part.is_zero:
            return parts
        rest = str(self.finite_part)
        return rest if parts == "0" else f"{parts} + {rest}"

    def to_json(self):
        return {"divisible_rank": self.divisible_rank, "finite": self.finite_part.to_json()}


def _format(rank, free_name, summands):
    parts = []
    if rank:
        parts.append(free_name if rank == 1 else f"{free_name}^{rank}")
    for name, m in summands:
        parts.append(name if m == 1 else f"({name})^{m}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# catalogues of finite abelian groups


def _partitions(n):
    """Partitions of ``n`` as descending lists of parts."""
    if n == 0:
        return [[]]
    out = []
    for part in partitions(n):
        out.append(sorted((k for k, m in part.items() for _ in range(m)), reverse=True))
    return sorted(out, reverse=True)


def p_groups(p, max_order):
    """All abelian p-groups of order at most ``max_order`` (including 0)."""
    out = []
    e = 0
    while p ** e <= max_order:
        for lam in _partitions(e):
            out.append(FgZModule(0, tuple((p, k, 1) for k in lam)))
        e += 1
    return out


def abelian_groups_of_order(n):
    """All abelian groups of order ``n`` up to isomorphism."""
    factors = sorted(sympy.factorint(n).items())
    out = [FgZModule()]
    for p, e in factors:
        out = [g + FgZModule(0, tuple((p, k, 1) for k in lam))
               for g in out for lam in _partitions(e)]
    return out


def finite_abelian_groups(max_order):
    """All finite abelian groups of order at most ``max_order``, by order."""
    return [g for n in range(1, max_order + 1) for g in abelian_groups_of_order(n)]
