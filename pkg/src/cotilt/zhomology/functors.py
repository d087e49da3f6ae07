"""Hom, tensor, Ext and Tor over Z and Z_(p).

Two independent routes are provided. :func:`homology_functor` uses gcd rules
on cyclic summands. :func:`homology_via_resolution` builds the two-term free
resolutions of both arguments, forms the relevant Kronecker-product maps and
reads the answer off Smith normal forms. Both rings have global dimension 1,
so every degree ``i >= 2`` vanishes.
"""
from __future__ import annotations

from math import gcd

from ..errors import InputError
from .modules import FgZModule, LocalizedModule
from .snf import (
    IntMatrix,
    column_basis,
    hstack,
    kernel_basis,
    kron,
    subquotient,
)

KINDS = ("hom", "tensor", "ext", "tor")


def _normalize(kind, i):
    kind = str(kind).lower()
    if kind not in KINDS:
        raise InputError(f"unknown functor {kind!r}; expected one of {', '.join(KINDS)}")
    i = int(i)
    if i < 0:
        raise InputError("degree must be non-negative")
    if kind in ("hom", "tensor") and i != 0:
        raise InputError(f"{kind} only exists in degree 0")
    if kind == "ext" and i == 0:
        kind = "hom"
    if kind == "tor" and i == 0:
        kind = "tensor"
    return kind, i


def _base(A, B):
    if isinstance(A, FgZModule) and isinstance(B, FgZModule):
        return None
    if isinstance(A, LocalizedModule) and isinstance(B, LocalizedModule):
        if A.p != B.p:
            raise InputError(f"modules live over Z_({A.p}) and Z_({B.p})")
        return A.p
    raise InputError("both modules must be over the same base ring (Z or the same Z_(p))")


def _pair_order(kind, a, b):
    """Order of the functor on cyclic summands Z/a, Z/b (``0`` means free of rank 1)."""
    if kind == "tensor":
        return gcd(a, b)
    if kind == "hom":
        if a == 0:
            return b
        return 0 if b == 0 else gcd(a, b)
    if kind == "ext":
        return 0 if a == 0 else gcd(a, b)
    return gcd(a, b) if a and b else 1


def _pair_vanishes(kind, a, b):
    if kind == "hom":
        return a != 0 and b == 0
    if kind == "ext":
        return a == 0
    if kind == "tor":
        return a == 0 or b == 0
    return False


def _zero(p):
    return FgZModule() if p is None else LocalizedModule(p)


def _from_orders(p, orders):
    if p is None:
        return FgZModule.from_cyclic(orders)
    rank = sum(1 for a in orders if a == 0)
    exps = []
    for a in orders:
        e = 0
        while a and a % p == 0:
            a //= p
            e += 1
        exps.append(e)
    return LocalizedModule.from_exponents(p, rank, exps)


def homology_functor(kind, i, A, B):
    """``Hom``/``tensor``/``Ext^i``/``Tor_i`` of two modules over Z or Z_(p), by gcd rules."""
    kind, i = _normalize(kind, i)
    p = _base(A, B)
    if i >= 2:
        return _zero(p)
    orders = [_pair_order(kind, a, b)
              for a in A.cyclic_orders() for b in B.cyclic_orders()
              if not _pair_vanishes(kind, a, b)]
    return _from_orders(p, orders)


# ---------------------------------------------------------------------------
# resolution route


def _identity(n):
    return IntMatrix.identity(n)


def _neg(m):
    return IntMatrix([[-x for x in row] for row in m.data], m.rows, m.cols)


def _project(m, k):
    return IntMatrix(m.data[:k], k, m.cols)


def _kernel_mod(phi, target_rel):
    """Lattice ``{x : phi x in im target_rel}`` as a column basis."""
    stacked = hstack(phi, _neg(target_rel))
    K = _project(kernel_basis(stacked), phi.cols)
    return column_basis(K)


def relation_matrix(kind, RA, RB):
    """Integer relation matrix whose cokernel is the functor value over Z.

    ``RA`` (``ga x ra``) and ``RB`` (``gb x rb``) are injective presentations
    ``0 -> Z^ra -> Z^ga -> A -> 0``. Maps on ``Hom(Z^g, B) = B^g`` are written
    in column-major coordinates, so precomposition with ``RA`` is
    ``RA^T (x) I``.
    """
    ga, ra = RA.rows, RA.cols
    gb, rb = RB.rows, RB.cols
    if kind == "tensor":
        return hstack(kron(RA, _identity(gb)), kron(_identity(ga), RB))
    if kind == "ext":
        return hstack(kron(RA.T, _identity(gb)), kron(_identity(ra), RB))
    if kind == "hom":
        phi = kron(RA.T, _identity(gb))
        K = _kernel_mod(phi, kron(_identity(ra), RB))
        return subquotient(K, kron(_identity(ga), RB))
    # tor: kernel of Z^ra (x) B -> Z^ga (x) B
    phi = kron(RA, _identity(gb))
    K = _kernel_mod(phi, kron(_identity(ga), RB))
    return subquotient(K, kron(_identity(ra), RB))


def homology_via_resolution(kind, i, A, B):
    """Same contract as :func:`homology_functor`, computed from free resolutions.

    Z_(p)-modules are presented by integer matrices whose localization is the
    module; since localization is exact, the Z-level answer is localized at
    the end with a separate p-adic elimination.
    """
    kind, i = _normalize(kind, i)
    p = _base(A, B)
    if i >= 2:
        return _zero(p)
    rel = relation_matrix(kind, A.presentation(), B.presentation())
    if p is None:
        return FgZModule.from_presentation(rel)
    return LocalizedModule.from_presentation(p, rel)

