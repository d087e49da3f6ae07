"""Duality, (co)localization and membership oracles over Z.

Each check computes its two sides along different routes: local closed forms
against resolutions over Z, or closed forms against brute force on elements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod

import sympy

from ..charseq import CharacteristicSequence, bass_assassinators, validate_sequence
from ..errors import InputError, PreconditionError, UnsupportedError
from ..spectrum import ZERO, Integers, IntegerPrime
from .functors import homology_functor, homology_via_resolution
from .modules import (
    FgZModule,
    LocalizedModule,
    MatlisModule,
    finite_abelian_groups,
    p_groups,
)


@dataclass(frozen=True)
class Comparison:
    """Both sides of an isomorphism check, with the verdict.

    ``oracle`` optionally holds a third, brute-force value of the left side.
    """

    left: object
    right: object
    oracle: object = None

    @property
    def ok(self):
        return self.left == self.right and (self.oracle is None or self.oracle == self.left)

    def __bool__(self):
        return self.ok


def _prime(p):
    if isinstance(p, IntegerPrime):
        p = p.p
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise InputError(f"{p!r} is not a prime number")
    return p


def _require_finite(M, what="module"):
    if not isinstance(M, FgZModule):
        raise InputError(f"expected a finitely generated Z-module, got {type(M).__name__}")
    if M.rank:
        raise UnsupportedError(f"{what} has positive rank; its colocalization is not finite")
    return M


# ---------------------------------------------------------------------------
# duality and (co)localization


def matlis_dual(M):
    """``Hom(M, Q/Z)``: free summands become ``Q/Z``, the finite part is self-dual."""
    if not isinstance(M, FgZModule):
        raise InputError("matlis_dual expects a finitely generated Z-module")
    return MatlisModule(M.rank, M.torsion_part())


def localize_module(M, p):
    """``M (x) Z_(p)``: rank survives, only p-primary torsion survives."""
    p = _prime(p)
    return LocalizedModule(p, M.rank, M.local_torsion(p))


def colocalize_finite(M, p):
    """``Hom(Z_(p), M)`` for finite ``M``, which is its p-primary part."""
    p = _prime(p)
    return _require_finite(M).p_part(p)


def elements(M):
    """Every element of a finite module as a tuple in ``Z/a_1 x Z/a_2 x ...``."""
    orders = _require_finite(M).cyclic_orders()
    return orders, list(itertools.product(*(range(a) for a in orders)))


def group_from_elements(orders, subset):
    """Isomorphism type of a subgroup of ``Z/a_1 x ...`` given by its elements.

    Uses ``|H[l^k]|`` for each prime ``l`` and ``k``: the number of cyclic
    summands of order at least ``l^k`` is ``log_l |H[l^k]| / |H[l^(k-1)]|``.
    """
    subset = list(subset)
    size = len(subset)
    torsion = []
    for ell in sympy.primefactors(size):
        counts = [1]
        k = 0
        while counts[-1] < ell ** sympy.multiplicity(ell, size):
            k += 1
            q = ell ** k
            counts.append(sum(1 for x in subset
                              if all((q * c) % a == 0 for c, a in zip(x, orders))))
        at_least = []
        for j in range(1, len(counts)):
            ratio = counts[j] // counts[j - 1]
            at_least.append(sympy.multiplicity(ell, ratio) if ratio > 1 else 0)
        at_least.append(0)
        for j in range(len(at_least) - 1):
            mult = at_least[j] - at_least[j + 1]
            if mult:
                torsion.append((ell, j + 1, mult))
    return FgZModule(0, tuple(torsion))


def colocalize_inverse_limit(M, p):
    """``Hom(Z_(p), M)`` as the limit of ``M <-q- M <-q'- ...`` over primes ``q != p``.

    On a finite module the limit is the stable image of the multiplication
    maps, found here by iterating on explicit element sets until nothing
    changes. Shares no code with :func:`colocalize_finite`.
    """
    p = _prime(p)
    orders, elems = elements(M)
    if not orders:
        return FgZModule()
    qs = [q for q in sympy.primefactors(prod(orders)) if q != p]
    current = set(elems)
    while True:
        nxt = current
        for q in qs:
            nxt = {tuple((q * c) % a for c, a in zip(x, orders)) for x in nxt}
        if nxt == current:
            break
        current = nxt
    return group_from_elements(orders, current)


def matlis_dual_local(L):
    """Dual of a finite ``Z_(p)``-module, as an abelian group."""
    if L.rank:
        raise UnsupportedError("dual of a module with free part is not finite")
    return L.as_z_module()


# ---------------------------------------------------------------------------
# localization identities


def _z_lattice(B):
    """A f.g. Z-module whose localization at ``B.p`` is ``B``."""
    return FgZModule(B.rank, tuple((B.p, e, m) for e, m in B.torsion))


def verify_cartanei(part, A, B, p, i):
    """Check the Ext identities relating Z and Z_(p) on concrete modules.

    Part ``"a"``: ``Ext^i_{Z_(p)}(A_(p), B) = Ext^i_Z(A, B)`` for a f.g. Z-module
    ``A`` and a Z_(p)-module ``B``. Part ``"b"``: ``Ext^i_{Z_(p)}(A, Hom(Z_(p), B))
    = Ext^i_Z(A, B)`` for a Z_(p)-module ``A`` and a finite Z-module ``B``.

    The left side is always evaluated with local closed forms, the right side
    with free resolutions over Z. Z_(p)-free summands, which are not finitely
    generated over Z, are handled on the right as follows. In part (a),
    ``Ext_Z(A, Z_(p))`` is ``Ext_Z(A, Z)`` localized. In part (b),
    ``Hom_Z(Z_(p), B)`` is the inverse-limit oracle and ``Ext^1_Z(Z_(p), B)``
    vanishes for finite ``B`` (the tower is eventually constant).
    """
    p = _prime(p)
    part = str(part).lower()
    i = int(i)
    if part == "a":
        if not isinstance(A, FgZModule):
            raise InputError("part a: A must be a finitely generated Z-module")
        if not isinstance(B, LocalizedModule) or B.p != p:
            raise InputError(f"part a: B must be a Z_({p})-module")
        left = homology_functor("ext", i, localize_module(A, p), B)
        right = localize_module(homology_via_resolution("ext", i, A, _z_lattice(B)), p)
        return Comparison(left, right)
    if part == "b":
        if not isinstance(A, LocalizedModule) or A.p != p:
            raise InputError(f"part b: A must be a Z_({p})-module")
        if not isinstance(B, FgZModule) or B.rank:
            raise InputError("part b: B must be a finite Z-module")
        coloc = colocalize_finite(B, p)
        left = homology_functor("ext", i, A, LocalizedModule(p, 0, coloc.local_torsion(p)))
        left = left.as_z_module()
        right = homology_via_resolution("ext", i, A.as_z_module(), B)
        if A.rank and i == 0:
            lim = colocalize_inverse_limit(B, p)
            for _ in range(A.rank):
                right = right + lim
        return Comparison(left, right)
    raise InputError(f"part must be 'a' or 'b', got {part!r}")


def verify_dual_coloc(N, p):
    """Colocalization of ``N*`` against the dual of the localization ``N_(p)``.

    The left side is also recomputed with the inverse-limit oracle; the
    right side dualizes the localized module.
    """
    p = _prime(p)
    _require_finite(N)
    dual = matlis_dual(N).finite_part
    right = matlis_dual_local(localize_module(N, p))
    return Comparison(colocalize_finite(dual, p), right, colocalize_inverse_limit(dual, p))


# ---------------------------------------------------------------------------
# membership


def ass_cosyzygy(M, i, ring=None):
    """Associated primes of the ``i``-th cosyzygy in a minimal injective coresolution."""
    ring = Integers() if ring is None else ring
    if not isinstance(ring, Integers):
        raise InputError("associated primes of cosyzygies are only computed over Z")
    i = int(i)
    if i < 0:
        raise InputError("cosyzygy degree must be non-negative")
    if isinstance(M, FgZModule):
        supp = ring.prime_set(IntegerPrime(q) for q in M.support())
        if i == 0:
            return supp | ring.prime_set([ZERO]) if M.rank else supp
        if i == 1:
            return supp | ring.maximal_set() if M.rank else supp
        return ring.empty_set()
    if isinstance(M, MatlisModule):
        supp = ring.prime_set(IntegerPrime(q) for q in M.support())
        if i == 0:
            return supp | ring.maximal_set() if M.divisible_rank else supp
        return supp if i == 1 else ring.empty_set()
    raise InputError(f"unsupported module type {type(M).__name__}")


def _check_sequence(seq):
    if not isinstance(seq, CharacteristicSequence):
        raise InputError("expected a CharacteristicSequence")
    if not isinstance(seq.ring, Integers):
        raise InputError(f"membership is only implemented over Z, not {seq.ring}")
    verdict = validate_sequence(seq)
    if not verdict.ok:
        raise PreconditionError("sequence is not a characteristic sequence", verdict.violations)


def cotilting_membership(M, seq):
    """Whether ``Ass Omega^{-i} M`` lies in ``P_i`` for every ``i < n``."""
    _check_sequence(seq)
    return all(ass_cosyzygy(M, i, seq.ring) <= level for i, level in enumerate(seq.levels))


def _test_primes(ring, N, level):
    """Maximal ideals outside ``level`` on which Tor can behave differently.

    Primes outside the support of ``N`` all give the same answer, so one
    representative of that class is enough.
    """
    outside = ring.maximal_set() - level
    supp = ring.prime_set(IntegerPrime(q) for q in N.support())
    primes = list((outside & supp).elements())
    generic = outside - supp
    if not generic.is_empty():
        primes.append(generic.some_element())
    return primes


def tilting_membership(N, seq):
    """Whether ``Tor_i(N, Z/p) = 0`` for every ``i < n`` and every ``(p)`` outside ``P_i``.

    The zero ideal is never a test prime: a characteristic sequence over a
    domain always has ``(0)`` in ``P_0``.
    """
    _check_sequence(seq)
    if not isinstance(N, FgZModule):
        raise InputError("tilting membership expects a finitely generated Z-module")
    for i, level in enumerate(seq.levels):
        if i >= 2:
            break
        for prime in _test_primes(seq.ring, N, level):
            residue = FgZModule.from_cyclic([prime.p])
            if not homology_functor("tor", i, N, residue).is_zero:
                return False
    return True


def bass_number_oracle(prime, i):
    """``mu_i(p, Z)``, the multiplicity of ``E(Z/p)`` in the minimal coresolution of Z.

    For a maximal ``(p)`` this is ``dim Ext^i_{Z_(p)}(F_p, Z_(p))``, computed by
    resolutions. For ``(0)`` it is ``dim_Q Ext^i_Z(Z, Z) (x) Q``, the rank.
    """
    i = int(i)
    if i < 0:
        raise InputError("degree must be non-negative")
    if i >= 2:
        return 0
    if prime == ZERO or prime == 0:
        value = homology_via_resolution("ext", i, FgZModule(1), FgZModule(1))
        return value.rank
    p = _prime(prime)
    value = homology_via_resolution("ext", i, LocalizedModule(p, 0, ((1, 1),)), LocalizedModule(p, 1))
    if value.rank:
        raise InputError("Ext of the residue field should be torsion")
    return sum(m for _, m in value.torsion)


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        return {"sweep": self.name, "checked": self.checked, "ok": self.ok,
                "failures": [str(f) for f in self.failures]}


def sweep_cartanei(part, max_order=32, primes=(2, 3), degrees=(1, 2)):
    """Both Ext identities over all p-groups up to ``max_order``.

    Part a pairs every finite module of order at most ``max_order`` with
    every p-group; part b pairs every p-group with every finite module.
    """
    part = str(part).lower()
    res = SweepResult(f"cartanei-{part}")
    everything = finite_abelian_groups(max_order)
    for p in primes:
        local = [LocalizedModule(p, 0, g.local_torsion(p)) for g in p_groups(p, max_order)]
        pairs = ([(A, B) for A in everything for B in local] if part == "a"
                 else [(A, B) for A in local for B in everything])
        for A, B in pairs:
            for i in degrees:
                res.checked += 1
                cmp = verify_cartanei(part, A, B, p, i)
                if not cmp.ok:
                    res.failures.append((p, i, str(A), str(B), str(cmp.left), str(cmp.right)))
    return res


def sweep_dual_coloc(max_order=64, primes=(2, 3, 5)):
    res = SweepResult("dual-coloc")
    for N in finite_abelian_groups(max_order):
        for p in primes:
            res.checked += 1
            cmp = verify_dual_coloc(N, p)
            if not cmp.ok:
                res.failures.append((p, str(N), str(cmp.left), str(cmp.right)))
    return res


def sweep_colocalization(max_order=256, primes=(2, 3, 5)):
    res = SweepResult("colocalization")
    for N in finite_abelian_groups(max_order):
        for p in primes:
            res.checked += 1
            a, b = colocalize_finite(N, p), colocalize_inverse_limit(N, p)
            if a != b:
                res.failures.append((p, str(N), str(a), str(b)))
    return res


def sweep_bass(primes=(2, 3, 5, 7)):
    """Bass numbers of Z against the hard-wired associated-prime data."""
    res = SweepResult("bass")
    ring = Integers()
    cases = [(ZERO, i) for i in (0, 1, 2)] + [(IntegerPrime(p), i) for p in primes for i in (0, 1, 2)]
    for prime, i in cases:
        res.checked += 1
        mu = bass_number_oracle(prime, i)
        expected = prime in bass_assassinators(ring, i)
        if (mu > 0) != expected:
            res.failures.append((prime.label, i, mu))
    return res



def _factor_chains(max_factor, max_length):
    """Chains ``d_1 | d_2 | ...`` with ``1 < d_j <= max_factor``."""
    out = [()]
    frontier = [()]
    for _ in range(max_length):
        nxt = []
        for chain in frontier:
            start = chain[-1] if chain else 1
            for d in range(start if chain else 2, max_factor + 1, start):
                nxt.append(chain + (d,))
        out += nxt
        frontier = nxt
    return out


def membership_modules(max_factor=16, max_rank=2, max_length=3):
    """F.g. Z-modules of rank at most ``max_rank`` with at most ``max_length``
    invariant factors, each at most ``max_factor``."""
    return [FgZModule.from_cyclic([0] * r + list(chain))
            for r in range(max_rank + 1) for chain in _factor_chains(max_factor, max_length)]


def truncated_sequences(primes=(2, 3, 5, 7, 11), lengths=(1, 2, 3)):
    """Characteristic sequences over Z seen through finitely many primes.

    On the truncation a sequence is ``(0)`` plus any subset ``S`` of ``primes`` at
    level 0, with every later level full. Each ``S`` is lifted to Z twice: with
    no other maximal ideal, and with every maximal ideal outside ``primes``.
    """
    ring = Integers()
    labels = [IntegerPrime(p) for p in primes]
    out = []
    for n in lengths:
        for k in range(len(labels) + 1):
            for S in itertools.combinations(labels, k):
                rest = [m for m in labels if m not in S]
                for level0 in (ring.dim_one_set(True, False, S), ring.dim_one_set(True, True, rest)):
                    out.append(CharacteristicSequence(ring, (level0,) + (ring.full_set(),) * (n - 1)))
    return out


def sweep_membership_duality(max_factor=16, max_rank=2, max_length=3,
                             primes=(2, 3, 5, 7, 11), lengths=(1, 2, 3)):
    """``tilting_membership(N, P) == cotilting_membership(N*, P)`` on every pair."""
    res = SweepResult("membership-duality")
    seqs = truncated_sequences(primes, lengths)
    for N in membership_modules(max_factor, max_rank, max_length):
        dual = matlis_dual(N)
        for seq in seqs:
            res.checked += 1
            t, c = tilting_membership(N, seq), cotilting_membership(dual, seq)
            if t != c:
                res.failures.append((str(N), str(seq), t, c))
    return res
