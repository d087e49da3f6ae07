"""Prime spectra of the supported rings, modelled as finite or dimension-one posets.

Four ring presentations are supported:

* :class:`Integers` and :class:`PolyOverPrimeField` -- dimension-one domains whose
  spectrum is ``{(0)}`` plus infinitely many maximal ideals;
* :class:`IntegerQuotient` -- ``Z/n``, an artinian ring whose spectrum is the finite
  antichain of primes dividing ``n``;
* :class:`Synthetic` -- an arbitrary finite poset with declared Bass data.

Subsets of a spectrum are :class:`PrimeSet` values. Each ring uses exactly one
canonical representation, so ``==`` on prime sets is extensional equality.
Local primes (primes of ``R_m``) are represented by their global preimages.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass

import sympy

from . import polyfq
from .errors import InputError, UnsupportedError


# ---------------------------------------------------------------------------
# prime ideals


class PrimeIdeal:
    """Base class of the per-ring prime representations."""

    __slots__ = ()

    @property
    def label(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Zero(PrimeIdeal):
    """The zero ideal of a domain."""

    @property
    def label(self):
        return "(0)"


@dataclass(frozen=True)
class IntegerPrime(PrimeIdeal):
    p: int

    def __post_init__(self):
        object.__setattr__(self, "p", abs(int(self.p)))

    @property
    def label(self):
        return f"({self.p})"


@dataclass(frozen=True)
class IrreduciblePoly(PrimeIdeal):
    """The ideal generated by a monic irreducible polynomial over F_q."""

    q: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", polyfq.make_monic(self.coeffs, self.q))

    @property
    def label(self):
        return f"({polyfq.format_poly(self.coeffs)})"


@dataclass(frozen=True)
class SyntheticNode(PrimeIdeal):
    name: str

    @property
    def label(self):
        return self.name


ZERO = Zero()

_PAREN = re.compile(r"^\s*\(\s*(.*?)\s*\)\s*$")


def _strip_parens(label):
    m = _PAREN.match(str(label))
    return m.group(1) if m else str(label).strip()


# ---------------------------------------------------------------------------
# synthetic spectra


def iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SpectrumPoset:
    """A finite poset standing in for ``Spec R``.

    ``order`` holds the strict containments ``(a, b)`` meaning ``a < b``, already
    transitively closed; use :meth:`build` to construct from generating pairs.
    Bass data is either an explicit map ``i -> labels`` or ``gorenstein_heights``,
    under which ``Ass Omega^{-i}(R)`` is the set of height-``i`` nodes.
    """

    nodes: tuple
    order: frozenset
    maximal: frozenset
    height: tuple
    bass: tuple | None = None
    gorenstein_heights: bool = False

    @classmethod
    def build(cls, nodes, order=(), maximal=None, height=None, bass=None,
              gorenstein_heights=False):
        nodes = tuple(str(v) for v in nodes)
        if len(set(nodes)) != len(nodes):
            raise InputError("duplicate node labels in synthetic spectrum")
        known = set(nodes)
        pairs = set()
        for a, b in order:
            a, b = str(a), str(b)
            if a not in known or b not in known:
                raise InputError(f"order pair ({a}, {b}) names an unknown node")
            if a == b:
                raise InputError(f"order pair ({a}, {a}) is reflexive; give strict pairs")
            pairs.add((a, b))
        closed = _transitive_closure(nodes, pairs)
        if any((b, a) in closed for a, b in closed) or any(a == b for a, b in closed):
            raise InputError("order relation has a cycle")
        order_max = frozenset(v for v in nodes if not any(a == v for a, _ in closed))
        maximal = order_max if maximal is None else frozenset(str(v) for v in maximal)
        if height is None:
            height = _longest_chain_heights(nodes, closed)
        elif isinstance(height, dict):
            try:
                height = tuple(int(height[v]) for v in nodes)
            except KeyError as exc:
                raise InputError(f"height missing for node {exc.args[0]}") from None
        else:
            height = tuple(int(h) for h in height)
        if bass is not None:
            bass = tuple(sorted((int(i), frozenset(str(v) for v in vs))
                                for i, vs in dict(bass).items()))
        return cls(nodes, frozenset(closed), maximal, height, bass, bool(gorenstein_heights))

    def __post_init__(self):
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise InputError("duplicate node labels in synthetic spectrum")
        if not self.nodes:
            raise InputError("a spectrum needs at least one prime")
        for a, b in self.order:
            if a not in known or b not in known or a == b:
                raise InputError(f"bad order pair ({a}, {b})")
        if _transitive_closure(self.nodes, set(self.order)) != set(self.order):
            raise InputError("order relation is not transitively closed; use SpectrumPoset.build")
        if any((b, a) in self.order for a, b in self.order):
            raise InputError("order relation has a cycle")
        order_max = {v for v in self.nodes if not any(a == v for a, _ in self.order)}
        if set(self.maximal) != order_max:
            raise InputError("declared maximal nodes differ from the order-maximal nodes")
        if len(self.height) != len(self.nodes) or any(h < 0 for h in self.height):
            raise InputError("height must give a non-negative integer per node")
        idx = {v: i for i, v in enumerate(self.nodes)}
        for a, b in self.order:
            if self.height[idx[a]] >= self.height[idx[b]]:
                raise InputError(f"height is not order-monotone on {a} < {b}")
        for v in self.nodes:
            if not any(b == v for _, b in self.order) and self.height[idx[v]] != 0:
                raise InputError(f"minimal node {v} must have height 0")
        if self.bass is not None:
            for _, vs in self.bass:
                if not set(vs) <= known:
                    raise InputError("bass data names an unknown node")

    @functools.cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.nodes)}

    @functools.cached_property
    def down(self):
        """``down[i]``: bitmask of nodes ``<=`` node ``i`` (inclusive)."""
        masks = [1 << i for i in range(len(self.nodes))]
        for a, b in self.order:
            masks[self.index[b]] |= 1 << self.index[a]
        return tuple(masks)

    @functools.cached_property
    def up(self):
        masks = [1 << i for i in range(len(self.nodes))]
        for a, b in self.order:
            masks[self.index[a]] |= 1 << self.index[b]
        return tuple(masks)

    @functools.cached_property
    def full_mask(self):
        return (1 << len(self.nodes)) - 1

    @functools.cached_property
    def maximal_mask(self):
        return sum(1 << self.index[v] for v in self.maximal)

    @functools.cached_property
    def _lower_masks(self):
        ideals = [0]
        for v in sorted(range(len(self.nodes)), key=lambda k: self.height[k]):
            below = self.down[v] ^ (1 << v)
            ideals += [s | 1 << v for s in ideals if below & ~s == 0]
        return frozenset(ideals)

    def is_lower_mask(self, mask):
        if len(self.nodes) <= 16:
            return mask in self._lower_masks
        down = self.down
        return all(down[i] & ~mask == 0 for i in iter_bits(mask))

    def bass_mask(self, i):
        """Bitmask of ``Ass Omega^{-i}(R)``, or None when no Bass data is declared."""
        if self.gorenstein_heights:
            return sum(1 << k for k, h in enumerate(self.height) if h == i)
        if self.bass is None:
            return None
        for j, vs in self.bass:
            if j == i:
                return sum(1 << self.index[v] for v in vs)
        return 0


def _transitive_closure(nodes, pairs):
    succ = {v: set() for v in nodes}
    for a, b in pairs:
        succ[a].add(b)
    closed = set()
    for v in nodes:
        stack, seen = list(succ[v]), set()
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            if w == v:
                raise InputError("order relation has a cycle")
            stack.extend(succ[w])
        closed.update((v, w) for w in seen)
    return closed


def _longest_chain_heights(nodes, closed):
    below = {v: [a for a, b in closed if b == v] for v in nodes}

    @functools.lru_cache(maxsize=None)
    def h(v):
        return 1 + max((h(a) for a in below[v]), default=-1)

    return tuple(h(v) for v in nodes)


# ---------------------------------------------------------------------------
# prime sets


class PrimeSet:
    """A finitely represented subset of ``Spec R`` for a fixed ring."""

    ring: "RingDescriptor"

    def _peer(self, other):
        if not isinstance(other, PrimeSet):
            raise InputError(f"expected a PrimeSet, got {type(other).__name__}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise InputError("prime sets belong to different rings")
        return other

    def union(self, other):
        return self | other

    def intersection(self, other):
        return self & other

    def difference(self, other):
        return self - other

    def issubset(self, other):
        return self <= other

    def __sub__(self, other):
        return self & ~self._peer(other)

    def __le__(self, other):
        return (self - other).is_empty()

    def __ge__(self, other):
        return self._peer(other) <= self

    def __invert__(self):
        return self.complement()

    def is_finite(self):
        return True

    def elements(self):
        """Members in canonical ring order; only for finite sets."""
        raise NotImplementedError

    def some_element(self):
        """The canonically smallest member, or None for the empty set."""
        els = self.elements()
        return els[0] if els else None

    def __str__(self):
        if not self.is_finite():
            return repr(self)
        return "{" + ", ".join(p.label for p in self.elements()) + "}"


@dataclass(frozen=True)
class FinitePrimeSet(PrimeSet):
    """Explicit list of primes; used for finite spectra of built-in rings."""

    ring: "RingDescriptor"
    elems: frozenset = frozenset()

    def __post_init__(self):
        elems = frozenset(self.elems)
        for p in elems:
            self.ring.check_prime(p)
        object.__setattr__(self, "elems", elems)

    def __contains__(self, p):
        return p in self.elems

    def __or__(self, other):
        return FinitePrimeSet(self.ring, self.elems | self._peer(other).elems)

    def __and__(self, other):
        return FinitePrimeSet(self.ring, self.elems & self._peer(other).elems)

    def complement(self):
        return FinitePrimeSet(self.ring, self.ring.all_primes - self.elems)

    def is_empty(self):
        return not self.elems

    def elements(self):
        return sorted(self.elems, key=self.ring.prime_key)

    def __repr__(self):
        return f"FinitePrimeSet({self.ring}, {self})"


@dataclass(frozen=True)
class DimOneSet(PrimeSet):
    """Subset of the spectrum of a dimension-one domain.

    ``zero`` flags membership of ``(0)``. The maximal part is ``maxes`` when
    ``cofinite`` is false and all maximal ideals except ``maxes`` otherwise.
    """

    ring: "RingDescriptor"
    zero: bool = False
    cofinite: bool = False
    maxes: frozenset = frozenset()

    def __post_init__(self):
        if not getattr(self.ring, "dimension_one", False):
            raise InputError("DimOneSet is only defined over dimension-one rings")
        maxes = frozenset(self.maxes)
        for m in maxes:
            self.ring.check_prime(m)
            if m == ZERO:
                raise InputError("(0) belongs in the zero flag, not the maximal part")
        object.__setattr__(self, "maxes", maxes)
        object.__setattr__(self, "zero", bool(self.zero))
        object.__setattr__(self, "cofinite", bool(self.cofinite))

    def __contains__(self, p):
        if p == ZERO:
            return self.zero
        return (p in self.maxes) != self.cofinite and self.ring.is_prime(p)

    def __or__(self, other):
        o = self._peer(other)
        zero = self.zero or o.zero
        if not self.cofinite and not o.cofinite:
            return DimOneSet(self.ring, zero, False, self.maxes | o.maxes)
        if self.cofinite and o.cofinite:
            return DimOneSet(self.ring, zero, True, self.maxes & o.maxes)
        cof, fin = (self, o) if self.cofinite else (o, self)
        return DimOneSet(self.ring, zero, True, cof.maxes - fin.maxes)

    def __and__(self, other):
        return ~(~self | ~self._peer(other))

    def complement(self):
        return DimOneSet(self.ring, not self.zero, not self.cofinite, self.maxes)

    def is_empty(self):
        return not self.zero and not self.cofinite and not self.maxes

    def is_finite(self):
        return not self.cofinite

    def has_maximal(self):
        return self.cofinite or bool(self.maxes)

    def elements(self):
        if self.cofinite:
            raise UnsupportedError("cannot list a cofinite set of maximal ideals")
        out = [ZERO] if self.zero else []
        return out + sorted(self.maxes, key=self.ring.prime_key)

    def some_element(self):
        if self.zero:
            return ZERO
        if not self.cofinite:
            return min(self.maxes, key=self.ring.prime_key) if self.maxes else None
        return next(m for m in self.ring.iter_maximal() if m not in self.maxes)

    def __repr__(self):
        parts = ["(0)"] if self.zero else []
        labels = ", ".join(m.label for m in sorted(self.maxes, key=self.ring.prime_key))
        if self.cofinite:
            parts.append(f"all maximal except {{{labels}}}" if labels else "all maximal")
        elif labels:
            parts.append(labels)
        return "{" + ", ".join(parts) + "}"

    __str__ = __repr__


@dataclass(frozen=True)
class BitsetPrimeSet(PrimeSet):
    """Subset of a synthetic spectrum; bit ``i`` is node ``i``."""

    ring: "RingDescriptor"
    mask: int = 0

    def __post_init__(self):
        if not isinstance(self.ring, Synthetic):
            raise InputError("bitset prime sets are only defined over synthetic rings")
        if self.mask < 0 or self.mask & ~self.ring.spectrum.full_mask:
            raise InputError("bitset has bits outside the spectrum")

    def __contains__(self, p):
        i = self.ring.spectrum.index.get(getattr(p, "name", None))
        return i is not None and bool(self.mask >> i & 1)

    def __or__(self, other):
        return BitsetPrimeSet(self.ring, self.mask | self._peer(other).mask)

    def __and__(self, other):
        return BitsetPrimeSet(self.ring, self.mask & self._peer(other).mask)

    def __sub__(self, other):
        return BitsetPrimeSet(self.ring, self.mask & ~self._peer(other).mask)

    def __le__(self, other):
        return self.mask & ~self._peer(other).mask == 0

    def complement(self):
        return BitsetPrimeSet(self.ring, self.ring.spectrum.full_mask ^ self.mask)

    def is_empty(self):
        return self.mask == 0

    def elements(self):
        nodes = self.ring.spectrum.nodes
        return [SyntheticNode(nodes[i]) for i in iter_bits(self.mask)]

    def __repr__(self):
        return f"BitsetPrimeSet({self})"


# ---------------------------------------------------------------------------
# rings


class RingDescriptor:
    """Common interface of the supported ring presentations."""

    dimension_one = False
    finite_spectrum = False

    def is_prime(self, p) -> bool:
        raise NotImplementedError

    def check_prime(self, p):
        if not isinstance(p, PrimeIdeal) or not self.is_prime(p):
            raise InputError(f"{p} is not a prime of {self}")
        return p

    def prime_key(self, p):
        raise NotImplementedError

    def is_maximal(self, p) -> bool:
        raise NotImplementedError

    def check_maximal(self, m):
        self.check_prime(m)
        if not self.is_maximal(m):
            raise InputError(f"{m} is not a maximal ideal of {self}")
        return m

    def height(self, p) -> int:
        raise NotImplementedError

    def iter_maximal(self):
        """Maximal ideals in canonical order (an infinite stream for dimension one)."""
        raise NotImplementedError

    def parse_prime(self, label) -> PrimeIdeal:
        raise NotImplementedError

    def prime_set(self, primes=()) -> PrimeSet:
        raise NotImplementedError

    def empty_set(self):
        return self.prime_set(())

    def full_set(self):
        return ~self.empty_set()

    def maximal_set(self):
        raise NotImplementedError

    def leq(self, p, q) -> bool:
        raise NotImplementedError

    def primes_under(self, m) -> PrimeSet:
        raise NotImplementedError

    def is_lower_set(self, s) -> bool:
        raise NotImplementedError


class _DimOneRing(RingDescriptor):
    dimension_one = True

    def is_maximal(self, p):
        self.check_prime(p)
        return p != ZERO

    def height(self, p):
        self.check_prime(p)
        return 0 if p == ZERO else 1

    def leq(self, p, q):
        self.check_prime(p)
        self.check_prime(q)
        return p == ZERO or p == q

    def prime_set(self, primes=()):
        primes = [self.check_prime(p) for p in primes]
        return DimOneSet(self, ZERO in primes, False, frozenset(p for p in primes if p != ZERO))

    def dim_one_set(self, zero=False, cofinite=False, maxes=()):
        return DimOneSet(self, zero, cofinite, frozenset(maxes))

    def maximal_set(self):
        return DimOneSet(self, False, True, frozenset())

    def primes_under(self, m):
        self.check_maximal(m)
        return DimOneSet(self, True, False, frozenset([m]))

    def is_lower_set(self, s):
        if not isinstance(s, DimOneSet) or s.ring != self:
            raise InputError("prime set does not belong to this ring")
        return s.zero or not s.has_maximal()


@dataclass(frozen=True)
class Integers(_DimOneRing):
    """The ring of integers; ``Spec Z = {(0)} U {(p)}``."""

    def __str__(self):
        return "Z"

    def is_prime(self, p):
        if p == ZERO:
            return True
        return isinstance(p, IntegerPrime) and bool(sympy.isprime(p.p))

    def prime_key(self, p):
        return (0,) if p == ZERO else (1, p.p)

    def iter_maximal(self):
        p = 2
        while True:
            yield IntegerPrime(p)
            p = int(sympy.nextprime(p))

    def parse_prime(self, label):
        if isinstance(label, PrimeIdeal):
            return self.check_prime(label)
        text = _strip_parens(label)
        try:
            value = int(text)
        except ValueError:
            raise InputError(f"cannot parse {label!r} as a prime of Z") from None
        p = ZERO if value == 0 else IntegerPrime(value)
        return self.check_prime(p)


@dataclass(frozen=True)
class PolyOverPrimeField(_DimOneRing):
    """``F_q[x]`` for a prime ``q``; maximal ideals are monic irreducibles."""

    q: int

    def __post_init__(self):
        if not sympy.isprime(self.q):
            raise InputError(f"F_q[x] requires q prime, got {self.q}")

    def __str__(self):
        return f"F_{self.q}[x]"

    def is_prime(self, p):
        if p == ZERO:
            return True
        return (isinstance(p, IrreduciblePoly) and p.q == self.q
                and polyfq.is_irreducible(p.coeffs, self.q))

    def prime_key(self, p):
        return (0,) if p == ZERO else (1,) + polyfq.sort_key(p.coeffs)

    def iter_maximal(self):
        for f in polyfq.monic_irreducibles(self.q):
            yield IrreduciblePoly(self.q, f)

    def parse_prime(self, label):
        if isinstance(label, PrimeIdeal):
            return self.check_prime(label)
        if isinstance(label, (list, tuple)):
            coeffs = polyfq.trim(label, self.q)
        else:
            coeffs = polyfq.parse_poly(_strip_parens(label), self.q)
        if not coeffs:
            return ZERO
        return self.check_prime(IrreduciblePoly(self.q, coeffs))


@dataclass(frozen=True)
class IntegerQuotient(RingDescriptor):
    """``Z/n`` for ``n >= 2``; its spectrum is the antichain of primes dividing ``n``."""

    n: int
    finite_spectrum = True

    def __post_init__(self):
        if int(self.n) < 2:
            raise InputError(f"Z/n requires n >= 2, got {self.n}")

    def __str__(self):
        return f"Z/{self.n}"

    @functools.cached_property
    def all_primes(self):
        return frozenset(IntegerPrime(p) for p in sympy.primefactors(self.n))

    def is_prime(self, p):
        return isinstance(p, IntegerPrime) and p in self.all_primes

    def prime_key(self, p):
        return (1, p.p)

    def is_maximal(self, p):
        self.check_prime(p)
        return True

    def height(self, p):
        self.check_prime(p)
        return 0

    def iter_maximal(self):
        return iter(sorted(self.all_primes, key=self.prime_key))

    def parse_prime(self, label):
        if isinstance(label, PrimeIdeal):
            return self.check_prime(label)
        try:
            value = int(_strip_parens(label))
        except ValueError:
            raise InputError(f"cannot parse {label!r} as a prime of {self}") from None
        return self.check_prime(IntegerPrime(value))

    def prime_set(self, primes=()):
        return FinitePrimeSet(self, frozenset(self.check_prime(p) for p in primes))

    def maximal_set(self):
        return FinitePrimeSet(self, self.all_primes)

    def leq(self, p, q):
        self.check_prime(p)
        self.check_prime(q)
        return p == q

    def primes_under(self, m):
        self.check_maximal(m)
        return FinitePrimeSet(self, frozenset([m]))

    def is_lower_set(self, s):
        if not isinstance(s, FinitePrimeSet) or s.ring != self:
            raise InputError("prime set does not belong to this ring")
        return True


@dataclass(frozen=True)
class Synthetic(RingDescriptor):
    """A ring known only through a finite spectrum poset and its Bass data."""

    spectrum: SpectrumPoset
    finite_spectrum = True

    def __str__(self):
        return f"Synthetic[{len(self.spectrum.nodes)} primes]"

    def is_prime(self, p):
        return isinstance(p, SyntheticNode) and p.name in self.spectrum.index

    def prime_key(self, p):
        return (self.spectrum.index[p.name],)

    def _i(self, p):
        self.check_prime(p)
        return self.spectrum.index[p.name]

    def is_maximal(self, p):
        return self.spectrum.nodes[self._i(p)] in self.spectrum.maximal

    def height(self, p):
        return self.spectrum.height[self._i(p)]

    @functools.cached_property
    def all_primes(self):
        return frozenset(SyntheticNode(v) for v in self.spectrum.nodes)

    def iter_maximal(self):
        sp = self.spectrum
        return iter([SyntheticNode(v) for v in sp.nodes if v in sp.maximal])

    def parse_prime(self, label):
        if isinstance(label, PrimeIdeal):
            return self.check_prime(label)
        return self.check_prime(SyntheticNode(str(label)))

    def prime_set(self, primes=()):
        return BitsetPrimeSet(self, sum(1 << self._i(p) for p in set(primes)))

    def from_mask(self, mask):
        return BitsetPrimeSet(self, mask)

    def maximal_set(self):
        return BitsetPrimeSet(self, self.spectrum.maximal_mask)

    def leq(self, p, q):
        i, j = self._i(p), self._i(q)
        return bool(self.spectrum.down[j] >> i & 1)

    def primes_under(self, m):
        self.check_maximal(m)
        return BitsetPrimeSet(self, self.spectrum.down[self._i(m)])

    def is_lower_set(self, s):
        if not isinstance(s, BitsetPrimeSet) or s.ring != self:
            raise InputError("prime set does not belong to this ring")
        return self.spectrum.is_lower_mask(s.mask)


# ---------------------------------------------------------------------------
# free-function surface


def leq(ring, p, q):
    """True iff ``p`` is contained in ``q`` in the spectrum of ``ring``."""
    return ring.leq(p, q)


def primes_under(ring, m):
    """The primes contained in the maximal ideal ``m``, i.e. ``Spec R_m``."""
    return ring.primes_under(m)


def localize_prime(ring, m, p):
    """Image of the global prime ``p`` in ``Spec R_m``.

    Local primes are encoded by their global preimage, so this is a membership
    check followed by the identity.
    """
    if p not in ring.primes_under(m):
        raise InputError(f"{p} is not contained in {m}")
    return p


def hat(ring, m, local_prime):
    """The unique global prime below ``m`` that localizes to ``local_prime``."""
    if local_prime not in ring.primes_under(m):
        raise InputError(f"{local_prime} is not a prime of the localization at {m}")
    return local_prime


def is_lower_set(ring, s):
    return ring.is_lower_set(s)


def synthetic(nodes, order=(), **kwargs):
    """Shorthand for ``Synthetic(SpectrumPoset.build(...))``."""
    return Synthetic(SpectrumPoset.build(nodes, order, **kwargs))


def dedekind_like(k, gorenstein=True):
    """One minimal node ``0`` below ``k`` maximal nodes ``m1..mk``."""
    nodes = ["0"] + [f"m{j}" for j in range(1, k + 1)]
    return synthetic(nodes, [("0", v) for v in nodes[1:]], gorenstein_heights=gorenstein)


def chain(length):
    """A chain ``c0 < c1 < ... < c{length-1}`` with Gorenstein heights."""
    nodes = [f"c{j}" for j in range(length)]
    return synthetic(nodes, list(zip(nodes, nodes[1:])), gorenstein_heights=True)

