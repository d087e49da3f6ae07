"""Characteristic sequences of prime sets and their validation and enumeration.

A characteristic sequence of length ``n`` is a tuple ``(P_0, ..., P_{n-1})`` of
subsets of ``Spec R`` such that

(i)   every ``P_i`` is a lower set,
(ii)  ``P_i`` is contained in ``P_{i+1}``,
(iii) ``Ass Omega^{-i}(R)`` (the Bass data of ``R``) is contained in ``P_i``.

These sequences index the ``n``-cotilting classes of a noetherian ring.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputError, UnsupportedError
from .spectrum import (
    ZERO,
    BitsetPrimeSet,
    DimOneSet,
    IntegerQuotient,
    PrimeSet,
    RingDescriptor,
    Synthetic,
    iter_bits,
)

MAX_ENUM_NODES = 20
MAX_ENUM_LENGTH = 8


@dataclass(frozen=True)
class Violation:
    """One failed clause.

    ``clause`` is ``"i"``, ``"ii"`` or ``"iii"`` for the three defining
    conditions, ``"support"`` for a local level leaving ``Spec R_m``, and
    ``"compat"`` for a disagreement between two local sequences.
    """

    clause: str
    index: int
    witness: object = None
    detail: str = ""
    maximal: tuple = ()

    def to_json(self):
        out = {"clause": self.clause, "index": self.index,
               "witness": None if self.witness is None else self.witness.label,
               "detail": self.detail}
        if self.maximal:
            out["maximal"] = [m.label for m in self.maximal]
        return out


@dataclass(frozen=True)
class Verdict:
    violations: tuple = ()
    notes: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok,
                "violations": [v.to_json() for v in self.violations],
                "notes": list(self.notes)}


@dataclass(frozen=True)
class CharacteristicSequence:
    ring: RingDescriptor
    levels: tuple = ()

    def __post_init__(self):
        levels = tuple(self.levels)
        for k, level in enumerate(levels):
            if not isinstance(level, PrimeSet):
                raise InputError(f"level {k} is not a PrimeSet")
            if level.ring is not self.ring and level.ring != self.ring:
                raise InputError(f"level {k} belongs to {level.ring}, not {self.ring}")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self):
        return len(self.levels)

    def __len__(self):
        return len(self.levels)

    def is_valid(self):
        return validate_sequence(self).ok

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.levels) + ")"


def bass_assassinators(ring, i):
    """``Ass Omega^{-i}(R)`` for the minimal injective coresolution of ``R``.

    Built-in rings carry hard-wired data: a dimension-one domain has ``{(0)}`` in
    degree 0 and every maximal ideal in degree 1; ``Z/n`` is self-injective, so
    only degree 0 (all primes dividing ``n``) is non-empty.
    """
    if i < 0:
        raise InputError("cosyzygy degree must be non-negative")
    if ring.dimension_one:
        if i == 0:
            return ring.prime_set([ZERO])
        return ring.maximal_set() if i == 1 else ring.empty_set()
    if isinstance(ring, IntegerQuotient):
        return ring.maximal_set() if i == 0 else ring.empty_set()
    if isinstance(ring, Synthetic):
        mask = ring.spectrum.bass_mask(i)
        if mask is None:
            raise ConfigurationError(
                "synthetic spectrum declares neither bass data nor gorenstein_heights")
        return BitsetPrimeSet(ring, mask)
    raise InputError(f"unsupported ring {ring!r}")


def lower_set_witness(ring, s):
    """A prime missing from ``s`` although it lies below a member, or None."""
    if isinstance(s, DimOneSet):
        return ZERO if s.has_maximal() and not s.zero else None
    if isinstance(s, BitsetPrimeSet):
        down = ring.spectrum.down
        for j in iter_bits(s.mask):
            gap = down[j] & ~s.mask
            if gap:
                return ring.from_mask(gap & -gap).elements()[0]
        return None
    return None


def validate_sequence(seq):
    """Check the three defining clauses; every failure is reported."""
    if not isinstance(seq, CharacteristicSequence):
        raise InputError("expected a CharacteristicSequence")
    return _validate_levels(seq.ring, seq.levels, support=None)


def _validate_levels(ring, levels, support):
    violations, notes = [], []
    for i, level in enumerate(levels):
        if support is not None and not level <= support:
            violations.append(Violation(
                "support", i, (level - support).some_element(),
                f"level {i} contains primes outside the local spectrum"))
        if not ring.is_lower_set(level):
            violations.append(Violation(
                "i", i, lower_set_witness(ring, level),
                f"P_{i} is not a lower set"))
        if i + 1 < len(levels) and not level <= levels[i + 1]:
            violations.append(Violation(
                "ii", i, (level - levels[i + 1]).some_element(),
                f"P_{i} is not contained in P_{i + 1}"))
        bass = bass_assassinators(ring, i)
        if support is not None:
            bass = bass & support
        if not bass <= level:
            violations.append(Violation(
                "iii", i, (bass - level).some_element(),
                f"Ass Omega^-{i}(R) is not contained in P_{i}"))
        if level.is_empty():
            notes.append(f"P_{i} is empty")
    return Verdict(tuple(violations), tuple(notes))


# ---------------------------------------------------------------------------
# enumeration over synthetic spectra


def order_ideals(spectrum, universe=None):
    """All lower sets of the poset inside the lower set ``universe``, ascending."""
    universe = spectrum.full_mask if universe is None else universe
    down = spectrum.down
    nodes = sorted(iter_bits(universe), key=lambda k: spectrum.height[k])
    ideals = [0]
    for v in nodes:
        bit = 1 << v
        below = down[v] ^ bit
        ideals += [I | bit for I in ideals if below & ~I == 0]
    ideals.sort()
    return ideals


def _check_enumerable(ring, n):
    if not isinstance(ring, Synthetic):
        raise UnsupportedError("enumeration needs a synthetic (finite) spectrum")
    if len(ring.spectrum.nodes) > MAX_ENUM_NODES:
        raise UnsupportedError(f"enumeration supports at most {MAX_ENUM_NODES} primes")
    if not 0 <= n <= MAX_ENUM_LENGTH:
        raise UnsupportedError(f"sequence length must lie in [0, {MAX_ENUM_LENGTH}]")


def _bass_masks(ring, n, universe):
    return [bass_assassinators(ring, i).mask & universe for i in range(n)]


def enumerate_level_masks(ring, n, universe=None):
    """Yield level bitmask tuples of all valid sequences in lexicographic order.

    With ``universe`` set to the down-set of a maximal ideal this enumerates the
    local sequences at that maximal ideal.
    """
    _check_enumerable(ring, n)
    sp = ring.spectrum
    universe = sp.full_mask if universe is None else universe
    if n == 0:
        yield ()
        return
    ideals = order_ideals(sp, universe)
    bass = _bass_masks(ring, n, universe)
    admissible = [[I for I in ideals if b & ~I == 0] for b in bass]
    chosen = [0] * n

    def extend(i, floor):
        for I in admissible[i]:
            if floor & ~I:
                continue
            chosen[i] = I
            if i + 1 == n:
                yield tuple(chosen)
            else:
                yield from extend(i + 1, I)

    yield from extend(0, 0)


def enumerate_sequences(ring, n):
    """Stream every characteristic sequence of length ``n`` exactly once."""
    for masks in enumerate_level_masks(ring, n):
        yield CharacteristicSequence(ring, tuple(BitsetPrimeSet(ring, m) for m in masks))


def _superset_sums(values, nbits):
    a = values.copy()
    for b in range(nbits):
        view = a.reshape(-1, 2, 1 << b)
        view[:, 0, :] += view[:, 1, :]
    return a


def count_sequences(ring, n, universe=None):
    """Number of characteristic sequences of length ``n``, without listing them.

    Dynamic programming over the level index, summing over supersets with a
    zeta transform on the ``2^N`` subset cube.
    """
    _check_enumerable(ring, n)
    if n == 0:
        return 1
    sp = ring.spectrum
    universe = sp.full_mask if universe is None else universe
    nbits = len(sp.nodes)
    dtype = np.int64 if (n + 1) ** nbits < 2 ** 62 else object
    ideals = np.array(order_ideals(sp, universe), dtype=np.int64)
    bass = _bass_masks(ring, n, universe)

    def indicator(b):
        out = np.zeros(1 << nbits, dtype=dtype)
        out[ideals[(ideals & b) == b]] = 1
        return out

    g = indicator(bass[n - 1])
    for i in range(n - 2, -1, -1):
        g = indicator(bass[i]) * _superset_sums(g, nbits)
    return int(g.sum())
