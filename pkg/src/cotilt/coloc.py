"""Localization of characteristic sequences, compatible families and gluing.

For a characteristic sequence ``P`` and a maximal ideal ``m`` the local sequence
at ``m`` keeps the primes of each level lying below ``m``. A family of local
sequences, one per maximal ideal, is compatible when any two of them agree on
the primes below both maximal ideals; gluing takes the level-wise union.
Localizing and gluing are mutually inverse.

Over ``Z`` and ``F_q[x]`` there are infinitely many maximal ideals, so a family
is stored as a default pattern for the generic maximal ideal plus finitely
many exceptions. A pattern level is a subset of ``{"zero", "max"}``: whether
``(0)`` and whether ``m`` itself belong to that local level.
"""
from __future__ import annotations

from dataclasses import dataclass

from .charseq import (
    CharacteristicSequence,
    bass_assassinators,
    Verdict,
    Violation,
    _validate_levels,
    enumerate_level_masks,
    validate_sequence,
)
from .errors import InputError, InvariantError, PreconditionError, UnsupportedError
from .spectrum import (
    ZERO,
    BitsetPrimeSet,
    DimOneSet,
    PrimeSet,
    RingDescriptor,
    Synthetic,
    SyntheticNode,
)

PATTERN_FLAGS = frozenset({"zero", "max"})


@dataclass(frozen=True)
class LocalSequence:
    """A characteristic sequence of ``R_m``, levels stored via global preimages."""

    ring: RingDescriptor
    m: object
    levels: tuple = ()

    def __post_init__(self):
        self.ring.check_maximal(self.m)
        levels = tuple(self.levels)
        for k, level in enumerate(levels):
            if not isinstance(level, PrimeSet) or (level.ring is not self.ring
                                                   and level.ring != self.ring):
                raise InputError(f"local level {k} at {self.m} is not a prime set of {self.ring}")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self):
        return len(self.levels)

    def __str__(self):
        return f"{self.m.label}: (" + ", ".join(str(p) for p in self.levels) + ")"


def validate_local(local):
    """Check clauses (i)-(iii) inside ``Spec R_m`` with the localized Bass data."""
    support = local.ring.primes_under(local.m)
    return _validate_levels(local.ring, local.levels, support=support)


def _pattern(levels):
    return tuple(frozenset(levels[i]) for i in range(len(levels)))


@dataclass(frozen=True)
class CompatibleFamily:
    """An assignment of local sequences to every maximal ideal.

    ``default`` is the pattern of the generic maximal ideal (dimension-one rings
    only, ``None`` otherwise) and ``exceptions`` holds ``(m, LocalSequence)``
    pairs sorted canonically. Over finite spectra every maximal ideal must be
    listed. Exceptions equal to the default are dropped, so equal data compares
    equal. Construction does not check compatibility; use
    :func:`check_compatibility` for that.
    """

    ring: RingDescriptor
    n: int
    default: tuple | None = None
    exceptions: tuple = ()

    def __post_init__(self):
        ring = self.ring
        items = self.exceptions.items() if isinstance(self.exceptions, dict) else self.exceptions
        table = {}
        for m, local in items:
            ring.check_maximal(m)
            if not isinstance(local, LocalSequence) or local.ring != ring or local.m != m:
                raise InputError(f"entry for {m} is not a local sequence at {m}")
            if local.n != self.n:
                raise InputError(f"local sequence at {m} has length {local.n}, expected {self.n}")
            if m in table:
                raise InputError(f"duplicate entry for {m}")
            table[m] = local
        if ring.dimension_one:
            if self.default is None or len(self.default) != self.n:
                raise InputError("a family over a dimension-one ring needs a default pattern of length n")
            default = _pattern(self.default)
            for level in default:
                if not level <= PATTERN_FLAGS:
                    raise InputError(f"pattern flags must be among {sorted(PATTERN_FLAGS)}")
            object.__setattr__(self, "default", default)
            table = {m: s for m, s in table.items() if s != self.instantiate_default(m)}
        else:
            if self.default is not None:
                raise InputError("default patterns are only used over dimension-one rings")
            missing = set(ring.iter_maximal()) - set(table)
            if missing:
                labels = ", ".join(sorted(m.label for m in missing))
                raise InputError(f"family has no local sequence at {labels}")
        pairs = tuple(sorted(table.items(), key=lambda kv: ring.prime_key(kv[0])))
        object.__setattr__(self, "exceptions", pairs)

    @property
    def exception_map(self):
        return dict(self.exceptions)

    def instantiate_default(self, m):
        ring = self.ring
        levels = tuple(DimOneSet(ring, "zero" in pat, False, frozenset([m]) if "max" in pat else ())
                       for pat in self.default)
        return LocalSequence(ring, m, levels)

    def generic_maximal(self, avoid=()):
        """The first maximal ideal governed by the default pattern."""
        skip = set(self.exception_map) | set(avoid)
        return next(m for m in self.ring.iter_maximal() if m not in skip)

    def at(self, m):
        self.ring.check_maximal(m)
        local = self.exception_map.get(m)
        if local is not None:
            return local
        if self.default is None:
            raise InputError(f"family has no local sequence at {m}")
        return self.instantiate_default(m)

    def classes(self):
        """Representative local sequences, one per finitely many behaviours.

        The generic representative (dimension-one rings) comes first.
        """
        out = []
        if self.default is not None:
            out.append(self.instantiate_default(self.generic_maximal()))
        out.extend(local for _, local in self.exceptions)
        return out


# ---------------------------------------------------------------------------
# localization


def _require_valid(seq):
    verdict = validate_sequence(seq)
    if not verdict.ok:
        raise PreconditionError("not a characteristic sequence", verdict.violations)


def _localize(seq, m):
    under = seq.ring.primes_under(m)
    return LocalSequence(seq.ring, m, tuple(level & under for level in seq.levels))


def localize_sequence(seq, m):
    """The local sequence ``P_{i,m} = {p in P_i : p below m}`` at the maximal ideal ``m``."""
    _require_valid(seq)
    seq.ring.check_maximal(m)
    return _localize(seq, m)


def localization_family(seq):
    """The family of all localizations of ``seq``, finitely encoded."""
    _require_valid(seq)
    ring = seq.ring
    if ring.dimension_one:
        default = tuple(frozenset(({"zero"} if P.zero else set()) | ({"max"} if P.cofinite else set()))
                        for P in seq.levels)
        special = set()
        for P in seq.levels:
            special |= P.maxes
        exceptions = {m: _localize(seq, m) for m in special}
        return CompatibleFamily(ring, seq.n, default, exceptions)
    if isinstance(ring, Synthetic):
        masks = tuple(level.mask for level in seq.levels)
        sp = ring.spectrum
        return family_from_masks(ring, seq.n, localization_family_masks(sp, masks, maximal_indices(sp)))
    return CompatibleFamily(ring, seq.n, None, {m: _localize(seq, m) for m in ring.iter_maximal()})


# ---------------------------------------------------------------------------
# compatibility and gluing


def check_compatibility(family):
    """Verdict on a family: local validity first, then pairwise agreement.

    Two local sequences at ``m`` and ``m'`` must agree, level by level, on the
    primes below both. Over dimension-one rings the only shared prime is
    ``(0)``, so the check compares the zero flags of the finitely many classes.
    """
    if not isinstance(family, CompatibleFamily):
        raise InputError("expected a CompatibleFamily")
    ring = family.ring
    violations = []
    for local in family.classes():
        for v in validate_local(local).violations:
            violations.append(Violation(v.clause, v.index, v.witness,
                                        f"local sequence at {local.m.label}: {v.detail}",
                                        (local.m,)))
    if ring.dimension_one:
        reps = family.classes()
        for a in range(len(reps)):
            for b in range(a + 1, len(reps)):
                x, y = reps[a], reps[b]
                for i in range(family.n):
                    if (ZERO in x.levels[i]) != (ZERO in y.levels[i]):
                        violations.append(_compat(i, x.m, y.m, ZERO))
    elif isinstance(ring, Synthetic):
        sp = ring.spectrum
        maxes = [local.m for _, local in family.exceptions]
        idx = tuple(sp.index[m.name] for m in maxes)
        fam = tuple(tuple(level.mask for level in local.levels) for _, local in family.exceptions)
        for i, a, b, clash in incompatibilities_masks(sp, fam, idx):
            for p in ring.from_mask(clash).elements():
                violations.append(_compat(i, maxes[a], maxes[b], p))
    else:
        locals_ = [local for _, local in family.exceptions]
        for a in range(len(locals_)):
            for b in range(a + 1, len(locals_)):
                x, y = locals_[a], locals_[b]
                shared = ring.primes_under(x.m) & ring.primes_under(y.m)
                for i in range(family.n):
                    diff = (x.levels[i] - y.levels[i]) | (y.levels[i] - x.levels[i])
                    for p in (diff & shared).elements():
                        violations.append(_compat(i, x.m, y.m, p))
    return Verdict(tuple(violations))


def _compat(i, m1, m2, p):
    return Violation("compat", i, p,
                     f"level {i}: local sequences at {m1.label} and {m2.label} disagree on {p.label}",
                     (m1, m2))


def glue_family(family):
    """The characteristic sequence ``P_i = union over m of hat(P_{i,m})``.

    Raises :class:`PreconditionError` for incompatible families and
    :class:`InvariantError` if the glued sequence ever fails validation.
    """
    verdict = check_compatibility(family)
    if not verdict.ok:
        raise PreconditionError("family is not compatible", verdict.violations)
    ring = family.ring
    levels = []
    if ring.dimension_one:
        for i, pat in enumerate(family.default):
            zero = "zero" in pat or any(local.levels[i].zero for _, local in family.exceptions)
            if "max" in pat:
                excluded = {m for m, local in family.exceptions if m not in local.levels[i]}
                levels.append(DimOneSet(ring, zero, True, frozenset(excluded)))
            else:
                included = {m for m, local in family.exceptions if m in local.levels[i]}
                levels.append(DimOneSet(ring, zero, False, frozenset(included)))
    elif isinstance(ring, Synthetic):
        fam = tuple(tuple(level.mask for level in local.levels) for _, local in family.exceptions)
        masks = glue_masks(ring.spectrum, fam, family.n, bass_masks(ring, family.n))
        return CharacteristicSequence(ring, tuple(BitsetPrimeSet(ring, x) for x in masks))
    else:
        for i in range(family.n):
            level = ring.empty_set()
            for _, local in family.exceptions:
                level = level | local.levels[i]
            levels.append(level)
    seq = CharacteristicSequence(ring, tuple(levels))
    check = validate_sequence(seq)
    if not check.ok:
        raise InvariantError("glued levels violate the defining clauses", check.violations)
    return seq


def sequences_equal(a, b):
    return a.ring == b.ring and a.levels == b.levels


def families_equivalent(a, b):
    """Equality of the local sequences at every maximal ideal."""
    if a.ring != b.ring or a.n != b.n:
        return False
    if a.default != b.default:
        return False
    keys = set(a.exception_map) | set(b.exception_map)
    return all(a.at(m).levels == b.at(m).levels for m in keys)


# ---------------------------------------------------------------------------
# enumeration over synthetic spectra


def enumerate_compatible_family_masks(ring, n):
    """Every compatible family of length ``n`` on a synthetic spectrum, as masks.

    Local sequences are enumerated independently at each maximal ideal and
    combined depth-first, pruning as soon as two of them disagree on a shared
    prime. Families come out as tuples of level-mask tuples in
    :func:`maximal_indices` order. Gluing is not used.
    """
    if not isinstance(ring, Synthetic):
        raise UnsupportedError("family enumeration needs a synthetic spectrum")
    sp = ring.spectrum
    maxes = maximal_indices(sp)
    under = [sp.down[m] for m in maxes]
    options = [list(enumerate_level_masks(ring, n, universe=u)) for u in under]
    chosen = [None] * len(maxes)

    def fits(k, cand):
        for j in range(k):
            shared = under[j] & under[k]
            if shared and any((x ^ y) & shared for x, y in zip(chosen[j], cand)):
                return False
        return True

    def extend(k):
        if k == len(maxes):
            yield tuple(chosen)
            return
        for cand in options[k]:
            if fits(k, cand):
                chosen[k] = cand
                yield from extend(k + 1)

    yield from extend(0)


def family_from_masks(ring, n, family):
    nodes = ring.spectrum.nodes
    return CompatibleFamily(ring, n, None, {
        SyntheticNode(nodes[m]): LocalSequence(ring, SyntheticNode(nodes[m]),
                                               tuple(BitsetPrimeSet(ring, x) for x in masks))
        for m, masks in zip(maximal_indices(ring.spectrum), family)})


def enumerate_compatible_families(ring, n):
    """Every compatible family of length ``n`` on a synthetic spectrum."""
    for family in enumerate_compatible_family_masks(ring, n):
        yield family_from_masks(ring, n, family)


# ---------------------------------------------------------------------------
# bitmask kernel for synthetic spectra
#
# Levels are node bitmasks; a family is a tuple of level-mask tuples, one per
# maximal node in ``maxes`` order. The public functions below delegate here
# for synthetic rings.


def maximal_indices(spectrum):
    return tuple(i for i, v in enumerate(spectrum.nodes) if v in spectrum.maximal)


def bass_masks(ring, n):
    return tuple(bass_assassinators(ring, i).mask for i in range(n))


def masks_valid(spectrum, masks, bass):
    """Clauses (i)-(iii) on level bitmasks."""
    prev = 0
    for level, b in zip(masks, bass):
        if prev & ~level or b & ~level or not spectrum.is_lower_mask(level):
            return False
        prev = level
    return True


def localize_masks(spectrum, masks, m):
    under = spectrum.down[m]
    return tuple(level & under for level in masks)


def localization_family_masks(spectrum, masks, maxes):
    down = spectrum.down
    return tuple(tuple(level & down[m] for level in masks) for m in maxes)


def incompatibilities_masks(spectrum, family, maxes):
    """``(i, a, b, disagreement mask)`` for each clashing pair ``a < b`` of positions."""
    down = spectrum.down
    out = []
    for a in range(len(maxes)):
        for b in range(a + 1, len(maxes)):
            shared = down[maxes[a]] & down[maxes[b]]
            for i, (x, y) in enumerate(zip(family[a], family[b])):
                clash = (x ^ y) & shared
                if clash:
                    out.append((i, a, b, clash))
    return out


def glue_masks(spectrum, family, n, bass):
    """Level-wise union of a compatible family; checks its own output."""
    levels = [0] * n
    for local in family:
        for i, x in enumerate(local):
            levels[i] |= x
    levels = tuple(levels)
    if not masks_valid(spectrum, levels, bass):
        raise InvariantError("glued levels violate the defining clauses")
    return levels


class PackedKernel:
    """Whole sequences packed into one integer, level ``i`` at bit offset ``i * N``.

    Localization, gluing and pairwise agreement then cost one machine-word
    style operation per maximal ideal. Used by the exhaustive sweeps.
    """

    def __init__(self, ring, n):
        if not isinstance(ring, Synthetic):
            raise UnsupportedError("packed kernel needs a synthetic spectrum")
        self.ring, self.n = ring, n
        self.spectrum = sp = ring.spectrum
        self.width = len(sp.nodes)
        self.maxes = maximal_indices(sp)
        self.bass = bass_masks(ring, n)
        self.under = tuple(self.spread(sp.down[m]) for m in self.maxes)
        self.shared = {(a, b): self.spread(sp.down[self.maxes[a]] & sp.down[self.maxes[b]])
                       for a in range(len(self.maxes)) for b in range(a)}

    def spread(self, mask):
        return sum(mask << (i * self.width) for i in range(self.n))

    def pack(self, levels):
        return sum(x << (i * self.width) for i, x in enumerate(levels))

    def unpack(self, packed):
        full = (1 << self.width) - 1
        return tuple((packed >> (i * self.width)) & full for i in range(self.n))

    def localize(self, packed):
        return tuple(packed & u for u in self.under)

    def compatible(self, family):
        shared = self.shared
        return not any((family[a] ^ family[b]) & shared[a, b]
                       for a in range(len(family)) for b in range(a))

    def glue(self, family):
        out = 0
        for local in family:
            out |= local
        if not masks_valid(self.spectrum, self.unpack(out), self.bass):
            raise InvariantError("glued levels violate the defining clauses")
        return out

    def sequences(self):
        for levels in enumerate_level_masks(self.ring, self.n):
            yield self.pack(levels)

    def families(self):
        """Compatible families, each a tuple of packed local sequences."""
        options = [[self.pack(s) for s in enumerate_level_masks(self.ring, self.n, universe=u)]
                   for u in (self.spectrum.down[m] for m in self.maxes)]
        shared = self.shared
        chosen = [0] * len(options)

        def extend(k):
            if k == len(options):
                yield tuple(chosen)
                return
            for cand in options[k]:
                if not any((chosen[j] ^ cand) & shared[k, j] for j in range(k)):
                    chosen[k] = cand
                    yield from extend(k + 1)

        if self.n == 0:
            yield tuple(0 for _ in options)
            return
        yield from extend(0)
