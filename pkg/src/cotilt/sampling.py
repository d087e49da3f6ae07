"""Seeded random instances over Z for round-trip sweeps."""
from __future__ import annotations

import random

from .charseq import CharacteristicSequence
from .coloc import CompatibleFamily, LocalSequence
from .spectrum import ZERO, Integers, IntegerPrime

DEFAULT_SEED = 20240601
SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _primes(rng, max_exceptions):
    k = rng.randint(0, max_exceptions)
    return [IntegerPrime(p) for p in rng.sample(SMALL_PRIMES, k)]


def random_level(rng, ring, zero=True, max_exceptions=5):
    """A random lower set of ``Spec Z``: finite or cofinite in the maximal ideals."""
    return ring.dim_one_set(zero, rng.random() < 0.5, _primes(rng, max_exceptions))


def random_sequence(rng, n, max_exceptions=5):
    """A random characteristic sequence of length ``n`` over Z.

    Level 0 must hold ``(0)``; from level 1 on every maximal ideal is forced,
    so those levels are the whole spectrum.
    """
    ring = Integers()
    levels = []
    for i in range(n):
        levels.append(random_level(rng, ring, True, max_exceptions) if i == 0 else ring.full_set())
    return CharacteristicSequence(ring, tuple(levels))


def random_family(rng, n, max_exceptions=5):
    """A random compatible family of length ``n`` over Z."""
    ring = Integers()
    default = tuple(frozenset({"zero", "max"}) if i or rng.random() < 0.5 else frozenset({"zero"})
                    for i in range(n))
    exceptions = {}
    for m in _primes(rng, max_exceptions):
        levels = tuple(ring.prime_set([ZERO, m]) if i or rng.random() < 0.5 else ring.prime_set([ZERO])
                       for i in range(n))
        exceptions[m] = LocalSequence(ring, m, levels)
    return CompatibleFamily(ring, n, default, exceptions)


def make_rng(seed=None):
    return random.Random(DEFAULT_SEED if seed is None else seed)
