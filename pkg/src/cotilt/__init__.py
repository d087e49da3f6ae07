"""Characteristic sequences of commutative noetherian rings.

Validation, enumeration, localization and gluing of characteristic
sequences, plus an exact homological-algebra oracle over Z.
"""
from .charseq import (
    CharacteristicSequence,
    Verdict,
    Violation,
    bass_assassinators,
    count_sequences,
    enumerate_sequences,
    validate_sequence,
)
from .coloc import (
    CompatibleFamily,
    LocalSequence,
    check_compatibility,
    enumerate_compatible_families,
    families_equivalent,
    glue_family,
    localization_family,
    localize_sequence,
    sequences_equal,
    validate_local,
)
from .errors import (
    ConfigurationError,
    CotiltError,
    InputError,
    InvariantError,
    PreconditionError,
    UnsupportedError,
)
from .spectrum import (
    ZERO,
    IntegerPrime,
    IntegerQuotient,
    Integers,
    IrreduciblePoly,
    PolyOverPrimeField,
    SpectrumPoset,
    Synthetic,
    SyntheticNode,
    chain,
    dedekind_like,
    hat,
    is_lower_set,
    leq,
    localize_prime,
    primes_under,
    synthetic,
)

__version__ = "0.1.0"
