"""Figurate primes C(p^r, s): enumeration, two-sum verification, census
counts and numerical audits of the associated sum formulations."""

__version__ = "0.1.0"

from .census import EvenCensus, OddCensus, census, census_even, census_odd
from .core import (
    EnumerationResult,
    FigurateWitness,
    binomial_prefix,
    enumerate_figurate_primes,
    figurate_values,
    prime_powers_up_to,
)
from .membership import FigurateSet, build_set, is_figurate, load_cache, save_cache
from .verifier import (
    DecompositionRecord,
    VerificationReport,
    count_representations,
    verify_range,
    witness_for,
)

__all__ = [
    "DecompositionRecord",
    "EnumerationResult",
    "EvenCensus",
    "FigurateSet",
    "FigurateWitness",
    "OddCensus",
    "VerificationReport",
    "binomial_prefix",
    "build_set",
    "census",
    "census_even",
    "census_odd",
    "count_representations",
    "enumerate_figurate_primes",
    "figurate_values",
    "is_figurate",
    "load_cache",
    "prime_powers_up_to",
    "save_cache",
    "verify_range",
    "witness_for",
]
