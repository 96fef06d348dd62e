"""Exhaustive and algebraic verification suites."""

from .chain import (
    four_conditions,
    plus_minus_witness,
    verify_large_prime_theorem,
    verify_sda_claims,
    verify_theorem1,
    verify_weight2_count,
)
from .k3 import verify_k3_at, verify_k3_spectral
from .sda_algebra import SignedPermutationSystem, verify_sda4_algebra, verify_sda5_algebra
from .section6 import verify_section6_cases

__all__ = [
    "SignedPermutationSystem",
    "four_conditions",
    "plus_minus_witness",
    "verify_k3_at",
    "verify_k3_spectral",
    "verify_large_prime_theorem",
    "verify_sda4_algebra",
    "verify_sda5_algebra",
    "verify_sda_claims",
    "verify_section6_cases",
    "verify_theorem1",
    "verify_weight2_count",
]
