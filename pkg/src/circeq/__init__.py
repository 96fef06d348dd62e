"""Exact deciders for equivalences of sparse 0/1 circulants."""

from .residue import (
    AffineMap,
    DifferenceMultiset,
    ResidueSet,
    affine_equivalent,
    apply_affine,
    canonical_affine_form,
    delta,
    linear_equivalent,
    parse,
    sda_check,
)
from .verdict import EquivalenceVerdict

__all__ = [
    "AffineMap",
    "DifferenceMultiset",
    "EquivalenceVerdict",
    "ResidueSet",
    "affine_equivalent",
    "apply_affine",
    "canonical_affine_form",
    "delta",
    "linear_equivalent",
    "parse",
    "sda_check",
]

__version__ = "0.1.0"
