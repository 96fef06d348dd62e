"""One entry point deciding every relation for a pair of residue sets."""

from __future__ import annotations

from .matgraph import autocorrelation_matrix, circulant_from, perm_similar, ppinv_equivalent, pq_equivalent
from .residue import ResidueSet, affine_equivalent, linear_equivalent
from .spectra import autocorrelation_spectrum, spectra_equal
from .verdict import EquivalenceVerdict

RELATIONS = ("affine", "linear", "pq", "permsim", "spectral", "ppinv")

# (stronger, weaker): a true stronger relation forces the weaker one
IMPLICATIONS = (
    ("linear", "affine"),
    ("affine", "pq"),
    ("pq", "permsim"),
    ("permsim", "spectral"),
    ("linear", "ppinv"),
    ("ppinv", "pq"),
)


def decide(relation: str, S: ResidueSet, T: ResidueSet, budget: int | None = None) -> EquivalenceVerdict:
    if S.modulus != T.modulus:
        raise ValueError(f"modulus mismatch: {S.modulus} vs {T.modulus}")
    if relation == "affine":
        return affine_equivalent(S, T)
    if relation == "linear":
        return linear_equivalent(S, T)
    if relation == "spectral":
        sa, sb = autocorrelation_spectrum(S), autocorrelation_spectrum(T)
        if spectra_equal(sa, sb):
            return EquivalenceVerdict.yes("spectral", sa, lambda sp: spectra_equal(sp, sb))
        return EquivalenceVerdict.no("spectral")
    A, B = circulant_from(S), circulant_from(T)
    if relation == "pq":
        return pq_equivalent(A, B, budget)
    if relation == "permsim":
        return perm_similar(autocorrelation_matrix(A), autocorrelation_matrix(B), budget)
    if relation == "ppinv":
        return ppinv_equivalent(A, B, budget)
    raise ValueError(f"unknown relation {relation!r}")


def implication_breaks(values: dict[str, bool]) -> list[tuple[str, str]]:
    """Implications violated by a (possibly partial) relation assignment."""
    return [(a, b) for a, b in IMPLICATIONS if values.get(a) is True and values.get(b) is False]
