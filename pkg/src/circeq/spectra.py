"""Exact spectra of autocorrelation matrices A A^T.

The circulant A A^T equals sum_{i,j} S^(a_i - a_j), so its eigenvalue for
the index r is sum_{d} Delta(d) zeta^(d r).  Each eigenvalue is kept as a
canonical remainder mod Phi_n; no floating point eigen-solver is used.

A A^T is real symmetric, hence diagonalisable, so two such matrices are
similar over C exactly when their eigenvalue multisets coincide.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .cyclotomic import CanonicalCyclotomic, reduction_table
from .residue import ResidueSet, delta


@dataclass(frozen=True)
class Spectrum:
    modulus: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.modulus:
            raise ValueError("a spectrum has exactly n entries")
        if list(self.entries) != sorted(self.entries):
            raise ValueError("entries must be sorted")

    def values(self) -> list[CanonicalCyclotomic]:
        return [CanonicalCyclotomic(self.modulus, e) for e in self.entries]

    def multiplicity(self, value: Sequence[int]) -> int:
        return self.entries.count(tuple(value))

    def aggregated(self) -> list[dict]:
        counts = Counter(self.entries)
        return [{"count": c, "coeffs": list(e)} for e, c in sorted(counts.items())]

    def to_json_obj(self) -> list[dict]:
        return self.aggregated()


def power_sums(weights: dict[int, int], n: int, r_values: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Canonical form of sum_e w_e zeta^(e r) for each r (default 0..n-1)."""
    table = reduction_table(n)
    rs = np.arange(n) if r_values is None else np.asarray(r_values)
    if not weights:
        return [(0,) * table.shape[1] for _ in rs]
    exps = np.array(list(weights.keys()), dtype=np.int64)
    w = np.array(list(weights.values()), dtype=table.dtype)
    idx = np.outer(rs, exps) % n
    vals = (table[idx] * w[None, :, None]).sum(axis=1)
    return [tuple(int(x) for x in row) for row in vals]


def autocorrelation_values(S: ResidueSet) -> list[tuple[int, ...]]:
    """Eigenvalue of A A^T for each r = 0..n-1, in index order."""
    return power_sums(delta(S).support(), S.modulus)


def autocorrelation_spectrum(S: ResidueSet) -> Spectrum:
    return Spectrum(S.modulus, tuple(sorted(autocorrelation_values(S))))


def spectra_equal(A: Spectrum, B: Spectrum) -> bool:
    if A.modulus != B.modulus:
        raise ValueError(f"modulus mismatch: {A.modulus} vs {B.modulus}")
    return A.entries == B.entries


def _integer_entry(value: int, n: int) -> tuple[int, ...]:
    width = reduction_table(n).shape[1]
    return (value,) + (0,) * (width - 1)


def k2_multiplicity(S: ResidueSet) -> int:
    """How often k^2 occurs in the spectrum; cross-checked against the gcd law."""
    n, k = S.modulus, len(S)
    count = autocorrelation_spectrum(S).multiplicity(_integer_entry(k * k, n))
    g = n
    for a in S.elements:
        for b in S.elements:
            g = gcd(g, a - b)
    if count != g:
        raise AssertionError(f"k^2 occurs {count} times for {S}, gcd law predicts {g}")
    return count


def spectrum_fingerprint(sp: Spectrum) -> str:
    payload = json.dumps([sp.modulus, sp.entries], separators=(",", ":")).encode()
    return hashlib.blake2b(payload, digest_size=16).hexdigest()
