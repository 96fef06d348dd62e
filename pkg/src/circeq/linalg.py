"""Exact integer/rational linear algebra: row Hermite normal form and
lattice membership with minimal denominators."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Row = tuple[int, ...]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[Row, ...]:
    """Row-style HNF of the lattice spanned by ``rows``.

    Returns independent rows in echelon form: positive pivots with strictly
    increasing pivot columns, and entries above each pivot reduced into
    [0, pivot).  Two row sets span the same lattice iff their HNFs match.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return ()
    ncols = len(mat[0])
    basis: list[list[int]] = []
    col = 0
    while mat and col < ncols:
        nz = [r for r in mat if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in mat if not r[col]]
        # Euclid on column `col` until one row is left with a nonzero entry
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                red = [a - q * b for a, b in zip(r, piv)]
                if red[col]:
                    nxt.append(red)
                elif any(red):
                    rest.append(red)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        mat = [r for r in rest if any(r)]
        col += 1
    # reduce above the pivots
    pivots = [next(j for j, a in enumerate(r) if a) for r in basis]
    for i, (r, p) in enumerate(zip(basis, pivots)):
        for above in range(i):
            q = basis[above][p] // r[p]
            if q:
                basis[above] = [a - q * b for a, b in zip(basis[above], r)]
    return tuple(tuple(r) for r in basis)


def pivots(hnf: Sequence[Row]) -> list[int]:
    return [next(j for j, a in enumerate(r) if a) for r in hnf]


def solve_in_basis(hnf: Sequence[Row], target: Sequence[int]) -> list[Fraction] | None:
    """Rational coefficients c with sum c_i * hnf[i] == target, or None."""
    piv = pivots(hnf)
    resid = [Fraction(x) for x in target]
    coeffs = []
    for r, p in zip(hnf, piv):
        c = resid[p] / r[p]
        coeffs.append(c)
        if c:
            resid = [a - c * b for a, b in zip(resid, r)]
    if any(resid):
        return None
    return coeffs


def denominator(hnf: Sequence[Row], target: Sequence[int]) -> int | None:
    """Least d > 0 with d * target in the integer span, None if outside the rational span."""
    coeffs = solve_in_basis(hnf, target)
    if coeffs is None:
        return None
    return lcm(1, *(c.denominator for c in coeffs))


def in_integer_span(hnf: Sequence[Row], target: Sequence[int]) -> bool:
    return denominator(hnf, target) == 1


def prime_factors(d: int) -> set[int]:
    out = set()
    p = 2
    while p * p <= d:
        while d % p == 0:
            out.add(p)
            d //= p
        p += 1
    if d > 1:
        out.add(d)
    return out
