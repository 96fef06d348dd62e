"""Residue sets mod n, difference multisets and affine equivalence.

A 0/1 circulant is identified with the set of columns holding a 1 in its top
row.  Everything here works on those sets directly.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

from .verdict import EquivalenceVerdict

_LITERAL = re.compile(r"^\s*((?:-?\d+\s*(?:,\s*-?\d+\s*)*)?)/\s*(-?\d+)\s*$")


class ResidueParseError(ValueError):
    """Raised for malformed ``a1,...,ak/n`` literals."""


@dataclass(frozen=True, order=True)
class ResidueSet:
    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.modulus
        if n < 1:
            raise ValueError(f"modulus must be positive, got {n}")
        els = self.elements
        if any(not 0 <= a < n for a in els):
            raise ValueError(f"elements {els} not reduced mod {n}")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError(f"elements {els} not strictly increasing")

    @classmethod
    def of(cls, elements: Iterable[int], modulus: int) -> "ResidueSet":
        """Reduce, sort and validate; duplicates after reduction are an error."""
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        reduced = [a % modulus for a in elements]
        uniq = sorted(set(reduced))
        if len(uniq) != len(reduced):
            raise ValueError(f"duplicate residue mod {modulus} in {list(elements)}")
        return cls(modulus, tuple(uniq))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, a: object) -> bool:
        return isinstance(a, int) and (a % self.modulus) in self.elements

    def __str__(self) -> str:
        return ",".join(map(str, self.elements)) + f"/{self.modulus}"

    @property
    def weight(self) -> int:
        return len(self.elements)

    def to_json_obj(self) -> str:
        return str(self)


def parse(text: str) -> ResidueSet:
    """Parse a literal such as ``"0,1,3/7"``.  ``"/5"`` is the empty set."""
    m = _LITERAL.match(text)
    if not m:
        raise ResidueParseError(f"malformed residue set literal {text!r}")
    body, mod = m.groups()
    n = int(mod)
    if n <= 0:
        raise ResidueParseError(f"modulus must be positive in {text!r}")
    items = [int(t) for t in body.split(",")] if body.strip() else []
    try:
        return ResidueSet.of(items, n)
    except ValueError as exc:
        raise ResidueParseError(str(exc)) from None


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    return tuple(u for u in range(n) if gcd(u, n) == 1) if n > 1 else (0,)


def totient(n: int) -> int:
    return len(units(n))


@dataclass(frozen=True)
class AffineMap:
    """x -> u*x + v mod n with u a unit."""

    u: int
    v: int
    modulus: int

    def __post_init__(self) -> None:
        n = self.modulus
        if n < 1:
            raise ValueError("modulus must be positive")
        if gcd(self.u, n) != 1:
            raise ValueError(f"u={self.u} is not a unit mod {n}")
        object.__setattr__(self, "u", self.u % n)
        object.__setattr__(self, "v", self.v % n)

    def __call__(self, x: int) -> int:
        return (self.u * x + self.v) % self.modulus

    def then(self, other: "AffineMap") -> "AffineMap":
        """The map applying ``self`` first, then ``other``."""
        if other.modulus != self.modulus:
            raise ValueError("modulus mismatch")
        return AffineMap(other.u * self.u, other.u * self.v + other.v, self.modulus)

    def inverse(self) -> "AffineMap":
        n = self.modulus
        ui = pow(self.u, -1, n) if n > 1 else 0
        return AffineMap(ui, -ui * self.v, n)

    def to_json_obj(self) -> dict:
        return {"u": self.u, "v": self.v}


def apply_affine(S: ResidueSet, m: AffineMap) -> ResidueSet:
    if m.modulus != S.modulus:
        raise ValueError(f"map modulus {m.modulus} != set modulus {S.modulus}")
    return ResidueSet.of((m(a) for a in S.elements), S.modulus)


@dataclass(frozen=True)
class DifferenceMultiset:
    """Multiset of all k^2 ordered differences a_i - a_j mod n.

    ``counts[d]`` is the multiplicity of residue d.
    """

    modulus: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.modulus:
            raise ValueError("counts must have one entry per residue")

    def __getitem__(self, d: int) -> int:
        return self.counts[d % self.modulus]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def scale(self, u: int) -> "DifferenceMultiset":
        n = self.modulus
        out = [0] * n
        for d, c in enumerate(self.counts):
            if c:
                out[(u * d) % n] += c
        return DifferenceMultiset(n, tuple(out))

    def support(self) -> dict[int, int]:
        return {d: c for d, c in enumerate(self.counts) if c}

    def to_json_obj(self) -> dict:
        return {str(d): c for d, c in self.support().items()}


def delta(S: ResidueSet) -> DifferenceMultiset:
    n = S.modulus
    counts = [0] * n
    for a in S.elements:
        for b in S.elements:
            counts[(a - b) % n] += 1
    return DifferenceMultiset(n, tuple(counts))


def _same_shape(S: ResidueSet, T: ResidueSet) -> None:
    if S.modulus != T.modulus:
        raise ValueError(f"modulus mismatch: {S.modulus} vs {T.modulus}")


def delta_units(D1: DifferenceMultiset, D2: DifferenceMultiset) -> list[int]:
    """All units u with u*D2 == D1."""
    if D1.modulus != D2.modulus:
        raise ValueError(f"modulus mismatch: {D1.modulus} vs {D2.modulus}")
    if D1.total != D2.total:
        return []
    n = D1.modulus
    supp2 = D2.support()
    hits = []
    for u in units(n):
        if all(D1.counts[(u * d) % n] == c for d, c in supp2.items()):
            hits.append(u)
    return hits


def delta_linear_equivalent(D1: DifferenceMultiset, D2: DifferenceMultiset) -> EquivalenceVerdict:
    hits = delta_units(D1, D2)
    if not hits:
        return EquivalenceVerdict.no("delta-linear")
    n = D1.modulus
    return EquivalenceVerdict.yes("delta-linear", hits[0], lambda u: D2.scale(u) == D1 and gcd(u, n) == 1)


def affine_equivalent(S: ResidueSet, T: ResidueSet) -> EquivalenceVerdict:
    """Decide S = u*T + v; the witness maps T onto S."""
    _same_shape(S, T)
    if len(S) != len(T):
        return EquivalenceVerdict.no("affine")
    n = S.modulus
    check = lambda m: apply_affine(T, m) == S  # noqa: E731
    if not S.elements:
        return EquivalenceVerdict.yes("affine", AffineMap(1, 0, n), check)
    target = set(S.elements)
    s0 = S.elements[0]
    # only units with u*Delta(T) = Delta(S) can carry T onto a translate of S
    for u in delta_units(delta(S), delta(T)):
        uT = [(u * t) % n for t in T.elements]
        for t in uT:
            v = (s0 - t) % n
            if all((x + v) % n in target for x in uT):
                return EquivalenceVerdict.yes("affine", AffineMap(u, v, n), check)
    return EquivalenceVerdict.no("affine")


def linear_equivalent(S: ResidueSet, T: ResidueSet) -> EquivalenceVerdict:
    """Decide S = u*T; the witness is the unit u."""
    _same_shape(S, T)
    n = S.modulus
    check = lambda u: gcd(u, n) == 1 and ResidueSet.of((u * t for t in T), n) == S  # noqa: E731
    if len(S) != len(T):
        return EquivalenceVerdict.no("linear")
    if not S.elements:
        return EquivalenceVerdict.yes("linear", 1 % n if n > 1 else 0, check)
    target = set(S.elements)
    for u in units(n):
        if all((u * t) % n in target for t in T.elements):
            return EquivalenceVerdict.yes("linear", u, check)
    return EquivalenceVerdict.no("linear")


def _translates_to_zero(elems: Sequence[int], n: int) -> Iterator[tuple[int, ...]]:
    for t in elems:
        yield tuple(sorted((x - t) % n for x in elems))


def canonical_affine_form(S: ResidueSet) -> ResidueSet:
    """Lexicographically least affine image of S.

    The least image always contains 0, so only the translates that move an
    element to 0 need to be considered for each unit.
    """
    n = S.modulus
    if not S.elements:
        return S
    best = None
    for u in units(n):
        uS = [(u * a) % n for a in S.elements]
        for cand in _translates_to_zero(uS, n):
            if best is None or cand < best:
                best = cand
    return ResidueSet(n, best)


def affine_orbit(S: ResidueSet) -> list[ResidueSet]:
    """All distinct affine images of S, sorted."""
    n = S.modulus
    out = set()
    for u in units(n):
        for v in range(n):
            out.add(tuple(sorted((u * a + v) % n for a in S.elements)))
    return [ResidueSet(n, e) for e in sorted(out)]


def affine_classes(n: int, k: int) -> list[ResidueSet]:
    """Canonical representatives of the weight-k affine classes mod n, ascending.

    Zero-containing sets are visited in lexicographic order, so the first
    member of each orbit met is the orbit's canonical form.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        return [ResidueSet(n, ())]
    seen: set[tuple[int, ...]] = set()
    reps = []
    us = units(n)
    for rest in itertools.combinations(range(1, n), k - 1):
        cand = (0,) + rest
        if cand in seen:
            continue
        reps.append(ResidueSet(n, cand))
        for u in us:
            uS = [(u * a) % n for a in cand]
            seen.update(_translates_to_zero(uS, n))
    return reps


def delta_class_key(D: DifferenceMultiset) -> tuple[int, ...]:
    """Least count vector over the unit orbit of D."""
    return min(D.scale(u).counts for u in units(D.modulus))


@dataclass(frozen=True)
class SDAViolation:
    """Two affine classes whose members share a difference multiset.

    ``T_member`` lies in the class of ``T`` and has exactly the difference
    multiset of ``S``.
    """

    S: ResidueSet
    T: ResidueSet
    T_member: ResidueSet

    def to_json_obj(self) -> dict:
        return {"S": str(self.S), "T": str(self.T), "T_member": str(self.T_member)}


def sda_check(n: int, k: int) -> list[SDAViolation]:
    """Every pair of inequivalent weight-k classes mod n with a common Delta.

    Delta of u*T + v is u*Delta(T), so two classes contain Delta-equal
    members exactly when their representatives' Deltas are unit multiples.
    """
    groups: dict[tuple[int, ...], list[tuple[ResidueSet, DifferenceMultiset]]] = {}
    for rep in affine_classes(n, k):
        D = delta(rep)
        groups.setdefault(delta_class_key(D), []).append((rep, D))
    out = []
    for members in groups.values():
        for (S, DS), (T, DT) in itertools.combinations(members, 2):
            u = delta_units(DS, DT)[0]
            T_member = ResidueSet.of((u * t for t in T), n)
            assert delta(T_member) == DS
            out.append(SDAViolation(S, T, T_member))
    out.sort(key=lambda v: (v.S.elements, v.T.elements))
    return out


def delta_equal_pairs(n: int, k: int) -> Iterator[tuple[ResidueSet, ResidueSet]]:
    """Pairs of distinct zero-containing weight-k sets with identical Delta."""
    groups: dict[tuple[int, ...], list[ResidueSet]] = {}
    for rest in itertools.combinations(range(1, n), k - 1):
        S = ResidueSet(n, (0,) + rest)
        groups.setdefault(delta(S).counts, []).append(S)
    for members in groups.values():
        yield from itertools.combinations(members, 2)
