"""Exact arithmetic in Z[zeta_n] and vanishing sums of roots of unity.

Elements are integer coefficient vectors over zeta^0..zeta^(n-1); equality
in the cyclotomic field is decided by the remainder modulo Phi_n.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .report import VerificationReport, timed

MAX_MINIMAL_WEIGHT = 12
MAX_ENUM_MODULUS = 60


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = self.coeffs
        if c and c[-1] == 0:
            raise ValueError("trailing zero coefficient")

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial.of(out)

    def divmod_monic(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        d = divisor.coeffs
        if not d or d[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = len(d) - 1
        quot = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                quot[i - dd] = c
                for j in range(dd + 1):
                    rem[i - dd + j] -= c * d[j]
        return IntPolynomial.of(quot), IntPolynomial.of(rem[:dd])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


_lock = threading.Lock()
_phi_cache: dict[int, IntPolynomial] = {}
_table_cache: dict[int, np.ndarray] = {}


def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """Phi_n via exact division of x^n - 1 by Phi_d for the proper divisors d."""
    if n < 1:
        raise ValueError("n must be positive")
    cached = _phi_cache.get(n)
    if cached is not None:
        return cached
    poly = IntPolynomial.of([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            poly, rem = poly.divmod_monic(cyclotomic_polynomial(d))
            if rem.coeffs:
                raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1 exactly")
    with _lock:
        _phi_cache.setdefault(n, poly)
    return _phi_cache[n]


def reduction_table(n: int) -> np.ndarray:
    """Row j holds the coefficients of x^j mod Phi_n, for 0 <= j < n.

    Stored as int64 when every entry is small, otherwise as Python ints.
    """
    cached = _table_cache.get(n)
    if cached is not None:
        return cached
    phi = cyclotomic_polynomial(n).coeffs
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    if deg == 0:
        raise AssertionError("Phi_n has positive degree")
    for _ in range(n):
        rows.append(cur)
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            nxt = [a - top * b for a, b in zip(nxt, phi)]
        cur = nxt
    bound = max(abs(x) for r in rows for x in r)
    table = np.array(rows, dtype=np.int64 if bound < 2**20 else object)
    table.setflags(write=False)
    with _lock:
        _table_cache.setdefault(n, table)
    return _table_cache[n]


def _phi_degree(n: int) -> int:
    return cyclotomic_polynomial(n).degree


@dataclass(frozen=True)
class CanonicalCyclotomic:
    """Remainder mod Phi_n: equal values iff equal coefficient tuples."""

    modulus: int
    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational_integer(self, value: int) -> bool:
        return self.coeffs[0] == value and not any(self.coeffs[1:])

    def to_json_obj(self) -> list[int]:
        return list(self.coeffs)


@dataclass(frozen=True)
class GroupRingElement:
    """sum_j coeffs[j] * zeta_n^j with integer coefficients."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.modulus:
            raise ValueError("need exactly one coefficient per power of zeta")

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], n: int, weight: int = 1) -> "GroupRingElement":
        c = [0] * n
        for e in exponents:
            c[e % n] += weight
        return cls(n, tuple(c))

    @classmethod
    def constant(cls, value: int, n: int) -> "GroupRingElement":
        return cls(n, (value,) + (0,) * (n - 1))

    def _check(self, other: "GroupRingElement") -> None:
        if other.modulus != self.modulus:
            raise ValueError("modulus mismatch; embed into a common ring first")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        n = self.modulus
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % n] += a * b
        return GroupRingElement(n, tuple(out))

    def rotate(self, s: int) -> "GroupRingElement":
        """Multiply by zeta^s."""
        n = self.modulus
        out = [0] * n
        for j, a in enumerate(self.coeffs):
            out[(j + s) % n] = a
        return GroupRingElement(n, tuple(out))

    def galois(self, u: int) -> "GroupRingElement":
        """Apply zeta -> zeta^u (an automorphism when gcd(u, n) = 1)."""
        n = self.modulus
        out = [0] * n
        for j, a in enumerate(self.coeffs):
            out[(u * j) % n] += a
        return GroupRingElement(n, tuple(out))

    def conjugate(self) -> "GroupRingElement":
        return self.galois(-1)

    def embed(self, m: int) -> "GroupRingElement":
        """View in Z[zeta_m] for a multiple m of n."""
        n = self.modulus
        if m % n:
            raise ValueError(f"{n} does not divide {m}")
        out = [0] * m
        step = m // n
        for j, a in enumerate(self.coeffs):
            out[j * step] = a
        return GroupRingElement(m, tuple(out))

    def numeric(self) -> complex:
        n = self.modulus
        j = np.arange(n)
        return complex(np.dot(np.array(self.coeffs, dtype=float), np.exp(2j * np.pi * j / n)))


def canonical_form(e: GroupRingElement) -> CanonicalCyclotomic:
    table = reduction_table(e.modulus)
    vec = np.asarray(e.coeffs, dtype=table.dtype if max(map(abs, e.coeffs), default=0) < 2**30 else object)
    red = vec @ table
    return CanonicalCyclotomic(e.modulus, tuple(int(x) for x in red))


def canonical_from_counts(counts: dict[int, int] | Sequence[tuple[int, int]], n: int) -> CanonicalCyclotomic:
    """Canonical form of sum c * zeta^e over (e, c) pairs."""
    table = reduction_table(n)
    items = counts.items() if isinstance(counts, dict) else counts
    acc = np.zeros(table.shape[1], dtype=table.dtype)
    for e, c in items:
        acc = acc + c * table[e % n]
    return CanonicalCyclotomic(n, tuple(int(x) for x in acc))


def is_vanishing(exponents: Iterable[int], n: int) -> bool:
    return canonical_from_counts(Counter(e % n for e in exponents), n).is_zero()


def _sub_multisets(counter: Counter) -> Iterable[Counter]:
    keys = sorted(counter)
    for choice in itertools.product(*(range(counter[k] + 1) for k in keys)):
        yield {k: c for k, c in zip(keys, choice) if c}


def is_minimal_vanishing(exponents: Sequence[int], n: int, max_weight: int = MAX_MINIMAL_WEIGHT) -> bool:
    exps = [e % n for e in exponents]
    if not exps:
        raise ValueError("multiset must be nonempty")
    if len(exps) > max_weight:
        raise ValueError(f"weight {len(exps)} exceeds supported bound {max_weight}")
    full = Counter(exps)
    if not canonical_from_counts(full, n).is_zero():
        return False
    total = len(exps)
    for sub in _sub_multisets(full):
        w = sum(sub.values())
        if 0 < w < total and canonical_from_counts(sub, n).is_zero():
            return False
    return True


def rotation_canonical(exponents: Sequence[int], n: int) -> tuple[int, ...]:
    """Lexicographically least sorted exponent tuple among all rotations."""
    exps = [e % n for e in exponents]
    return min(tuple(sorted((x - t) % n for x in exps)) for t in set(exps))


def enumerate_minimal_vanishing(n: int, max_weight: int) -> list[tuple[int, ...]]:
    """Minimal vanishing multisets of n-th roots of weight <= max_weight.

    Each class under rotation is reported once, by its lexicographically
    least sorted exponent tuple; output is sorted by (weight, tuple).
    """
    if n < 1 or n > MAX_ENUM_MODULUS:
        raise ValueError(f"modulus {n} outside the supported range 1..{MAX_ENUM_MODULUS}")
    if max_weight > MAX_MINIMAL_WEIGHT:
        raise ValueError(f"max_weight {max_weight} exceeds {MAX_MINIMAL_WEIGHT}")
    table = [tuple(int(x) for x in row) for row in reduction_table(n)]
    found: set[tuple[int, ...]] = set()

    # exponents in nondecreasing order after a leading 0; a vanishing prefix
    # is a proper vanishing sub-multiset of every extension, so prune there
    def extend(prefix: list[int], acc: tuple[int, ...]) -> None:
        if len(prefix) >= max_weight:
            return
        for e in range(prefix[-1], n):
            nxt = tuple(a + b for a, b in zip(acc, table[e]))
            prefix.append(e)
            if not any(nxt):
                if is_minimal_vanishing(prefix, n, max_weight):
                    found.add(rotation_canonical(prefix, n))
            else:
                extend(prefix, nxt)
            prefix.pop()

    if max_weight >= 1:
        extend([0], table[0])
    return sorted(found, key=lambda t: (len(t), t))


def order_of(e: int, n: int) -> int:
    return n // gcd(n, e % n)


def _is_prime(d: int) -> bool:
    return d >= 2 and all(d % p for p in range(2, int(d**0.5) + 1))


def primorial(d: int) -> int:
    out = 1
    for p in range(2, d + 1):
        if _is_prime(p):
            out *= p
    return out


def verify_small_weight_structure(n_bound: int, weight_bound: int = 5) -> VerificationReport:
    """Check the structure of minimal vanishing sums of weight <= weight_bound.

    Every weight-d sum must be a rotation of all d-th roots with d prime,
    and the lcm of the orders in a sum containing 1 must divide the product
    of the primes <= d.
    """
    report = VerificationReport("small-weight-vanishing-structure", {"n_bound": n_bound, "max_weight": weight_bound})
    by_weight: Counter = Counter()
    with timed(report):
        for n in range(1, n_bound + 1):
            for rep in enumerate_minimal_vanishing(n, weight_bound):
                d = len(rep)
                by_weight[d] += 1
                full = tuple(j * (n // d) for j in range(d)) if n % d == 0 else None
                if not _is_prime(d) or rep != full:
                    report.violation({"n": n, "sum": list(rep), "reason": "not a rotation of all d-th roots, d prime"})
                m = 1
                for e in rep:
                    o = order_of(e, n)
                    m = m * o // gcd(m, o)
                if primorial(d) % m:
                    report.violation({"n": n, "sum": list(rep), "reason": f"order lcm {m} does not divide primorial({d})"})
        report.details["classes_by_weight"] = {str(w): c for w, c in sorted(by_weight.items())}
    return report
