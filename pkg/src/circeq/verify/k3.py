"""Power-spectrum rigidity for six-element conjugation-closed multisets.

For exponent triples (a1, a2, a3) mod n with a1 + a2 + a3 = 0, put
A = {+-a1, +-a2, +-a3}.  Whenever two such multisets have the same
multiset of power sums {sum_{a in A} zeta^(a r) : 1 <= r <= n}, they should
be related by a unit: A = u*B.

Candidate matches are first grouped by the order lcm of the elements and by
a modular image of the power spectrum (zeta -> a primitive n-th root mod a
prime p = 1 mod n, a ring map, so exactly equal spectra always collide).
Only groups holding more than one unit class go through the exact
cyclotomic comparison.
"""

from __future__ import annotations

from collections import Counter
from math import gcd
from typing import Iterator

import numpy as np

from ..report import VerificationReport, timed
from ..residue import units
from ..spectra import power_sums

LONG_RUNNING_THRESHOLD = 200


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if n % q == 0 and _is_prime(q)]


def fingerprint_field(n: int) -> tuple[int, int]:
    """A prime p = 1 mod n below 2**31 and an element of order exactly n."""
    t = (1 << 30) // n
    while True:
        p = n * t + 1
        if p < (1 << 31) and _is_prime(p):
            break
        t -= 1
    qs = _prime_divisors(n)
    h = 2
    while True:
        g = pow(h, (p - 1) // n, p)
        if all(pow(g, n // q, p) != 1 for q in qs):
            return p, g
        h += 1


def conjugate_closed(triple: tuple[int, int, int], n: int) -> tuple[int, ...]:
    return tuple(sorted([a % n for a in triple] + [(-a) % n for a in triple]))


def triples(n: int) -> Iterator[tuple[int, int, int]]:
    for a1 in range(n):
        for a2 in range(n):
            yield a1, a2, (-a1 - a2) % n


def order_lcm(exps: tuple[int, ...], n: int) -> int:
    g = n
    for a in exps:
        g = gcd(g, a)
    return n // g


def unit_canonical(exps: tuple[int, ...], n: int) -> tuple[int, ...]:
    return min(tuple(sorted((u * a) % n for a in exps)) for u in units(n))


def unit_relating(A: tuple[int, ...], B: tuple[int, ...], n: int) -> int | None:
    """Least unit u with A = u*B as multisets."""
    target = tuple(sorted(A))
    for u in units(n):
        if tuple(sorted((u * b) % n for b in B)) == target:
            return u
    return None


def exact_power_spectrum(exps: tuple[int, ...], n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(power_sums(dict(Counter(exps)), n)))


def _modular_keys(multisets: list[tuple[int, ...]], n: int, p: int, g: int) -> list[bytes]:
    pw = np.array([pow(g, j, p) for j in range(n)], dtype=np.int64)
    r = np.arange(n, dtype=np.int64)
    keys: list[bytes] = []
    chunk = max(1, 4_000_000 // (6 * n))
    for start in range(0, len(multisets), chunk):
        block = np.array(multisets[start:start + chunk], dtype=np.int64)
        idx = (r[None, :, None] * block[:, None, :]) % n
        vals = pw[idx].sum(axis=2) % p
        vals.sort(axis=1)
        keys.extend(row.tobytes() for row in vals)
    return keys


def verify_k3_at(n: int, reduce: bool = True, lcm_filter: bool = True) -> VerificationReport:
    """Check one modulus n; ``reduce`` dedupes triples giving the same multiset."""
    report = VerificationReport("k3-power-spectrum", {"n": n, "reduce": reduce, "lcm_filter": lcm_filter})
    with timed(report):
        seqs = [conjugate_closed(t, n) for t in triples(n)]
        report.details["triples"] = len(seqs)
        if reduce:
            seqs = sorted(set(seqs))
        report.details["multisets"] = len(set(seqs))
        p, g = fingerprint_field(n)
        keys = _modular_keys(seqs, n, p, g)
        groups: dict[tuple, list[tuple[int, ...]]] = {}
        for exps, key in zip(seqs, keys):
            gk = (order_lcm(exps, n), key) if lcm_filter else (key,)
            groups.setdefault(gk, []).append(exps)
        exact_checks = 0
        lcm_mismatch = 0
        for members in groups.values():
            if len(members) < 2:
                continue
            classes: dict[tuple[int, ...], tuple[int, ...]] = {}
            for exps in members:
                classes.setdefault(unit_canonical(exps, n), exps)
            if len(classes) < 2:
                continue
            reps = sorted(classes.values())
            spectra = {rep: exact_power_spectrum(rep, n) for rep in reps}
            exact_checks += len(reps)
            for i, X in enumerate(reps):
                for Y in reps[i + 1:]:
                    if spectra[X] == spectra[Y]:
                        if order_lcm(X, n) != order_lcm(Y, n):
                            lcm_mismatch += 1
                        report.violation({"A": list(X), "B": list(Y)})
        report.details.update(
            {
                "fingerprint_prime": p,
                "groups": len(groups),
                "exact_spectra_computed": exact_checks,
                "lcm_mismatches": lcm_mismatch,
            }
        )
    return report


def verify_k3_spectral(n: int, include_divisors: bool = True, long_running: bool = False, reduce: bool = True) -> VerificationReport:
    if n > LONG_RUNNING_THRESHOLD and not long_running:
        raise ValueError(f"n={n} is long-running; pass long_running=True")
    mods = divisors(n) if include_divisors else [n]
    report = VerificationReport("k3-power-spectrum", {"n": n, "divisors": include_divisors, "reduce": reduce})
    with timed(report):
        per = {}
        for m in mods:
            sub = verify_k3_at(m, reduce=reduce)
            per[str(m)] = {"status": sub.status, "multisets": sub.details["multisets"]}
            for w in sub.witnesses:
                report.violation({"n": m, **w})
        report.details["moduli"] = per
    return report
