"""Signed-permutation systems behind SDA(n,4) and SDA(n,5).

If X = {x_1..x_k} and Y = {y_1..y_k} have equal difference multisets, then
for some permutation pi of the 2-subsets T of {1..k} and signs sigma,

    x_min(A) - x_max(A) = sigma(A) * (y_min(pi A) - y_max(pi A))   for A in T.

For each system we look for rho in S_k and c = +-1 such that every
x_i - x_k - c*(y_rho(i) - y_rho(k)) lies in the rational span of those
equations, and record the least common denominator needed to reach it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import factorial, lcm
from typing import Iterable, Iterator

from ..linalg import denominator, hermite_normal_form, in_integer_span, prime_factors
from ..report import VerificationReport, timed

ALLOWED_PRIMES = {4: {2, 13}, 5: {2, 5}}


@dataclass(frozen=True)
class SignedPermutationSystem:
    k: int
    pi: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        m = self.k * (self.k - 1) // 2
        if sorted(self.pi) != list(range(m)):
            raise ValueError("pi must permute the 2-subsets")
        if len(self.sigma) != m or any(s not in (1, -1) for s in self.sigma):
            raise ValueError("sigma must map every 2-subset to +-1")

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(itertools.combinations(range(self.k), 2))

    def equations(self) -> list[tuple[int, ...]]:
        """Rows over (x_0..x_{k-1}, y_0..y_{k-1})."""
        k, T = self.k, self.pairs
        rows = []
        for idx, (a, b) in enumerate(T):
            c, d = T[self.pi[idx]]
            s = self.sigma[idx]
            row = [0] * (2 * k)
            row[a] += 1
            row[b] -= 1
            row[k + c] -= s
            row[k + d] += s
            rows.append(tuple(row))
        return rows

    def to_json_obj(self) -> dict:
        T = self.pairs
        return {
            "pi": {f"{a + 1}{b + 1}": "".join(str(x + 1) for x in T[self.pi[i]]) for i, (a, b) in enumerate(T)},
            "sigma": list(self.sigma),
        }


def _target(k: int, i: int, a: int, b: int) -> tuple[int, ...]:
    """x_i - x_{k-1} - (y_a - y_b)."""
    row = [0] * (2 * k)
    row[i] += 1
    row[k - 1] -= 1
    row[k + a] -= 1
    row[k + b] += 1
    return tuple(row)


@dataclass(frozen=True)
class SystemOutcome:
    rho: tuple[int, ...] | None
    c: int | None
    denominator: int | None


class _Solver:
    def __init__(self, k: int) -> None:
        self.k = k
        self.cache: dict[tuple, SystemOutcome] = {}
        self.rhos = list(itertools.permutations(range(k)))

    def solve(self, system: SignedPermutationSystem) -> tuple[tuple, SystemOutcome]:
        hnf = hermite_normal_form(system.equations())
        hit = self.cache.get(hnf)
        if hit is not None:
            return hnf, hit
        k = self.k
        dens = {}
        for i in range(k - 1):
            for a in range(k):
                for b in range(k):
                    if a != b:
                        dens[i, a, b] = denominator(hnf, _target(k, i, a, b))
        best = SystemOutcome(None, None, None)
        for rho in self.rhos:
            last = rho[k - 1]
            for c in (1, -1):
                d = 1
                for i in range(k - 1):
                    key = (i, rho[i], last) if c == 1 else (i, last, rho[i])
                    di = dens[key]
                    if di is None:
                        d = None
                        break
                    d = lcm(d, di)
                if d is not None and (best.denominator is None or d < best.denominator):
                    best = SystemOutcome(rho, c, d)
        self.cache[hnf] = best
        return hnf, best


def _difference_targets(k: int, scale: int) -> Iterator[tuple[int, ...]]:
    for i, j in itertools.combinations(range(2 * k), 2):
        if (i < k) == (j < k):
            row = [0] * (2 * k)
            row[i] = scale
            row[j] = -scale
            yield tuple(row)


def all_systems(k: int, pruned: bool = False) -> Iterator[SignedPermutationSystem]:
    """Every (pi, sigma); ``pruned`` fixes pi(T0) = T0 and sigma(T0) = +1.

    The pruning is sound: relabelling the y's by a permutation of {1..k}
    and negating all y's map systems to systems, act unimodularly on the
    variables, and carry any (rho, c) along with the same denominator.
    """
    m = k * (k - 1) // 2
    if pruned:
        for rest in itertools.permutations(range(1, m)):
            for signs in itertools.product((1, -1), repeat=m - 1):
                yield SignedPermutationSystem(k, (0,) + rest, (1,) + signs)
    else:
        for pi in itertools.permutations(range(m)):
            for sigma in itertools.product((1, -1), repeat=m):
                yield SignedPermutationSystem(k, pi, sigma)


def sampled_systems(k: int, count: int, seed: int = 0) -> Iterator[SignedPermutationSystem]:
    rng = random.Random(seed)
    m = k * (k - 1) // 2
    for _ in range(count):
        pi = list(range(m))
        rng.shuffle(pi)
        yield SignedPermutationSystem(k, tuple(pi), tuple(rng.choice((1, -1)) for _ in range(m)))


def _sweep(k: int, systems: Iterable[SignedPermutationSystem], report: VerificationReport, budget: int | None) -> None:
    allowed = ALLOWED_PRIMES[k]
    solver = _Solver(k)
    primes: set[int] = set()
    by_den: dict[int, int] = {}
    flagged = 0
    span_failures = 0
    span_checked: dict[tuple, bool] = {}
    count = 0
    for system in systems:
        if budget is not None and count >= budget:
            report.mark_inconclusive()
            report.details["budget_exhausted"] = True
            break
        count += 1
        hnf, out = solver.solve(system)
        if out.denominator is None:
            report.violation({"system": system.to_json_obj(), "reason": "no (rho, c) in the rational span"})
            continue
        d = out.denominator
        by_den[d] = by_den.get(d, 0) + 1
        ps = prime_factors(d)
        primes |= ps
        if not ps <= allowed:
            report.violation({"system": system.to_json_obj(), "denominator": d, "rho": out.rho, "c": out.c})
        odd = allowed - {2}
        if ps & odd:
            flagged += 1
            (p,) = ps & odd
            ok = span_checked.get(hnf)
            if ok is None:
                ok = all(in_integer_span(hnf, t) for t in _difference_targets(k, p))
                span_checked[hnf] = ok
            if not ok:
                span_failures += 1
                report.violation({"system": system.to_json_obj(), "reason": f"{p}*(x_i-x_j) not in the integer span"})
    report.details.update(
        {
            "systems": count,
            "distinct_lattices": len(solver.cache),
            "denominator_primes": sorted(primes),
            "denominator_histogram": {str(d): c for d, c in sorted(by_den.items())},
            "odd_prime_systems": flagged,
            "integer_span_failures": span_failures,
        }
    )


def verify_sda4_algebra(pruned: bool = False) -> VerificationReport:
    m = 6
    report = VerificationReport("sda4-algebra", {"k": 4, "pruned": pruned, "allowed_primes": [2, 13]})
    report.params["systems"] = factorial(m) * 2**m // (1 if not pruned else 2 * m)
    with timed(report):
        _sweep(4, all_systems(4, pruned), report, None)
    return report


def verify_sda5_algebra(budget: int | None = 10**6, sample: int | None = None, seed: int = 0) -> VerificationReport:
    """Pruned sweep under a system budget, or a random sample when ``sample`` is set."""
    params = {"k": 5, "allowed_primes": [2, 5]}
    if sample is not None:
        params.update({"mode": "sample", "sample": sample, "seed": seed})
        systems = sampled_systems(5, sample, seed)
        budget = None
    else:
        params.update({"mode": "pruned-sweep", "budget": budget})
        systems = all_systems(5, pruned=True)
    report = VerificationReport("sda5-algebra", params)
    with timed(report):
        _sweep(5, systems, report, budget)
    return report
