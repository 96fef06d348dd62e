"""The classification of equal sums sum(alpha_i + conj alpha_i) = sum(beta_i + conj beta_i).

Roots of unity are written as exponents in Q/Z (a Fraction t means
exp(2 pi i t)); every instance is checked exactly in Z[zeta_L] for L the
lcm of the denominators involved.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Iterator

from ..cyclotomic import GroupRingElement, canonical_form
from ..report import VerificationReport, timed

HALF = Fraction(1, 2)
Root = Fraction


def primitive(order: int) -> list[Root]:
    return [Fraction(j, order) for j in range(1, order) if gcd(j, order) == 1] if order > 1 else [Fraction(0)]


def roots_dividing(order: int) -> list[Root]:
    return [Fraction(j, order) for j in range(order)]


def neg(x: Root) -> Root:
    return (x + HALF) % 1


def conj(x: Root) -> Root:
    return (-x) % 1


def mul(*xs: Root) -> Root:
    return sum(xs, Fraction(0)) % 1


def power(x: Root, e: int) -> Root:
    return (x * e) % 1


@dataclass(frozen=True)
class Instance:
    case: str
    params: dict
    A: tuple[Root, ...]
    B: tuple[Root, ...]


def _sum_element(roots: Iterable[Root], L: int) -> GroupRingElement:
    return GroupRingElement.from_exponents((int(r * L) for r in roots), L)


def _common_order(*groups: Iterable[Root]) -> int:
    return lcm(1, *(r.denominator for g in groups for r in g))


def _case2(alpha: Root) -> tuple[Root, ...]:
    a, ab = alpha, conj(alpha)
    return (a, neg(ab), HALF, ab, neg(a), HALF)


def _f_i(s: Root) -> tuple[Root, ...]:
    return (s, power(s, 2), conj(power(s, 3)), conj(s), conj(power(s, 2)), power(s, 3))


def _f_ii(i: Root, w: Root) -> tuple[Root, ...]:
    w2 = power(w, 2)
    return (mul(i, w), neg(mul(i, w)), w, neg(mul(i, w2)), mul(i, w2), w2)


def _f_iii(p: Root, w: Root) -> tuple[Root, ...]:
    w2 = power(w, 2)
    return (neg(mul(w, p)), neg(mul(w2, p)), conj(power(p, 2)), neg(mul(w2, conj(p))), neg(mul(w, conj(p))), power(p, 2))


def _case3a(mu: Root, w: Root) -> tuple[tuple[Root, ...], tuple[Root, ...]]:
    mb = conj(mu)
    A = (mu, neg(mu), neg(power(mb, 2)), mb, neg(mb), neg(power(mu, 2)))
    w2 = power(w, 2)
    B = (w, w2, Fraction(0), w2, w, Fraction(0))
    return A, B


def _case3b(p: Root, w: Root) -> tuple[tuple[Root, ...], tuple[Root, ...]]:
    pb = conj(p)
    A = (p, power(p, 2), power(pb, 3), pb, power(pb, 2), power(p, 3))
    w2 = power(w, 2)
    p2, pb2 = power(p, 2), power(pb, 2)
    B = (w, neg(mul(w, p2)), neg(mul(w, pb2)), w2, neg(mul(w2, pb2)), neg(mul(w2, p2)))
    return A, B


def _case3c(s: Root, w: Root) -> tuple[tuple[Root, ...], tuple[Root, ...]]:
    sb = conj(s)
    w2 = power(w, 2)
    s3, sb3 = power(s, 3), power(sb, 3)
    A = (w, mul(s3, w), mul(sb3, w), w2, mul(sb3, w2), mul(s3, w2))
    B = (neg(mul(s, w)), neg(mul(s, w2)), power(sb, 2), neg(mul(sb, w2)), neg(mul(sb, w)), power(s, 2))
    return A, B


def _case3d(nu: Root, w: Root) -> tuple[tuple[Root, ...], tuple[Root, ...]]:
    nb = conj(nu)
    A = (nu, neg(nu), neg(power(nb, 2)), nb, neg(nb), neg(power(nu, 2)))
    w2 = power(w, 2)
    n2, nb2 = power(nu, 2), power(nb, 2)
    B = (mul(w, n2), mul(w2, n2), power(nb, 4), mul(w2, nb2), mul(w, nb2), power(nu, 4))
    return A, B


def _case3e(w: Root, p: Root, i: Root) -> tuple[tuple[Root, ...], tuple[Root, ...]]:
    pb = conj(p)
    w2 = power(w, 2)
    p2, pb2 = power(p, 2), power(pb, 2)
    A = (w, mul(w, p2), mul(w, pb2), w2, mul(w2, pb2), mul(w2, p2))
    B = (p, mul(i, p2), neg(mul(i, power(pb, 3))), pb, neg(mul(i, pb2)), mul(i, power(p, 3)))
    return A, B


SUM_MINUS_ONE: dict[str, tuple[Callable[..., tuple[Root, ...]], tuple[int, ...]]] = {
    "3f-i": (_f_i, (7,)),
    "3f-ii": (_f_ii, (4, 3)),
    "3f-iii": (_f_iii, (5, 3)),
}


def _param_grid(orders: tuple[int, ...]) -> Iterator[tuple[Root, ...]]:
    return itertools.product(*(primitive(o) for o in orders))


def instances(alpha_order: int = 24) -> Iterator[Instance]:
    grid = roots_dividing(alpha_order)
    for a1, a2 in itertools.product(roots_dividing(12), repeat=2):
        a3 = conj(mul(a1, a2))
        A = (a1, a2, a3, conj(a1), conj(a2), conj(a3))
        yield Instance("1", {"alpha": [str(a1), str(a2), str(a3)]}, A, A)
    for a, b in itertools.product(grid, repeat=2):
        yield Instance("2", {"alpha": str(a), "beta": str(b)}, _case2(a), _case2(b))
    for label, fn, orders, names in (
        ("3a", _case3a, (8, 3), ("mu", "omega")),
        ("3b", _case3b, (5, 3), ("phi", "omega")),
        ("3c", _case3c, (7, 3), ("sigma", "omega")),
        ("3d", _case3d, (16, 3), ("nu", "omega")),
        ("3e", _case3e, (3, 5, 4), ("omega", "phi", "iota")),
    ):
        for ps in _param_grid(orders):
            A, B = fn(*ps)
            yield Instance(label, dict(zip(names, map(str, ps))), A, B)
    for (la, (fa, oa)), (lb, (fb, ob)) in itertools.product(SUM_MINUS_ONE.items(), repeat=2):
        for pa in _param_grid(oa):
            for pb in _param_grid(ob):
                yield Instance(f"{la}/{lb}", {"A": list(map(str, pa)), "B": list(map(str, pb))}, fa(*pa), fb(*pb))


def _structure_ok(M: tuple[Root, ...]) -> bool:
    """First three multiply to 1 and the last three are their conjugates, in order."""
    return mul(*M[:3]) == 0 and all(M[3 + j] == conj(M[j]) for j in range(3))


def verify_section6_cases(alpha_order: int = 24) -> VerificationReport:
    report = VerificationReport("section6-classification", {"alpha_beta_order_divides": alpha_order})
    counts: dict[str, int] = {}
    with timed(report):
        note_pairs = 0
        for inst in instances(alpha_order):
            top = inst.case.split("/")[0]
            counts[top] = counts.get(top, 0) + 1
            for side, M in (("A", inst.A), ("B", inst.B)):
                if not _structure_ok(M):
                    report.violation({"case": inst.case, "params": inst.params, "side": side, "reason": "not of the form {a1,a2,a3,conj} with a1*a2*a3 = 1"})
            L = _common_order(inst.A, inst.B)
            sa = canonical_form(_sum_element(inst.A, L))
            sb = canonical_form(_sum_element(inst.B, L))
            if sa != sb:
                report.violation({"case": inst.case, "params": inst.params, "reason": "sums differ"})
            if "/" in inst.case:
                minus_one = canonical_form(GroupRingElement.constant(-1, L))
                if sa != minus_one:
                    report.violation({"case": inst.case, "params": inst.params, "reason": "sum is not -1"})
                if inst.case == "3f-iii/3f-iii" and inst.params["A"][0] != inst.params["B"][0] and sorted(inst.A) != sorted(inst.B):
                    note_pairs += 1
        report.details["instances"] = counts
        report.details["3f_iii_distinct_phi_pairs"] = note_pairs
        if note_pairs == 0:
            report.violation({"case": "3f-iii", "reason": "no pairing with distinct fifth roots found"})
    return report
