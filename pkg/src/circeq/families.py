"""Named example pairs and the weight >= 6 counterexample family."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .matgraph import (
    circulant_from,
    dot_histogram,
    dot_profile_invariant,
    ppinv_equivalent,
    pq_equivalent,
)
from .relations import RELATIONS, decide, implication_breaks
from .report import VerificationReport, timed
from .residue import AffineMap, ResidueSet, affine_equivalent, apply_affine, delta, parse, units
from .spectra import autocorrelation_spectrum, spectra_equal


def family_k6plus(k: int) -> tuple[frozenset[int], frozenset[int]]:
    """The two weight-k integer sets with equal difference multisets.

    They are the complements in {0..k+5} of {1,2,4,6,k+1,k+2} and of
    {1,3,6,k+1,k+2,k+3}.
    """
    if k < 6:
        raise ValueError(f"family needs k >= 6, got {k}")
    middle = set(range(7, k + 1))
    A = frozenset({0, 3, 5, k + 3, k + 4, k + 5} | middle)
    B = frozenset({0, 2, 4, 5, k + 4, k + 5} | middle)
    return A, B


def integer_differences(X: frozenset[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for a in X:
        for b in X:
            out[a - b] = out.get(a - b, 0) + 1
    return out


def family_images(k: int, n: int) -> tuple[ResidueSet, ResidueSet]:
    A, B = family_k6plus(k)
    return ResidueSet.of(A, n), ResidueSet.of(B, n)


def family_profile_targets(k: int) -> list[set[int]]:
    """Dot-product targets that separate the family at weight k.

    For k >= 9 this is the rows meeting the top row in one or two places;
    for smaller k the rows meeting it in exactly two places.
    """
    return [{1, 2}] if k >= 9 else [{2}]


def verify_family(k: int, n: int | None = None, full_decider_max: int = 64, budget: int | None = None) -> VerificationReport:
    if n is None:
        n = 2 * k + 11
    if n <= 2 * k + 10:
        raise ValueError(f"family needs n > 2k+10 = {2 * k + 10}, got n={n}")
    S, T = family_images(k, n)
    report = VerificationReport("family-k6plus", {"k": k, "n": n, "S": str(S), "T": str(T)})
    with timed(report):
        A, B = circulant_from(S), circulant_from(T)
        d_equal = delta(S) == delta(T)
        report.details["delta_equal"] = d_equal
        if not d_equal:
            report.violation({"reason": "difference multisets differ"})
        report.details["spectra_equal"] = spectra_equal(autocorrelation_spectrum(S), autocorrelation_spectrum(T))

        separated = []
        for targets in family_profile_targets(k):
            pa, pb = dot_profile_invariant(A, targets), dot_profile_invariant(B, targets)
            if pa != pb:
                separated.append(sorted(targets))
        # every single dot value above 1 (other than the row's own weight)
        others = sorted(v for v in dot_histogram(A) if 1 < v < k)
        report.details["separating_single_values"] = [
            v for v in others if dot_profile_invariant(A, {v}) != dot_profile_invariant(B, {v})
        ]
        report.details["profile_separates"] = bool(separated)
        if not separated:
            report.violation({"reason": "profile distinguisher failed", "targets": [sorted(t) for t in family_profile_targets(k)]})
        if k >= 9:
            flat_a = {x for prof in dot_profile_invariant(A, {1, 2}) for x in prof}
            flat_b = {x for prof in dot_profile_invariant(B, {1, 2}) for x in prof}
            entry4 = 4 in flat_a and 4 not in flat_b
            report.details["entry4_in_A_only"] = entry4
            if not entry4:
                report.violation({"reason": "entry 4 is not confined to the A profile"})

        if n <= full_decider_max:
            verdict = pq_equivalent(A, B, budget)
            report.details["pq_decider"] = verdict.status
            if verdict.equivalent:
                report.violation({"reason": "pq decider found an equivalence", "witness": [p.images for p in verdict.witness]})
            elif verdict.inconclusive:
                report.mark_inconclusive()
    return report


@dataclass(frozen=True)
class NamedPair:
    name: str
    S: ResidueSet
    T: ResidueSet
    expected: dict

    def __post_init__(self) -> None:
        unknown = set(self.expected) - set(RELATIONS)
        if unknown:
            raise ValueError(f"{self.name}: unknown relations {sorted(unknown)}")
        broken = implication_breaks(self.expected)
        if broken:
            raise ValueError(f"{self.name}: expectations contradict implications {broken}")

    def to_json_obj(self) -> dict:
        return {"name": self.name, "S": str(self.S), "T": str(self.T), "expected": self.expected}


def known_pairs_catalog() -> list[NamedPair]:
    raw = json.loads(resources.files("circeq.data").joinpath("catalog.json").read_text())
    return [NamedPair(e["name"], parse(e["S"]), parse(e["T"]), dict(e["expected"])) for e in raw]


def verify_catalog(budget: int | None = None) -> VerificationReport:
    report = VerificationReport("catalog", {})
    with timed(report):
        rows = []
        for pair in known_pairs_catalog():
            got = {}
            for rel in pair.expected:
                v = decide(rel, pair.S, pair.T, budget)
                if v.inconclusive:
                    report.mark_inconclusive()
                got[rel] = v.equivalent
            bad = {r: got[r] for r in pair.expected if got[r] != pair.expected[r]}
            rows.append({"name": pair.name, "observed": got})
            if bad:
                report.violation({"name": pair.name, "mismatch": bad})
        report.details["pairs"] = rows
    return report


ADAM_CHAIN = ("0,1,4,7/8", "0,1,2,5/8", "0,1,5,6/8", "0,1,3,4/8")


def adam_chain() -> VerificationReport:
    """Affine link, PP^-1 link, affine link between the two n=8 classes."""
    a, b, c, d = (parse(s) for s in ADAM_CHAIN)
    report = VerificationReport("adam-chain", {"chain": list(ADAM_CHAIN)})
    with timed(report):
        links = []
        first = affine_equivalent(b, a)
        second = ppinv_equivalent(circulant_from(b), circulant_from(c))
        third = affine_equivalent(d, c)
        for label, verdict, src, dst in (("affine", first, a, b), ("ppinv", second, b, c), ("affine", third, c, d)):
            w = verdict.witness
            wj = w.to_json_obj() if w is not None else None
            links.append({"from": str(src), "to": str(dst), "relation": label, "status": verdict.status, "witness": wj})
            if not verdict.equivalent:
                report.violation({"link": [str(src), str(dst)], "relation": label})
        report.details["links"] = links
    return report


WEIGHT6_PAIR = ("0,1,2,5,8,10/16", "0,2,3,7,8,10/16")


def weight6_no_adam_bridge(budget: int | None = None) -> VerificationReport:
    """No member of one weight-6 class is PP^-1 equivalent to a member of the other.

    Every pair of affine maps (g, h), 128 per side, is covered; each distinct
    pair of images is decided once.
    """
    S, T = (parse(s) for s in WEIGHT6_PAIR)
    report = VerificationReport("weight6-no-adam-bridge", {"S": str(S), "T": str(T)})
    with timed(report):
        n = S.modulus
        maps = [AffineMap(u, v, n) for u in units(n) for v in range(n)]
        left = [apply_affine(S, m) for m in maps]
        right = [apply_affine(T, m) for m in maps]
        report.details["affine_maps_per_side"] = len(maps)
        report.details["class_sizes"] = [len(set(left)), len(set(right))]
        A, B = circulant_from(S), circulant_from(T)
        pq = pq_equivalent(A, B, budget)
        report.details["pair_pq"] = pq.status
        report.details["pair_affine"] = affine_equivalent(S, T).status
        if not pq.equivalent:
            report.violation({"reason": "the pair itself is not PQ equivalent"})
        if affine_equivalent(S, T).equivalent:
            report.violation({"reason": "the pair is affinely equivalent"})
        mats = {Y: circulant_from(Y) for Y in set(left) | set(right)}
        decided: dict[tuple[ResidueSet, ResidueSet], bool] = {}
        for X in left:
            for Y in right:
                if (X, Y) in decided:
                    continue
                v = ppinv_equivalent(mats[X], mats[Y], budget)
                decided[X, Y] = v.equivalent
                if v.equivalent:
                    report.violation({"bridge": [str(X), str(Y)], "witness": v.witness.to_json_obj()})
                elif v.inconclusive:
                    report.mark_inconclusive()
        report.details["map_pairs_covered"] = len(left) * len(right)
        report.details["pairs_checked"] = len(decided)
    return report
