"""Exhaustive checks that the four equivalence conditions coincide."""

from __future__ import annotations

import itertools

from ..matgraph import autocorrelation_matrix, circulant_from, perm_similar, pq_equivalent
from ..report import VerificationReport, timed
from ..residue import (
    ResidueSet,
    affine_classes,
    affine_equivalent,
    delta_equal_pairs,
    sda_check,
)
from ..spectra import autocorrelation_spectrum, spectra_equal, spectrum_fingerprint

CONDITIONS = ("affine", "pq", "permsim", "spectral")


def four_conditions(S: ResidueSet, T: ResidueSet, budget: int | None = None, spectra=None) -> dict[str, bool | None]:
    """Affine, PQ, permutation-similarity and spectral equivalence for a pair; None marks an inconclusive decision."""
    A, B = circulant_from(S), circulant_from(T)
    pq = pq_equivalent(A, B, budget)
    ps = perm_similar(autocorrelation_matrix(A), autocorrelation_matrix(B), budget)
    sa, sb = spectra if spectra is not None else (autocorrelation_spectrum(S), autocorrelation_spectrum(T))
    return {
        "affine": affine_equivalent(S, T).equivalent,
        "pq": None if pq.inconclusive else pq.equivalent,
        "permsim": None if ps.inconclusive else ps.equivalent,
        "spectral": spectra_equal(sa, sb),
    }


def _sweep_classes(n: int, k: int, report: VerificationReport, budget: int | None, reflexive: bool) -> int:
    reps = affine_classes(n, k)
    spectra = [autocorrelation_spectrum(S) for S in reps]
    pairs = 0
    idx = range(len(reps))
    combos = itertools.combinations_with_replacement(idx, 2) if reflexive else itertools.combinations(idx, 2)
    for i, j in combos:
        pairs += 1
        vals = four_conditions(reps[i], reps[j], budget, (spectra[i], spectra[j]))
        if None in vals.values():
            report.mark_inconclusive()
            continue
        if len(set(vals.values())) != 1:
            report.violation({"n": n, "k": k, "S": str(reps[i]), "T": str(reps[j]), "conditions": vals})
    return pairs


def verify_theorem1(n_max: int, weights=(0, 1, 2, 3), n_min: int = 1, budget: int | None = None, reflexive: bool = True) -> VerificationReport:
    """The four conditions agree for every pair of affine classes mod n."""
    report = VerificationReport("theorem1", {"n_min": n_min, "n_max": n_max, "weights": list(weights)})
    with timed(report):
        pairs = 0
        for n in range(n_min, n_max + 1):
            for k in weights:
                if k <= n:
                    pairs += _sweep_classes(n, k, report, budget, reflexive)
        report.details["pairs"] = pairs
    return report


def verify_large_prime_theorem(k: int, n: int, budget: int | None = None) -> VerificationReport:
    bound = 2 * k * (k - 1)
    report = VerificationReport("large-prime-theorem", {"k": k, "n": n, "bound": bound})
    with timed(report):
        small = [p for p in range(2, bound + 1) if n % p == 0]
        report.details["within_hypothesis"] = not small
        report.details["pairs"] = _sweep_classes(n, k, report, budget, reflexive=False)
    return report


def tau(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def verify_weight2_count(n_max: int, n_min: int = 1) -> VerificationReport:
    """Weight-2 classes number tau(n)-1 and have pairwise distinct spectra."""
    report = VerificationReport("weight2-count", {"n_min": n_min, "n_max": n_max})
    with timed(report):
        for n in range(n_min, n_max + 1):
            reps = affine_classes(n, 2) if n >= 2 else []
            if len(reps) != tau(n) - 1:
                report.violation({"n": n, "classes": len(reps), "tau_minus_1": tau(n) - 1})
            for S in reps:
                g = S.elements[1]
                if n % g:
                    report.violation({"n": n, "class": str(S), "reason": "representative is not {0,g} with g | n"})
            spectra = [autocorrelation_spectrum(S) for S in reps]
            by_print: dict[str, list[int]] = {}
            for i, sp in enumerate(spectra):
                by_print.setdefault(spectrum_fingerprint(sp), []).append(i)
            for members in by_print.values():
                for i, j in itertools.combinations(members, 2):
                    if spectra_equal(spectra[i], spectra[j]):
                        report.violation({"n": n, "S": str(reps[i]), "T": str(reps[j]), "reason": "equal spectra"})
    return report


def verify_sda_claims(n_max3: int = 48, odd_max4: int = 15) -> VerificationReport:
    """SDA(n,3) for n <= n_max3 with +-1 multipliers, the n=8 weight-4 failure,
    and SDA(n,4) for odd n <= odd_max4."""
    report = VerificationReport("sda", {"n_max3": n_max3, "odd_max4": odd_max4})
    with timed(report):
        delta_pairs = 0
        for n in range(3, n_max3 + 1):
            for v in sda_check(n, 3):
                report.violation({"n": n, "k": 3, **v.to_json_obj()})
            for S, T in delta_equal_pairs(n, 3):
                delta_pairs += 1
                if plus_minus_witness(S, T) is None:
                    report.violation({"n": n, "S": str(S), "T": str(T), "reason": "no affine witness with u = +-1"})
        report.details["k3_delta_equal_pairs"] = delta_pairs
        eight = sda_check(8, 4)
        report.details["sda_8_4"] = [v.to_json_obj() for v in eight]
        if [(v.S.elements, v.T.elements) for v in eight] != [((0, 1, 2, 5), (0, 1, 3, 4))]:
            report.violation({"n": 8, "k": 4, "reason": "expected exactly the class pair of {0,1,4,7} and {0,1,3,4}"})
        for n in range(5, odd_max4 + 1, 2):
            for v in sda_check(n, 4):
                report.violation({"n": n, "k": 4, **v.to_json_obj()})
    return report


def plus_minus_witness(S: ResidueSet, T: ResidueSet) -> tuple[int, int] | None:
    """(u, v) with u in {1, -1} and S = u*T + v, if any."""
    n = S.modulus
    target = set(S.elements)
    for u in (1, n - 1):
        uT = [(u * t) % n for t in T.elements]
        for t in uT:
            v = (S.elements[0] - t) % n
            if {(x + v) % n for x in uT} == target:
                return u, v
    return None
