import cmath
import itertools
import random
from collections import Counter

import pytest
import sympy
from sympy.matrices.normalforms import hermite_normal_form as sympy_hnf

from circeq.linalg import hermite_normal_form
from circeq.residue import affine_classes, parse
from circeq.verify import (
    SignedPermutationSystem,
    four_conditions,
    plus_minus_witness,
    verify_k3_at,
    verify_k3_spectral,
    verify_large_prime_theorem,
    verify_sda4_algebra,
    verify_sda5_algebra,
    verify_sda_claims,
    verify_section6_cases,
    verify_theorem1,
    verify_weight2_count,
)
from circeq.verify import k3, sda_algebra, section6
from circeq.verify.chain import tau
from oracles import units_bf


# ---------------------------------------------------------------- SDA systems


def lattice_denominator_oracle(rows, target, limit=64):
    """Least d <= limit with d*target in the Z-span of rows, from sympy's column HNF."""
    M = sympy.Matrix(rows).T
    W = sympy_hnf(M)
    W = W[:, [j for j in range(W.cols) if any(W[:, j])]]
    for d in range(1, limit + 1):
        t = sympy.Matrix([d * x for x in target])
        try:
            sol, params = W.gauss_jordan_solve(t)
        except ValueError:
            return None
        if params.shape[0] == 0 and all(v.is_integer for v in sol):
            return d
    return "over-limit"


def transform(system, tau, c):
    """Relabel y_j -> y_tau(j) and multiply every y by c."""
    T = system.pairs
    index = {p: i for i, p in enumerate(T)}
    pi, sigma = [], []
    for i in range(len(T)):
        a, b = T[system.pi[i]]
        ta, tb = tau[a], tau[b]
        s = system.sigma[i] * c
        if ta > tb:
            ta, tb, s = tb, ta, -s
        pi.append(index[(ta, tb)])
        sigma.append(s)
    return SignedPermutationSystem(system.k, tuple(pi), tuple(sigma))


class TestSignedSystems:
    def test_validation(self):
        with pytest.raises(ValueError):
            SignedPermutationSystem(3, (0, 0, 1), (1, 1, 1))
        with pytest.raises(ValueError):
            SignedPermutationSystem(3, (0, 1, 2), (1, 2, 1))

    def test_identity_system(self):
        s = SignedPermutationSystem(4, tuple(range(6)), (1,) * 6)
        _, out = sda_algebra._Solver(4).solve(s)
        assert out.denominator == 1

    def test_equation_rows(self):
        s = SignedPermutationSystem(3, (1, 0, 2), (1, -1, 1))
        rows = s.equations()
        # x1 - x2 = y1 - y3 for the first pair, x1 - x3 = -(y1 - y2) for the second
        assert rows[0] == (1, -1, 0, -1, 0, 1)
        assert rows[1] == (1, 0, -1, 1, -1, 0)

    @pytest.mark.parametrize("seed", range(6))
    def test_denominator_matches_sympy(self, seed):
        rng = random.Random(seed)
        k = 4
        pi = list(range(6))
        rng.shuffle(pi)
        system = SignedPermutationSystem(k, tuple(pi), tuple(rng.choice((1, -1)) for _ in range(6)))
        hnf, out = sda_algebra._Solver(k).solve(system)
        rows = system.equations()
        # the reported (rho, c) needs exactly the reported denominator
        best = 1
        for i in range(k - 1):
            a, b = (out.rho[i], out.rho[k - 1]) if out.c == 1 else (out.rho[k - 1], out.rho[i])
            d = lattice_denominator_oracle(rows, sda_algebra._target(k, i, a, b))
            best = best * d // sympy.gcd(best, d)
        assert best == out.denominator
        # and no other (rho, c) does better
        for rho in itertools.permutations(range(k)):
            for c in (1, -1):
                dens = []
                for i in range(k - 1):
                    a, b = (rho[i], rho[k - 1]) if c == 1 else (rho[k - 1], rho[i])
                    dens.append(lattice_denominator_oracle(rows, sda_algebra._target(k, i, a, b)))
                if None in dens or "over-limit" in dens:
                    continue
                assert sympy.ilcm(*dens) >= out.denominator

    @pytest.mark.parametrize("seed", range(40))
    def test_pruning_is_sound(self, seed):
        """Each system has a pruned-form image with the same minimal denominator."""
        rng = random.Random(1000 + seed)
        k = 4
        pi = list(range(6))
        rng.shuffle(pi)
        system = SignedPermutationSystem(k, tuple(pi), tuple(rng.choice((1, -1)) for _ in range(6)))
        solver = sda_algebra._Solver(k)
        d = solver.solve(system)[1].denominator
        images = [transform(system, tau, c) for tau in itertools.permutations(range(k)) for c in (1, -1)]
        pruned = [s for s in images if s.pi[0] == 0 and s.sigma[0] == 1]
        assert pruned
        assert {solver.solve(s)[1].denominator for s in images} == {d}

    def test_pruned_sweep_sda4(self):
        r = verify_sda4_algebra(pruned=True)
        assert r.ok, r.witnesses[:3]
        assert r.details["systems"] == 3840
        assert set(r.details["denominator_primes"]) <= {2, 13}
        assert r.details["integer_span_failures"] == 0
        assert r.details["odd_prime_systems"] > 0

    def test_sda5_sample(self):
        r = verify_sda5_algebra(sample=150, seed=3)
        assert r.ok, r.witnesses[:3]
        assert set(r.details["denominator_primes"]) <= {2, 5}

    def test_sda5_budget_marks_inconclusive(self):
        r = verify_sda5_algebra(budget=5)
        assert r.status == "inconclusive"
        assert r.details["systems"] == 5


# ---------------------------------------------------------------- k = 3 spectra


def exact_spectrum_bruteforce_groups(n):
    """Group the multisets {+-a1,+-a2,+-a3} by their exact sorted power-sum spectrum."""
    groups = {}
    for t in k3.triples(n):
        A = k3.conjugate_closed(t, n)
        groups.setdefault(k3.exact_power_spectrum(A, n), set()).add(A)
    return groups


class TestK3:
    def test_unit_relating(self):
        assert k3.unit_relating((1, 1, 1), (2, 2, 2), 3) == 2
        assert k3.unit_relating((0, 1), (0, 2), 4) is None

    @pytest.mark.parametrize("n", [1, 2, 3, 7, 12, 30, 90, 132, 840])
    def test_fingerprint_field(self, n):
        p, g = k3.fingerprint_field(n)
        assert sympy.isprime(p) and p % n == 1 % n and p < 2**31
        assert sympy.n_order(g, p) == n if n > 1 else g % p == 1

    def test_primality(self):
        assert [q for q in range(2000) if k3._is_prime(q)] == list(sympy.primerange(2000))

    @pytest.mark.parametrize("n", range(1, 25))
    def test_theorem_by_brute_force(self, n):
        """Equal exact spectra force a unit multiple, and the fast checker agrees."""
        for members in exact_spectrum_bruteforce_groups(n).values():
            base = min(members)
            for other in members:
                assert k3.unit_relating(other, base, n) is not None
        assert verify_k3_at(n).ok

    @pytest.mark.parametrize("n", [6, 10, 12, 15, 18, 20])
    def test_modular_keys_refine_nothing_away(self, n):
        """Exactly equal spectra share a modular key (the key is a ring image)."""
        p, g = k3.fingerprint_field(n)
        for members in exact_spectrum_bruteforce_groups(n).values():
            ms = sorted(members)
            keys = k3._modular_keys(ms, n, p, g)
            assert len(set(keys)) == 1

    def test_modular_keys_match_direct_evaluation(self):
        n = 12
        p, g = k3.fingerprint_field(n)
        A = k3.conjugate_closed((1, 2, 9), n)
        key = k3._modular_keys([A], n, p, g)[0]
        direct = sorted(sum(pow(g, (a * r) % n, p) for a in A) % p for r in range(n))
        import numpy as np

        assert key == np.array(direct, dtype=np.int64).tobytes()

    @pytest.mark.parametrize("n", [12, 24, 30])
    def test_options_agree(self, n):
        base = verify_k3_at(n)
        assert base.ok
        for reduce, lcm_filter in itertools.product((True, False), repeat=2):
            r = verify_k3_at(n, reduce=reduce, lcm_filter=lcm_filter)
            assert r.status == base.status
            assert r.details["multisets"] == base.details["multisets"]

    def test_multiset_counts(self):
        r = verify_k3_at(12)
        assert r.details["triples"] == 144
        assert r.details["multisets"] == len({k3.conjugate_closed(t, 12) for t in k3.triples(12)})

    def test_long_running_guard(self):
        with pytest.raises(ValueError):
            verify_k3_spectral(840)

    def test_divisor_sweep(self):
        r = verify_k3_spectral(36)
        assert r.ok
        assert sorted(map(int, r.details["moduli"])) == [d for d in range(1, 37) if 36 % d == 0]


# ---------------------------------------------------------------- sums of six roots


class TestSection6:
    def test_all_cases_verify(self):
        r = verify_section6_cases()
        assert r.ok, r.witnesses[:3]
        counts = r.details["instances"]
        # phi(8)*phi(3), phi(5)*phi(3), phi(7)*phi(3), phi(16)*phi(3), phi(3)*phi(5)*phi(4)
        assert (counts["3a"], counts["3b"], counts["3c"], counts["3d"], counts["3e"]) == (8, 8, 12, 16, 16)
        assert counts["2"] == 24 * 24
        assert r.details["3f_iii_distinct_phi_pairs"] > 0

    def test_sums_numerically(self):
        for inst in itertools.islice(section6.instances(), 0, None, 17):
            sa = sum(cmath.exp(2j * cmath.pi * float(t)) for t in inst.A)
            sb = sum(cmath.exp(2j * cmath.pi * float(t)) for t in inst.B)
            assert abs(sa - sb) < 1e-9, inst.case
            for M in (inst.A, inst.B):
                assert section6._structure_ok(M)

    def test_minus_one_families(self):
        for name, (fn, orders) in section6.SUM_MINUS_ONE.items():
            for ps in section6._param_grid(orders):
                s = sum(cmath.exp(2j * cmath.pi * float(t)) for t in fn(*ps))
                assert abs(s + 1) < 1e-9, name

    def test_distinct_phi_note(self):
        w = section6.Fraction(1, 3)
        A = section6._f_iii(section6.Fraction(1, 5), w)
        B = section6._f_iii(section6.Fraction(2, 5), w)
        assert Counter(A) != Counter(B)
        sa = sum(cmath.exp(2j * cmath.pi * float(t)) for t in A)
        sb = sum(cmath.exp(2j * cmath.pi * float(t)) for t in B)
        assert abs(sa - sb) < 1e-9

    def test_checker_detects_a_wrong_case(self, monkeypatch):
        def broken(mu, w):
            A, B = section6._case3a(mu, w)
            return A, (B[1], B[0]) + B[2:]  # breaks the conjugate pattern

        original = section6.instances

        def patched(order=24):
            for inst in original(order):
                if inst.case == "3a":
                    A, B = broken(section6.Fraction(1, 8), section6.Fraction(1, 3))
                    yield section6.Instance("3a", {}, A, tuple(x + section6.Fraction(1, 24) for x in B))
                else:
                    yield inst

        monkeypatch.setattr(section6, "instances", patched)
        assert verify_section6_cases().status == "violated"


# ---------------------------------------------------------------- the four conditions


class TestChain:
    def test_four_conditions_n8(self):
        vals = four_conditions(parse("0,1,4,7/8"), parse("0,1,3,4/8"))
        assert vals == {"affine": False, "pq": True, "permsim": True, "spectral": True}

    def test_four_conditions_n12(self):
        vals = four_conditions(parse("0,1,2,6/12"), parse("0,1,3,9/12"))
        assert vals == {"affine": False, "pq": False, "permsim": False, "spectral": True}

    def test_theorem1_small(self):
        r = verify_theorem1(12)
        assert r.ok, r.witnesses[:3]
        assert r.details["pairs"] > 0

    def test_theorem1_fails_at_weight_four(self):
        r = verify_theorem1(8, weights=(4,), n_min=8)
        assert r.status == "violated"
        assert {"S": "0,1,2,5/8", "T": "0,1,3,4/8"}.items() <= r.witnesses[0].items()

    def test_large_prime_theorem(self):
        r = verify_large_prime_theorem(4, 29)
        assert r.ok and r.details["within_hypothesis"]
        assert r.details["pairs"] == len(affine_classes(29, 4)) * (len(affine_classes(29, 4)) - 1) // 2

    @pytest.mark.parametrize("n", range(1, 40))
    def test_tau(self, n):
        assert tau(n) == len(sympy.divisors(n))

    def test_weight2(self):
        assert verify_weight2_count(60).ok

    def test_sda_claims_small(self):
        r = verify_sda_claims(n_max3=20, odd_max4=11)
        assert r.ok, r.witnesses[:3]

    def test_plus_minus_witness(self):
        S, T = parse("0,1,3/8"), parse("0,5,7/8")
        u, v = plus_minus_witness(S, T)
        assert u in (1, 7)
        assert {(u * t + v) % 8 for t in T.elements} == set(S.elements)
        assert plus_minus_witness(parse("0,1,3/7"), parse("0,1,5/7")) is not None
        # related only by u = 2
        assert plus_minus_witness(parse("0,1,3/13"), parse("0,2,6/13")) is None
