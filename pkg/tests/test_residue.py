import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circeq.residue import (
    AffineMap,
    ResidueParseError,
    ResidueSet,
    affine_classes,
    affine_equivalent,
    affine_orbit,
    apply_affine,
    canonical_affine_form,
    delta,
    delta_equal_pairs,
    delta_linear_equivalent,
    delta_units,
    linear_equivalent,
    parse,
    sda_check,
    units,
)
from oracles import affine_bf, all_sets, delta_bf, residue_sets, units_bf


class TestParse:
    def test_round_trip(self):
        S = parse("0,1,3/7")
        assert S == ResidueSet(7, (0, 1, 3))
        assert str(S) == "0,1,3/7"

    def test_reduces_and_sorts(self):
        assert parse("9,1/7").elements == (1, 2)
        assert parse("-1,0/5").elements == (0, 4)

    def test_empty(self):
        assert parse("/5") == ResidueSet(5, ())

    @pytest.mark.parametrize("bad", ["0,1,3", "0,1/0", "a,b/7", "0,,1/7", "1,8/7", "", "0,1/-3"])
    def test_malformed(self, bad):
        with pytest.raises(ResidueParseError):
            parse(bad)

    @given(residue_sets())
    def test_str_parse_inverse(self, S):
        assert parse(str(S)) == S


class TestUnits:
    @pytest.mark.parametrize("n", range(1, 40))
    def test_matches_gcd(self, n):
        assert list(units(n)) == units_bf(n)


class TestAffineMap:
    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            AffineMap(2, 0, 8)

    @given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.just(n), st.sampled_from(units(n)), st.integers(0, n - 1), st.sampled_from(units(n)), st.integers(0, n - 1))))
    def test_group_action(self, data):
        n, u1, v1, u2, v2 = data
        f, g = AffineMap(u1, v1, n), AffineMap(u2, v2, n)
        for x in range(n):
            assert f.then(g)(x) == g(f(x))
            assert f.inverse()(f(x)) == x


class TestDelta:
    @given(residue_sets())
    def test_matches_brute_force(self, S):
        D = delta(S)
        assert D.support() == dict(delta_bf(S))
        assert D.total == len(S) ** 2
        assert D[0] == len(S)

    @given(residue_sets(n_min=2).flatmap(lambda S: st.tuples(st.just(S), st.sampled_from(units(S.modulus)), st.integers(0, S.modulus - 1))))
    def test_affine_image_scales(self, data):
        S, u, v = data
        image = apply_affine(S, AffineMap(u, v, S.modulus))
        assert delta(image) == delta(S).scale(u)

    def test_units_relating(self):
        S, T = parse("0,1,3/13"), parse("0,2,6/13")
        # Delta is symmetric, so -u works whenever u does
        assert delta_units(delta(T), delta(S)) == [2, 11]
        assert delta_linear_equivalent(delta(T), delta(S)).witness == 2
        # a difference set: every unit relates it to itself
        D = delta(parse("0,1,3/7"))
        assert delta_units(D, D) == list(units(7))


class TestAffineEquivalence:
    def test_fano_example(self):
        v = affine_equivalent(parse("1,2,4/7"), parse("0,1,3/7"))
        assert v.equivalent
        assert apply_affine(parse("0,1,3/7"), v.witness) == parse("1,2,4/7")
        assert (v.witness.u, v.witness.v) == (1, 1)

    def test_equal_delta_but_not_affine(self):
        S, T = parse("0,1,4,7/8"), parse("0,1,3,4/8")
        assert delta(S) == delta(T)
        assert not affine_equivalent(S, T).equivalent

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError):
            affine_equivalent(parse("0/3"), parse("0/4"))

    @given(residue_sets(n_max=12, k_max=5), st.data())
    def test_matches_brute_force(self, S, data):
        elems = data.draw(st.lists(st.integers(0, S.modulus - 1), min_size=len(S), max_size=len(S), unique=True))
        T = ResidueSet.of(elems, S.modulus)
        v = affine_equivalent(S, T)
        assert v.equivalent == affine_bf(S, T)
        if v.equivalent:
            assert apply_affine(T, v.witness) == S

    @given(residue_sets(n_min=2, n_max=20).flatmap(lambda S: st.tuples(st.just(S), st.sampled_from(units(S.modulus)), st.integers(0, S.modulus - 1))))
    def test_images_are_equivalent(self, data):
        S, u, v = data
        assert affine_equivalent(apply_affine(S, AffineMap(u, v, S.modulus)), S).equivalent

    @given(residue_sets(n_max=14, k_max=5), st.data())
    def test_linear_matches_brute_force(self, S, data):
        n = S.modulus
        u = data.draw(st.sampled_from(units(n)))
        scaled = ResidueSet.of((u * a for a in S), n)
        v = linear_equivalent(scaled, S)
        assert v.equivalent and ResidueSet.of((v.witness * a for a in S), n) == scaled
        shifted = ResidueSet.of((a + 1 for a in S), n)
        expect = any(ResidueSet.of((w * a for a in S), n) == shifted for w in units_bf(n))
        assert linear_equivalent(shifted, S).equivalent == expect


class TestCanonicalForm:
    @pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 17) for k in range(0, 5) if k <= n])
    def test_equal_forms_iff_affine(self, n, k):
        sets = all_sets(n, k)
        forms = {S: canonical_affine_form(S) for S in sets}
        sample = sets[:: max(1, len(sets) // 25)]
        for S, T in itertools.combinations(sample, 2):
            assert (forms[S] == forms[T]) == affine_bf(S, T)
        # one representative per class, and it is the canonical form
        reps = affine_classes(n, k)
        assert sorted(set(forms.values())) == reps
        assert all(canonical_affine_form(R) == R for R in reps)

    @given(residue_sets(n_max=20, k_max=6))
    def test_orbit_contains_form(self, S):
        orbit = affine_orbit(S)
        assert S in orbit
        assert orbit[0] == canonical_affine_form(S)

    def test_orbit_covers_all_sets(self):
        n, k = 10, 3
        total = sum(len(affine_orbit(R)) for R in affine_classes(n, k))
        assert total == len(all_sets(n, k))


class TestSDA:
    def test_n8_k4(self):
        out = sda_check(8, 4)
        assert [(v.S, v.T) for v in out] == [(parse("0,1,2,5/8"), parse("0,1,3,4/8"))]
        v = out[0]
        assert delta(v.T_member) == delta(v.S)
        assert canonical_affine_form(v.T_member) == v.T

    @pytest.mark.parametrize("n", range(3, 25))
    def test_k3_holds(self, n):
        assert sda_check(n, 3) == []

    @pytest.mark.parametrize("n", [8, 9, 10, 12])
    def test_against_brute_force(self, n):
        """Classes with Delta-equal members, found by comparing every pair of sets."""
        k = 4
        by_delta = {}
        for S in all_sets(n, k):
            by_delta.setdefault(tuple(sorted(delta_bf(S).items())), set()).add(canonical_affine_form(S))
        expected = set()
        for forms in by_delta.values():
            for a, b in itertools.combinations(sorted(forms), 2):
                expected.add((a, b))
        assert {(v.S, v.T) for v in sda_check(n, k)} == expected

    def test_delta_equal_pairs(self):
        pairs = list(delta_equal_pairs(8, 4))
        assert all(delta(S) == delta(T) for S, T in pairs)
        assert (parse("0,1,3,4/8"), parse("0,1,4,7/8")) in [tuple(sorted(p)) for p in pairs]
