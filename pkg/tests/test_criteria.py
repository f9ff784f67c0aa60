import random
from fractions import Fraction

import pytest

from tropfan import chow, homology
from tropfan.criteria import (
    chow_pd_check,
    homology_manifold_check,
    is_ample,
    kleiman_check,
    pd_weight,
    verification_report,
)
from tropfan.fan import ConewiseLinear, TropicalWeights
from tropfan.homology import compactification, unit_cochain


class TestVerificationReport:
    def test_cube_all_iso(self, cube):
        r = verification_report(cube)
        assert r.unimodular and r.saturated
        assert all(v == "iso" for v in r.psi_status.values())
        assert r.vanishing_guaranteed_ok
        assert all(ok for _, ok in r.ring_checks)
        assert r.ok

    def test_delta_surjective_with_torsion_kernel(self, delta):
        r = verification_report(delta)
        assert r.unimodular and not r.saturated
        assert r.psi_status[1] == "surjective-torsion-kernel"
        assert str(r.chow_groups[1]) == "Z x Z/3Z"
        assert str(r.cohomology[(1, 1)]) == "Z"
        assert r.ok

    def test_sigma3_q_iso_with_torsion_note(self, sigma3):
        r = verification_report(sigma3)
        assert not r.unimodular
        assert all(v == "Q-iso" for v in r.psi_status.values())
        notes = [(p, q, g) for p, q, g, kind in r.vanishing_observations if kind == "below-diagonal"]
        assert notes == [(1, 2, "Z/3Z")]
        assert r.ok  # the integral vanishing is not guaranteed without unimodularity

    @pytest.mark.parametrize("name", ["p2", "cone2", "u23"])
    def test_saturated_unimodular_iso(self, name, request):
        r = verification_report(request.getfixturevalue(name))
        assert all(v == "iso" for v in r.psi_status.values())
        assert r.ok


class TestChowPD:
    def test_u23_true(self, u23, u23_weights):
        rep = chow_pd_check(u23, u23_weights)
        assert rep.ok
        assert rep.gram_determinants == {0: 1, 1: 1}

    def test_cube_fails_with_index_two(self, cube, cube_weights):
        rep = chow_pd_check(cube, cube_weights)
        assert not rep.ok
        assert rep.gram_determinants[1] in (2, -2)

    def test_cone2_fails_at_top(self, cone2):
        rep = chow_pd_check(cone2)
        assert not rep.ok
        assert any("A^2" in r for r in rep.reasons)

    def test_k4_true(self, k4_pair):
        fan, w = k4_pair
        assert chow_pd_check(fan, w).ok


class TestManifoldCheck:
    def test_u23_true(self, u23, u23_weights):
        assert homology_manifold_check(u23, u23_weights).ok

    def test_cube_false_with_witness(self, cube, cube_weights):
        rep = homology_manifold_check(cube, cube_weights)
        assert not rep.ok
        origin = rep.per_face[()]
        assert (2, 1, "Z^2") in origin["vanishing_failures"]

    def test_k4_true(self, k4_pair):
        fan, w = k4_pair
        assert homology_manifold_check(fan, w).ok

    def test_u24_true(self, u24_pair):
        fan, w = u24_pair
        assert homology_manifold_check(fan, w).ok


class TestManifoldConsequences:
    def test_poincare_symmetric_tables(self, k4_pair):
        # a homology manifold has symmetric cohomology/homology tables
        fan, w = k4_pair
        assert homology_manifold_check(fan, w).ok
        comp = compactification(fan)
        d = fan.dim
        coh = {}
        hom = {}
        for p in range(d + 1):
            cg = homology.ComplexGroups(homology.build_complex(comp, p, "cohomology"))
            hg = homology.ComplexGroups(homology.build_complex(comp, p, "homology"))
            for q in range(d + 1):
                coh[(p, q)] = cg.group(q)
                hom[(p, q)] = hg.group(q)
        for p in range(d + 1):
            for q in range(d + 1):
                assert coh[(p, q)] == hom[(d - p, d - q)], (p, q)
                assert coh[(p, q)].is_free

    def test_chow_torsion_free_on_manifold(self, k4_pair):
        fan, _ = k4_pair
        for k in range(fan.dim + 1):
            assert chow.chow_group(fan, k).group.is_free


class TestPDWeight:
    def test_unit_class_gives_weights(self, u23, u23_weights):
        u = unit_cochain(compactification(u23))
        w = pd_weight(u23, u23_weights, u)
        assert w.dimension == 1
        assert w.values == tuple(u23_weights[u23.cones[s]] for s in u23.cones_of_dim(1))

    def test_u23_ray_class(self, u23, u23_weights):
        a = chow.chow_generator_cocycle(u23, u23.cone_index((0,)))
        w = pd_weight(u23, u23_weights, a)
        assert w.dimension == 0
        assert w.values == (1,)

    def test_top_degree_matches_degree_map(self, k4_pair):
        fan, weights = k4_pair
        pres = chow.chow_group(fan, 2)
        s = fan.cones_of_dim(2)[0]
        a = chow.chow_generator_cocycle(fan, s)
        w = pd_weight(fan, weights, a)
        assert w.dimension == 0
        assert w.values == (degree_map_of_generator(fan, weights, s),)

    def test_pairing_equals_intersection_numbers(self, u24_pair):
        fan, weights = u24_pair
        pres1 = chow.chow_group(fan, 1)
        for s in fan.cones_of_dim(1):
            a = chow.chow_generator_cocycle(fan, s)
            w = pd_weight(fan, weights, a)
            for i, t in enumerate(fan.cones_of_dim(fan.dim - 1)):
                prod = chow.chow_multiply(fan, pres1.generator(s), chow.chow_group(fan, fan.dim - 1).generator(t))
                assert w.values[i] == chow.degree_map(fan, weights, prod)

    def test_induced_map_is_isomorphism(self, u23, u23_weights):
        # images of the Chow generators span the Minkowski weights unimodularly
        from tropfan.zlinalg import IntMatrix, snf, solve_int

        d = u23.dim
        p = 1
        basis = chow.minkowski_weights(u23, d - p)
        rows = []
        for s in u23.cones_of_dim(p):
            a = chow.chow_generator_cocycle(u23, s)
            w = pd_weight(u23, u23_weights, a)
            coords = solve_int(IntMatrix.from_rows([b.values for b in basis]), w.values)
            assert coords is not None
            rows.append(coords)
        assert snf(IntMatrix.from_rows(rows)).divisors == (1,) * len(basis)


def degree_map_of_generator(fan, weights, s):
    pres = chow.chow_group(fan, fan.dim)
    return chow.degree_map(fan, weights, pres.generator(s))


class TestAmple:
    def test_p2_support_function(self, p2):
        assert is_ample(p2, ConewiseLinear([0, 0, 1]))

    def test_zero_function_on_complete_fan(self, p2):
        assert not is_ample(p2, ConewiseLinear([0, 0, 0]))

    def test_concave_function(self, p2):
        assert not is_ample(p2, ConewiseLinear([0, 0, -1]))

    def test_delta_unit_values(self, delta):
        assert is_ample(delta, ConewiseLinear([1, 1, 1]))

    def test_linear_function_not_strictly_convex(self, delta):
        # restriction of a global linear function: convex but never strict
        f = ConewiseLinear([1, 1, -2])  # first coordinate functional
        assert not is_ample(delta, f)


class TestKleiman:
    def test_p2_agreement_on_named_functions(self, p2):
        for values, want in [([0, 0, 1], True), ([0, 0, 0], False), ([0, 0, -1], False)]:
            f = ConewiseLinear(values)
            assert is_ample(p2, f) == kleiman_check(p2, f) == want

    def test_delta_positive(self, delta):
        f = ConewiseLinear([1, 1, 1])
        assert kleiman_check(delta, f)

    def test_vacuous_stratum(self, cone2):
        # the single-cone fan carries no nonzero effective balanced curve
        assert kleiman_check(cone2, ConewiseLinear([0, 0]))

    @pytest.mark.parametrize("name", ["p2", "delta", "u23"])
    def test_randomized_agreement(self, name, request):
        fan = request.getfixturevalue(name)
        rng = random.Random(2024)
        for _ in range(60):
            f = ConewiseLinear(
                [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in fan.rays]
            )
            assert is_ample(fan, f) == kleiman_check(fan, f)

    @pytest.mark.parametrize("name", ["p2", "delta", "u23"])
    def test_linear_functions_agree_false(self, name, request):
        # boundary cases: convex but not strictly convex
        fan = request.getfixturevalue(name)
        rng = random.Random(77)
        for _ in range(8):
            m = [rng.randint(-3, 3) for _ in range(fan.rank)]
            f = ConewiseLinear([sum(mi * xi for mi, xi in zip(m, r)) for r in fan.rays])
            assert not is_ample(fan, f)
            assert not kleiman_check(fan, f)
