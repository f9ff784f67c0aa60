import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropfan import zlinalg
from tropfan.fan import (
    Fan,
    TropicalWeights,
    is_balanced,
    is_saturated,
    is_saturated_at,
    is_unimodular,
    validate,
)
from tropfan.zlinalg import Sublattice


class TestValidate:
    def test_p2_passes(self, p2):
        assert validate(p2, "geometric").ok

    def test_primitivity_violation(self):
        fan = Fan.from_max_cones(2, [(2, 0), (0, 1), (-1, -1)], [(0, 1), (0, 2), (1, 2)])
        diags = validate(fan)
        assert any(f.code == "primitivity" for f in diags.findings)

    def test_geometric_overlap(self):
        fan = Fan.from_max_cones(2, [(1, 0), (1, 2), (1, 1), (0, 1)], [(0, 1), (2, 3)])
        diags = validate(fan, "geometric")
        assert any(f.code == "overlap" for f in diags.findings)

    def test_shared_face_no_overlap(self, p2):
        # adjacent cones of a genuine fan share only boundary faces
        assert validate(p2, "geometric").ok


class TestUnimodular:
    def test_p2(self, p2):
        assert is_unimodular(p2)[1]

    def test_sigma3_not(self, sigma3):
        per_cone, glob = is_unimodular(sigma3)
        assert not glob
        bad = sigma3.cone_index((0, 1))
        assert not per_cone[bad]

    def test_delta_is(self, delta):
        assert is_unimodular(delta)[1]

    def test_cube_is(self, cube):
        assert is_unimodular(cube)[1]


class TestSaturated:
    def test_delta_not_at_origin(self, delta):
        assert not is_saturated_at(delta, delta.zero_cone)
        assert not is_saturated(delta)

    def test_p2_at_origin(self, p2):
        assert is_saturated_at(p2, p2.zero_cone)
        assert is_saturated(p2)

    def test_cube_everywhere(self, cube):
        for i in range(len(cube.cones)):
            assert is_saturated_at(cube, i)


class TestStarFan:
    def test_p2_star_of_ray(self, p2):
        star = p2.star(p2.cone_index((0,)))
        assert star.quotient_rank == 1
        assert sorted(star.fan.rays) == [(-1,), (1,)]
        assert len(star.fan.maximal) == 2

    def test_star_of_origin_is_identity(self, p2):
        star = p2.star(p2.zero_cone)
        assert star.fan is p2
        assert star.proj == tuple(
            tuple(1 if i == j else 0 for j in range(2)) for i in range(2)
        )

    def test_cone2_star_of_top(self, cone2):
        star = cone2.star(cone2.cone_index((0, 1)))
        assert star.quotient_rank == 0
        assert star.fan.cones == ((),)

    def test_star_of_star_poset(self, cube):
        # iterated stars agree with the star at the larger cone
        tau = cube.cone_index((0,))
        sigma = cube.cone_index((0, 1))
        star1 = cube.star(tau)
        inner = star1.fan.star(star1.cone_map[sigma])
        direct = cube.star(sigma)
        assert _poset_signature(inner.fan) == _poset_signature(direct.fan)

    def test_star_section_consistency(self, cube):
        for idx in range(len(cube.cones)):
            star = cube.star(idx)
            m = star.quotient_rank
            prod = [
                [sum(star.section[i][t] * star.proj[t][j] for t in range(cube.rank)) for j in range(m)]
                for i in range(m)
            ]
            assert prod == [[1 if i == j else 0 for j in range(m)] for i in range(m)]


def _poset_signature(fan):
    return sorted((len(c), tuple(sorted(map(len, (set(c) & set(d) for d in fan.cones))))) for c in fan.cones)


class TestBalanced:
    def test_delta_units(self, delta, delta_weights):
        assert is_balanced(delta, delta_weights)

    def test_cube_units(self, cube, cube_weights):
        assert is_balanced(cube, cube_weights)

    def test_delta_112(self, delta):
        w = TropicalWeights.from_list(delta, [1, 1, 2])
        assert not is_balanced(delta, w)

    def test_sign_flip_invariance(self, delta, delta_weights):
        flipped = TropicalWeights.from_list(delta, [-1, -1, -1])
        assert is_balanced(delta, flipped)

    @given(a=st.integers(-3, 3), b=st.integers(-3, 3))
    @settings(max_examples=30, deadline=None)
    def test_additivity(self, u23, a, b):
        # multiples of the unit weight stay balanced whenever nonzero
        c = a + b
        if a and b and c:
            wa = TropicalWeights.from_list(u23, [a] * 3)
            wb = TropicalWeights.from_list(u23, [b] * 3)
            wc = TropicalWeights.from_list(u23, [c] * 3)
            assert is_balanced(u23, wa) and is_balanced(u23, wb) and is_balanced(u23, wc)


class TestUnitNormal:
    def test_ray_normal_is_generator(self, p2):
        lift, cls = p2.unit_normal(p2.zero_cone, p2.cone_index((0,)))
        assert lift == (1, 0)
        assert cls == (1, 0)

    def test_cone2_example(self, cone2):
        lift, cls = cone2.unit_normal(cone2.cone_index((0,)), cone2.cone_index((0, 1)))
        assert cls == (1,)
        assert lift[1] == 1  # lies on the e2 side

    def test_sigma3_non_unimodular_cone(self, sigma3):
        tau = sigma3.cone_index((0,))
        sigma = sigma3.cone_index((0, 1))
        lift, cls = sigma3.unit_normal(tau, sigma)
        # N_sigma = Z^2 here; the class generates N^tau and points to (1,-3)
        assert lift[1] == -1

    def test_lattice_property(self, cube):
        for sigma in range(len(cube.cones)):
            for tau in cube.covers_of(sigma):
                lift, _ = cube.unit_normal(tau, sigma)
                rows = list(cube.cone_lattice(tau).basis.row_tuples()) + [lift]
                L = Sublattice.from_rows(rows, cube.rank)
                assert L.basis == cube.cone_lattice(sigma).basis

    def test_error_on_bad_pair(self, p2):
        with pytest.raises(ValueError):
            p2.unit_normal(p2.zero_cone, p2.cone_index((0, 1)))


class TestOrientation:
    def test_nu_of_rays(self, p2):
        for r in range(3):
            idx = p2.cone_index((r,))
            nu = p2.nu(idx)
            assert nu == tuple(p2.rays[r])

    def test_nu_zero_cone(self, p2):
        assert p2.nu(p2.zero_cone) == (1,)

    def test_varpi_normalization(self, cube):
        for idx in range(len(cube.cones)):
            assert cube.varpi(idx, cube.nu(idx)) == 1
            rays = [cube.rays[i] for i in cube.cones[idx]]
            from tropfan.exterior import wedge_rows

            raw = wedge_rows(rays, cube.rank)
            assert cube.varpi(idx, raw) > 0

    def test_unimodular_nu_is_ray_wedge(self, cube):
        from tropfan.exterior import wedge_rows

        for idx in range(len(cube.cones)):
            rays = [cube.rays[i] for i in cube.cones[idx]]
            assert cube.nu(idx) == wedge_rows(rays, cube.rank)

    def test_non_unimodular_nu_divides_ray_wedge(self, sigma3):
        from tropfan.exterior import wedge_rows

        idx = sigma3.cone_index((0, 1))
        raw = wedge_rows([sigma3.rays[0], sigma3.rays[1]], 2)
        assert sigma3.varpi(idx, raw) == 3  # cone of index three
