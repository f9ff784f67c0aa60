from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from tropfan import zlinalg
from tropfan.zlinalg import (
    EQ,
    GE,
    GT,
    AbGroup,
    IntMatrix,
    LatticeQuotient,
    Sublattice,
    cokernel_group,
    feasible,
    hnf,
    kernel_basis,
    saturate,
    snf,
    strict_lp_feasible,
)


def matrices(max_dim=4, max_entry=9):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            ).map(lambda rows: IntMatrix.from_rows(rows, n))
        )
    )


class TestSNF:
    def test_identity(self):
        M = IntMatrix.identity(2)
        res = snf(M)
        assert res.D == IntMatrix.identity(2)

    def test_diag_2_3(self):
        res = snf(IntMatrix.from_rows([(2, 0), (0, 3)]))
        assert res.D == IntMatrix.from_rows([(1, 0), (0, 6)])

    def test_zero(self):
        res = snf(IntMatrix.zeros(2, 3))
        assert res.D.is_zero()

    @given(matrices())
    @settings(max_examples=150, deadline=None)
    def test_snf_properties(self, M):
        res = snf(M)
        assert res.U * M * res.V == res.D
        assert abs(_det(res.U)) == 1
        assert abs(_det(res.V)) == 1
        assert res.V * res.Vinv == IntMatrix.identity(M.cols)
        divs = res.divisors
        assert all(d > 0 for d in divs)
        for a, b in zip(divs, divs[1:]):
            assert b % a == 0
        for i in range(res.D.rows):
            for j in range(res.D.cols):
                if i != j:
                    assert res.D[i, j] == 0


def _det(M):
    from tropfan.exterior import det

    return det(M.row_list())


class TestHNF:
    @given(matrices())
    @settings(max_examples=150, deadline=None)
    def test_hnf_shape(self, M):
        H, T = hnf(M)
        assert T * M == H
        assert abs(_det(T)) == 1
        pivots = []
        for i in range(H.rows):
            row = H.row(i)
            p = next((j for j, e in enumerate(row) if e), None)
            if p is None:
                # all following rows must be zero too
                assert all(not any(H.row(k)) for k in range(i, H.rows))
                break
            assert H[i, p] > 0
            if pivots:
                assert p > pivots[-1]
            for k in range(i):
                assert 0 <= H[k, p] < H[i, p]
            pivots.append(p)


class TestCokernel:
    def test_example_rows(self):
        M = IntMatrix.from_rows([(1, 1, -2), (0, -3, 3)])
        assert cokernel_group(M) == AbGroup(1, (3,))

    def test_no_relations(self):
        assert cokernel_group(IntMatrix(0, 2, [])) == AbGroup(2)

    def test_full_rank_unimodular(self):
        assert cokernel_group(IntMatrix.from_rows([(1, 0), (0, 1)])).is_trivial


class TestKernel:
    def test_identity_kernel_empty(self):
        assert kernel_basis(IntMatrix.identity(3)).rows == 0

    def test_zero_map(self):
        K = kernel_basis(IntMatrix.zeros(1, 3))
        assert K.rows == 3

    def test_p2_balancing_kernel(self, p2):
        from tropfan.chow import relation_matrix

        rows = relation_matrix(p2, 1)
        K = kernel_basis(IntMatrix.from_rows(rows, 3))
        assert K.rows == 1
        assert K.row(0) in ((1, 1, 1), (-1, -1, -1))

    @given(matrices())
    @settings(max_examples=100, deadline=None)
    def test_kernel_saturated_and_annihilates(self, M):
        K = kernel_basis(M)
        for i in range(K.rows):
            col = K.row(i)
            for r in range(M.rows):
                assert sum(M[r, j] * col[j] for j in range(M.cols)) == 0
        if K.rows:
            _, index = saturate(Sublattice(M.cols, K))
            assert index == 1


class TestSaturate:
    def test_index_three(self):
        L = Sublattice.from_rows([(1, 0), (0, 3)], 2)
        sat, index = saturate(L)
        assert index == 3
        assert sat.basis == IntMatrix.identity(2)

    def test_primitive_vector(self):
        L = Sublattice.from_rows([(1, 0)], 2)
        sat, index = saturate(L)
        assert index == 1
        assert sat.basis == L.basis

    def test_index_four(self):
        _, index = saturate(Sublattice.from_rows([(2, 0), (0, 2)], 2))
        assert index == 4


class TestLatticeQuotient:
    def test_classes(self):
        q = LatticeQuotient(3, [(1, 1, -2), (0, -3, 3)])
        assert q.group == AbGroup(1, (3,))
        assert q.is_zero((1, 1, -2))
        assert not q.is_zero((0, -1, 1))
        assert q.is_zero((0, -3, 3))

    def test_free_representatives(self):
        q = LatticeQuotient(2, [(2, 0)])
        reps = q.free_representatives()
        assert len(reps) == 1
        assert not q.is_zero(reps[0])


class TestLP:
    def test_single_positive(self):
        ok, cert = strict_lp_feasible([], [[1]])
        assert ok and cert.point == (Fraction(1),)

    def test_contradiction(self):
        ok, cert = strict_lp_feasible([], [[1], [-1]])
        assert not ok
        assert cert.verify([((1,), 0, GT), ((-1,), 0, GT)], 1)

    def test_p2_convexity_system(self, p2):
        from tropfan.criteria import strict_convexity_system
        from tropfan.fan import ConewiseLinear

        f = ConewiseLinear([0, 0, 1])
        cons = strict_convexity_system(p2, f, p2.cone_index((0,)))
        cert = feasible(cons, 2)
        assert cert.feasible
        assert cert.verify(cons, 2)

    @given(
        st.lists(
            st.tuples(
                st.lists(st.integers(-4, 4), min_size=3, max_size=3),
                st.integers(-4, 4),
                st.sampled_from([EQ, GE, GT]),
            ),
            min_size=1,
            max_size=6,
        )
    )
    @settings(max_examples=200, deadline=None)
    def test_certificates_verify(self, cons):
        cons = [(tuple(c), k, rel) for c, k, rel in cons]
        cert = feasible(cons, 3)
        assert cert.verify(cons, 3)
