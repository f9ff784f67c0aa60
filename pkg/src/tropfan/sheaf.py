"""Multi-tangent coefficient lattices SF_p and their maps.

For a face (tau, sigma) of the compactification, the degree-p
coefficient lattice is the sublattice of the p-th exterior power of
N^tau spanned by the p-th exterior powers of the tangent lattices of
the cones containing sigma with the same sedentarity.  Bases are kept
in HNF over the fixed wedge-monomial ordering of the star basis of
N^tau, so every map in this module is an explicit integer matrix.

SF^p, the dual, is represented by value vectors on the HNF basis of
SF_p; it is never materialized as a sublattice of an ambient dual
space.  Restrictions along face inclusions, their dual transports, and
contraction maps all reduce to exact integer solves against these
bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exterior, zlinalg
from .zlinalg import IntMatrix


@dataclass(frozen=True)
class CoefficientLattice:
    """HNF basis of SF_p at a face, in wedge-monomial coordinates."""

    face: tuple
    degree: int
    star_rank: int
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)


def _cache(comp):
    if not hasattr(comp, "_sheaf_cache"):
        comp._sheaf_cache = {"basis": {}, "restriction": {}, "extend": {}}
    return comp._sheaf_cache


def star_rank(comp, fid):
    t, _ = comp.faces[fid]
    return comp.fan.star(t).quotient_rank


def basis(comp, fid, p):
    """HNF basis rows of SF_p at the face, in /\\^p star coordinates."""
    cache = _cache(comp)["basis"]
    key = (fid, p)
    if key in cache:
        return cache[key]
    fan = comp.fan
    t, s = comp.faces[fid]
    star = fan.star(t)
    m = star.quotient_rank
    if p == 0:
        rows = ((1,),)
    elif p < 0 or p > m:
        rows = ()
    else:
        gens = []
        sset = set(fan.cones[s])
        for eta in fan.cones_containing(s):
            tangent = comp.tangent_lattice(comp.face_index[(t, eta)]).basis.row_tuples()
            if len(tangent) < p:
                continue
            for subset in itertools.combinations(tangent, p):
                gens.append(exterior.wedge_rows(list(subset), m))
        rows = tuple(
            tuple(r) for r in zlinalg.hnf_basis(gens, exterior.dim(m, p))
        )
    cache[key] = rows
    return rows


def rank(comp, fid, p):
    return len(basis(comp, fid, p))


def sf_lower(comp, p, fid):
    """The coefficient lattice SF_p at a face of the compactification."""
    t, s = comp.faces[fid]
    return CoefficientLattice(
        face=(t, s), degree=p, star_rank=star_rank(comp, fid), basis=basis(comp, fid, p)
    )


def coords_in(comp, fid, p, vec):
    """Integer coordinates of a multivector over the SF_p basis, or None."""
    b = basis(comp, fid, p)
    if not b:
        return None if any(vec) else ()
    return zlinalg.in_rowspace(IntMatrix.from_rows(b), vec)


def transition_rows(fan, t_small, t_big):
    """Matrix of the projection star(t_small) -> star(t_big) on row vectors."""
    star_small = fan.star(t_small)
    star_big = fan.star(t_big)
    out = []
    for i in range(star_small.quotient_rank):
        row = star_small.section[i]
        out.append(_apply(star_big.proj, row))
    return tuple(out)


def restriction(comp, p, gid, did):
    """Matrix of i: SF_p(delta) -> SF_p(gamma) for a subface gamma of delta.

    Same-sedentarity inclusions embed, sedentarity drops project; the
    general case composes both.  Rows are indexed by the basis of
    SF_p(delta), entries are coordinates over the basis of SF_p(gamma).
    """
    cache = _cache(comp)["restriction"]
    key = (p, gid, did)
    if key in cache:
        return cache[key]
    if not comp.is_subface(gid, did):
        raise ValueError("not an incident pair")
    fan = comp.fan
    tg, _ = comp.faces[gid]
    td, _ = comp.faces[did]
    b_delta = basis(comp, did, p)
    b_gamma = basis(comp, gid, p)
    if td == tg:
        mapped = list(b_delta)
    else:
        trans = transition_rows(fan, td, tg)
        m_src = fan.star(td).quotient_rank
        m_dst = fan.star(tg).quotient_rank
        mapped = [
            exterior.apply_induced(trans, p, m_src, m_dst, row) for row in b_delta
        ]
    rows = []
    gb = IntMatrix.from_rows(b_gamma) if b_gamma else None
    for v in mapped:
        if gb is None:
            assert not any(v), "restriction leaves the target lattice"
            rows.append(())
            continue
        c = zlinalg.in_rowspace(gb, v)
        assert c is not None, "restriction image not integral over the target basis"
        rows.append(c)
    M = IntMatrix.from_rows(rows, len(b_gamma)) if rows else IntMatrix(0, len(b_gamma), [])
    cache[key] = M
    return M


def dual_transport(comp, p, gid, did):
    """Matrix of the dual map SF^p(gamma) -> SF^p(delta) acting on value rows."""
    return restriction(comp, p, gid, did).transpose()


def extend_dual(comp, fid, p, values):
    """A rational extension of a dual element to all wedge monomials.

    Deterministic: Gaussian elimination with free coordinates pinned to
    zero.  Two extensions differ by a form vanishing on SF_p, which is
    invisible to every use below.
    """
    b = basis(comp, fid, p)
    m = star_rank(comp, fid)
    if not b:
        return (Fraction(0),) * exterior.dim(m, p)
    sol = zlinalg.solve_frac([list(r) for r in b], list(values))
    assert sol is not None
    return sol


def contract(comp, fid, p, alpha_values, nu_coords, k):
    """Contraction of alpha in SF^p by a k-multivector: values on SF_(p-k).

    ``nu_coords`` is a multivector in /\\^k of the star coordinates; for
    the well-definedness guaranteed by the coefficient lattices it
    should lie in the exterior power of the face tangent lattice (all
    callers in this package satisfy that).
    """
    if k > p:
        raise ValueError("contraction degree exceeds the form degree")
    alpha_hat = extend_dual(comp, fid, p, alpha_values)
    m = star_rank(comp, fid)
    out = []
    for row in basis(comp, fid, p - k):
        w = exterior.wedge_coords(nu_coords, k, row, p - k, m)
        out.append(sum(a * x for a, x in zip(alpha_hat, w)))
    return tuple(out)


def wedge_duals(comp, fid, p, a_values, q, b_values):
    """Wedge of dual elements of SF^p and SF^q as a dual element of SF^(p+q)."""
    m = star_rank(comp, fid)
    a_hat = extend_dual(comp, fid, p, a_values)
    b_hat = extend_dual(comp, fid, q, b_values)
    prod = exterior.wedge_forms(a_hat, p, b_hat, q, m)
    out = []
    for row in basis(comp, fid, p + q):
        out.append(sum(f * x for f, x in zip(prod, row)))
    return tuple(out)


def _apply(matrix_rows, vec):
    if not matrix_rows:
        return ()
    m = len(matrix_rows[0])
    out = [0] * m
    for x, row in zip(vec, matrix_rows):
        if x:
            for j in range(m):
                out[j] += x * row[j]
    return tuple(out)
