"""The face complex of the canonical compactification of a fan.

Faces are pairs (tau, sigma) of cones with tau a face of sigma; the
pair encodes the closure of the stratum of sigma sitting at infinity in
the direction of tau.  The face (tau, sigma) has dimension
|sigma| - |tau| and sedentarity tau.  No coordinates at infinity are
ever materialized: every geometric computation happens in the chosen
basis of the quotient lattice N^tau of the sedentarity.

Covering relations come in two kinds: same sedentarity
((tau, sigma') below (tau, sigma) for sigma' a facet of sigma) and
sedentarity drop ((tau, sigma) below (tau', sigma) for tau' a facet of
tau).  The incidence sign of a covering pair orients the cell complex.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exterior, zlinalg
from .zlinalg import Sublattice


@dataclass(frozen=True)
class CompFace:
    """A closed face of the compactification: cones tau below sigma.

    The dimension is the cone-dimension difference and the sedentarity
    is tau.
    """

    tau: tuple
    sigma: tuple

    @property
    def dim(self):
        return len(self.sigma) - len(self.tau)

    @property
    def sedentarity(self):
        return self.tau


class Compactification:
    """Face poset of the canonical compactification with oriented covers."""

    def __init__(self, fan):
        self.fan = fan
        faces = []
        for s, sigma in enumerate(fan.cones):
            sset = set(sigma)
            for t, tau in enumerate(fan.cones):
                if set(tau) <= sset:
                    faces.append((t, s))
        faces.sort(key=lambda ts: (
            len(fan.cones[ts[1]]) - len(fan.cones[ts[0]]),
            fan.cones[ts[0]],
            fan.cones[ts[1]],
        ))
        self.faces = tuple(faces)
        self.face_index = {f: i for i, f in enumerate(faces)}
        self._covers = None
        self._sign_cache = {}
        self._tangent = {}

    def face(self, fid):
        t, s = self.faces[fid]
        return CompFace(self.fan.cones[t], self.fan.cones[s])

    def dim(self, fid):
        t, s = self.faces[fid]
        return len(self.fan.cones[s]) - len(self.fan.cones[t])

    def sedentarity(self, fid):
        return self.faces[fid][0]

    def faces_of_dim(self, q):
        return [i for i in range(len(self.faces)) if self.dim(i) == q]

    @property
    def top_dim(self):
        return max(self.dim(i) for i in range(len(self.faces)))

    def is_subface(self, gid, did):
        """Face order: (tg, sg) below (td, sd) iff td < tg < sg < sd in the fan."""
        tg, sg = self.faces[gid]
        td, sd = self.faces[did]
        ctg, csg = set(self.fan.cones[tg]), set(self.fan.cones[sg])
        ctd, csd = set(self.fan.cones[td]), set(self.fan.cones[sd])
        return ctd <= ctg <= csg <= csd

    def covers_of(self, did):
        """List of (gamma, sign) over the faces gamma covered by delta."""
        if self._covers is None:
            self._build_covers()
        return self._covers[did]

    def all_cover_pairs(self):
        if self._covers is None:
            self._build_covers()
        for did, lst in enumerate(self._covers):
            for gid, sign in lst:
                yield gid, did, sign

    def _build_covers(self):
        fan = self.fan
        covers = [[] for _ in self.faces]
        for did, (t, s) in enumerate(self.faces):
            ct = fan.cones[t]
            cs = fan.cones[s]
            # same sedentarity: drop one ray of sigma outside tau
            for r in cs:
                if r not in ct:
                    sub = fan.cone_index(tuple(x for x in cs if x != r))
                    gid = self.face_index[(t, sub)]
                    covers[did].append((gid, self.face_sign(gid, did)))
            # sedentarity raise on the subface: tau grows inside sigma
            for r in cs:
                if r not in ct:
                    sup = fan.cone_index(tuple(sorted(ct + (r,))))
                    gid = self.face_index[(sup, s)]
                    covers[did].append((gid, self.face_sign(gid, did)))
        self._covers = covers

    def face_sign(self, gid, did):
        """Incidence sign of a covering pair gamma below delta."""
        key = (gid, did)
        if key in self._sign_cache:
            return self._sign_cache[key]
        tg, sg = self.faces[gid]
        td, sd = self.faces[did]
        if self.dim(gid) + 1 != self.dim(did) or not self.is_subface(gid, did):
            raise ValueError("not a covering pair")
        if tg == td:
            sign = self._sign_same_sedentarity(tg, sg, sd)
        elif sg == sd:
            sign = self._sign_sedentarity_drop(td, tg, sg)
        else:
            raise ValueError("not a covering pair")
        self._sign_cache[key] = sign
        return sign

    def _sign_same_sedentarity(self, t, s_small, s_big):
        fan = self.fan
        star = fan.star(t)
        m = star.quotient_rank
        small = _image_lattice(fan, t, s_small)
        big = _image_lattice(fan, t, s_big)
        extra = next(i for i in fan.cones[s_big] if i not in fan.cones[s_small])
        side = _apply_rows(star.proj, fan.rays[extra])
        normal = _quotient_generator_safe(small, big, side, m)
        k = len(fan.cones[s_small]) - len(fan.cones[t])
        nu_small = fan.nu_face(t, s_small)
        w = exterior.wedge_coords(normal, 1, nu_small, k, m)
        c = fan.varpi_face(t, s_big, w)
        assert c != 0
        return 1 if c > 0 else -1

    def _sign_sedentarity_drop(self, t_small, t_big, s):
        # gamma = (t_big, s) is covered by delta = (t_small, s), t_small below t_big
        fan = self.fan
        star_small = fan.star(t_small)
        star_big = fan.star(t_big)
        m_small = star_small.quotient_rank
        m_big = star_big.quotient_rank
        _, e_cls = fan.unit_normal(t_small, t_big)
        k = len(fan.cones[s]) - len(fan.cones[t_big])
        nu_gamma = fan.nu_face(t_big, s)
        # transition matrix from star(t_small) coordinates to star(t_big) coordinates
        trans = tuple(
            _apply_rows(star_big.proj, star_small.section[i]) for i in range(m_small)
        )
        A = exterior.induced_matrix(trans, k, m_small, m_big)
        rows = [[A[a][b] for a in range(len(A))] for b in range(len(A[0]) if A else 0)]
        nu_prime = zlinalg.solve_frac(rows, nu_gamma)
        assert nu_prime is not None, "face multivector does not lift"
        w = exterior.wedge_coords(e_cls, 1, nu_prime, k, m_small)
        c = fan.varpi_face(t_small, s, w)
        assert c != 0
        return 1 if -c > 0 else -1

    def tangent_lattice(self, fid):
        """Basis of the face tangent lattice in star(sedentarity) coordinates."""
        if fid not in self._tangent:
            t, s = self.faces[fid]
            self._tangent[fid] = _image_lattice(self.fan, t, s)
        return self._tangent[fid]


def _apply_rows(matrix_rows, vec):
    if not matrix_rows:
        return ()
    m = len(matrix_rows[0])
    out = [0] * m
    for x, row in zip(vec, matrix_rows):
        if x:
            for j in range(m):
                out[j] += x * row[j]
    return tuple(out)


def _image_lattice(fan, t, s):
    """HNF basis of the image of N_sigma in N^tau, as a Sublattice."""
    star = fan.star(t)
    rows = [
        _apply_rows(star.proj, r) for r in fan.cone_lattice(s).basis.row_tuples()
    ]
    return Sublattice.from_rows(rows, star.quotient_rank)


def _quotient_generator_safe(small, big, side, ambient):
    from .fan import _quotient_generator

    return _quotient_generator(small.basis, big.basis, side)


def comp_faces(fan):
    """The indexed face complex of the canonical compactification."""
    return Compactification(fan)
