"""Tropical (co)chain complexes, the cubical model, and products.

Four complex variants are built on the face complex of a fan or of its
canonical compactification: cohomology and homology over the compact
faces, tropical cohomology with compact support and Borel-Moore
homology over all faces.  A fan, viewed as a polyhedral space in its
own right, has a single compact face (the origin), so its standard
complexes are concentrated in degree zero.

The cubical model rewrites the cohomology of the compactification as a
complex indexed by the cones themselves with coefficients at the points
at infinity; its equality of cohomology with the cellular model is the
module's central consistency oracle, together with the fine double
complex whose total complex must reproduce the cellular one on the
nose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import exterior, sheaf, zlinalg
from .compactify import Compactification, comp_faces
from .fan import Fan
from .zlinalg import AbGroup, IntMatrix, LatticeQuotient

VARIANTS = ("cohomology", "homology", "borel_moore", "compact_support")
_DUAL_VARIANTS = {"cohomology": True, "compact_support": True, "homology": False, "borel_moore": False}
_COMPACT_ONLY = {"cohomology": True, "homology": True, "borel_moore": False, "compact_support": False}


def compactification(fan):
    """The cached face complex of the canonical compactification."""
    if not hasattr(fan, "_compactification"):
        fan._compactification = comp_faces(fan)
    return fan._compactification


@dataclass
class GradedComplex:
    """A chain or cochain complex with labelled free modules.

    ``spaces[q]`` lists (face id, basis index) labels; ``maps[q]`` is
    the matrix of the differential from degree q to degree q + step on
    row vectors.  ``step`` is +1 for cochain complexes and -1 for chain
    complexes.
    """

    comp: Compactification
    p: int
    variant: str
    coeff: str
    step: int
    spaces: dict
    maps: dict

    def degrees(self):
        return sorted(self.spaces)

    def dim(self, q):
        return len(self.spaces.get(q, ()))

    def map_out(self, q):
        if q in self.maps:
            return self.maps[q]
        return IntMatrix.zeros(self.dim(q), self.dim(q + self.step))

    def check_dd_zero(self):
        for q in self.degrees():
            a = self.map_out(q)
            b = self.map_out(q + self.step)
            if a.rows and b.cols and not (a * b).is_zero():
                return False
        return True


def _space_faces(comp, use_fan_faces, variant):
    faces = []
    origin = comp.face_index[(comp.fan.zero_cone, comp.fan.zero_cone)]
    for fid in range(len(comp.faces)):
        t, s = comp.faces[fid]
        if use_fan_faces and t != comp.fan.zero_cone:
            continue
        if _COMPACT_ONLY[variant]:
            if use_fan_faces and fid != origin:
                # the only compact face of a fan is its origin
                continue
        faces.append(fid)
    return faces


def build_complex(space, p, variant="cohomology", coeff="Z"):
    """Cellular complex of a fan or compactification in the given variant."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if coeff not in ("Z", "Q"):
        raise ValueError("coeff must be 'Z' or 'Q'")
    if isinstance(space, Fan):
        comp = compactification(space)
        use_fan_faces = True
    else:
        comp = space
        use_fan_faces = False
    faces = _space_faces(comp, use_fan_faces, variant)
    face_set = set(faces)
    dual = _DUAL_VARIANTS[variant]
    step = 1 if dual else -1

    spaces = {}
    offsets = {}
    for fid in faces:
        q = comp.dim(fid)
        lab = spaces.setdefault(q, [])
        offsets[fid] = (q, len(lab))
        lab.extend((fid, i) for i in range(sheaf.rank(comp, fid, p)))

    maps = {}
    for q in spaces:
        qn = q + step
        rows = len(spaces.get(q, ()))
        cols = len(spaces.get(qn, ()))
        maps[q] = [[0] * cols for _ in range(rows)]

    for gid, did, sign in comp.all_cover_pairs():
        if gid not in face_set or did not in face_set:
            continue
        if dual:
            src, dst = gid, did
            block = sheaf.dual_transport(comp, p, gid, did)
        else:
            src, dst = did, gid
            block = sheaf.restriction(comp, p, gid, did)
        qs, off_s = offsets[src]
        qd, off_d = offsets[dst]
        M = maps.get(qs)
        if M is None:
            continue
        for i in range(block.rows):
            row = block.row(i)
            for j in range(block.cols):
                if row[j]:
                    M[off_s + i][off_d + j] += sign * row[j]

    mats = {
        q: IntMatrix.from_rows(m, len(spaces.get(q + step, ()))) if m else IntMatrix(0, len(spaces.get(q + step, ())), [])
        for q, m in maps.items()
    }
    gc = GradedComplex(comp, p, variant, coeff, step, {q: tuple(v) for q, v in spaces.items()}, mats)
    assert gc.check_dd_zero(), "differential does not square to zero"
    return gc


class ComplexGroups:
    """Homology groups of a graded complex with a class map per degree."""

    def __init__(self, gc):
        self.gc = gc
        self._kernels = {}
        self._quotients = {}
        degrees = sorted(gc.spaces)
        self.groups = {}
        for q in degrees:
            n = gc.dim(q)
            out = gc.map_out(q)
            prev = gc.map_out(q - gc.step) if (q - gc.step) in gc.spaces else IntMatrix.zeros(0, n)
            if gc.coeff == "Q":
                r_out = zlinalg.rank_frac(out.row_tuples()) if out.rows and out.cols else 0
                r_in = zlinalg.rank_frac(prev.row_tuples()) if prev.rows and prev.cols else 0
                self.groups[q] = AbGroup(n - r_out - r_in)
                continue
            K = zlinalg.kernel_basis(out.transpose()) if out.cols else IntMatrix.identity(n)
            if K.rows == 0 and n:
                K = IntMatrix(0, n, [])
            rel_rows = []
            for i in range(prev.rows):
                v = prev.row(i)
                if not any(v):
                    continue
                c = zlinalg.solve_int(K, v) if K.rows else None
                assert c is not None, "image does not lie in the kernel"
                rel_rows.append(c)
            quot = LatticeQuotient(K.rows, rel_rows)
            self._kernels[q] = K
            self._quotients[q] = quot
            self.groups[q] = quot.group

    def group(self, q):
        return self.groups.get(q, AbGroup(0))

    def class_of(self, q, vec):
        """Canonical coordinates of the class of a cycle/cocycle vector."""
        if self.gc.coeff != "Z":
            raise ValueError("class map only available over Z")
        K = self._kernels[q]
        if K.rows == 0:
            assert not any(vec), "nonzero vector in a trivial kernel"
            return ()
        c = zlinalg.solve_int(K, tuple(vec))
        assert c is not None, "vector is not a cycle"
        return self._quotients[q].class_of(c)

    def is_boundary(self, q, vec):
        return all(x == 0 for x in self.class_of(q, vec))


def groups(gc):
    """List of homology groups of the complex, indexed by degree."""
    cg = ComplexGroups(gc)
    top = max(gc.spaces) if gc.spaces else 0
    return [cg.group(q) for q in range(top + 1)]


def table(space, coeff="Z", variant="cohomology"):
    """All (p, q) groups of the chosen variant, as a dict."""
    if isinstance(space, Fan):
        d = space.dim
    else:
        d = space.fan.dim
    out = {}
    for p in range(d + 1):
        gs = ComplexGroups(build_complex(space, p, variant, coeff))
        for q in range(d + 1):
            out[(p, q)] = gs.group(q)
    return out


# cochains, cup products -------------------------------------------------


@dataclass
class Cochain:
    """A tropical cochain on the compactification: values per face.

    ``data`` maps a face id of dimension q to the value row of an
    element of SF^p there; missing faces are zero.
    """

    comp: Compactification
    p: int
    q: int
    data: dict = field(default_factory=dict)

    def value(self, fid):
        r = sheaf.rank(self.comp, fid, self.p)
        return self.data.get(fid, (0,) * r)

    def set_value(self, fid, values):
        if any(values):
            self.data[fid] = tuple(values)
        else:
            self.data.pop(fid, None)

    def __add__(self, other):
        out = Cochain(self.comp, self.p, self.q, dict(self.data))
        for fid, v in other.data.items():
            cur = out.value(fid)
            out.set_value(fid, tuple(a + b for a, b in zip(cur, v)))
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Cochain(self.comp, self.p, self.q, {f: tuple(c * x for x in v) for f, v in self.data.items()})

    def is_zero(self):
        return all(not any(v) for v in self.data.values())

    def vector(self, labels):
        """Row vector of the cochain over explicit (face, index) labels."""
        out = []
        for fid, i in labels:
            out.append(self.value(fid)[i])
        return tuple(out)

    def map_integral(self):
        data = {}
        for fid, v in self.data.items():
            w = []
            for x in v:
                fx = Fraction(x)
                assert fx.denominator == 1, "cochain is not integral"
                w.append(int(fx))
            data[fid] = tuple(w)
        return Cochain(self.comp, self.p, self.q, data)


def coboundary(a):
    """The cellular coboundary of a cochain."""
    comp = a.comp
    out = Cochain(comp, a.p, a.q + 1)
    for gid, did, sign in comp.all_cover_pairs():
        if comp.dim(gid) != a.q or gid not in a.data:
            continue
        block = sheaf.dual_transport(comp, a.p, gid, did)
        v = a.data[gid]
        cur = list(out.value(did))
        for i in range(block.rows):
            if v[i]:
                row = block.row(i)
                for j in range(block.cols):
                    if row[j]:
                        cur[j] += sign * v[i] * row[j]
        out.set_value(did, cur)
    return out


def _lift_multivector(fan, t_small, t_big, k, target):
    """A rational k-multivector in star(t_small) projecting to ``target``."""
    m_small = fan.star(t_small).quotient_rank
    m_big = fan.star(t_big).quotient_rank
    trans = sheaf.transition_rows(fan, t_small, t_big)
    A = exterior.induced_matrix(trans, k, m_small, m_big)
    rows = [[A[a][b] for a in range(len(A))] for b in range(len(A[0]) if A else 0)]
    sol = zlinalg.solve_frac(rows, target)
    assert sol is not None, "multivector does not lift"
    return sol


def cup(a, b):
    """Cup product of cochains on the same compactification.

    The value on a face (tau, eta) sums, over intermediate cones sigma,
    the wedge of the restriction of a at (tau, sigma) with the pullback
    of b at (sigma, eta), weighted by the orientation coefficient of the
    multivector decomposition of the face.
    """
    if a.comp is not b.comp:
        raise ValueError("cochains live on different compactifications")
    comp = a.comp
    fan = comp.fan
    out = Cochain(comp, a.p + b.p, a.q + b.q)
    for fid in range(len(comp.faces)):
        if comp.dim(fid) != a.q + b.q:
            continue
        t, eta = comp.faces[fid]
        rank_out = sheaf.rank(comp, fid, a.p + b.p)
        if rank_out == 0:
            continue
        ct = set(fan.cones[t])
        c_eta = fan.cones[eta]
        total = [Fraction(0)] * rank_out
        free = [r for r in c_eta if r not in ct]
        for picked in itertools.combinations(free, a.q):
            sigma = fan.cone_index(tuple(sorted(fan.cones[t] + picked)))
            mid_a = comp.face_index[(t, sigma)]
            mid_b = comp.face_index[(sigma, eta)]
            av = a.value(mid_a)
            bv = b.value(mid_b)
            if not any(av) or not any(bv):
                continue
            # orientation coefficient
            nu_ts = fan.nu_face(t, sigma)
            nu_se = fan.nu_face(sigma, eta)
            m_t = fan.star(t).quotient_rank
            lift = _lift_multivector(fan, t, sigma, b.q, nu_se)
            w = exterior.wedge_coords(nu_ts, a.q, lift, b.q, m_t)
            coefficient = fan.varpi_face(t, eta, w)
            if coefficient == 0:
                continue
            a_here = _transport_dual(comp, a.p, mid_a, fid, av)
            b_here = _transport_dual(comp, b.p, mid_b, fid, bv)
            term = sheaf.wedge_duals(comp, fid, a.p, a_here, b.p, b_here)
            for i, x in enumerate(term):
                total[i] += coefficient * x
        out.set_value(fid, total)
    return out


def _transport_dual(comp, p, gid, did, values):
    M = sheaf.dual_transport(comp, p, gid, did)
    out = [0] * M.cols
    for i in range(M.rows):
        if values[i]:
            row = M.row(i)
            for j in range(M.cols):
                if row[j]:
                    out[j] += values[i] * row[j]
    return tuple(out)


def unit_cochain(comp):
    """The constant SF^0 cochain with value one on every vertex face."""
    out = Cochain(comp, 0, 0)
    for fid in range(len(comp.faces)):
        if comp.dim(fid) == 0:
            out.set_value(fid, (1,))
    return out


# cubical model ----------------------------------------------------------


def cubical_complex(fan, p, coeff="Z"):
    """The cube-diagonal complex computing the cohomology of the
    compactification from coefficients at the points at infinity.

    Degree q collects SF^(p-q) at the infinity point of each
    q-dimensional cone; the differential contracts by the unit normal
    and pushes forward along the star projection.
    """
    from .fan import is_unimodular

    if coeff == "Z" and not is_unimodular(fan)[1]:
        raise ValueError("integral cubical model requires a unimodular fan")
    comp = compactification(fan)
    spaces = {}
    offsets = {}
    for q in range(fan.dim + 1):
        lab = []
        for s in fan.cones_of_dim(q):
            fid = comp.face_index[(s, s)]
            offsets[s] = (q, len(lab))
            lab.extend((fid, i) for i in range(sheaf.rank(comp, fid, p - q)))
        spaces[q] = tuple(lab)

    mats = {}
    for q in range(fan.dim + 1):
        rows = len(spaces[q])
        cols = len(spaces.get(q + 1, ()))
        M = [[0] * cols for _ in range(rows)]
        for s in fan.cones_of_dim(q + 1):
            for t in fan.covers_of(s):
                block = _cubical_block(fan, comp, p, t, s)
                _, off_t = offsets[t]
                _, off_s = offsets[s]
                for i, row in enumerate(block):
                    for j, x in enumerate(row):
                        if x:
                            M[off_t + i][off_s + j] += x
        mats[q] = IntMatrix.from_rows(M, cols) if M else IntMatrix(0, cols, [])
    gc = GradedComplex(comp, p, "cubical", coeff, 1, spaces, mats)
    assert gc.check_dd_zero(), "cubical differential does not square to zero"
    return gc


def _cubical_block(fan, comp, p, t, s):
    """Block of the cubical differential from infinity of t to infinity of s.

    Acts on dual value rows: contraction by the unit normal of t in s
    followed by the pushforward along star(t) -> star(s).  The
    pushforward is computed by lifting each target basis element into
    the coefficient lattice of the mixed face (t, s) and pairing there.
    """
    k_src = p - len(fan.cones[t])
    k_dst = p - len(fan.cones[s])
    face_t = comp.face_index[(t, t)]
    face_s = comp.face_index[(s, s)]
    face_ts = comp.face_index[(t, s)]
    r_src = sheaf.rank(comp, face_t, k_src)
    r_dst = sheaf.rank(comp, face_s, k_dst)
    if r_src == 0 or r_dst == 0:
        return [[0] * r_dst for _ in range(r_src)]
    _, e_cls = fan.unit_normal(t, s)
    m_t = fan.star(t).quotient_rank
    # lift each basis vector of SF_(k_dst) at infinity of s through the
    # surjection from the mixed face (t, s)
    R = sheaf.restriction(comp, k_dst, face_s, face_ts)
    lifts = []
    for j in range(r_dst):
        unit = tuple(1 if i == j else 0 for i in range(r_dst))
        c = zlinalg.solve_int(R, unit)
        assert c is not None, "pushforward lift must exist"
        vec = [0] * exterior.dim(m_t, k_dst)
        for ci, row in zip(c, sheaf.basis(comp, face_ts, k_dst)):
            if ci:
                for idx, x in enumerate(row):
                    vec[idx] += ci * x
        lifts.append(tuple(vec))
    Bt = IntMatrix.from_rows(sheaf.basis(comp, face_t, k_src))
    cols = []
    for j in range(r_dst):
        w = exterior.wedge_coords(e_cls, 1, lifts[j], k_dst, m_t)
        coords = zlinalg.in_rowspace(Bt, w)
        assert coords is not None, "wedge leaves the coefficient lattice"
        cols.append(coords)
    return [[cols[j][i] for j in range(r_dst)] for i in range(r_src)]


# fine double complex ------------------------------------------------------


@dataclass
class DoubleComplex:
    """The unfolded cohomology double complex of the compactification.

    Entry (a, b) collects SF^p over faces (tau, sigma) with sigma of
    dimension a and tau of dimension -b.  Horizontal maps grow sigma,
    vertical maps shrink tau; both carry the cellular incidence signs,
    so rows and columns are complexes and squares anticommute.
    """

    comp: Compactification
    p: int
    entries: dict
    horizontal: dict
    vertical: dict

    def total_complex(self, coeff="Z"):
        comp = self.comp
        spaces = {}
        for (a, b), labs in sorted(self.entries.items()):
            spaces.setdefault(a + b, []).extend(labs)
        # order within a total degree must match the cellular complex
        ordered = {}
        for q, labs in spaces.items():
            ordered[q] = tuple(sorted(labs, key=lambda t: t[0]))
        mats = {}
        for q, labs in ordered.items():
            nxt = ordered.get(q + 1, ())
            pos = {lab: i for i, lab in enumerate(nxt)}
            M = [[0] * len(nxt) for _ in labs]
            for kind, dmaps in (("h", self.horizontal), ("v", self.vertical)):
                for (a, b), block in dmaps.items():
                    if a + b != q:
                        continue
                    src_labs = self.entries[(a, b)]
                    dst_labs = self.entries.get((a + 1, b) if kind == "h" else (a, b + 1), ())
                    if not dst_labs:
                        continue
                    for i, sl in enumerate(src_labs):
                        si = labs.index(sl)
                        for j, dl in enumerate(dst_labs):
                            x = block[i][j]
                            if x:
                                M[si][pos[dl]] += x
            mats[q] = IntMatrix.from_rows(M, len(nxt)) if M else IntMatrix(0, len(nxt), [])
        return GradedComplex(comp, self.p, "cohomology", coeff, 1, ordered, mats)


def fine_double_complex(fan, p):
    """Build the double complex and check it reassembles the cellular one."""
    comp = compactification(fan)
    entries = {}
    offsets = {}
    for fid in range(len(comp.faces)):
        t, s = comp.faces[fid]
        a = len(fan.cones[s])
        b = -len(fan.cones[t])
        labs = entries.setdefault((a, b), [])
        offsets[fid] = ((a, b), len(labs))
        labs.extend((fid, i) for i in range(sheaf.rank(comp, fid, p)))
    horizontal = {}
    vertical = {}
    for key, labs in entries.items():
        a, b = key
        h_dst = entries.get((a + 1, b), [])
        v_dst = entries.get((a, b + 1), [])
        horizontal[key] = [[0] * len(h_dst) for _ in labs]
        vertical[key] = [[0] * len(v_dst) for _ in labs]
    for gid, did, sign in comp.all_cover_pairs():
        tg, sg = comp.faces[gid]
        td, sd = comp.faces[did]
        block = sheaf.dual_transport(comp, p, gid, did)
        key, off_src = offsets[gid]
        _, off_dst = offsets[did]
        target = horizontal if tg == td else vertical
        M = target[key]
        for i in range(block.rows):
            row = block.row(i)
            for j in range(block.cols):
                if row[j]:
                    M[off_src + i][off_dst + j] += sign * row[j]

    dc = DoubleComplex(comp, p, {k: tuple(v) for k, v in entries.items()}, horizontal, vertical)
    _check_double_complex(dc)
    cellular = build_complex(comp, p, "cohomology")
    total = dc.total_complex()
    assert total.spaces == cellular.spaces, "basis mismatch between total and cellular complexes"
    assert all(total.map_out(q) == cellular.map_out(q) for q in cellular.spaces), (
        "total complex differs from the cellular complex"
    )
    return dc


def _check_double_complex(dc):
    def compose(B1, B2):
        if not B1 or not B2 or not B2[0]:
            return None
        rows = len(B1)
        mid = len(B2)
        cols = len(B2[0])
        out = [[0] * cols for _ in range(rows)]
        for i in range(rows):
            for k in range(mid):
                x = B1[i][k] if k < len(B1[i]) else 0
                if x:
                    for j in range(cols):
                        out[i][j] += x * B2[k][j]
        return out

    for (a, b) in dc.entries:
        h1 = dc.horizontal.get((a, b))
        h2 = dc.horizontal.get((a + 1, b))
        if h1 and h2 and h2 and h1[0]:
            c = compose(h1, h2)
            assert c is None or all(all(x == 0 for x in r) for r in c), "rows are not complexes"
        v1 = dc.vertical.get((a, b))
        v2 = dc.vertical.get((a, b + 1))
        if v1 and v2 and v1[0]:
            c = compose(v1, v2)
            assert c is None or all(all(x == 0 for x in r) for r in c), "columns are not complexes"
        hv = compose(dc.horizontal.get((a, b), []), dc.vertical.get((a + 1, b), []))
        vh = compose(dc.vertical.get((a, b), []), dc.horizontal.get((a, b + 1), []))
        if hv is not None and vh is not None:
            assert all(
                all(x + y == 0 for x, y in zip(r1, r2)) for r1, r2 in zip(hv, vh)
            ), "squares do not anticommute"
        elif hv is not None:
            assert all(all(x == 0 for x in r) for r in hv), "squares do not anticommute"
        elif vh is not None:
            assert all(all(x == 0 for x in r) for r in vh), "squares do not anticommute"


# fundamental class and cap products --------------------------------------


@dataclass
class Chain:
    """A Borel-Moore chain: values per face in SF_p basis coordinates."""

    comp: Compactification
    p: int
    q: int
    data: dict = field(default_factory=dict)

    def vector(self, labels):
        out = []
        for fid, i in labels:
            v = self.data.get(fid)
            out.append(v[i] if v is not None else 0)
        return tuple(out)


def fundamental_cycle(fan, weights):
    """The canonical Borel-Moore cycle of a balanced weighted fan."""
    from .fan import is_balanced

    if not is_balanced(fan, weights):
        raise ValueError("weights are not balanced")
    comp = compactification(fan)
    d = fan.dim
    data = {}
    for s in fan.maximal:
        fid = comp.face_index[(fan.zero_cone, s)]
        nu = fan.nu(s)
        coords = sheaf.coords_in(comp, fid, d, nu)
        assert coords is not None and len(coords) == 1
        data[fid] = (weights[fan.cones[s]] * coords[0],)
    chain = Chain(comp, d, d, data)
    assert _boundary_vanishes(fan, comp, chain), "fundamental chain is not a cycle"
    return chain


def _boundary_vanishes(fan, comp, chain):
    gc = build_complex(fan, chain.p, "borel_moore")
    labels = gc.spaces.get(chain.q, ())
    v = chain.vector(labels)
    M = gc.map_out(chain.q)
    out = [0] * M.cols
    for i, x in enumerate(v):
        if x:
            row = M.row(i)
            for j in range(M.cols):
                out[j] += x * row[j]
    return not any(out)


def cap(fan, weights, alpha_values, k):
    """Cap product of an SF^k class at the origin with the fundamental cycle.

    Returns the Borel-Moore chain of bidegree (d-k, d) whose facet
    coefficients are the contractions of the weighted canonical
    multivectors by alpha.
    """
    comp = compactification(fan)
    d = fan.dim
    origin = comp.face_index[(fan.zero_cone, fan.zero_cone)]
    alpha_hat = sheaf.extend_dual(comp, origin, k, alpha_values)
    n = fan.rank
    data = {}
    for s in fan.maximal:
        fid = comp.face_index[(fan.zero_cone, s)]
        nu = fan.nu(s)
        w = weights[fan.cones[s]]
        contracted = exterior.contract_vector(alpha_hat, k, tuple(w * x for x in nu), d, n)
        coords = sheaf.coords_in(comp, fid, d - k, _integral(contracted))
        assert coords is not None, "cap coefficient leaves the coefficient lattice"
        data[fid] = coords
    return Chain(comp, d - k, d, data)


def _integral(vec):
    out = []
    for x in vec:
        f = Fraction(x)
        assert f.denominator == 1, "expected an integral vector"
        out.append(int(f))
    return tuple(out)
