"""Chow groups of simplicial fans, Minkowski weights, and the bridge
maps between Chow classes and tropical cohomology classes.

Chow groups are presented by one generator per cone of the given
dimension with one linear relation per integral functional on the
quotient lattice of each cone one dimension down.  Products are
computed by iterated ray multiplication in that presentation;
Minkowski weights are the integer kernel of the transposed relation
matrix and pair with Chow classes coordinatewise.

``cocycle_to_chow`` reads the sedentarity-zero components of a cocycle
of the compactification against the canonical multivectors;
``chow_generator_cocycle`` builds the explicit preimage cocycle of a
generator, correcting the naive ray cochain by a pushforward supported
at infinity and cupping ray cocycles for higher degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import sheaf, zlinalg
from . import homology as homol
from .fan import Fan, is_balanced, is_unimodular
from .zlinalg import AbGroup, IntMatrix, LatticeQuotient


@dataclass(frozen=True)
class ChowClass:
    """A vector over the degree-k cone generators, compared modulo relations."""

    fan: Fan
    degree: int
    vector: tuple

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(self.vector))

    def __add__(self, other):
        assert self.degree == other.degree
        return ChowClass(self.fan, self.degree, tuple(a + b for a, b in zip(self.vector, other.vector)))

    def scale(self, c):
        return ChowClass(self.fan, self.degree, tuple(c * x for x in self.vector))


@dataclass(frozen=True)
class MinkowskiWeight:
    """An integer weight on p-cones satisfying the balancing condition."""

    fan: Fan
    dimension: int
    values: tuple

    def __getitem__(self, i):
        return self.values[i]


class ChowPresentation:
    """Localization presentation of A^k: generators x_sigma and linear relations."""

    def __init__(self, fan, k, coeff="Z"):
        if coeff not in ("Z", "Q"):
            raise ValueError("coeff must be 'Z' or 'Q'")
        if coeff == "Z" and k >= 2 and not is_unimodular(fan)[1]:
            raise ValueError("integral Chow presentation beyond degree one requires a unimodular fan")
        self.fan = fan
        self.k = k
        self.coeff = coeff
        self.generators = fan.cones_of_dim(k) if 0 <= k else []
        self.gen_pos = {c: i for i, c in enumerate(self.generators)}
        self.relations = relation_matrix(fan, k)
        if coeff == "Z":
            self.quotient = LatticeQuotient(len(self.generators), self.relations)
            self.group = self.quotient.group
        else:
            r = zlinalg.rank_frac(self.relations) if self.relations else 0
            self.quotient = None
            self.group = AbGroup(len(self.generators) - r)
            self._echelon = _echelon(self.relations, len(self.generators))

    def class_of(self, cls):
        """Canonical coordinates of a Chow class in the quotient."""
        if self.coeff == "Z":
            return self.quotient.class_of(cls.vector)
        return _reduce_frac(self._echelon, cls.vector)

    def classes_equal(self, a, b):
        return self.class_of(a) == self.class_of(b)

    def is_zero(self, cls):
        return all(x == 0 for x in self.class_of(cls))

    def generator(self, cone_idx):
        v = [0] * len(self.generators)
        v[self.gen_pos[cone_idx]] = 1
        return ChowClass(self.fan, self.k, v)

    def zero(self):
        return ChowClass(self.fan, self.k, (0,) * len(self.generators))


def relation_matrix(fan, k):
    """Rows: one per (k-1)-cone and coordinate of its quotient lattice."""
    gens = fan.cones_of_dim(k)
    pos = {c: i for i, c in enumerate(gens)}
    rows = []
    if k <= 0:
        return rows
    for tau in fan.cones_of_dim(k - 1):
        star = fan.star(tau)
        m = star.quotient_rank
        normals = {}
        for sigma in fan.covered_by(tau):
            _, cls = fan.unit_normal(tau, sigma)
            normals[sigma] = cls
        for j in range(m):
            row = [0] * len(gens)
            for sigma, cls in normals.items():
                row[pos[sigma]] = cls[j]
            rows.append(row)
    return rows


def chow_group(fan, k, coeff="Z"):
    return ChowPresentation(fan, k, coeff)


def _echelon(rows, n):
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return [a[i] for i in range(r)], pivots


def _reduce_frac(echelon, vec):
    rows, pivots = echelon
    v = [Fraction(x) for x in vec]
    for row, c in zip(rows, pivots):
        if v[c]:
            f = v[c]
            v = [x - f * y for x, y in zip(v, row)]
    return tuple(v)


# multiplication ----------------------------------------------------------


def _ray_times_generator(fan, ray, cone_idx, coeff):
    """Expand x_ray * x_cone as a vector over the next-degree generators."""
    k = fan.dim_of(cone_idx)
    gens = fan.cones_of_dim(k + 1)
    pos = {c: i for i, c in enumerate(gens)}
    out = [Fraction(0) if coeff == "Q" else 0] * len(gens)
    cone = fan.cones[cone_idx]
    ray_cone = fan.cone_index((ray,))
    if ray not in cone:
        join = fan.join(ray_cone, cone_idx)
        if join is not None:
            out[pos[join]] = out[pos[join]] + 1
        return out
    # self-intersection: pick a linear form that is one on the ray and
    # zero on the other rays of the cone, then expand by the relation
    rows = [fan.rays[i] for i in cone]
    rhs = [1 if i == ray else 0 for i in cone]
    # want m with rays . m = rhs; as x . A = b with A the rank x |cone| matrix
    A = IntMatrix.from_rows([[rows[j][i] for j in range(len(rows))] for i in range(fan.rank)], len(rows))
    m = zlinalg.solve_int(A, rhs) if coeff == "Z" else None
    if m is None:
        sol = zlinalg.solve_frac([list(r) for r in rows], rhs)
        if sol is None:
            raise ValueError("no linear form separates the ray inside its cone")
        if coeff == "Z":
            if any(Fraction(x).denominator != 1 for x in sol):
                raise ValueError("integral separating form requires a unimodular cone")
            m = tuple(int(Fraction(x)) for x in sol)
        else:
            m = sol
    for zeta, gen in enumerate(fan.rays):
        zeta_cone = fan.cone_index((zeta,))
        if zeta in cone:
            continue
        meet = set(fan.cones[zeta_cone]) & set(cone)
        if meet:
            continue
        join = fan.join(zeta_cone, cone_idx)
        if join is None:
            continue
        coefficient = sum(mi * gi for mi, gi in zip(m, gen))
        if coefficient:
            out[pos[join]] = out[pos[join]] - coefficient
    return out


def multiply_by_ray(fan, cls, ray, coeff="Z"):
    k = cls.degree
    if k + 1 > fan.dim:
        return ChowClass(fan, k + 1, ())
    gens = fan.cones_of_dim(k)
    total = None
    for c, cone_idx in zip(cls.vector, gens):
        if not c:
            continue
        term = _ray_times_generator(fan, ray, cone_idx, coeff)
        if total is None:
            total = [c * x for x in term]
        else:
            total = [t + c * x for t, x in zip(total, term)]
    n_next = len(fan.cones_of_dim(k + 1))
    if total is None:
        total = [0] * n_next
    return ChowClass(fan, k + 1, total)


def chow_multiply(fan, xi, eta, coeff="Z"):
    """Product of Chow classes by iterated ray multiplication."""
    if xi.fan is not eta.fan:
        raise ValueError("classes on different fans")
    if xi.degree + eta.degree > fan.dim:
        return ChowClass(fan, xi.degree + eta.degree, ())
    gens_eta = fan.cones_of_dim(eta.degree)
    result = None
    for c, cone_idx in zip(eta.vector, gens_eta):
        if not c:
            continue
        term = xi
        for ray in fan.cones[cone_idx]:
            term = multiply_by_ray(fan, term, ray, coeff)
        term = term.scale(c)
        result = term if result is None else result + term
    if result is None:
        return ChowClass(fan, xi.degree + eta.degree, (0,) * len(fan.cones_of_dim(xi.degree + eta.degree)))
    return result


def degree_map(fan, weights, cls):
    """Evaluation of a top-degree class against a balancing weight."""
    if cls.degree != fan.dim:
        raise ValueError("degree map needs a top-degree class")
    if not is_balanced(fan, weights):
        raise ValueError("weights are not balanced")
    total = 0
    for c, cone_idx in zip(cls.vector, fan.cones_of_dim(fan.dim)):
        if c:
            total += c * weights[fan.cones[cone_idx]]
    return total


# Minkowski weights --------------------------------------------------------


def minkowski_weights(fan, p, coeff="Z"):
    """Basis of the group of p-dimensional Minkowski weights."""
    gens = fan.cones_of_dim(p)
    rows = relation_matrix(fan, p)
    if not rows:
        basis = IntMatrix.identity(len(gens))
    else:
        basis = zlinalg.kernel_basis(IntMatrix.from_rows(rows, len(gens)))
    return [MinkowskiWeight(fan, p, basis.row(i)) for i in range(basis.rows)]


def weight_is_balanced(w):
    rows = relation_matrix(w.fan, w.dimension)
    return all(sum(r * v for r, v in zip(row, w.values)) == 0 for row in rows)


def chow_mw_pairing(cls, w):
    """The coordinatewise pairing of a Chow class with a Minkowski weight."""
    if cls.degree != w.dimension:
        raise ValueError("degree mismatch")
    return sum(c * v for c, v in zip(cls.vector, w.values))


def fundamental_weight(fan, weights):
    vals = [weights[fan.cones[s]] for s in fan.cones_of_dim(fan.dim)]
    return MinkowskiWeight(fan, fan.dim, tuple(vals))


# cycle class and the cohomology bridge -----------------------------------


@dataclass
class HomologyClass:
    """A homology class: the complex groups object plus canonical coordinates."""

    groups: homol.ComplexGroups
    q: int
    coords: tuple


def cycle_class(fan, w):
    """Homology class of the compactified cycle carried by a Minkowski weight."""
    if not weight_is_balanced(w):
        raise ValueError("weight is not balanced")
    p = w.dimension
    comp = homol.compactification(fan)
    gc = homol.build_complex(comp, p, "homology")
    labels = gc.spaces.get(p, ())
    vec = [0] * len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    for value, s in zip(w.values, fan.cones_of_dim(p)):
        if not value:
            continue
        fid = comp.face_index[(fan.zero_cone, s)]
        nu = fan.nu(s)
        coords = sheaf.coords_in(comp, fid, p, nu)
        assert coords is not None
        for i, c in enumerate(coords):
            if c:
                vec[index[(fid, i)]] += value * c
    groups = homol.ComplexGroups(gc)
    return HomologyClass(groups, p, groups.class_of(p, vec))


def cocycle_to_chow(fan, cochain):
    """Chow vector of a (p, p)-cocycle: sedentarity-zero values against
    the canonical multivectors."""
    comp = cochain.comp
    if not homol.coboundary(cochain).is_zero():
        raise ValueError("input cochain is not a cocycle")
    p = cochain.q
    out = []
    for s in fan.cones_of_dim(p):
        fid = comp.face_index[(fan.zero_cone, s)]
        values = cochain.value(fid)
        nu = fan.nu(s)
        coords = sheaf.coords_in(comp, fid, p, nu)
        assert coords is not None
        out.append(sum(v * c for v, c in zip(values, coords)))
    return ChowClass(fan, p, out)


def ray_cocycle(fan, ray, coeff="Z"):
    """The corrected preimage cocycle of a degree-one generator.

    Starts from the cochain supported on the faces joining a cone to
    its join with the ray, with value one on the unit normal, then
    subtracts the pushforward of its coboundary to the stratum at
    infinity of the ray.  The difference is a cocycle.
    """
    comp = homol.compactification(fan)
    ray_cone = fan.cone_index((ray,))
    a = homol.Cochain(comp, 1, 1)
    for sp in range(len(fan.cones)):
        if ray in fan.cones[sp]:
            continue
        join = fan.join(ray_cone, sp)
        if join is None:
            continue
        fid = comp.face_index[(sp, join)]
        _, e_cls = fan.unit_normal(sp, join)
        c = sheaf.coords_in(comp, fid, 1, e_cls)
        assert c is not None, "unit normal leaves the coefficient lattice"
        phi = zlinalg.primitive_cosolution(c)
        a.set_value(fid, phi)
    ahat = homol.coboundary(a)
    b = homol.Cochain(comp, 1, 1)
    for did in range(len(comp.faces)):
        if comp.dim(did) != 2 or did not in ahat.data:
            continue
        t, eta = comp.faces[did]
        if ray in fan.cones[t] or ray not in fan.cones[eta]:
            continue
        t_up = fan.cone_index(tuple(sorted(fan.cones[t] + (ray,))))
        gid = comp.face_index[(t_up, eta)]
        sign = comp.face_sign(gid, did)
        R = sheaf.restriction(comp, 1, gid, did)
        values = ahat.data[did]
        pushed = []
        for j in range(R.cols):
            unit = tuple(1 if i == j else 0 for i in range(R.cols))
            lift = zlinalg.solve_int(R, unit)
            assert lift is not None, "pushforward lift must exist"
            pushed.append(sum(l * v for l, v in zip(lift, values)))
        cur = b.value(gid)
        b.set_value(gid, tuple(x + sign * y for x, y in zip(cur, pushed)))
    result = a - b
    assert homol.coboundary(result).is_zero(), "corrected ray cochain is not a cocycle"
    return result


def chow_generator_cocycle(fan, cone_idx, coeff="Z"):
    """A cocycle representing the preimage of a Chow generator.

    For a ray this is :func:`ray_cocycle`; for higher-dimensional cones
    the cup product of the ray cocycles in ray order.
    """
    cone = fan.cones[cone_idx]
    if not cone:
        comp = homol.compactification(fan)
        return homol.unit_cochain(comp)
    result = None
    for ray in cone:
        piece = ray_cocycle(fan, ray, coeff)
        result = piece if result is None else homol.cup(result, piece)
    assert homol.coboundary(result).is_zero()
    if coeff == "Z":
        result = result.map_integral()
    return result
