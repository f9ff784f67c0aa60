"""Rational simplicial fans: data model, predicates and orientations.

A :class:`Fan` stores primitive ray generators and all cones as sorted
ray-index tuples (the empty tuple is the zero cone).  Geometry is
derived on demand and cached: cone lattices ``N_sigma`` (saturations of
ray spans), star fans with a deterministic choice of quotient basis,
unit normal vectors, and the canonical multivector orientation used by
the face complexes downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import exterior, zlinalg
from .zlinalg import IntMatrix, Sublattice


def _primitive(vec):
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(vec), 0
    return tuple(v // g for v in vec), g


@dataclass(frozen=True)
class ConewiseLinear:
    """A conewise linear function given by its rational values on rays."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __call__(self, ray_index):
        return self.values[ray_index]


class TropicalWeights:
    """Nonzero integer weights on the facets of a fan."""

    def __init__(self, fan, by_cone):
        self.fan = fan
        facets = {fan.cones[i] for i in fan.maximal}
        data = {tuple(sorted(c)): int(w) for c, w in by_cone.items()}
        if set(data) != facets:
            raise ValueError("weights must be defined exactly on the maximal cones")
        if any(w == 0 for w in data.values()):
            raise ValueError("weights must be nonzero")
        self.by_cone = data

    @classmethod
    def from_list(cls, fan, values, maximal_cones=None):
        if maximal_cones is None:
            maximal_cones = [fan.cones[i] for i in sorted(fan.maximal)]
        if len(values) != len(maximal_cones):
            raise ValueError("one weight per maximal cone")
        return cls(fan, dict(zip(map(tuple, maximal_cones), values)))

    @classmethod
    def unit(cls, fan):
        return cls.from_list(fan, [1] * len(fan.maximal))

    def __getitem__(self, cone):
        return self.by_cone[tuple(sorted(cone))]

    def items(self):
        return self.by_cone.items()


@dataclass
class Finding:
    code: str
    message: str


@dataclass
class Diagnostics:
    findings: list = field(default_factory=list)
    checked_geometric: bool = False

    @property
    def ok(self):
        return not self.findings

    def add(self, code, message):
        self.findings.append(Finding(code, message))


class Fan:
    """A rational simplicial fan in Z^rank."""

    def __init__(self, rank, rays, cones, maximal, name=""):
        self.rank = rank
        self.rays = tuple(tuple(int(x) for x in r) for r in rays)
        self.cones = tuple(tuple(c) for c in cones)
        self.maximal = frozenset(maximal)
        self.name = name
        self._cone_index = {c: i for i, c in enumerate(self.cones)}
        self._lattice = {}
        self._star = {}
        self._nu = {}
        self._nu_face = {}
        self._unit_normal = {}
        for r in self.rays:
            if len(r) != rank:
                raise ValueError("ray has wrong length")
        for c in self.cones:
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise ValueError("ray index out of range")
            if tuple(sorted(c)) != c:
                raise ValueError("cones must be sorted index tuples")

    @classmethod
    def from_max_cones(cls, rank, rays, maximal_cones, name=""):
        """Build the face closure of a list of maximal cones."""
        maxset = [tuple(sorted(c)) for c in maximal_cones]
        seen = set()
        for c in maxset:
            for k in range(len(c) + 1):
                seen.update(_subsets(c, k))
        cones = sorted(seen, key=lambda c: (len(c), c))
        idx = {c: i for i, c in enumerate(cones)}
        maximal = frozenset(idx[c] for c in maxset)
        return cls(rank, rays, cones, maximal, name=name)

    # basic structure -------------------------------------------------

    def cone_index(self, cone):
        return self._cone_index[tuple(sorted(cone))]

    def dim_of(self, cone_idx):
        return len(self.cones[cone_idx])

    @property
    def dim(self):
        return max((len(c) for c in self.cones), default=0)

    def cones_of_dim(self, k):
        return [i for i, c in enumerate(self.cones) if len(c) == k]

    @property
    def zero_cone(self):
        return self._cone_index[()]

    def facets(self):
        return sorted(self.maximal)

    def is_pure(self):
        return len({len(self.cones[i]) for i in self.maximal}) <= 1

    def covers_of(self, cone_idx):
        """Indices of cones covered by cone_idx (one ray removed)."""
        c = self.cones[cone_idx]
        return [self._cone_index[tuple(x for x in c if x != i)] for i in c]

    def covered_by(self, cone_idx):
        """Indices of cones covering cone_idx (one ray added)."""
        c = set(self.cones[cone_idx])
        out = []
        for j, d in enumerate(self.cones):
            if len(d) == len(c) + 1 and c.issubset(d):
                out.append(j)
        return out

    def cones_containing(self, cone_idx):
        c = set(self.cones[cone_idx])
        return [j for j, d in enumerate(self.cones) if c.issubset(d)]

    def join(self, i, j):
        """Index of the smallest cone containing cones i and j, or None."""
        u = set(self.cones[i]) | set(self.cones[j])
        candidates = [k for k, d in enumerate(self.cones) if u.issubset(d)]
        if not candidates:
            return None
        return min(candidates, key=lambda k: len(self.cones[k]))

    def meet(self, i, j):
        u = tuple(sorted(set(self.cones[i]) & set(self.cones[j])))
        return self._cone_index.get(u)

    # lattices and orientation ----------------------------------------

    def cone_lattice(self, cone_idx):
        """N_sigma: the saturation of the ray span, as an HNF sublattice."""
        if cone_idx not in self._lattice:
            c = self.cones[cone_idx]
            L = Sublattice.from_rows([self.rays[i] for i in c], self.rank)
            sat, _ = zlinalg.saturate(L)
            self._lattice[cone_idx] = sat
        return self._lattice[cone_idx]

    def nu(self, cone_idx):
        """Canonical multivector of a cone, in /\\^dim Z^rank coordinates.

        The generator of /\\^dim N_sigma signed so that the wedge of the
        ray generators (sorted by ray index) is a positive multiple.
        """
        if cone_idx not in self._nu:
            c = self.cones[cone_idx]
            basis = self.cone_lattice(cone_idx).basis.row_tuples()
            w = exterior.wedge_rows(basis, self.rank)
            raw = exterior.wedge_rows([self.rays[i] for i in c], self.rank)
            k = next(i for i, x in enumerate(w) if x)
            sign = 1 if (raw[k] > 0) == (w[k] > 0) else -1
            self._nu[cone_idx] = tuple(sign * x for x in w)
        return self._nu[cone_idx]

    def varpi(self, cone_idx, x):
        """Coefficient c with x = c * nu(cone); x must be proportional."""
        nu = self.nu(cone_idx)
        k = next(i for i, v in enumerate(nu) if v)
        c = Fraction(x[k], nu[k])
        assert all(Fraction(xi) == c * ni for xi, ni in zip(x, nu)), "vector not proportional to the canonical multivector"
        return c

    def nu_face(self, tau_idx, sigma_idx):
        """Multivector of the compactified face (tau, sigma) in star(tau) coordinates.

        Image of the canonical multivector of the complementary face of
        tau inside sigma under the star projection.
        """
        key = (tau_idx, sigma_idx)
        if key not in self._nu_face:
            tau = set(self.cones[tau_idx])
            sigma = self.cones[sigma_idx]
            comp = tuple(i for i in sigma if i not in tau)
            comp_idx = self._cone_index[comp]
            nu = self.nu(comp_idx)
            star = self.star(tau_idx)
            p = len(comp)
            img = exterior.apply_induced(star.proj, p, self.rank, star.quotient_rank, nu)
            assert any(img), "degenerate face multivector"
            self._nu_face[key] = img
        return self._nu_face[key]

    def varpi_face(self, tau_idx, sigma_idx, x):
        nu = self.nu_face(tau_idx, sigma_idx)
        k = next(i for i, v in enumerate(nu) if v)
        c = Fraction(x[k], nu[k])
        assert all(Fraction(xi) == c * ni for xi, ni in zip(x, nu)), "vector not proportional to the face multivector"
        return c

    def unit_normal(self, tau_idx, sigma_idx):
        """Unit normal data for a codimension-one face tau of sigma.

        Returns (lift, cls): a lattice vector of N_sigma generating
        N_sigma / N_tau on the sigma side, and its class in the chosen
        basis of N^tau.
        """
        key = (tau_idx, sigma_idx)
        if key in self._unit_normal:
            return self._unit_normal[key]
        tau = self.cones[tau_idx]
        sigma = self.cones[sigma_idx]
        if not (set(tau) <= set(sigma) and len(sigma) == len(tau) + 1):
            raise ValueError("not a codimension-one incidence")
        extra = next(i for i in sigma if i not in tau)
        B_sigma = self.cone_lattice(sigma_idx).basis
        B_tau = self.cone_lattice(tau_idx).basis
        lift = _quotient_generator(B_tau, B_sigma, self.rays[extra])
        star = self.star(tau_idx)
        cls = _apply(star.proj, lift)
        self._unit_normal[key] = (lift, cls)
        return self._unit_normal[key]

    # star fans --------------------------------------------------------

    def star(self, cone_idx):
        if cone_idx not in self._star:
            self._star[cone_idx] = _build_star(self, cone_idx)
        return self._star[cone_idx]


@dataclass
class StarData:
    """The star fan of a cone with its projection bookkeeping.

    ``proj`` is the rank x quotient_rank matrix of the projection
    N -> N^sigma acting on row vectors; ``section`` is a right inverse.
    ``cone_map`` sends a cone of the base fan containing sigma to the
    corresponding cone index of the star fan, ``cone_preimage`` is its
    inverse, and ``ray_multiplicity`` records the integer factor by
    which each projected ray generator was divided to become primitive.
    """

    base_cone: int
    quotient_rank: int
    proj: tuple
    section: tuple
    fan: Fan
    cone_map: dict
    cone_preimage: dict
    ray_multiplicity: dict

    def induced_weights(self, weights):
        star = self.fan
        data = {}
        for star_max in star.maximal:
            eta = self.cone_preimage[star_max]
            data[star.cones[star_max]] = weights[weights.fan.cones[eta]]
        return TropicalWeights(star, data)


def _apply(matrix_rows, vec):
    """Row vector times matrix given as a tuple of rows."""
    if not matrix_rows:
        return ()
    m = len(matrix_rows[0])
    out = [0] * m
    for x, row in zip(vec, matrix_rows):
        if x:
            for j in range(m):
                out[j] += x * row[j]
    return tuple(out)


def _subsets(c, k):
    return itertools.combinations(c, k)


def _quotient_generator(B_small, B_big, side_vec):
    """Generator of rowspace(B_big)/rowspace(B_small) on the side of side_vec.

    Both spaces must be saturated with rank difference one; side_vec
    must lie in the big lattice but outside the small one.
    """
    big_rows = B_big.rows
    if B_small.rows + 1 != big_rows:
        raise ValueError("rank difference must be one")
    if B_small.rows:
        R = IntMatrix.from_rows(
            [zlinalg.in_rowspace(B_big, r) for r in B_small.row_tuples()], big_rows
        )
        phi = zlinalg.kernel_basis(R)
        assert phi.rows == 1
        phi = phi.row(0)
    else:
        phi = (1,) * 1 if big_rows == 1 else None
        if phi is None:
            raise ValueError("rank difference must be one")
    side = zlinalg.in_rowspace(B_big, side_vec)
    if side is None:
        raise ValueError("side vector not in the big lattice")
    pairing = sum(p * s for p, s in zip(phi, side))
    if pairing == 0:
        raise ValueError("side vector lies in the small lattice")
    v = zlinalg.primitive_cosolution(phi)
    if pairing < 0:
        v = tuple(-x for x in v)
    return _apply(B_big.row_tuples(), v)


def _build_star(fan, cone_idx):
    n = fan.rank
    cone = fan.cones[cone_idx]
    k = len(cone)
    if k == 0:
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        cone_map = {i: i for i in range(len(fan.cones))}
        return StarData(cone_idx, n, ident, ident, fan, cone_map, dict(cone_map), {})
    B = fan.cone_lattice(cone_idx).basis
    res = zlinalg.snf(B)
    assert res.divisors == (1,) * k, "cone lattice must be saturated"
    m = n - k
    proj = tuple(tuple(res.V[i, j] for j in range(k, n)) for i in range(n))
    section = tuple(tuple(res.Vinv[i, j] for j in range(n)) for i in range(k, n))

    containing = fan.cones_containing(cone_idx)
    cone_set = set(cone)
    # star rays are indexed by the covers of the cone, sorted by extra ray
    covers = sorted(
        (c for c in containing if len(fan.cones[c]) == k + 1),
        key=lambda c: fan.cones[c],
    )
    star_rays = []
    ray_of_cover = {}
    multiplicity = {}
    for s, c in enumerate(covers):
        extra = next(i for i in fan.cones[c] if i not in cone_set)
        img = _apply(proj, fan.rays[extra])
        prim, g = _primitive(img)
        assert g > 0, "projected ray collapses"
        star_rays.append(prim)
        ray_of_cover[c] = s
        multiplicity[s] = g
    extra_to_star = {}
    for c in covers:
        extra = next(i for i in fan.cones[c] if i not in cone_set)
        extra_to_star[extra] = ray_of_cover[c]

    star_cones = []
    for c in containing:
        rays_here = tuple(sorted(extra_to_star[i] for i in fan.cones[c] if i not in cone_set))
        star_cones.append(rays_here)
    order = sorted(range(len(containing)), key=lambda t: (len(star_cones[t]), star_cones[t]))
    cones_sorted = [star_cones[t] for t in order]
    maximal = frozenset(
        i for i, t in enumerate(order) if containing[t] in fan.maximal
    )
    star_fan = Fan(m, star_rays, cones_sorted, maximal, name=f"{fan.name}^{cone}")
    cone_map = {containing[t]: i for i, t in enumerate(order)}
    cone_preimage = {i: containing[t] for i, t in enumerate(order)}
    return StarData(cone_idx, m, proj, section, star_fan, cone_map, cone_preimage, multiplicity)


# predicates ------------------------------------------------------------


def validate(fan, level="combinatorial"):
    """Structural diagnostics; geometric level adds pairwise LP checks."""
    diags = Diagnostics()
    seen = {}
    for i, r in enumerate(fan.rays):
        prim, g = _primitive(r)
        if g == 0:
            diags.add("zero-ray", f"ray {i} is zero")
        elif g != 1:
            diags.add("primitivity", f"ray {i} = {r} has coordinate gcd {g}")
        if r in seen:
            diags.add("duplicate-ray", f"rays {seen[r]} and {i} coincide")
        seen[r] = i
    for idx, c in enumerate(fan.cones):
        if c and zlinalg.rank_frac([fan.rays[i] for i in c]) != len(c):
            diags.add("simplicial", f"cone {c} has dependent rays")
    cone_set = set(fan.cones)
    for c in fan.cones:
        for j in range(len(c)):
            sub = c[:j] + c[j + 1 :]
            if sub not in cone_set:
                diags.add("closure", f"face {sub} of cone {c} is missing")
    for i in fan.maximal:
        for j, d in enumerate(fan.cones):
            if j != i and set(fan.cones[i]) < set(d):
                diags.add("maximal-flag", f"cone {fan.cones[i]} flagged maximal but contained in {d}")
    if level == "geometric" and diags.ok:
        diags.checked_geometric = True
        nonzero = [i for i, c in enumerate(fan.cones) if c]
        for a in range(len(nonzero)):
            for b in range(a + 1, len(nonzero)):
                ca, cb = fan.cones[nonzero[a]], fan.cones[nonzero[b]]
                if _interiors_meet(fan, ca, cb):
                    diags.add("overlap", f"relative interiors of {ca} and {cb} intersect")
    return diags


def _interiors_meet(fan, ca, cb):
    n = fan.rank
    na, nb = len(ca), len(cb)
    eqs = []
    for coord in range(n):
        row = [fan.rays[i][coord] for i in ca] + [-fan.rays[j][coord] for j in cb]
        eqs.append(row)
    strict = []
    for t in range(na + nb):
        row = [0] * (na + nb)
        row[t] = 1
        strict.append(row)
    ok, _ = zlinalg.strict_lp_feasible(eqs, strict)
    return ok


def is_unimodular(fan):
    """Per-cone unimodularity against the ambient lattice, plus the global verdict."""
    per_cone = {}
    for i, c in enumerate(fan.cones):
        if not c:
            per_cone[i] = True
            continue
        M = IntMatrix.from_rows([fan.rays[j] for j in c], fan.rank)
        per_cone[i] = zlinalg.snf(M).divisors == (1,) * len(c)
    return per_cone, all(per_cone.values())


def is_saturated_at(fan, cone_idx):
    """Saturation of the lattice generated by the star fan support."""
    star = fan.star(cone_idx)
    rows = []
    for c in fan.cones_containing(cone_idx):
        if c in fan.maximal:
            eta_basis = fan.cone_lattice(c).basis.row_tuples()
            rows.extend(_apply(star.proj, r) for r in eta_basis)
    if not rows:
        return True
    L = Sublattice.from_rows(rows, star.quotient_rank)
    _, index = zlinalg.saturate(L)
    return index == 1


def is_saturated(fan):
    return all(is_saturated_at(fan, i) for i in range(len(fan.cones)))


def is_balanced(fan, weights):
    """The weighted sum of unit normals vanishes at every codimension-one cone."""
    if not fan.is_pure():
        raise ValueError("balancing requires a pure-dimensional fan")
    d = fan.dim
    for tau in fan.cones_of_dim(d - 1):
        star = fan.star(tau)
        total = [0] * star.quotient_rank
        for sigma in fan.covered_by(tau):
            if sigma not in fan.maximal:
                continue
            _, cls = fan.unit_normal(tau, sigma)
            w = weights[fan.cones[sigma]]
            for j in range(star.quotient_rank):
                total[j] += w * cls[j]
        if any(total):
            return False
    return True
