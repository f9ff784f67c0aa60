"""Exact integer and rational linear algebra.

All computations use arbitrary-precision Python integers and
``fractions.Fraction``; there is no floating point anywhere in the
package.  Matrices at the scale of this project are tiny (at most a few
hundred rows), so the classical cubic algorithms with careful pivoting
are adequate and keep everything exact.

The main entry points are :func:`snf`, :func:`hnf`, :func:`kernel_basis`,
:func:`cokernel_group`, :func:`saturate`, the quotient-group helper
:class:`LatticeQuotient`, and the exact feasibility solver
:func:`feasible` / :func:`strict_lp_feasible`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class IntMatrix:
    """An immutable integer matrix stored in row-major order."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(int(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *args):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer width of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [0] * (rows * cols))

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def row_tuples(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        orows = other.row_tuples()
        for i in range(self.rows):
            r = self.row(i)
            acc = [0] * other.cols
            for k, rk in enumerate(r):
                if rk:
                    orow = orows[k]
                    for j in range(other.cols):
                        acc[j] += rk * orow[j]
            out.extend(acc)
        return IntMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.row_tuples()!r})"

    def is_zero(self):
        return all(e == 0 for e in self.entries)


@dataclass(frozen=True)
class AbGroup:
    """A finitely generated abelian group: free rank plus invariant factors.

    The torsion part is the ordered list of invariant factors
    ``d_1 | d_2 | ... | d_k`` with every ``d_i >= 2``.
    """

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self):
        return not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}Z" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _add_row(a, i, j, k):
    """row i += k * row j"""
    ri, rj = a[i], a[j]
    for c in range(len(ri)):
        ri[c] += k * rj[c]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _add_col(a, i, j, k):
    """col i += k * col j"""
    for r in a:
        r[i] += k * r[j]


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Vinv: IntMatrix

    def __iter__(self):
        # callers usually want just (U, D, V)
        return iter((self.U, self.D, self.V))

    @property
    def divisors(self):
        """Nonzero diagonal entries of D, in divisibility order."""
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(n) if self.D[i, i] != 0)

    @property
    def rank(self):
        return len(self.divisors)


def snf(M):
    """Smith normal form: U * M * V = D with U, V unimodular.

    D is diagonal with a divisibility chain d_1 | d_2 | ... and
    non-negative entries.  Pivoting picks the entry of minimal absolute
    value to limit coefficient growth.
    """
    m, n = M.rows, M.cols
    a = M.row_list()
    U = IntMatrix.identity(m).row_list()
    V = IntMatrix.identity(n).row_list()
    Vinv = IntMatrix.identity(n).row_list()

    def row_op(i, j, k):
        _add_row(a, i, j, k)
        _add_row(U, i, j, k)

    def row_swap(i, j):
        _swap_rows(a, i, j)
        _swap_rows(U, i, j)

    def col_op(i, j, k):
        # col i += k * col j ; V tracks the same op, Vinv the inverse op on rows
        _add_col(a, i, j, k)
        _add_col(V, i, j, k)
        _add_row(Vinv, j, i, -k)

    def col_swap(i, j):
        _swap_cols(a, i, j)
        _swap_cols(V, i, j)
        _swap_rows(Vinv, i, j)

    t = 0
    while t < m and t < n:
        # locate minimal-absolute-value nonzero pivot in the trailing block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best = v
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        # clear column t and row t; repeat until clean since reductions may
        # reintroduce entries
        dirty = False
        for i in range(m):
            if i != t and a[i][t] != 0:
                q = a[i][t] // a[t][t]
                row_op(i, t, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(n):
            if j != t and a[t][j] != 0:
                q = a[t][j] // a[t][t]
                col_op(j, t, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        p = a[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, 1)
            continue
        t += 1

    for i in range(min(m, n)):
        if a[i][i] < 0:
            for c in range(n):
                a[i][c] = -a[i][c]
            for c in range(m):
                U[i][c] = -U[i][c]

    return SNFResult(
        IntMatrix.from_rows(U, m),
        IntMatrix.from_rows(a, n),
        IntMatrix.from_rows(V, n),
        IntMatrix.from_rows(Vinv, n),
    )


def hnf(M):
    """Row-style Hermite normal form: H = T * M with T unimodular.

    H is in echelon form with positive pivots and entries above each
    pivot reduced to lie in [0, pivot).  Zero rows sink to the bottom.
    Returns (H, T).
    """
    m, n = M.rows, M.cols
    a = M.row_list()
    T = IntMatrix.identity(m).row_list()

    def row_op(i, j, k):
        _add_row(a, i, j, k)
        _add_row(T, i, j, k)

    def row_swap(i, j):
        _swap_rows(a, i, j)
        _swap_rows(T, i, j)

    r = 0
    for c in range(n):
        # gcd cascade in column c among rows >= r
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            if piv != r:
                row_swap(piv, r)
            done = True
            for i in range(r + 1, m):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    row_op(i, r, -q)
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and a[r][c] != 0:
            if a[r][c] < 0:
                for j in range(n):
                    a[r][j] = -a[r][j]
                for j in range(m):
                    T[r][j] = -T[r][j]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    row_op(i, r, -q)
            r += 1
            if r == m:
                break
    return IntMatrix.from_rows(a, n), IntMatrix.from_rows(T, m)


def hnf_basis(rows, cols):
    """HNF basis (nonzero rows only) of the lattice generated by ``rows``."""
    if not rows:
        return []
    H, _ = hnf(IntMatrix.from_rows(rows, cols))
    return [r for r in H.row_tuples() if any(r)]


def kernel_basis(M):
    """Basis of the saturated integer kernel of the map x -> M * x.

    Rows of the result are vectors k in Z^cols with M * k = 0 (viewing k
    as a column).  The basis spans a saturated sublattice.
    """
    res = snf(M)
    r = res.rank
    rows = []
    for j in range(r, M.cols):
        rows.append(tuple(res.V[i, j] for i in range(M.cols)))
    if not rows:
        return IntMatrix(0, M.cols, [])
    return IntMatrix.from_rows(rows, M.cols)


def cokernel_group(M):
    """The abelian group Z^cols / rowspace(M)."""
    if M.rows == 0:
        return AbGroup(M.cols)
    res = snf(M)
    divisors = res.divisors
    free = M.cols - len(divisors)
    torsion = tuple(d for d in divisors if d >= 2)
    return AbGroup(free, torsion)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient_rank given by an HNF basis."""

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def from_rows(cls, rows, ambient_rank):
        b = hnf_basis(list(rows), ambient_rank)
        if b:
            return cls(ambient_rank, IntMatrix.from_rows(b, ambient_rank))
        return cls(ambient_rank, IntMatrix(0, ambient_rank, []))

    @property
    def rank(self):
        return self.basis.rows

    def contains(self, vec):
        return in_rowspace(self.basis, vec) is not None


def saturate(L):
    """Saturation of a sublattice and the index of L inside it.

    The saturation is the intersection of the rational span of L with
    the ambient lattice; the index is the product of the invariant
    factors of any basis matrix of L.
    """
    B = L.basis
    if B.rows == 0:
        return L, 1
    res = snf(B)
    index = 1
    for d in res.divisors:
        index *= d
    # rows of the saturation: first rank rows of Vinv
    rows = [res.Vinv.row(i) for i in range(res.rank)]
    sat = Sublattice.from_rows(rows, L.ambient_rank)
    return sat, index


def in_rowspace(B, vec):
    """Coordinates of ``vec`` over the rows of B with integer coefficients.

    Returns the coefficient tuple, or None if ``vec`` is not an integer
    combination of the rows.  B need not be in HNF.
    """
    H, T = hnf(B)
    v = list(vec)
    coeff = [0] * B.rows
    hrows = H.row_tuples()
    for i in range(H.rows):
        row = hrows[i]
        p = next((j for j, e in enumerate(row) if e), None)
        if p is None:
            break
        if v[p] % row[p] != 0:
            return None
        q = v[p] // row[p]
        coeff[i] = q
        if q:
            for j in range(len(v)):
                v[j] -= q * row[j]
    if any(v):
        return None
    # coeff are coordinates over H rows; convert back through T
    out = [0] * B.rows
    for i, c in enumerate(coeff):
        if c:
            trow = T.row(i)
            for j in range(B.rows):
                out[j] += c * trow[j]
    return tuple(out)


def solve_int(A, b):
    """Integer solution x of x * A = b, or None.  A is an IntMatrix."""
    coeff = in_rowspace(A, b)
    return coeff


def rank_frac(rows):
    """Rank of a matrix with Fraction/int entries via Gaussian elimination."""
    a = [[Fraction(e) for e in r] for r in rows]
    rank = 0
    cols = len(a[0]) if a else 0
    r = 0
    for c in range(cols):
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
        r += 1
        rank += 1
        if r == len(a):
            break
    return rank


def solve_frac(rows, rhs):
    """One rational solution g of rows . g = rhs, or None.

    ``rows`` is a list of coefficient rows (the system is
    sum_j rows[i][j] * g[j] = rhs[i]).  Free variables are set to zero,
    which makes the solution deterministic.
    """
    m = len(rows)
    if m == 0:
        return ()
    n = len(rows[0])
    a = [[Fraction(e) for e in rows[i]] + [Fraction(rhs[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    g = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        g[c] = a[i][n]
    return tuple(g)


class LatticeQuotient:
    """The quotient Z^n / rowspace(R) with a canonical-form class map.

    Built once from the relation matrix via SNF; classes of vectors are
    then read off by a change of coordinates.  Canonical coordinates
    list the free components first, then one component modulo each
    invariant factor >= 2.
    """

    def __init__(self, n, relation_rows):
        self.n = n
        R = IntMatrix.from_rows(relation_rows, n) if relation_rows else IntMatrix(0, n, [])
        self.relations = R
        if R.rows == 0:
            self._V = IntMatrix.identity(n)
            self._Vinv = IntMatrix.identity(n)
            self._divisors = [0] * n
        else:
            res = snf(R)
            self._V = res.V
            self._Vinv = res.Vinv
            divs = list(res.divisors)
            self._divisors = divs + [0] * (n - len(divs))
        self._free_idx = [i for i, d in enumerate(self._divisors) if d == 0]
        self._tor_idx = [i for i, d in enumerate(self._divisors) if d >= 2]
        self.group = AbGroup(len(self._free_idx), tuple(self._divisors[i] for i in self._tor_idx))

    def class_of(self, vec):
        """Canonical coordinates (free parts, then torsion parts) of a class."""
        if len(vec) != self.n:
            raise ValueError("length mismatch")
        y = [0] * self.n
        V = self._V
        for i, x in enumerate(vec):
            if x:
                for j in range(self.n):
                    y[j] += x * V[i, j]
        free = tuple(y[i] for i in self._free_idx)
        tor = tuple(y[i] % self._divisors[i] for i in self._tor_idx)
        return free + tor

    def is_zero(self, vec):
        return all(c == 0 for c in self.class_of(vec))

    def classes_equal(self, u, v):
        return self.class_of(u) == self.class_of(v)

    def free_representatives(self):
        """Vectors in Z^n whose classes are the canonical free generators."""
        return [self._Vinv.row(i) for i in self._free_idx]

    def torsion_representatives(self):
        """Vectors in Z^n whose classes generate the torsion summands."""
        return [self._Vinv.row(i) for i in self._tor_idx]


def _normalize_constraint(coeffs, const, rel):
    return [Fraction(c) for c in coeffs], Fraction(const), rel


EQ, GE, GT = "=", ">=", ">"


@dataclass
class LPCertificate:
    """Either a feasible point or a Farkas-style infeasibility witness.

    For an infeasible system the witness is a linear combination of the
    input constraints (non-negative multipliers on inequalities, signed
    on equalities) whose coefficient part vanishes while the constant
    part contradicts the combined relation.
    """

    feasible: bool
    point: tuple = None
    multipliers: dict = None

    def verify(self, constraints, nvars):
        if self.feasible:
            x = self.point
            for coeffs, const, rel in constraints:
                val = sum(Fraction(c) * x[i] for i, c in enumerate(coeffs)) + Fraction(const)
                if rel == EQ and val != 0:
                    return False
                if rel == GE and val < 0:
                    return False
                if rel == GT and val <= 0:
                    return False
            return True
        combo = [Fraction(0)] * nvars
        const = Fraction(0)
        strict = False
        has_ineq = False
        for idx, mult in self.multipliers.items():
            coeffs, c, rel = constraints[idx]
            if rel in (GE, GT):
                if mult < 0:
                    return False
                has_ineq = True
                if rel == GT and mult > 0:
                    strict = True
            for i, a in enumerate(coeffs):
                combo[i] += mult * Fraction(a)
            const += mult * Fraction(c)
        if any(combo):
            return False
        # derived statement: const (>|>=|=) 0 must be false
        if strict:
            return const <= 0
        if has_ineq:
            return const < 0
        return const != 0


def feasible(constraints, nvars):
    """Exact feasibility of a system of linear constraints over Q.

    ``constraints`` is a list of (coeffs, const, rel) triples encoding
    coeffs . x + const  rel  0 with rel one of EQ, GE, GT.  Returns an
    :class:`LPCertificate`.  Uses Gaussian elimination on equalities
    followed by Fourier-Motzkin elimination with per-constraint
    strictness flags.
    """
    norm = [_normalize_constraint(*c) for c in constraints]
    # working constraint: (coeffs list, const, strict?, provenance dict)
    eqs = []
    ineqs = []
    for idx, (coeffs, const, rel) in enumerate(norm):
        prov = {idx: Fraction(1)}
        if rel == EQ:
            eqs.append((list(coeffs), const, prov))
        else:
            ineqs.append((list(coeffs), const, rel == GT, prov))

    def comb_prov(p1, m1, p2, m2):
        out = dict()
        for k, v in p1.items():
            out[k] = v * m1
        for k, v in p2.items():
            out[k] = out.get(k, Fraction(0)) + v * m2
        return out

    subs = []  # (var, coeffs, const) with x_var = coeffs . x + const
    active_eqs = list(eqs)
    while active_eqs:
        coeffs, const, prov = active_eqs.pop()
        j = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if j is None:
            if const != 0:
                return LPCertificate(False, multipliers=prov)
            continue
        pivc = coeffs[j]
        expr = [-c / pivc for c in coeffs]
        expr[j] = Fraction(0)
        expr_const = -const / pivc
        subs.append((j, tuple(expr), expr_const))

        def substitute(cs, cc, pr):
            f = cs[j]
            if f == 0:
                return list(cs), cc, pr
            ncs = [a + f * e for a, e in zip(cs, expr)]
            ncs[j] = Fraction(0)
            ncc = cc + f * expr_const
            npr = comb_prov(pr, Fraction(1), prov, -f / pivc)
            return ncs, ncc, npr

        active_eqs = [substitute(cs, cc, pr) for cs, cc, pr in active_eqs]
        ineqs = [substitute(cs, cc, pr) + (st,) for cs, cc, st, pr in ineqs]
        ineqs = [(cs, cc, st, pr) for (cs, cc, pr, st) in ineqs]

    # Fourier-Motzkin on the remaining inequality system
    remaining = sorted(
        {i for cs, _, _, _ in ineqs for i, c in enumerate(cs) if c != 0}
    )
    levels = []  # (var, lowers, uppers) with original-level constraints
    for var in remaining:
        pos = [c for c in ineqs if c[0][var] > 0]
        neg = [c for c in ineqs if c[0][var] < 0]
        zero = [c for c in ineqs if c[0][var] == 0]
        levels.append((var, list(pos), list(neg)))
        new = list(zero)
        for cs1, cc1, st1, pr1 in pos:
            for cs2, cc2, st2, pr2 in neg:
                m1 = -cs2[var]
                m2 = cs1[var]
                cs = [m1 * a + m2 * b for a, b in zip(cs1, cs2)]
                cs[var] = Fraction(0)
                cc = m1 * cc1 + m2 * cc2
                pr = comb_prov(pr1, m1, pr2, m2)
                new.append((cs, cc, st1 or st2, pr))
        ineqs = new

    for cs, cc, strict, prov in ineqs:
        assert all(c == 0 for c in cs)
        if (strict and cc <= 0) or (not strict and cc < 0):
            return LPCertificate(False, multipliers=prov)

    # back substitution for a feasible point
    x = [Fraction(0)] * nvars
    known = set()
    for var, pos, neg in reversed(levels):
        lowers = []
        uppers = []
        for cs, cc, st, _ in pos:
            rest = sum(c * x[i] for i, c in enumerate(cs) if i != var and c != 0) + cc
            lowers.append((-rest / cs[var], st))
        for cs, cc, st, _ in neg:
            rest = sum(c * x[i] for i, c in enumerate(cs) if i != var and c != 0) + cc
            uppers.append((-rest / cs[var], st))
        lo = max(lowers, key=lambda t: t[0]) if lowers else None
        hi = min(uppers, key=lambda t: t[0]) if uppers else None
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = hi[0] - 1
        elif hi is None:
            val = lo[0] + 1
        elif lo[0] == hi[0]:
            val = lo[0]
        else:
            val = (lo[0] + hi[0]) / 2
        x[var] = val
        known.add(var)
    for var, expr, expr_const in reversed(subs):
        x[var] = sum(e * x[i] for i, e in enumerate(expr) if e != 0) + expr_const

    cert = LPCertificate(True, point=tuple(x))
    assert cert.verify(norm, nvars)
    return cert


def strict_lp_feasible(eqs, strict_ineqs):
    """Decide existence of x with eqs . x = 0 and strict_ineqs . x > 0.

    Both arguments are matrices given as lists of rational rows.  The
    system is homogeneous.  Returns (bool, certificate); the certificate
    re-verifies by substitution via :meth:`LPCertificate.verify`.
    """
    nvars = 0
    for row in itertools.chain(eqs, strict_ineqs):
        nvars = max(nvars, len(row))
    cons = [(tuple(row) + (0,) * (nvars - len(row)), 0, EQ) for row in eqs]
    cons += [(tuple(row) + (0,) * (nvars - len(row)), 0, GT) for row in strict_ineqs]
    cert = feasible(cons, nvars)
    return cert.feasible, cert


def primitive_cosolution(c):
    """Integer x with c . x == 1 for a primitive integer vector c.

    Deterministic: built by a left-to-right extended gcd over the
    entries.  Raises ValueError if gcd(c) != 1.
    """
    n = len(c)
    if n == 0:
        raise ValueError("empty vector")
    x = [0] * n
    g = 0
    for i, ci in enumerate(c):
        if g == 0:
            if ci != 0:
                g = abs(ci)
                x = [0] * n
                x[i] = 1 if ci > 0 else -1
            continue
        if ci == 0:
            continue
        s, t, g2 = _bezout(g, ci)
        # g2 = s*g + t*ci
        x = [s * v for v in x]
        x[i] += t
        g = g2
        if g == 1:
            break
    if g != 1:
        raise ValueError("vector is not primitive")
    return tuple(x)


def _bezout(a, b):
    """(s, t, g) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t, old_r
