"""Exact dense linear algebra over the rings of :mod:`symmod.rings`.

Matrices are immutable row-major tuples of scalars; subspaces are stored as
canonical reduced row-echelon bases so that equality of subspaces is plain
structural equality.  Everything is exact; there is no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import FiniteField, RingMismatch


class LinalgError(Exception):
    pass


class NotAField(LinalgError):
    pass


class AmbientMismatch(LinalgError):
    pass


def _require_field(ring):
    if not ring.is_field:
        raise NotAField(f"{ring!r} is not a field")


@dataclass(frozen=True)
class Matrix:
    ring: object
    nrows: int
    ncols: int
    rows: tuple

    @staticmethod
    def build(ring, rows) -> "Matrix":
        rows = tuple(tuple(r) for r in rows)
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return Matrix(ring, nrows, ncols, rows)

    @staticmethod
    def from_int_rows(ring, rows) -> "Matrix":
        conv = ring.from_int
        return Matrix.build(ring, [[conv(x) for x in r] for r in rows])

    @staticmethod
    def identity(ring, n) -> "Matrix":
        z, o = ring.zero(), ring.one()
        return Matrix.build(ring, [[o if i == j else z for j in range(n)]
                                   for i in range(n)])

    @staticmethod
    def zeros(ring, nrows, ncols) -> "Matrix":
        z = ring.zero()
        return Matrix.build(ring, [[z] * ncols for _ in range(nrows)])

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        ring = self.ring
        bcols = list(zip(*other.rows)) if other.rows else []
        if isinstance(ring, FiniteField) and ring.k == 1:
            p = ring.p
            out = []
            for arow in self.rows:
                out.append(tuple(sum(a * b for a, b in zip(arow, bcol)) % p
                                 for bcol in bcols))
            return Matrix(ring, self.nrows, other.ncols, tuple(out))
        if isinstance(ring, FiniteField) and ring._mul_table is not None:
            mul = ring._mul_table
            add = ring._add_table
            out = []
            for arow in self.rows:
                row = []
                for bcol in bcols:
                    acc = 0
                    for a, b in zip(arow, bcol):
                        acc = add[acc][mul[a][b]]
                    row.append(acc)
                out.append(tuple(row))
            return Matrix(ring, self.nrows, other.ncols, tuple(out))
        mul, addf, zero = ring.mul, ring.add, ring.zero()
        out = []
        for arow in self.rows:
            row = []
            for bcol in bcols:
                acc = zero
                for a, b in zip(arow, bcol):
                    acc = addf(acc, mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(ring, self.nrows, other.ncols, tuple(out))

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        return Matrix(self.ring, self.nrows, self.ncols,
                      tuple(tuple(add(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other):
        self._check(other)
        sub = self.ring.sub
        return Matrix(self.ring, self.nrows, self.ncols,
                      tuple(tuple(sub(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.rows, other.rows)))

    def __neg__(self):
        neg = self.ring.neg
        return Matrix(self.ring, self.nrows, self.ncols,
                      tuple(tuple(neg(a) for a in r) for r in self.rows))

    def scale(self, c):
        mul = self.ring.mul
        return Matrix(self.ring, self.nrows, self.ncols,
                      tuple(tuple(mul(c, a) for a in r) for r in self.rows))

    def __pow__(self, e: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.ring, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.ncols, self.nrows,
                      tuple(zip(*self.rows)) if self.rows else ())

    def apply(self, vec) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        ring = self.ring
        mul, add, zero = ring.mul, ring.add, ring.zero()
        out = []
        for row in self.rows:
            acc = zero
            for a, v in zip(row, vec):
                acc = add(acc, mul(a, v))
            out.append(acc)
        return tuple(out)

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        z, o = self.ring.zero(), self.ring.one()
        return all(self.rows[i][j] == (o if i == j else z)
                   for i in range(self.nrows) for j in range(self.ncols))

    def is_zero(self) -> bool:
        z = self.ring.zero()
        return all(a == z for r in self.rows for a in r)

    def inverse(self) -> "Matrix":
        _require_field(self.ring)
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = Matrix.build(self.ring,
                           [list(self.rows[i]) + list(Matrix.identity(self.ring, n).rows[i])
                            for i in range(n)])
        red, rank, _ = rref(aug)
        if rank < n or any(red.rows[i][i] != self.ring.one() for i in range(n)):
            raise ValueError("matrix is singular")
        return Matrix.build(self.ring, [r[n:] for r in red.rows])

    @staticmethod
    def vstack(mats) -> "Matrix":
        mats = list(mats)
        ring = mats[0].ring
        rows = []
        for m in mats:
            if m.ring != ring:
                raise RingMismatch("stacking matrices over different rings")
            rows.extend(m.rows)
        return Matrix.build(ring, rows) if rows else Matrix.zeros(ring, 0, mats[0].ncols)

    def __repr__(self):
        return f"Matrix({self.ring!r}, {self.nrows}x{self.ncols})"


def rref(m: Matrix):
    """Reduced row-echelon form by exact Gauss-Jordan elimination.

    Returns ``(reduced, rank, pivot_columns)``.  Field rings only.
    """
    _require_field(m.ring)
    ring = m.ring
    zero, one = ring.zero(), ring.one()
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ring.inv(rows[r][c])
        if inv != one:
            rows[r] = [ring.mul(inv, a) for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != zero:
                factor = rows[i][c]
                rows[i] = [ring.sub(a, ring.mul(factor, b))
                           for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Matrix.build(ring, rows), r, tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ring^ambient_dim, held as a canonical RREF basis with no
    zero rows; equality of subspaces is equality of bases."""

    ring: object
    ambient_dim: int
    basis: Matrix

    @staticmethod
    def from_vectors(ring, ambient_dim, vectors) -> "Subspace":
        _require_field(ring)
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch("vector length differs from ambient dimension")
        if not vectors:
            return Subspace(ring, ambient_dim, Matrix.zeros(ring, 0, ambient_dim))
        red, rank, _ = rref(Matrix.build(ring, vectors))
        return Subspace(ring, ambient_dim, Matrix.build(ring, red.rows[:rank]))

    @staticmethod
    def zero(ring, ambient_dim) -> "Subspace":
        return Subspace(ring, ambient_dim, Matrix.zeros(ring, 0, ambient_dim))

    @staticmethod
    def full(ring, ambient_dim) -> "Subspace":
        return Subspace(ring, ambient_dim, Matrix.identity(ring, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def pivot_columns(self) -> tuple:
        zero = self.ring.zero()
        out = []
        for row in self.basis.rows:
            for j, a in enumerate(row):
                if a != zero:
                    out.append(j)
                    break
        return tuple(out)

    def reduce_vector(self, vec) -> tuple:
        """Eliminate this subspace's pivot coordinates from ``vec``."""
        ring = self.ring
        v = list(vec)
        for row, pc in zip(self.basis.rows, self.pivot_columns()):
            c = v[pc]
            if c != ring.zero():
                v = [ring.sub(a, ring.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, vec) -> bool:
        zero = self.ring.zero()
        return all(a == zero for a in self.reduce_vector(vec))

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(r) for r in other.basis.rows)

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch("subspaces over different rings")
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch("subspaces of different ambient spaces")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_vectors(self.ring, self.ambient_dim,
                                     list(self.basis.rows) + list(other.basis.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ring, self.ambient_dim)
        # solve a*A = b*B by finding the kernel of [A^T | -B^T]
        ring = self.ring
        a_t = self.basis.transpose()
        b_t = other.basis.transpose()
        neg_b = (-other.basis).transpose()
        stacked = Matrix.build(ring, [list(r1) + list(r2)
                                      for r1, r2 in zip(a_t.rows, neg_b.rows)])
        ker = kernel(stacked)
        vectors = []
        for coeffs in ker.basis.rows:
            a_part = coeffs[:self.dim]
            vec = [ring.zero()] * self.ambient_dim
            for c, row in zip(a_part, self.basis.rows):
                if c != ring.zero():
                    vec = [ring.add(x, ring.mul(c, y)) for x, y in zip(vec, row)]
            vectors.append(vec)
        _ = b_t
        return Subspace.from_vectors(ring, self.ambient_dim, vectors)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def kernel(m: Matrix) -> Subspace:
    """Null space of ``m`` as a subspace of the domain ring^ncols."""
    _require_field(m.ring)
    ring = m.ring
    red, rank, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [ring.zero()] * m.ncols
        v[f] = ring.one()
        for r, pc in enumerate(pivots):
            v[pc] = ring.neg(red.rows[r][f])
        vectors.append(v)
    return Subspace.from_vectors(ring, m.ncols, vectors)


def image(m: Matrix) -> Subspace:
    """Column space of ``m`` as a subspace of the codomain ring^nrows."""
    _require_field(m.ring)
    return Subspace.from_vectors(m.ring, m.nrows, m.transpose().rows)


def solve(m: Matrix, b) -> tuple | None:
    """One solution of m*x = b, or None when the system is inconsistent."""
    _require_field(m.ring)
    ring = m.ring
    aug = Matrix.build(ring, [list(r) + [bv] for r, bv in zip(m.rows, b)])
    red, rank, pivots = rref(aug)
    if m.ncols in pivots:
        return None
    x = [ring.zero()] * m.ncols
    for r, pc in enumerate(pivots):
        x[pc] = red.rows[r][m.ncols]
    return tuple(x)


def quotient_map(ambient_dim: int, w: Subspace) -> Matrix:
    """A surjection with kernel exactly ``w``.

    The quotient coordinates are the non-pivot coordinates after reducing
    modulo ``w``'s canonical basis, which makes the map deterministic.
    """
    if w.ambient_dim != ambient_dim:
        raise AmbientMismatch("subspace does not live in the stated ambient space")
    ring = w.ring
    pivots = w.pivot_columns()
    pivot_set = set(pivots)
    non_pivots = [c for c in range(ambient_dim) if c not in pivot_set]
    rows = []
    for c in non_pivots:
        row = [ring.zero()] * ambient_dim
        row[c] = ring.one()
        for brow, pc in zip(w.basis.rows, pivots):
            row[pc] = ring.neg(brow[c])
        rows.append(row)
    if not rows:
        return Matrix.zeros(ring, 0, ambient_dim)
    return Matrix.build(ring, rows)


# ---------------------------------------------------------------------------
# Smith normal form over Z.  Plain integer row tuples; no ring object needed.


@dataclass(frozen=True)
class SmithForm:
    d: tuple          # diagonal matrix, as row tuples
    u: tuple          # left unimodular transform
    v: tuple          # right unimodular transform
    invariant_factors: tuple

    def check(self, a_rows) -> bool:
        prod = _int_mat_mul(_int_mat_mul(self.u, a_rows), self.v)
        return prod == self.d


def _int_mat_mul(a, b):
    if not a or not b:
        return tuple()
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def smith_normal_form(rows) -> SmithForm:
    """U*A*V = D with a divisibility chain d1 | d2 | ... on the diagonal."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # find the entry of least absolute value in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, nrows):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                row_op(i, t, q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, ncols):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                col_op(j, t, q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by a[t][t]
        pivot = a[t][t]
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % pivot != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # add offending row to the pivot row
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    d = tuple(tuple(a[i][j] if i == j else 0 for j in range(ncols))
              for i in range(nrows))
    factors = tuple(a[i][i] for i in range(min(nrows, ncols)) if a[i][i] != 0)
    return SmithForm(d=d, u=tuple(tuple(r) for r in u),
                     v=tuple(tuple(r) for r in v), invariant_factors=factors)


def integer_kernel(rows) -> list:
    """Basis of the integer null space {x : x*A = 0} for the row lattice."""
    if not rows:
        return []
    nrows = len(rows)
    snf = smith_normal_form(rows)
    rank = len(snf.invariant_factors)
    # u*A*v = d  =>  rows rank..nrows-1 of u*A are zero
    return [list(snf.u[i]) for i in range(rank, nrows)]


# ---------------------------------------------------------------------------


def commutant_dimension(gens) -> int:
    """Dimension of {X : X g = g X for all generators g}, computed exactly.

    Works by intersecting, one generator at a time, the kernels of the maps
    X -> X g - g X on the space of d x d matrices.
    """
    if not gens:
        raise ValueError("at least one generator is required")
    ring = gens[0].ring
    _require_field(ring)
    d = gens[0].nrows
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators over different rings")
        if g.nrows != d or g.ncols != d:
            raise ValueError("generators must be square of equal size")
    # current basis of the solution space, as flattened d*d vectors
    zero = ring.zero()
    one = ring.one()
    cur = []
    for r in range(d):
        for c in range(d):
            v = [zero] * (d * d)
            v[r * d + c] = one
            cur.append(v)
    for g in gens:
        g_rows = g.rows
        residuals = []
        for v in cur:
            # X with entries v; residual R = X g - g X, flattened
            x_rows = [v[i * d:(i + 1) * d] for i in range(d)]
            res = []
            for i in range(d):
                for j in range(d):
                    acc = zero
                    for k in range(d):
                        acc = ring.add(acc, ring.mul(x_rows[i][k], g_rows[k][j]))
                        acc = ring.sub(acc, ring.mul(g_rows[i][k], x_rows[k][j]))
                    res.append(acc)
            residuals.append(res)
        if not cur:
            break
        ker = kernel(Matrix.build(ring, residuals).transpose())
        new_cur = []
        for coeffs in ker.basis.rows:
            v = [zero] * (d * d)
            for cf, old in zip(coeffs, cur):
                if cf != zero:
                    v = [ring.add(x, ring.mul(cf, y)) for x, y in zip(v, old)]
            new_cur.append(v)
        cur = new_cur
    return len(cur)
