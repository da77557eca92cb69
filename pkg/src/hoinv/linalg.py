"""Exact linear algebra over Q and F_p.

Conventions, fixed repo-wide:
  * vectors are stored as row tuples, but maps act on column vectors:
    ``m.apply(v)[i] = sum_j m[i][j] * v[j]``;
  * subspaces are stored as canonical reduced-row-echelon bases (pivot
    entries 1, pivots eliminated everywhere else, strictly increasing pivot
    columns), so two equal subspaces have identical stored bases.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .fields import FieldSpec


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Immutable dense matrix with entries in a FieldSpec."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field: FieldSpec, entries: Sequence[Sequence], ncols: int | None = None):
        # ncols only matters for matrices with zero rows, whose width cannot
        # be inferred from the entries
        rows = tuple(tuple(row) for row in entries)
        if rows:
            ncols = len(rows[0])
        elif ncols is None:
            ncols = 0
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.entries = rows

    @staticmethod
    def from_values(field: FieldSpec, entries) -> "Matrix":
        """Build from ints / Fractions / "num/den" strings."""
        return Matrix(field, [[field.parse_scalar(x) for x in row] for row in entries])

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Matrix":
        one, zero = field.one(), field.zero()
        return Matrix(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero()
        return Matrix(field, [[zero] * ncols for _ in range(nrows)], ncols=ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        return f"Matrix({self.field.tag}, {self.nrows}x{self.ncols})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, [
            [f.add(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.entries, other.entries)
        ])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, [
            [f.sub(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.entries, other.entries)
        ])

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.neg(a) for a in row] for row in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.ncols} != {other.nrows}")
        f = self.field
        if self.ncols == 0:
            return Matrix.zeros(f, self.nrows, other.ncols)
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append([_dot(f, row, col) for col in cols])
        return Matrix(f, out, ncols=other.ncols)

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.mul(c, a) for a in row] for row in self.entries])

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector (vector given and returned as a tuple)."""
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"{len(vec)} != {self.ncols}")
        f = self.field
        return tuple(_dot(f, row, vec) for row in self.entries)

    def transpose(self) -> "Matrix":
        if not self.entries:
            return Matrix(self.field, [()] * self.ncols, ncols=0)
        return Matrix(self.field, list(zip(*self.entries)), ncols=self.nrows)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; block (i,j) is self[i][j] * other."""
        f = self.field
        out = []
        for ra in self.entries:
            for rb in other.entries:
                out.append([f.mul(a, b) for a in ra for b in rb])
        return Matrix(f, out, ncols=self.ncols * other.ncols)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.nrows
        aug = [list(row) + list(ident_row) for row, ident_row in
               zip(self.entries, Matrix.identity(self.field, n).entries)]
        reduced, pivots = rref_rows(self.field, aug)
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.field, [row[n:] for row in reduced])

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("power of non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def rank(self) -> int:
        return len(rref_rows(self.field, [list(r) for r in self.entries])[1])

    def is_zero(self) -> bool:
        return all(not a for row in self.entries for a in row)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        one = self.field.one()
        return all(
            (a == one if i == j else not a)
            for i, row in enumerate(self.entries) for j, a in enumerate(row)
        )

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def _check_same_shape(self, other: "Matrix"):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch(
                f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")


def _dot(f: FieldSpec, u, v):
    acc = f.zero()
    for a, b in zip(u, v):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


def vstack(top: Matrix, *rest: Matrix) -> Matrix:
    rows = list(top.entries)
    for m in rest:
        if m.ncols != top.ncols:
            raise DimensionMismatch("vstack width mismatch")
        rows.extend(m.entries)
    return Matrix(top.field, rows, ncols=top.ncols)


def hstack(left: Matrix, *rest: Matrix) -> Matrix:
    rows = [list(r) for r in left.entries]
    width = left.ncols
    for m in rest:
        if m.nrows != left.nrows:
            raise DimensionMismatch("hstack height mismatch")
        width += m.ncols
        for row, extra in zip(rows, m.entries):
            row.extend(extra)
    return Matrix(left.field, rows, ncols=width)


def matrix_from_columns(field: FieldSpec, columns: Sequence[Sequence], nrows: int) -> Matrix:
    for col in columns:
        if len(col) != nrows:
            raise DimensionMismatch("column length mismatch")
    if not columns or nrows == 0:
        return Matrix.zeros(field, nrows, len(columns))
    return Matrix(field, list(zip(*columns)), ncols=len(columns))


# ---------------------------------------------------------------------------
# dense Gauss-Jordan


def rref_rows(field: FieldSpec, rows: list) -> tuple[list, list]:
    """In-place reduced row echelon form; returns (nonzero rows, pivot cols).

    Pivot entries are normalized to 1 and eliminated above and below, so the
    output rows are the canonical basis of the row space.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != field.one():
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                b = rows[i][c]
                rows[i] = [field.sub(x, field.mul(b, y)) for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of field^ambient_dim with a canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis, pivots):
        # internal: callers go through from_vectors / zero / full
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(row) for row in basis)
        self.pivots = tuple(pivots)

    @staticmethod
    def from_vectors(field: FieldSpec, ambient_dim: int, vectors: Iterable) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector length {len(v)} != {ambient_dim}")
        basis, pivots = rref_rows(field, vecs)
        return Subspace(field, ambient_dim, basis, pivots)

    @staticmethod
    def zero(field: FieldSpec, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, [], [])

    @staticmethod
    def full(field: FieldSpec, ambient_dim: int) -> "Subspace":
        ident = Matrix.identity(field, ambient_dim)
        return Subspace(field, ambient_dim, ident.entries, list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace({self.field.tag}, dim {self.dim} of {self.ambient_dim})"

    def reduce(self, vec: Sequence) -> tuple:
        """Residual of vec after eliminating every pivot coordinate."""
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch(f"{len(vec)} != {self.ambient_dim}")
        f = self.field
        v = list(vec)
        for row, p in zip(self.basis, self.pivots):
            b = v[p]
            if b:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        v[j] = f.sub(v[j], f.mul(b, row[j]))
        return tuple(v)

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coords(self, vec: Sequence) -> tuple:
        """Coordinates of vec in the stored basis; raises if not a member."""
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch(f"{len(vec)} != {self.ambient_dim}")
        f = self.field
        v = list(vec)
        out = []
        for row, p in zip(self.basis, self.pivots):
            b = v[p]
            out.append(b)
            if b:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        v[j] = f.sub(v[j], f.mul(b, row[j]))
        if any(v):
            raise ValueError("vector not in subspace")
        return tuple(out)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(
            self.field, self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient_dim)
        f = self.field
        stacked = [list(r) for r in self.basis]
        stacked += [[f.neg(x) for x in r] for r in other.basis]
        combos = kernel(Matrix(f, stacked).transpose())
        vecs = []
        na = len(self.basis)
        for combo in combos.basis:
            vec = [f.zero()] * self.ambient_dim
            for c, row in zip(combo[:na], self.basis):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            vec[j] = f.add(vec[j], f.mul(c, x))
            vecs.append(vec)
        return Subspace.from_vectors(f, self.ambient_dim, vecs)

    def kron(self, other: "Subspace") -> "Subspace":
        """Tensor product inside field^(n*m): span of pairwise outer products."""
        if self.field != other.field:
            raise DimensionMismatch("field mismatch")
        f = self.field
        vecs = []
        for u in self.basis:
            for w in other.basis:
                vecs.append([f.mul(a, b) for a in u for b in w])
        return Subspace.from_vectors(f, self.ambient_dim * other.ambient_dim, vecs)

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, ncols=self.ambient_dim)

    def _check_compatible(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("incompatible subspaces")


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m.apply(v) = 0}, canonical basis."""
    f = m.field
    reduced, pivots = rref_rows(f, [list(r) for r in m.entries])
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    vecs = []
    for j in free:
        v = [f.zero()] * m.ncols
        v[j] = f.one()
        for row, p in zip(reduced, pivots):
            if row[j]:
                v[p] = f.neg(row[j])
        vecs.append(v)
    return Subspace.from_vectors(f, m.ncols, vecs)


def solve(m: Matrix, rhs: Sequence):
    """One exact solution x of m.apply(x) = rhs, or None if inconsistent."""
    if len(rhs) != m.nrows:
        raise DimensionMismatch(f"{len(rhs)} != {m.nrows}")
    f = m.field
    aug = [list(row) + [b] for row, b in zip(m.entries, rhs)]
    reduced, pivots = rref_rows(f, aug)
    x = [f.zero()] * m.ncols
    for row, p in zip(reduced, pivots):
        if p == m.ncols:  # pivot in the augmented column
            return None
        x[p] = row[-1]
    return tuple(x)


Operator = Union[Matrix, Callable[[dict], dict]]


def span_closure(seed: Iterable[Sequence], operators: Sequence[Operator],
                 field: FieldSpec | None = None,
                 ambient_dim: int | None = None) -> Subspace:
    """Smallest subspace containing seed and stable under every operator.

    Operators are square matrices (or sparse callables dict->dict used by the
    tensor-algebra closure); termination is by finiteness of the ambient
    dimension.  Empty seed gives the zero subspace.
    """
    seed = [tuple(v) for v in seed]
    for op in operators:
        if isinstance(op, Matrix):
            if op.nrows != op.ncols:
                raise DimensionMismatch("closure operators must be square")
            if field is None:
                field, ambient_dim = op.field, op.ncols
            elif ambient_dim != op.ncols:
                raise DimensionMismatch("operator size mismatch")
    if seed and ambient_dim is None:
        ambient_dim = len(seed[0])
    if field is None or ambient_dim is None:
        raise ValueError("field and ambient_dim required for an empty closure")
    for v in seed:
        if len(v) != ambient_dim:
            raise DimensionMismatch("seed vector size mismatch")

    acc = EchelonBasis(field, ambient_dim)
    close_under(acc, seed, operators)
    return acc.to_subspace()


def close_under(acc: "EchelonBasis", vectors: Iterable, operators: Sequence[Operator]):
    """Insert vectors into acc and saturate the span under the operators."""
    queue = []
    for v in vectors:
        res = acc.insert(v if isinstance(v, dict) else _dense_to_sparse(v))
        if res is not None:
            queue.append(res)
    while queue:
        v = queue.pop()
        for op in operators:
            res = acc.insert(_apply_operator(op, v))
            if res is not None:
                queue.append(res)


def _dense_to_sparse(vec: Sequence) -> dict:
    return {j: a for j, a in enumerate(vec) if a}


def _apply_operator(op: Operator, sparse: dict) -> dict:
    if isinstance(op, Matrix):
        f = op.field
        acc: dict = {}
        for j, c in sparse.items():
            for i in range(op.nrows):
                a = op.entries[i][j]
                if a:
                    val = f.add(acc.get(i, f.zero()), f.mul(a, c))
                    if val:
                        acc[i] = val
                    elif i in acc:
                        del acc[i]
        return acc
    return op(sparse)


class QuotientMap:
    """Coordinates on big/small: coset representatives plus the projection.

    ``project`` sends a vector of ``big`` to its coordinates with respect to
    the classes of ``coset_reps``; members of ``small`` project to zero.
    """

    __slots__ = ("big", "small", "coset_reps", "projection")

    def __init__(self, big: Subspace, small: Subspace, coset_reps, projection: Matrix):
        self.big = big
        self.small = small
        self.coset_reps = tuple(tuple(v) for v in coset_reps)
        self.projection = projection

    @property
    def dim(self) -> int:
        return len(self.coset_reps)

    def project(self, vec: Sequence) -> tuple:
        return self.projection.apply(vec)

    def lift(self, coords: Sequence) -> tuple:
        f = self.big.field
        vec = [f.zero()] * self.big.ambient_dim
        for c, rep in zip(coords, self.coset_reps):
            if c:
                for j, x in enumerate(rep):
                    if x:
                        vec[j] = f.add(vec[j], f.mul(c, x))
        return tuple(vec)


def quotient_map(big: Subspace, small: Subspace) -> QuotientMap:
    """Quotient big/small; requires small <= big (checked memberwise)."""
    big._check_compatible(small)
    f = big.field
    n = big.ambient_dim
    for v in small.basis:
        if not big.contains(v):
            raise ValueError("small subspace not contained in big")
    # complete small's basis to big's by big's own RREF rows
    acc = EchelonBasis(f, n)
    for v in small.basis:
        acc.insert(_dense_to_sparse(v))
    reps = []
    for v in big.basis:
        if acc.insert(_dense_to_sparse(v)) is not None:
            reps.append(v)
    r = len(reps)
    if r == 0:
        return QuotientMap(big, small, [], Matrix.zeros(f, 0, n))
    # right inverse X of M = [reps; small]: M X = I, then projection = X[:, :r]^T
    m_rows = [list(v) for v in reps] + [list(v) for v in small.basis]
    k = len(m_rows)
    ident = Matrix.identity(f, k)
    cols = []
    m_mat = Matrix(f, m_rows)
    for i in range(k):
        x = solve(m_mat, ident.col(i))
        if x is None:  # cannot happen: rows are independent
            raise RuntimeError("quotient basis not independent")
        cols.append(x)
    # cols[i] is X column i (length n); projection rows are first r columns of X
    proj = Matrix(f, [cols[i] for i in range(r)])
    return QuotientMap(big, small, reps, proj)


# ---------------------------------------------------------------------------
# incremental echelon accumulator (sparse rows)


class EchelonBasis:
    """Row-echelon accumulator with immutable sparse rows.

    Rows are dicts {column: coefficient} keyed by pivot (their smallest
    column).  Over Q rows are integer vectors of content 1 (eliminations are
    fraction-free); over F_p rows have pivot 1.  Canonical back-elimination
    happens once, in to_subspace().
    """

    __slots__ = ("field", "ambient_dim", "rows")

    def __init__(self, field: FieldSpec, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows: dict[int, dict] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Residual of vec (a sparse dict) modulo the current row span."""
        if self.field.p is None:
            return self._reduce_qq(_clear_denominators(vec))
        return self._reduce_fp(self._normalize_fp_input(vec))

    def insert(self, vec: dict):
        """Insert vec's residual; returns the stored row dict, or None."""
        res = self.reduce(vec)
        if not res:
            return None
        piv = min(res)
        if self.field.p is not None and res[piv] != 1:
            # stored rows keep pivot 1 so reduction can subtract directly
            inv = pow(res[piv], -1, self.field.p)
            res = {k: (x * inv) % self.field.p for k, x in res.items()}
        self.rows[piv] = res
        return res

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def _reduce_qq(self, v: dict) -> dict:
        rows = self.rows
        while v:
            j = min(v)
            row = rows.get(j)
            if row is None:
                break
            a = row[j]
            b = v[j]
            new = {k: a * x for k, x in v.items()}
            for k, y in row.items():
                z = new.get(k, 0) - b * y
                if z:
                    new[k] = z
                elif k in new:
                    del new[k]
            v = new
        if v:
            g = 0
            for x in v.values():
                g = math.gcd(g, x)
            if v[min(v)] < 0:
                g = -g
            if g != 1:
                v = {k: x // g for k, x in v.items()}
        return v

    def _reduce_fp(self, v: dict) -> dict:
        p = self.field.p
        rows = self.rows
        while v:
            j = min(v)
            row = rows.get(j)
            if row is None:
                break
            b = v[j]  # row pivot is 1
            new = dict(v)
            for k, y in row.items():
                z = (new.get(k, 0) - b * y) % p
                if z:
                    new[k] = z
                elif k in new:
                    del new[k]
            v = new
        return v

    def _normalize_fp_input(self, vec: dict) -> dict:
        p = self.field.p
        out = {}
        for k, x in vec.items():
            if isinstance(x, Fraction):
                x = self.field.parse_scalar(x)
            x %= p
            if x:
                out[k] = x
        # scale pivot to 1 so stored rows eliminate cheaply
        if out:
            j = min(out)
            inv = pow(out[j], -1, p)
            if inv != 1:
                out = {k: (x * inv) % p for k, x in out.items()}
        return out

    def to_subspace(self) -> Subspace:
        f = self.field
        ordered = sorted(self.rows.items())
        sparse_rows = [dict(row) for _, row in ordered]
        pivots = [p for p, _ in ordered]
        # back-eliminate pivots of later rows from earlier rows
        for i in range(len(sparse_rows) - 1, -1, -1):
            row = sparse_rows[i]
            for k in range(i + 1, len(sparse_rows)):
                pk = pivots[k]
                b = row.get(pk)
                if not b:
                    continue
                other = sparse_rows[k]
                if f.p is None:
                    a = other[pk]
                    new = {c: a * x for c, x in row.items()}
                    for c, y in other.items():
                        z = new.get(c, 0) - b * y
                        if z:
                            new[c] = z
                        elif c in new:
                            del new[c]
                else:
                    new = dict(row)
                    for c, y in other.items():
                        z = (new.get(c, 0) - b * y) % f.p
                        if z:
                            new[c] = z
                        elif c in new:
                            del new[c]
                row = new
            sparse_rows[i] = row
        basis = []
        zero, one = f.zero(), f.one()
        for piv, row in zip(pivots, sparse_rows):
            dense = [zero] * self.ambient_dim
            if f.p is None:
                a = Fraction(row[piv])
                for c, x in row.items():
                    dense[c] = Fraction(x) / a
            else:
                inv = pow(row[piv], -1, f.p)
                for c, x in row.items():
                    dense[c] = (x * inv) % f.p
            dense[piv] = one
            basis.append(tuple(dense))
        return Subspace(f, self.ambient_dim, basis, pivots)


def _clear_denominators(vec: dict) -> dict:
    """Integer multiple of a rational sparse vector (not content-reduced)."""
    lcm = 1
    for x in vec.values():
        if isinstance(x, Fraction):
            d = x.denominator
            lcm = lcm * d // math.gcd(lcm, d)
    out = {}
    for k, x in vec.items():
        y = x * lcm
        if isinstance(y, Fraction):
            y = int(y)
        if y:
            out[k] = y
    return out
