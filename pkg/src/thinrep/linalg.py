"""Dense exact linear algebra over a :class:`~thinrep.field.FieldSpec`.

Matrices act on column vectors.  Elimination always pivots on the first
nonzero entry of the lowest-index remaining column, so every result here is
a deterministic function of its input.  Empty shapes (0 rows or 0 columns)
are ordinary matrices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from . import _backend
from .errors import FieldMismatchError, NoSolution, UsageError
from .field import FieldScalar, FieldSpec, Raw


class Matrix:
    """Immutable dense matrix of canonical raw scalars, stored row-major."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, nrows: int, ncols: int, rows: tuple[tuple[Raw, ...], ...]):
        # Trusted constructor: rows must already be canonical and well-shaped.
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable[Any]], ncols: int | None = None) -> Matrix:
        conv = field.convert
        data = tuple(tuple(conv(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise UsageError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for i, r in enumerate(data):
            if len(r) != ncols:
                raise UsageError(f"row {i} has {len(r)} entries, expected {ncols}")
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_columns(cls, field: FieldSpec, nrows: int, cols: Sequence[Sequence[Any]]) -> Matrix:
        conv = field.convert
        cols = [[conv(x) for x in c] for c in cols]
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise UsageError(f"column {j} has {len(c)} entries, expected {nrows}")
        return cls(field, nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @classmethod
    def from_flat(cls, field: FieldSpec, nrows: int, ncols: int, entries: Sequence[Any]) -> Matrix:
        if len(entries) != nrows * ncols:
            raise UsageError(f"expected {nrows * ncols} entries, got {len(entries)}")
        conv = field.convert
        return cls(field, nrows, ncols,
                   tuple(tuple(conv(entries[i * ncols + j]) for j in range(ncols)) for i in range(nrows)))

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls(field, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> FieldScalar:
        i, j = ij
        return FieldScalar(self.rows[i][j], self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format_scalar(x) for x in r) for r in self.rows)
        return f"Matrix<{self.field} {self.nrows}x{self.ncols}>[{body}]"

    def __matmul__(self, other: Matrix) -> Matrix:
        return mul_mat(self, other)

    def column(self, j: int) -> tuple[Raw, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[Raw, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> Matrix:
        if self.nrows == 0:
            return Matrix(self.field, self.ncols, 0, tuple(() for _ in range(self.ncols)))
        return Matrix(self.field, self.ncols, self.nrows, tuple(zip(*self.rows)))

    def select_columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.field, self.nrows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.rows))

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.field, len(idx), self.ncols, tuple(self.rows[i] for i in idx))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            r[j] == (1 if i == j else 0) for i, r in enumerate(self.rows) for j in range(self.ncols))

    def to_flat_strings(self) -> list[str]:
        fmt = self.field.format_scalar
        return [fmt(x) for r in self.rows for x in r]


def _same_field(*ms: Matrix) -> FieldSpec:
    f = ms[0].field
    for m in ms[1:]:
        if m.field != f:
            raise FieldMismatchError(f"{f} vs {m.field}")
    return f


def hstack(field: FieldSpec, nrows: int, blocks: Sequence[Matrix]) -> Matrix:
    """Concatenate column blocks; ``nrows`` makes an empty list well-defined."""
    for b in blocks:
        if b.field != field:
            raise FieldMismatchError(f"{field} vs {b.field}")
        if b.nrows != nrows:
            raise UsageError(f"block has {b.nrows} rows, expected {nrows}")
    ncols = sum(b.ncols for b in blocks)
    rows = tuple(sum((b.rows[i] for b in blocks), ()) for i in range(nrows))
    return Matrix(field, nrows, ncols, rows)


def vstack(field: FieldSpec, ncols: int, blocks: Sequence[Matrix]) -> Matrix:
    for b in blocks:
        if b.field != field:
            raise FieldMismatchError(f"{field} vs {b.field}")
        if b.ncols != ncols:
            raise UsageError(f"block has {b.ncols} columns, expected {ncols}")
    rows = tuple(r for b in blocks for r in b.rows)
    return Matrix(field, len(rows), ncols, rows)


def block_diag(field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    ncols = sum(b.ncols for b in blocks)
    z = field.zero
    rows = []
    off = 0
    for b in blocks:
        if b.field != field:
            raise FieldMismatchError(f"{field} vs {b.field}")
        left, right = (z,) * off, (z,) * (ncols - off - b.ncols)
        rows.extend(left + r + right for r in b.rows)
        off += b.ncols
    return Matrix(field, len(rows), ncols, tuple(rows))


# -- elimination --------------------------------------------------------------


def _rref_generic(rows: Sequence[Sequence[Raw]], npivot: int) -> tuple[list[list[Raw]], list[int]]:
    a = [list(r) for r in rows]
    m = len(a)
    pivots: list[int] = []
    r = 0
    for c in range(npivot):
        if r == m:
            break
        piv = r
        while piv < m and not a[piv][c]:
            piv += 1
        if piv == m:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        row = a[r]
        if row[c] != 1:
            iv = 1 / row[c]
            row = a[r] = [x * iv for x in row]
        for i in range(m):
            if i != r:
                f = a[i][c]
                if f:
                    ai = a[i]
                    a[i] = ai[:c] + [x - f * y if y else x for x, y in zip(ai[c:], row[c:])]
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_raw(field: FieldSpec, rows: Sequence[Sequence[Raw]], npivot: int) -> tuple[list[list[Raw]], list[int]]:
    if not rows or npivot == 0:
        return [list(r) for r in rows], []
    if field.p is not None:
        return _backend.active.rref_modp(rows, npivot, field.p)
    return _rref_generic(rows, npivot)


def rref(M: Matrix) -> tuple[Matrix, list[int], Matrix]:
    """Return ``(R, pivots, T)`` with ``T @ M == R`` in reduced row-echelon form.

    ``pivots`` are 0-based column indices in increasing order; ``T`` is
    invertible.
    """
    f = M.field
    m, n = M.nrows, M.ncols
    z, o = f.zero, f.one
    aug = [r + tuple(o if i == j else z for j in range(m)) for i, r in enumerate(M.rows)]
    red, pivots = _rref_raw(f, aug, n)
    R = Matrix(f, m, n, tuple(tuple(r[:n]) for r in red))
    T = Matrix(f, m, m, tuple(tuple(r[n:]) for r in red))
    return R, pivots, T


def rank(M: Matrix) -> int:
    return len(_rref_raw(M.field, M.rows, M.ncols)[1])


def mul_mat(A: Matrix, B: Matrix) -> Matrix:
    f = _same_field(A, B)
    if A.ncols != B.nrows:
        raise UsageError(f"cannot multiply {A.shape} by {B.shape}")
    if f.p is not None:
        rows = _backend.active.matmul_modp(A.rows, B.rows, B.ncols, f.p) if A.nrows else []
        return Matrix(f, A.nrows, B.ncols, tuple(tuple(r) for r in rows))
    n = B.ncols
    out = []
    brows = B.rows
    for arow in A.rows:
        acc = [f.zero] * n
        for k, x in enumerate(arow):
            if x:
                for j, y in enumerate(brows[k]):
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return Matrix(f, A.nrows, n, tuple(out))


def inverse(A: Matrix) -> Matrix:
    if A.nrows != A.ncols:
        raise UsageError(f"cannot invert a {A.nrows}x{A.ncols} matrix")
    R, pivots, T = rref(A)
    if len(pivots) != A.nrows:
        raise ZeroDivisionError("matrix is singular")
    return T


def is_invertible(A: Matrix) -> bool:
    return A.nrows == A.ncols and rank(A) == A.nrows


def solve(A: Matrix, b: Matrix | Sequence[Any]) -> Matrix | list[Raw]:
    """A particular solution of ``A x = b`` (free variables set to zero).

    ``b`` may be a matrix of right-hand sides or a single vector; the result
    has the same kind.  Raises :class:`NoSolution` if the system is
    inconsistent.
    """
    f = A.field
    as_vector = not isinstance(b, Matrix)
    if as_vector:
        b = Matrix.from_columns(f, A.nrows, [list(b)])
    _same_field(A, b)
    if b.nrows != A.nrows:
        raise UsageError(f"right-hand side has {b.nrows} rows, expected {A.nrows}")
    n = A.ncols
    aug = [ra + rb for ra, rb in zip(A.rows, b.rows)]
    red, pivots = _rref_raw(f, aug, n)
    for i in range(len(pivots), A.nrows):
        if any(red[i][n:]):
            raise NoSolution("inconsistent linear system")
    z = f.zero
    x = [[z] * b.ncols for _ in range(n)]
    for i, c in enumerate(pivots):
        x[c] = red[i][n:]
    X = Matrix(f, n, b.ncols, tuple(tuple(r) for r in x))
    return list(X.column(0)) if as_vector else X


# -- subspaces ----------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace given by a basis: the (independent) columns of ``basis``."""

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.nrows != self.ambient_dim:
            raise UsageError(f"basis vectors have length {self.basis.nrows}, ambient is {self.ambient_dim}")

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @classmethod
    def spanned_by(cls, M: Matrix) -> Subspace:
        """Subspace spanned by the columns of ``M`` (keeps the pivot columns)."""
        return image_basis(M)

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.zeros(field, ambient_dim, 0))

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.identity(field, ambient_dim))

    def contains(self, vectors: Matrix) -> bool:
        """Whether every column of ``vectors`` lies in this subspace."""
        both = hstack(self.field, self.ambient_dim, [self.basis, vectors])
        return rank(both) == rank(self.basis)

    def same_as(self, other: Subspace) -> bool:
        return self.dim == other.dim and self.contains(other.basis)


def kernel_basis(M: Matrix) -> Subspace:
    """Null space of ``M`` by the free-variable construction on its RREF."""
    f = M.field
    n = M.ncols
    red, pivots = _rref_raw(f, M.rows, n)
    pivset = set(pivots)
    z, o = f.zero, f.one
    cols = []
    for free in range(n):
        if free in pivset:
            continue
        v = [z] * n
        v[free] = o
        for i, c in enumerate(pivots):
            v[c] = f.neg(red[i][free])
        cols.append(v)
    return Subspace(n, Matrix(f, n, len(cols), tuple(tuple(c[i] for c in cols) for i in range(n))))


def image_basis(M: Matrix) -> Subspace:
    """Column space of ``M``, represented by its pivot columns."""
    _, pivots = _rref_raw(M.field, M.rows, M.ncols)
    return Subspace(M.nrows, M.select_columns(pivots))


def extend_to_basis(S: Subspace | Matrix) -> Matrix:
    """Square invertible matrix ``[S | e_j ...]``.

    The completion takes standard unit vectors greedily in increasing index.
    """
    B = S.basis if isinstance(S, Subspace) else S
    d = B.nrows
    f = B.field
    aug = hstack(f, d, [B, Matrix.identity(f, d)])
    _, pivots = _rref_raw(f, aug.rows, aug.ncols)
    k = B.ncols
    if pivots[:k] != list(range(k)):
        raise UsageError("basis columns are not linearly independent")
    return aug.select_columns(list(range(k)) + [j for j in pivots if j >= k])


def _greedy_extend(field: FieldSpec, d: int, base: Matrix, candidates: Matrix) -> Matrix:
    """Columns of ``candidates`` chosen greedily to extend the independent ``base``."""
    aug = hstack(field, d, [base, candidates])
    _, pivots = _rref_raw(field, aug.rows, aug.ncols)
    k = base.ncols
    return candidates.select_columns([j - k for j in pivots if j >= k])


def intersect(U1: Subspace, U2: Subspace) -> Subspace:
    """``U1 ∩ U2`` via the kernel of ``[B1 | B2]`` mapped back through ``B1``.

    The basis is returned in reduced column-echelon form, so it does not
    depend on how either input basis was chosen.
    """
    if U1.ambient_dim != U2.ambient_dim:
        raise UsageError(f"ambient dimensions differ: {U1.ambient_dim} vs {U2.ambient_dim}")
    f = _same_field(U1.basis, U2.basis)
    d = U1.ambient_dim
    K = kernel_basis(hstack(f, d, [U1.basis, U2.basis])).basis
    top = K.select_rows(list(range(U1.dim)))
    X = mul_mat(U1.basis, top)
    rows, pivots = _rref_raw(f, X.T.rows, d)
    return Subspace(d, Matrix(f, len(pivots), d, tuple(tuple(r) for r in rows[:len(pivots)])).T)


class Part(enum.Enum):
    BOTH = "both"
    FIRST = "first"
    SECOND = "second"
    NEITHER = "neither"


@dataclass(frozen=True)
class PartitionedBasis:
    """A basis of the ambient space split into the four :class:`Part` blocks."""

    ambient_dim: int
    parts: tuple[tuple[Part, Matrix], ...]

    def __getitem__(self, label: Part) -> Matrix:
        for lab, m in self.parts:
            if lab is label:
                return m
        raise KeyError(label)

    def matrix(self) -> Matrix:
        f = self.parts[0][1].field
        return hstack(f, self.ambient_dim, [m for _, m in self.parts])

    def sizes(self) -> tuple[int, ...]:
        return tuple(m.ncols for _, m in self.parts)


def compatible_basis_two_subspaces(U1: Subspace, U2: Subspace) -> PartitionedBasis:
    """Basis of the ambient space adapted to both ``U1`` and ``U2``.

    ``BOTH`` spans the intersection, ``BOTH+FIRST`` spans ``U1``, ``BOTH+SECOND``
    spans ``U2``, and ``NEITHER`` completes with unit vectors.
    """
    if U1.ambient_dim != U2.ambient_dim:
        raise UsageError(f"ambient dimensions differ: {U1.ambient_dim} vs {U2.ambient_dim}")
    f = _same_field(U1.basis, U2.basis)
    d = U1.ambient_dim
    both = intersect(U1, U2).basis
    first = _greedy_extend(f, d, both, U1.basis)
    second = _greedy_extend(f, d, both, U2.basis)
    spanned = hstack(f, d, [both, first, second])
    neither = _greedy_extend(f, d, spanned, Matrix.identity(f, d))
    return PartitionedBasis(d, ((Part.BOTH, both), (Part.FIRST, first),
                                (Part.SECOND, second), (Part.NEITHER, neither)))
