"""Independent ground truth for the decomposer.

Nothing here calls into :mod:`thinrep.decompose`; multiplicities are
recovered from Hom dimensions, and planted instances are built from a known
barcode.  Only the exact linear-algebra primitives are shared.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatchError, InternalLogicError, UsageError
from .field import FieldSpec
from .linalg import Matrix, mul_mat, rank
from .quiver import (
    Barcode,
    Interval,
    Orientation,
    Representation,
    all_intervals,
    apply_base_change,
    barcode_module,
    thin,
)


def hom_dim(M: Representation, N: Representation) -> int:
    """Dimension of the space of morphisms ``M -> N``.

    Unknowns are the entries of ``phi_x: M_x -> N_x``; each arrow ``s -> t``
    contributes the equations ``N_a phi_s - phi_t M_a = 0``.
    """
    if M.orientation != N.orientation:
        raise UsageError("representations have different orientations")
    if M.field != N.field:
        raise FieldMismatchError(f"{M.field} vs {N.field}")
    f = M.field
    offset = []
    total = 0
    for x in range(1, M.n + 1):
        offset.append(total)
        total += N.dim(x) * M.dim(x)
    if total == 0:
        return 0

    def var(x: int, i: int, j: int) -> int:
        # entry (i, j) of phi_x, an N_x-by-M_x matrix
        return offset[x - 1] + i * M.dim(x) + j

    z = f.zero
    eqs: list[list] = []
    for (s, t, Ma), (_, _, Na) in zip(M.arrows(), N.arrows()):
        # (N_a phi_s)[i][j] = sum_k Na[i][k] phi_s[k][j]
        # (phi_t M_a)[i][j] = sum_k phi_t[i][k] Ma[k][j]
        for i in range(N.dim(t)):
            for j in range(M.dim(s)):
                row = [z] * total
                for k in range(N.dim(s)):
                    c = Na.rows[i][k]
                    if c:
                        row[var(s, k, j)] = f.add(row[var(s, k, j)], c)
                for k in range(M.dim(t)):
                    c = Ma.rows[k][j]
                    if c:
                        row[var(t, i, k)] = f.sub(row[var(t, i, k)], c)
                eqs.append(row)
    if not eqs:
        return total
    return total - rank(Matrix(f, len(eqs), total, tuple(tuple(r) for r in eqs)))


def interval_hom_matrix(orientation: Orientation, field: FieldSpec) -> tuple[list[Interval], list[list[int]]]:
    """``C[I][J] = hom_dim(thin(I), thin(J))`` over all intervals."""
    ivs = all_intervals(orientation.n)
    mods = [thin(orientation, iv, field) for iv in ivs]
    return ivs, [[hom_dim(a, b) for b in mods] for a in mods]


def _solve_integer_system(C: list[list[int]], h: list[int]) -> list[Fraction]:
    """Exact solution of ``C m = h`` over Q by Gauss-Jordan; ``C`` must be invertible."""
    n = len(C)
    a = [[Fraction(v) for v in row] + [Fraction(h[i])] for i, row in enumerate(C)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise InternalLogicError("interval Hom matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                fct = a[r][c]
                a[r] = [x - fct * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def multiplicities_via_hom(M: Representation) -> Barcode:
    """Barcode of ``M`` from ``hom_dim(thin(I), M)`` for every interval ``I``."""
    ivs, C = interval_hom_matrix(M.orientation, M.field)
    h = [hom_dim(thin(M.orientation, iv, M.field), M) for iv in ivs]
    # C m = h where C[I][J] = hom(E_I, E_J): h[I] = sum_J hom(E_I, E_J) m_J
    m = _solve_integer_system(C, h)
    items = {}
    for iv, v in zip(ivs, m):
        if v.denominator != 1 or v < 0:
            raise InternalLogicError(f"multiplicity of {iv} came out as {v}")
        if v:
            items[iv] = int(v)
    return Barcode(M.n, items)


def equioriented_multiplicities(M: Representation) -> Barcode:
    """Barcode of an equioriented representation from ranks of composite maps.

    ``m[a,b] = r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1)`` where ``r(a,b)`` is
    the rank of ``M_a -> M_b`` and any term with an index outside ``1..n``
    is zero.
    """
    n = M.n
    if any(d.value != "f" for d in M.orientation.dirs):
        raise UsageError("representation is not equioriented 1 -> 2 -> ... -> n")
    f = M.field
    composite: dict[tuple[int, int], Matrix] = {}
    for a in range(1, n + 1):
        P = Matrix.identity(f, M.dim(a))
        composite[a, a] = P
        for b in range(a + 1, n + 1):
            P = mul_mat(M.maps[b - 2], P)
            composite[a, b] = P
    r = {k: rank(P) for k, P in composite.items()}

    def rk(a: int, b: int) -> int:
        if a < 1 or b > n:
            return 0
        return r[a, b]

    items = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            m = rk(a, b) - rk(a - 1, b) - rk(a, b + 1) + rk(a - 1, b + 1)
            if m < 0:
                raise InternalLogicError(f"negative multiplicity for [{a},{b}]")
            if m:
                items[Interval(a, b)] = m
    return Barcode(n, items)


# -- instance generators ------------------------------------------------------


def random_matrix(field: FieldSpec, nrows: int, ncols: int, rng: random.Random) -> Matrix:
    return Matrix(field, nrows, ncols,
                  tuple(tuple(field.random(rng) for _ in range(ncols)) for _ in range(nrows)))


def random_invertible(field: FieldSpec, d: int, rng: random.Random) -> Matrix:
    """Rejection-sample uniformly random square matrices until one is invertible."""
    while True:
        M = random_matrix(field, d, d, rng)
        if rank(M) == d:
            return M


@dataclass(frozen=True)
class PlantSpec:
    orientation: Orientation
    barcode: Barcode
    field: FieldSpec
    seed: int

    def __post_init__(self):
        if self.barcode.n != self.orientation.n:
            raise UsageError(f"barcode is for n={self.barcode.n}, orientation has n={self.orientation.n}")


def plant_instance(spec: PlantSpec, conjugate: bool = True) -> tuple[Representation, Barcode]:
    """Direct sum of the barcode's interval modules, hidden by a random base change.

    With ``conjugate=False`` the base change is skipped and the sum is
    returned verbatim.
    """
    R = barcode_module(spec.orientation, spec.barcode, spec.field)
    if conjugate:
        rng = random.Random(spec.seed)
        P = [random_invertible(spec.field, d, rng) for d in R.dims]
        R = apply_base_change(R, P)
    return R, spec.barcode


def random_instance(orientation: Orientation, max_dim: int, field: FieldSpec, seed: int) -> Representation:
    """Uniform dims in ``0..max_dim`` and uniform matrix entries."""
    rng = random.Random(seed)
    dims = tuple(rng.randint(0, max_dim) for _ in range(orientation.n))
    maps = []
    for i in range(1, orientation.n):
        s, t = orientation.arrow(i)
        maps.append(random_matrix(field, dims[t - 1], dims[s - 1], rng))
    return Representation(orientation, dims, tuple(maps), field)


def random_orientation(n: int, rng: random.Random) -> Orientation:
    return Orientation(n, tuple(rng.choice("fb") for _ in range(n - 1)))


def random_barcode(n: int, rng: random.Random, max_mult: int = 3, max_dim: int = 8) -> Barcode:
    """Random multiplicities in ``0..max_mult``, capped so every vertex stays within ``max_dim``.

    Intervals are visited in a shuffled order; each draw is clipped to the
    room left at the vertices it covers.
    """
    ivs = all_intervals(n)
    rng.shuffle(ivs)
    load = [0] * (n + 1)
    items = {}
    for iv in ivs:
        room = max_dim - max(load[iv.a:iv.b + 1])
        m = min(rng.randint(0, max_mult), room)
        if m > 0:
            items[iv] = m
            for x in range(iv.a, iv.b + 1):
                load[x] += m
    return Barcode(n, items)
