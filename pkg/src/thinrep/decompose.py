"""Decomposition of A_n representations into interval modules.

The recursion follows the classical peak argument:

* ``n == 1`` and ``n == 2`` are handled directly (a basis, resp. the
  kernel/image bases of a single linear map).
* For ``n >= 3`` the representation is split at vertex 2 and then, on the
  part with peak 2, at vertex ``n-1``.  Each split decomposes the two
  restrictions on either side of the split vertex and glues the summands
  that reach it.
* What is left has peaks at 2 and ``n-1``, so every arrow strictly between
  them is an isomorphism.  Those arrows are trivialised, the middle collapses
  to a single vertex, and the resulting A_3 problem with peak 2 is solved by
  a basis compatible with two subspaces of the middle space.

Every summand is carried as an interval together with one vector per vertex
in the interval, written in the coordinates of the input representation.
The final :class:`Decomposition` is the change-of-basis certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CertificateError, InternalLogicError, UsageError
from .field import FieldSpec
from .linalg import (
    Matrix,
    Part,
    Subspace,
    compatible_basis_two_subspaces,
    extend_to_basis,
    hstack,
    inverse,
    is_invertible,
    kernel_basis,
    mul_mat,
    rank,
    solve,
)
from .quiver import (
    B as BACK,
    F as FWD,
    Barcode,
    Interval,
    Orientation,
    Representation,
    is_peak,
    restrict,
    reverse,
)

Vec = tuple  # column vector of raw scalars


class _Summand:
    """A thin summand: ``vecs[k]`` spans it at vertex ``iv.a + k``."""

    __slots__ = ("iv", "vecs")

    def __init__(self, iv: Interval, vecs: list[Vec]):
        self.iv = iv
        self.vecs = vecs

    def at(self, x: int) -> Vec:
        return self.vecs[x - self.iv.a]

    def shifted(self, offset: int) -> _Summand:
        return _Summand(Interval(self.iv.a + offset, self.iv.b + offset), self.vecs)


def _to_matrix(field: FieldSpec, d: int, cols: Sequence[Vec]) -> Matrix:
    if not cols:
        return Matrix.zeros(field, d, 0)
    return Matrix(field, d, len(cols), tuple(zip(*cols)))


def _unit(field: FieldSpec, d: int, i: int) -> Vec:
    z = field.zero
    v = [z] * d
    v[i] = field.one
    return tuple(v)


def _vertex_vectors(summands: Sequence[_Summand], x: int) -> list[tuple[int, Vec]]:
    return [(k, s.at(x)) for k, s in enumerate(summands) if x in s.iv]


# -- certificate --------------------------------------------------------------


@dataclass(frozen=True)
class SummandTag:
    id: int
    interval: Interval


@dataclass(frozen=True)
class Decomposition:
    """Barcode plus the change-of-basis certificate.

    Columns of ``base_change[x-1]`` form the new basis of the space at vertex
    ``x``; ``column_tags[x-1][j]`` is the id of the summand owning column ``j``.
    Summand ids are sorted by (start, end, construction order).
    """

    n: int
    field: FieldSpec
    summands: tuple[SummandTag, ...]
    base_change: tuple[Matrix, ...]
    column_tags: tuple[tuple[int, ...], ...]

    @property
    def barcode(self) -> Barcode:
        items: dict[Interval, int] = {}
        for s in self.summands:
            items[s.interval] = items.get(s.interval, 0) + 1
        return Barcode(self.n, items)


def _finalize(A: Representation, summands: Sequence[_Summand]) -> Decomposition:
    order = sorted(range(len(summands)), key=lambda k: (summands[k].iv.a, summands[k].iv.b, k))
    ordered = [summands[k] for k in order]
    tags = tuple(SummandTag(i, s.iv) for i, s in enumerate(ordered))
    base, col_tags = [], []
    for x in range(1, A.n + 1):
        vv = _vertex_vectors(ordered, x)
        base.append(_to_matrix(A.field, A.dim(x), [v for _, v in vv]))
        col_tags.append(tuple(k for k, _ in vv))
    return Decomposition(A.n, A.field, tags, tuple(base), tuple(col_tags))


def certificate_problems(A: Representation, dec: Decomposition) -> list[str]:
    """Every way ``dec`` fails to certify ``A`` (empty list when sound)."""
    problems: list[str] = []
    if dec.n != A.n or dec.field != A.field:
        return [f"certificate is for n={dec.n} over {dec.field}, representation is n={A.n} over {A.field}"]
    if len(dec.base_change) != A.n or len(dec.column_tags) != A.n:
        return ["certificate must list one base change and one tag row per vertex"]
    if [s.id for s in dec.summands] != list(range(len(dec.summands))):
        problems.append("summand ids must be 0..k-1 in order")
    by_id = {s.id: s.interval for s in dec.summands}
    owned: dict[int, list[int]] = {k: [] for k in by_id}
    inverses: list[Matrix | None] = []
    for x in range(1, A.n + 1):
        P, tags = dec.base_change[x - 1], dec.column_tags[x - 1]
        d = A.dim(x)
        if P.shape != (d, d) or P.field != A.field:
            problems.append(f"vertex {x}: base change has shape {P.shape}, expected {(d, d)}")
            inverses.append(None)
            continue
        if len(tags) != d:
            problems.append(f"vertex {x}: {len(tags)} column tags for {d} columns")
        try:
            inverses.append(inverse(P))
        except ZeroDivisionError:
            problems.append(f"vertex {x}: base change is singular")
            inverses.append(None)
        for t in tags:
            if t not in by_id:
                problems.append(f"vertex {x}: unknown summand id {t}")
            else:
                owned[t].append(x)
    for k, iv in by_id.items():
        if owned[k] != list(range(iv.a, iv.b + 1)):
            problems.append(f"summand {k} {iv} owns columns at vertices {owned[k]}")
    counts = dec.barcode.dims()
    if counts != A.dims:
        problems.append(f"barcode dimension vector {counts} differs from {A.dims}")
    if problems:
        return problems
    for i, (s, t, M) in enumerate(A.arrows(), start=1):
        C = mul_mat(mul_mat(inverses[t - 1], M), dec.base_change[s - 1])
        ts, tt = dec.column_tags[s - 1], dec.column_tags[t - 1]
        for r, row in enumerate(C.rows):
            for c, val in enumerate(row):
                want = 1 if tt[r] == ts[c] else 0
                if val != want:
                    problems.append(f"arrow {i} ({s}->{t}): entry ({r},{c}) is "
                                    f"{A.field.format_scalar(val)}, expected {want}")
    return problems


def verify_certificate(A: Representation, dec: Decomposition) -> None:
    """Raise :class:`CertificateError` unless ``dec`` is a sound certificate for ``A``."""
    problems = certificate_problems(A, dec)
    if problems:
        raise CertificateError("; ".join(problems[:5]) + (" ..." if len(problems) > 5 else ""))


# -- small cases --------------------------------------------------------------


def _single_vertex(A: Representation) -> list[_Summand]:
    d = A.dim(1)
    return [_Summand(Interval(1, 1), [_unit(A.field, d, i)]) for i in range(d)]


def _linear_map(A: Representation) -> list[_Summand]:
    _, _, M = A.arrow(1)
    forward = A.orientation.dirs[0] is FWD
    src, tgt = (1, 2) if forward else (2, 1)
    K = kernel_basis(M).basis
    P_src = extend_to_basis(K)
    complement = P_src.select_columns(list(range(K.ncols, P_src.ncols)))
    images = mul_mat(M, complement)
    P_tgt = extend_to_basis(images)
    out = [_Summand(Interval(src, src), [v]) for v in K.columns()]
    for b, fb in zip(complement.columns(), images.columns()):
        out.append(_Summand(Interval(1, 2), [b, fb] if forward else [fb, b]))
    out += [_Summand(Interval(tgt, tgt), [v]) for v in P_tgt.columns()[images.ncols:]]
    return out


def _normal_form(A: Representation) -> list[_Summand] | None:
    """Read off the summands if every arrow is already a 0/1 partial matching.

    Returns ``None`` when some arrow matrix is not of that shape.
    """
    links: list[dict[int, int]] = []  # per edge: column at x -> column at x+1
    for i, (s, t, M) in enumerate(A.arrows(), start=1):
        link: dict[int, int] = {}
        seen_cols: set[int] = set()
        for r, row in enumerate(M.rows):
            hit = -1
            for c, v in enumerate(row):
                if v:
                    if v != 1 or hit >= 0 or c in seen_cols:
                        return None
                    hit = c
                    seen_cols.add(c)
            if hit >= 0:
                # row index lives at t, column index at s
                if s == i:
                    link[hit] = r
                else:
                    link[r] = hit
        links.append(link)
    f = A.field
    out = []
    started: list[set[int]] = [set() for _ in range(A.n)]
    for x in range(1, A.n + 1):
        d = A.dim(x)
        for j in range(d):
            if j in started[x - 1]:
                continue
            vecs = [_unit(f, d, j)]
            y, col = x, j
            while y < A.n and col in links[y - 1]:
                col = links[y - 1][col]
                y += 1
                started[y - 1].add(col)
                vecs.append(_unit(f, A.dim(y), col))
            out.append(_Summand(Interval(x, y), vecs))
    return out


# -- A_3 with peak at the middle vertex ---------------------------------------


def _a3_peak(A: Representation) -> list[_Summand]:
    if A.n != 3:
        raise UsageError(f"expected an A_3 representation, got n={A.n}")
    if not is_peak(A, 2):
        raise UsageError("vertex 2 is not a peak")
    d2 = A.dim(2)
    M1, M2 = A.maps
    dirs = A.orientation.dirs
    if dirs == (BACK, BACK):
        mirrored = _a3_peak(reverse(A))
        return [_Summand(s.iv.mirrored(3), s.vecs[::-1]) for s in mirrored]

    if dirs == (FWD, BACK):
        # both maps into the peak, both injective
        pb = compatible_basis_two_subspaces(Subspace(d2, M1), Subspace(d2, M2))
    elif dirs == (FWD, FWD):
        # 1 -> 2 injective, 2 -> 3 surjective
        pb = compatible_basis_two_subspaces(Subspace(d2, M1), kernel_basis(M2))
    else:
        # both maps out of the peak, both surjective
        pb = compatible_basis_two_subspaces(kernel_basis(M1), kernel_basis(M2))

    def coords(M: Matrix, V: Matrix) -> list[Vec]:
        # preimages under the injective M
        return solve(M, V).columns() if V.ncols else []

    def image(M: Matrix, V: Matrix) -> list[Vec]:
        return mul_mat(M, V).columns() if V.ncols else []

    parts = {lab: pb[lab] for lab in Part}
    out: list[_Summand] = []
    # For each part: which end vertices its vectors reach, and how to get there.
    if dirs == (FWD, BACK):
        plan = {Part.BOTH: (coords, coords), Part.FIRST: (coords, None),
                Part.SECOND: (None, coords), Part.NEITHER: (None, None)}
    elif dirs == (FWD, FWD):
        plan = {Part.BOTH: (coords, None), Part.FIRST: (coords, image),
                Part.SECOND: (None, None), Part.NEITHER: (None, image)}
    else:
        plan = {Part.BOTH: (None, None), Part.FIRST: (None, image),
                Part.SECOND: (image, None), Part.NEITHER: (image, image)}
    for lab in Part:
        V = parts[lab]
        left, right = plan[lab]
        mids = V.columns()
        lvecs = left(M1, V) if left else [None] * len(mids)
        rvecs = right(M2, V) if right else [None] * len(mids)
        a = 1 if left else 2
        b = 3 if right else 2
        for lv, mv, rv in zip(lvecs, mids, rvecs):
            vecs = ([lv] if left else []) + [mv] + ([rv] if right else [])
            out.append(_Summand(Interval(a, b), vecs))
    return out


# -- collapsing the isomorphic middle ----------------------------------------


@dataclass(frozen=True)
class Collapse:
    """An A_3 representation standing in for a doubly-peaked A_n one.

    ``transport[x-1]`` maps the middle space of ``a3`` isomorphically onto the
    space at original vertex ``x`` for ``2 <= x <= n-1`` (identity at the
    ends).
    """

    n: int
    a3: Representation
    transport: tuple[Matrix, ...]

    def pull_back(self, iv: Interval) -> Interval:
        """Original interval of an A_3 interval of :attr:`a3`."""
        ends = {1: (1, 1), 2: (2, self.n - 1), 3: (self.n, self.n)}
        return Interval(ends[iv.a][0], ends[iv.b][1])


def collapse_middle(A: Representation) -> Collapse:
    """Trivialise the arrows between vertices 2 and ``n-1``.

    Requires every such arrow to be invertible, which holds when 2 and
    ``n-1`` are both peaks.
    """
    n = A.n
    if n < 3:
        raise UsageError(f"collapse_middle needs n >= 3, got {n}")
    f = A.field
    transport = [Matrix.identity(f, A.dim(x)) for x in range(1, n + 1)]
    if n == 3:
        return Collapse(3, A, tuple(transport))
    T = transport[1]
    for i in range(2, n - 1):
        s, t, M = A.arrow(i)
        if M.nrows != M.ncols or not is_invertible(M):
            raise InternalLogicError(f"middle arrow {i} ({s}->{t}) is not an isomorphism")
        T = mul_mat(M, T) if s == i else mul_mat(inverse(M), T)
        transport[i] = T
    s, t, M = A.arrow(n - 1)
    last = mul_mat(M, T) if s == n - 1 else mul_mat(inverse(T), M)
    o = A.orientation
    a3 = Representation(Orientation(3, (o.dirs[0], o.dirs[-1])),
                        (A.dim(1), A.dim(2), A.dim(n)), (A.maps[0], last), f)
    return Collapse(n, a3, tuple(transport))


def _doubly_peaked(A: Representation) -> list[_Summand]:
    col = collapse_middle(A)
    small = _a3_peak(col.a3)
    n = A.n
    if n == 3:
        return small
    f = A.field
    # push middle vectors through every transport matrix at once
    mid_vecs = [s.at(2) for s in small if 2 in s.iv]
    mid_mat = _to_matrix(f, A.dim(2), mid_vecs)
    per_vertex = {x: mul_mat(col.transport[x - 1], mid_mat).columns() if mid_vecs else []
                  for x in range(2, n)}
    out = []
    k = 0
    for s in small:
        vecs = []
        if 1 in s.iv:
            vecs.append(s.at(1))
        if 2 in s.iv:
            vecs.extend(per_vertex[x][k] for x in range(2, n))
            k += 1
        if 3 in s.iv:
            vecs.append(s.at(3))
        out.append(_Summand(col.pull_back(s.iv), vecs))
    return out


# -- splitting at a vertex ----------------------------------------------------


class _Split:
    """Result of splitting at ``x``: a peaked part and already-thin leftovers.

    ``rep`` is the part with peak ``x`` in its own coordinates, ``emb[y-1]``
    embeds it into the input space at ``y``.  ``left``/``right`` are the thin
    summands supported strictly left/right of ``x`` (input coordinates).
    """

    __slots__ = ("rep", "emb", "left", "right")

    def __init__(self, rep, emb, left, right):
        self.rep = rep
        self.emb = emb
        self.left = left
        self.right = right


def _routing(field: FieldSpec, ids_src: Sequence, ids_tgt: Sequence) -> Matrix:
    z, o = field.zero, field.one
    return Matrix(field, len(ids_tgt), len(ids_src),
                  tuple(tuple(o if a == b else z for a in ids_src) for b in ids_tgt))


def _split(A: Representation, x: int, glue: str) -> _Split:
    n = A.n
    if not 1 < x < n:
        raise UsageError(f"split vertex {x} must satisfy 1 < x < {n}")
    f = A.field
    lhs = _decompose(restrict(A, 1, x))
    rhs = _decompose(restrict(A, x, n))
    b_left = [s for s in lhs if s.iv.b == x]
    b_right = [s.shifted(x - 1) for s in rhs if s.iv.a == 1]
    c_part = [s for s in lhs if s.iv.b < x]
    d_part = [s.shifted(x - 1) for s in rhs if s.iv.a > 1]

    # basis of the peaked part at each vertex, with routing ids
    ids: list[list] = []
    vecs: list[list[Vec]] = []
    for y in range(1, n + 1):
        use_left = y < x or (y == x and glue == "left")
        side = b_left if use_left else b_right
        tag = "L" if use_left else "R"
        vv = _vertex_vectors(side, y)
        ids.append([(tag, k) for k, _ in vv])
        vecs.append([v for _, v in vv])

    glue_edge = x - 1 if glue == "right" else x
    maps = []
    for i in range(1, n):
        s, t, M = A.arrow(i)
        if i != glue_edge:
            maps.append(_routing(f, ids[s - 1], ids[t - 1]))
            continue
        # Q converts right-basis coordinates at x into left-basis coordinates.
        PL = _to_matrix(f, A.dim(x), [v for _, v in _vertex_vectors(b_left, x)])
        PR = _to_matrix(f, A.dim(x), [v for _, v in _vertex_vectors(b_right, x)])
        left_ids = [("L", k) for k, _ in _vertex_vectors(b_left, x)]
        right_ids = [("R", k) for k, _ in _vertex_vectors(b_right, x)]
        if glue == "right":
            if s == x - 1:      # x-1 -> x
                maps.append(mul_mat(solve(PR, PL), _routing(f, ids[s - 1], left_ids)))
            else:               # x -> x-1
                maps.append(mul_mat(_routing(f, left_ids, ids[t - 1]), solve(PL, PR)))
        else:
            if s == x:          # x -> x+1
                maps.append(mul_mat(_routing(f, right_ids, ids[t - 1]), solve(PR, PL)))
            else:               # x+1 -> x
                maps.append(mul_mat(solve(PL, PR), _routing(f, ids[s - 1], right_ids)))
    dims = tuple(len(v) for v in vecs)
    rep = Representation(A.orientation, dims, tuple(maps), f)
    emb = [_to_matrix(f, A.dim(y), vecs[y - 1]) for y in range(1, n + 1)]
    return _Split(rep, emb, c_part, d_part)


def _embed(field: FieldSpec, summands: Sequence[_Summand], emb: Sequence[Matrix]) -> list[_Summand]:
    """Rewrite summand vectors through per-vertex embedding matrices."""
    n = len(emb)
    moved: dict[int, list[Vec]] = {}
    for y in range(1, n + 1):
        vv = _vertex_vectors(summands, y)
        if vv:
            moved[y] = mul_mat(emb[y - 1], _to_matrix(field, emb[y - 1].ncols, [v for _, v in vv])).columns()
    cursor = {y: 0 for y in moved}
    out = []
    for s in summands:
        vecs = []
        for y in range(s.iv.a, s.iv.b + 1):
            vecs.append(moved[y][cursor[y]])
            cursor[y] += 1
        out.append(_Summand(s.iv, vecs))
    return out


def _decompose(A: Representation) -> list[_Summand]:
    n = A.n
    if not any(A.dims):
        return []
    if n == 1:
        return _single_vertex(A)
    quick = _normal_form(A)
    if quick is not None:
        return quick
    if n == 2:
        return _linear_map(A)
    f = A.field
    first = _split(A, 2, "right")
    leftovers = first.left + first.right
    part, emb = first.rep, first.emb
    if n > 3:
        second = _split(part, n - 1, "left")
        leftovers += _embed(f, second.left + second.right, emb)
        emb = [mul_mat(E, G) for E, G in zip(emb, second.emb)]
        part = second.rep
    core = _embed(f, _doubly_peaked(part), emb)
    return core + leftovers


# -- public operations --------------------------------------------------------


def decompose(A: Representation) -> Decomposition:
    """Decompose ``A`` into interval modules with a change-of-basis certificate."""
    return _finalize(A, _decompose(A))


def decompose_linear_map(A: Representation) -> Decomposition:
    """The ``n == 2`` case: kernel, a complement and its image, and a cokernel complement."""
    if A.n != 2:
        raise UsageError(f"decompose_linear_map needs n == 2, got {A.n}")
    return _finalize(A, _linear_map(A))


def decompose_a3_peak(A: Representation) -> Decomposition:
    """Decompose an A_3 representation whose middle vertex is a peak."""
    return _finalize(A, _a3_peak(A))


def decompose_collapsed(A: Representation) -> Decomposition:
    """Decompose a representation with peaks at 2 and ``n-1`` via :func:`collapse_middle`."""
    if A.n < 3:
        raise UsageError(f"need n >= 3, got {A.n}")
    return _finalize(A, _doubly_peaked(A))


@dataclass(frozen=True)
class PeakSplit:
    """``A = B + C + D`` as subspaces of each ``A_y`` (index ``y-1``)."""

    x: int
    B: tuple[Subspace, ...]
    C: tuple[Subspace, ...]
    D: tuple[Subspace, ...]
    peaked: Representation  # B in the coordinates given by the columns of B[y].basis

    def problems(self, A: Representation) -> list[str]:
        """Violations of the splitting invariants (empty when valid)."""
        out = []
        f = A.field
        for y in range(1, A.n + 1):
            d = A.dim(y)
            parts = [self.B[y - 1].basis, self.C[y - 1].basis, self.D[y - 1].basis]
            stacked = hstack(f, d, parts)
            if stacked.ncols != d or rank(stacked) != d:
                out.append(f"vertex {y}: B, C, D do not form a direct sum decomposition")
            if y >= self.x and self.C[y - 1].dim:
                out.append(f"vertex {y}: C is nonzero")
            if y <= self.x and self.D[y - 1].dim:
                out.append(f"vertex {y}: D is nonzero")
        for s, t, M in A.arrows():
            for name, fam in (("B", self.B), ("C", self.C), ("D", self.D)):
                if fam[s - 1].dim and not fam[t - 1].contains(mul_mat(M, fam[s - 1].basis)):
                    out.append(f"arrow {s}->{t} does not preserve {name}")
        if self.peaked.dims != tuple(b.dim for b in self.B):
            out.append("peaked representation does not match B")
        else:
            for (s, t, M), (_, _, MB) in zip(A.arrows(), self.peaked.arrows()):
                if mul_mat(M, self.B[s - 1].basis) != mul_mat(self.B[t - 1].basis, MB):
                    out.append(f"peaked map on arrow {s}->{t} does not match A")
            if not is_peak(self.peaked, self.x):
                out.append(f"B does not have {self.x} as a peak")
        return out


def peak_split(A: Representation, x: int) -> PeakSplit:
    """Write ``A = B + C + D`` with ``B`` peaked at ``x``, ``C`` left of ``x``, ``D`` right of it."""
    if not 1 < x < A.n:
        raise UsageError(f"split vertex {x} must satisfy 1 < x < {A.n}")
    sp = _split(A, x, "right")
    f = A.field

    def family(summands: Sequence[_Summand]) -> tuple[Subspace, ...]:
        return tuple(Subspace(A.dim(y), _to_matrix(f, A.dim(y), [v for _, v in _vertex_vectors(summands, y)]))
                     for y in range(1, A.n + 1))

    B = tuple(Subspace(A.dim(y), sp.emb[y - 1]) for y in range(1, A.n + 1))
    return PeakSplit(x, B, family(sp.left), family(sp.right), sp.rep)
