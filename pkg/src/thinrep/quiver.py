"""Representations of A_n quivers with arbitrary orientation.

Vertices are numbered ``1..n``.  Edge ``i`` (also 1-based) joins vertices
``i`` and ``i+1``; its direction is ``dirs[i-1]``.  An arrow ``s -> t``
carries a ``dims[t] x dims[s]`` matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Mapping, Sequence

from .errors import FieldMismatchError, UsageError
from .field import FieldSpec
from .linalg import Matrix, block_diag, inverse, mul_mat, rank


class Direction(enum.Enum):
    FORWARD = "f"   # i -> i+1
    BACKWARD = "b"  # i+1 -> i

    def flipped(self) -> Direction:
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


F = Direction.FORWARD
B = Direction.BACKWARD


@dataclass(frozen=True)
class Orientation:
    n: int
    dirs: tuple[Direction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise UsageError(f"need at least one vertex, got n={self.n}")
        object.__setattr__(self, "dirs", tuple(Direction(d) for d in self.dirs))
        if len(self.dirs) != self.n - 1:
            raise UsageError(f"{self.n} vertices need {self.n - 1} directions, got {len(self.dirs)}")

    @classmethod
    def parse(cls, text: str) -> Orientation:
        """From a string of ``f``/``b`` characters, e.g. ``"fb"`` for 1->2<-3."""
        t = text.strip().lower()
        if any(c not in "fb" for c in t):
            raise UsageError(f"orientation must consist of 'f' and 'b', got {text!r}")
        return cls(len(t) + 1, tuple(Direction(c) for c in t))

    @classmethod
    def equioriented(cls, n: int) -> Orientation:
        return cls(n, (F,) * (n - 1))

    def __str__(self) -> str:
        return "".join(d.value for d in self.dirs)

    def arrow(self, i: int) -> tuple[int, int]:
        """(source, target) of edge ``i``."""
        return (i, i + 1) if self.dirs[i - 1] is F else (i + 1, i)

    def restrict(self, lo: int, hi: int) -> Orientation:
        return Orientation(hi - lo + 1, self.dirs[lo - 1:hi - 1])

    def reversed(self) -> Orientation:
        return Orientation(self.n, tuple(d.flipped() for d in reversed(self.dirs)))


@dataclass(frozen=True, order=True)
class Interval:
    a: int
    b: int

    def __post_init__(self):
        if not 1 <= self.a <= self.b:
            raise UsageError(f"invalid interval [{self.a},{self.b}]")

    def __contains__(self, x: int) -> bool:
        return self.a <= x <= self.b

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"

    def mirrored(self, n: int) -> Interval:
        return Interval(n + 1 - self.b, n + 1 - self.a)


def all_intervals(n: int) -> list[Interval]:
    return [Interval(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]


@dataclass(frozen=True)
class Barcode:
    """Multiset of intervals inside ``1..n``; zero multiplicities are dropped."""

    n: int
    items: Mapping[Interval, int] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for iv, m in sorted(self.items.items()):
            if not isinstance(iv, Interval):
                iv = Interval(*iv)
            if iv.b > self.n:
                raise UsageError(f"interval {iv} exceeds n={self.n}")
            if m < 0:
                raise UsageError(f"negative multiplicity {m} for {iv}")
            if m:
                clean[iv] = clean.get(iv, 0) + m
        object.__setattr__(self, "items", clean)

    def __getitem__(self, iv: Interval | tuple[int, int]) -> int:
        if not isinstance(iv, Interval):
            iv = Interval(*iv)
        return self.items.get(iv, 0)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.n == other.n and dict(self.items) == dict(other.items)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.items.items())))

    def __add__(self, other: Barcode) -> Barcode:
        if self.n != other.n:
            raise UsageError(f"barcodes on {self.n} and {other.n} vertices")
        merged = dict(self.items)
        for iv, m in other.items.items():
            merged[iv] = merged.get(iv, 0) + m
        return Barcode(self.n, merged)

    def mirrored(self) -> Barcode:
        return Barcode(self.n, {iv.mirrored(self.n): m for iv, m in self.items.items()})

    def dims(self) -> tuple[int, ...]:
        """Dimension vector of the direct sum of the listed interval modules."""
        d = [0] * self.n
        for iv, m in self.items.items():
            for x in range(iv.a, iv.b + 1):
                d[x - 1] += m
        return tuple(d)

    def to_text(self) -> str:
        return "".join(f"{iv.a} {iv.b} {m}\n" for iv, m in self.items.items())

    @classmethod
    def parse(cls, n: int, text: str) -> Barcode:
        """From ``"1-4:1,2-3:2"`` (multiplicity defaults to 1)."""
        items: dict[Interval, int] = {}
        for tok in filter(None, (t.strip() for t in text.split(","))):
            span, _, mult = tok.partition(":")
            a, _, b = span.partition("-")
            try:
                iv = Interval(int(a), int(b or a))
                m = int(mult) if mult else 1
            except ValueError as exc:
                raise UsageError(f"bad barcode token {tok!r}: {exc}") from None
            items[iv] = items.get(iv, 0) + m
        return cls(n, items)


@dataclass(frozen=True)
class Representation:
    orientation: Orientation
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    field: FieldSpec

    def __post_init__(self):
        o = self.orientation
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.dims) != o.n:
            raise UsageError(f"expected {o.n} dimensions, got {len(self.dims)}")
        if any(d < 0 for d in self.dims):
            raise UsageError(f"negative dimension in {self.dims}")
        if len(self.maps) != o.n - 1:
            raise UsageError(f"expected {o.n - 1} maps, got {len(self.maps)}")
        for i, M in enumerate(self.maps, start=1):
            if M.field != self.field:
                raise FieldMismatchError(f"map {i} is over {M.field}, representation over {self.field}")
            s, t = o.arrow(i)
            want = (self.dims[t - 1], self.dims[s - 1])
            if M.shape != want:
                raise UsageError(f"map {i} ({s}->{t}) has shape {M.shape}, expected {want}")

    @property
    def n(self) -> int:
        return self.orientation.n

    def dim(self, x: int) -> int:
        return self.dims[x - 1]

    def arrow(self, i: int) -> tuple[int, int, Matrix]:
        s, t = self.orientation.arrow(i)
        return s, t, self.maps[i - 1]

    def arrows(self) -> Iterator[tuple[int, int, Matrix]]:
        for i in range(1, self.n):
            yield self.arrow(i)

    @classmethod
    def zero(cls, orientation: Orientation, field: FieldSpec, dims: Sequence[int] | None = None) -> Representation:
        """All-zero maps on the given dimension vector (default all zero)."""
        dims = tuple(dims) if dims is not None else (0,) * orientation.n
        maps = []
        for i in range(1, orientation.n):
            s, t = orientation.arrow(i)
            maps.append(Matrix.zeros(field, dims[t - 1], dims[s - 1]))
        return cls(orientation, dims, tuple(maps), field)

    @classmethod
    def build(cls, orientation: Orientation | str, field: FieldSpec, dims: Sequence[int],
              maps: Sequence[Sequence[Sequence[object]]]) -> Representation:
        """Convenience constructor from nested row lists (shapes inferred from dims)."""
        if isinstance(orientation, str):
            orientation = Orientation.parse(orientation)
        mats = []
        for i, rows in enumerate(maps, start=1):
            s, t = orientation.arrow(i)
            mats.append(Matrix.from_rows(field, rows, ncols=dims[s - 1]))
        return cls(orientation, tuple(dims), tuple(mats), field)


def thin(orientation: Orientation, interval: Interval, field: FieldSpec) -> Representation:
    """The interval module supported on ``interval`` (identity maps inside)."""
    if not isinstance(interval, Interval):
        interval = Interval(*interval)
    if interval.b > orientation.n:
        raise UsageError(f"interval {interval} exceeds n={orientation.n}")
    dims = tuple(1 if x in interval else 0 for x in range(1, orientation.n + 1))
    maps = []
    for i in range(1, orientation.n):
        s, t = orientation.arrow(i)
        if dims[s - 1] and dims[t - 1]:
            maps.append(Matrix.identity(field, 1))
        else:
            maps.append(Matrix.zeros(field, dims[t - 1], dims[s - 1]))
    return Representation(orientation, dims, tuple(maps), field)


def direct_sum(*reps: Representation) -> Representation:
    """Block-diagonal sum, earlier summands first."""
    if not reps:
        raise UsageError("direct_sum needs at least one summand")
    first = reps[0]
    for r in reps[1:]:
        if r.orientation != first.orientation:
            raise UsageError("direct summands have different orientations")
        if r.field != first.field:
            raise FieldMismatchError(f"{first.field} vs {r.field}")
    dims = tuple(sum(r.dims[x] for r in reps) for x in range(first.n))
    maps = tuple(block_diag(first.field, [r.maps[i] for r in reps]) for i in range(first.n - 1))
    return Representation(first.orientation, dims, maps, first.field)


def barcode_module(orientation: Orientation, barcode: Barcode, field: FieldSpec) -> Representation:
    """Direct sum of interval modules in sorted interval order."""
    parts = [thin(orientation, iv, field) for iv, m in barcode.items.items() for _ in range(m)]
    if not parts:
        return Representation.zero(orientation, field)
    return direct_sum(*parts)


def apply_base_change(A: Representation, P: Sequence[Matrix],
                      P_inv: Sequence[Matrix] | None = None) -> Representation:
    """Conjugate every arrow ``s -> t`` to ``P[t]^-1 @ M @ P[s]``.

    Columns of ``P[x]`` are the new basis of the space at ``x``.
    """
    if len(P) != A.n:
        raise UsageError(f"need {A.n} base-change matrices, got {len(P)}")
    for x, Px in enumerate(P, start=1):
        if Px.shape != (A.dim(x), A.dim(x)):
            raise UsageError(f"base change at vertex {x} has shape {Px.shape}, expected {(A.dim(x),) * 2}")
        if Px.field != A.field:
            raise FieldMismatchError(f"base change at vertex {x} is over {Px.field}")
    if P_inv is None:
        try:
            P_inv = [inverse(Px) for Px in P]
        except ZeroDivisionError:
            raise UsageError("base change matrix is not invertible") from None
    maps = tuple(mul_mat(mul_mat(P_inv[t - 1], M), P[s - 1]) for s, t, M in A.arrows())
    return Representation(A.orientation, A.dims, maps, A.field)


def restrict(A: Representation, lo: int, hi: int) -> Representation:
    """The subrepresentation on vertices ``lo..hi``, renumbered from 1."""
    if not 1 <= lo <= hi <= A.n:
        raise UsageError(f"bad window [{lo},{hi}] for n={A.n}")
    return Representation(A.orientation.restrict(lo, hi), A.dims[lo - 1:hi], A.maps[lo - 1:hi - 1], A.field)


def reverse(A: Representation) -> Representation:
    """Relabel vertex ``x`` as ``n+1-x``; matrices are reattached, not transposed."""
    return Representation(A.orientation.reversed(), A.dims[::-1], A.maps[::-1], A.field)


def is_injective(M: Matrix) -> bool:
    return rank(M) == M.ncols


def is_surjective(M: Matrix) -> bool:
    return rank(M) == M.nrows


def is_peak(A: Representation, x: int) -> bool:
    """Arrows pointing toward ``x`` are injective, arrows pointing away are surjective."""
    if not 1 <= x <= A.n:
        raise UsageError(f"vertex {x} outside 1..{A.n}")
    for s, t, M in A.arrows():
        r = rank(M)
        toward = abs(x - t) < abs(x - s)
        if toward and r != M.ncols:
            return False
        if not toward and r != M.nrows:
            return False
    return True


def peaks(A: Representation) -> list[int]:
    return [x for x in range(1, A.n + 1) if is_peak(A, x)]

