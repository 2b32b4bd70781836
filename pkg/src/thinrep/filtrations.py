"""A basis compatible with two filtrations of one vector space.

The chains ``U_1 <= ... <= U_m`` and ``U'_1 <= ... <= U'_m'`` of ``V`` are
laid out as a representation of the quiver

    1 -> 2 -> ... -> m -> w <- m' <- ... <- 2' <- 1'

with ``V`` at ``w`` and inclusions as maps.  Every summand of its interval
decomposition passes through ``w``, and the base change at ``w`` is the
basis we want: a vector lies in ``U_i`` exactly when its summand reaches
vertex ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import decompose
from .field import FieldSpec
from .formats import Filtrations
from .linalg import Matrix, hstack, rank, solve
from .quiver import Direction, Orientation, Representation


def filtration_quiver(filt: Filtrations) -> Representation:
    """The A_{m+m'+1} representation; ``V`` sits at vertex ``m+1``."""
    f = filt.field
    m, mp = len(filt.chain1), len(filt.chain2)
    V = Matrix.identity(f, filt.dim)
    left = [U.basis for U in filt.chain1] + [V]
    right = [U.basis for U in reversed(filt.chain2)]  # U'_m', ..., U'_1
    maps = []
    for i in range(m):
        maps.append(solve(left[i + 1], left[i]))
    prev = V
    for S in right:
        maps.append(solve(prev, S))
        prev = S
    dirs = (Direction.FORWARD,) * m + (Direction.BACKWARD,) * mp
    dims = tuple(S.ncols for S in left) + tuple(S.ncols for S in right)
    return Representation(Orientation(m + mp + 1, dirs), dims, tuple(maps), f)


@dataclass(frozen=True)
class CompatibleBasis:
    """Basis vectors of ``V`` (columns) and, per vector, the subspaces containing it.

    Labels are ``U1..Um`` for the first chain and ``U'1..U'm'`` for the second.
    """

    field: FieldSpec
    vectors: Matrix
    memberships: tuple[frozenset[str], ...]

    def members(self, label: str) -> Matrix:
        return self.vectors.select_columns([j for j, tags in enumerate(self.memberships) if label in tags])

    def problems(self, filt: Filtrations) -> list[str]:
        """Exact rank checks that every subspace is spanned by its tagged vectors."""
        out = []
        d = filt.dim
        if self.vectors.shape != (d, d) or rank(self.vectors) != d:
            out.append("vectors do not form a basis of V")
            return out
        named = [(f"U{i}", U) for i, U in enumerate(filt.chain1, start=1)]
        named += [(f"U'{j}", U) for j, U in enumerate(filt.chain2, start=1)]
        for label, U in named:
            T = self.members(label)
            if rank(hstack(self.field, d, [U.basis, T])) != U.dim:
                out.append(f"a vector tagged {label} lies outside {label}")
            if rank(T) != U.dim:
                out.append(f"vectors tagged {label} span dimension {rank(T)}, expected {U.dim}")
        return out

    def to_text(self) -> str:
        fmt = self.field.format_scalar
        lines = []
        for j, tags in enumerate(self.memberships):
            vec = " ".join(fmt(x) for x in self.vectors.column(j))
            lines.append(f"[{vec}] : {' '.join(sorted(tags, key=_label_key)) or '-'}\n")
        return "".join(lines)


def _label_key(label: str) -> tuple[int, int]:
    return (1, int(label[2:])) if label.startswith("U'") else (0, int(label[1:]))


def refine_filtrations(filt: Filtrations) -> CompatibleBasis:
    m, mp = len(filt.chain1), len(filt.chain2)
    A = filtration_quiver(filt)
    dec = decompose(A)
    w = m + 1
    n = m + mp + 1
    by_id = {s.id: s.interval for s in dec.summands}
    memberships = []
    for sid in dec.column_tags[w - 1]:
        iv = by_id[sid]
        tags = {f"U{i}" for i in range(1, m + 1) if i in iv}
        # U'_j sits at vertex n + 1 - j
        tags |= {f"U'{j}" for j in range(1, mp + 1) if (n + 1 - j) in iv}
        memberships.append(frozenset(tags))
    return CompatibleBasis(filt.field, dec.base_change[w - 1], tuple(memberships))
