"""Pure-Python GF(p) kernels; the reference for the compiled ``_kernels``.

Both modules expose the same two functions with identical semantics, so the
backend selector can swap them freely.
"""

from __future__ import annotations

from typing import Sequence

NAME = "python"


def rref_modp(rows: Sequence[Sequence[int]], npivot: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form over GF(p).

    Only the first ``npivot`` columns are eligible as pivots; any trailing
    columns are carried along (used for ``[M | I]`` augmentation).  The pivot
    is the first nonzero entry of the lowest remaining column.
    """
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
            iv = pow(row[c], -1, p)
            row = a[r] = [x * iv % p for x in row]
        for i in range(m):
            if i != r:
                f = a[i][c]
                if f:
                    ai = a[i]
                    a[i] = ai[:c] + [(x - f * y) % p for x, y in zip(ai[c:], row[c:])]
        pivots.append(c)
        r += 1
    return a, pivots


def matmul_modp(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """``a @ b`` over GF(p); ``ncols`` is the column count of ``b``."""
    out = []
    for arow in a:
        acc = [0] * ncols
        for k, x in enumerate(arow):
            if x:
                brow = b[k]
                for j in range(ncols):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.append([v % p for v in acc])
    return out
