"""JSON documents for instances, certificates and filtration pairs.

Scalars are always JSON strings in the field's text encoding (``"3"``,
``"-2/7"``), so a float can never sneak into an exact computation.
Matrices are flat row-major string arrays whose shape is implied by the
surrounding dimension data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .decompose import Decomposition, SummandTag
from .errors import ParseError, UsageError
from .field import FieldSpec
from .linalg import Matrix, Subspace, image_basis
from .quiver import Direction, Interval, Orientation, Representation


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    return doc


def _require(doc: dict, keys: tuple[str, ...]) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}")
    extra = sorted(set(doc) - set(keys))
    if extra:
        raise ParseError(f"unknown field(s): {', '.join(extra)}")


def _count(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"expected a non-negative integer, got {value!r}", path=path)
    return value


def _list(value: Any, path: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {type(value).__name__}", path=path)
    if length is not None and len(value) != length:
        raise ParseError(f"expected {length} entries, got {len(value)}", path=path)
    return value


def _field(value: Any) -> FieldSpec:
    if not isinstance(value, str):
        raise ParseError("field must be a string such as \"GF(5)\" or \"Q\"", path="field")
    try:
        return FieldSpec.parse(value)
    except ParseError as exc:
        raise ParseError(str(exc), path="field") from None


def _matrix(field: FieldSpec, value: Any, nrows: int, ncols: int, path: str) -> Matrix:
    entries = _list(value, path)
    if len(entries) != nrows * ncols:
        raise ParseError(f"expected {nrows}x{ncols} = {nrows * ncols} entries, got {len(entries)}", path=path)
    raw = []
    for k, e in enumerate(entries):
        if not isinstance(e, str):
            raise ParseError(f"scalars must be strings, got {e!r}", path=f"{path}[{k}]")
        try:
            raw.append(field.parse_scalar(e))
        except ParseError as exc:
            raise ParseError(str(exc), path=f"{path}[{k}]") from None
    return Matrix(field, nrows, ncols, tuple(tuple(raw[i * ncols:(i + 1) * ncols]) for i in range(nrows)))


def _inline(value: Any) -> str:
    return json.dumps(value)


def _rows(items: list[str], indent: str = "    ") -> str:
    if not items:
        return "[]"
    return "[\n" + ",\n".join(indent + it for it in items) + "\n" + indent[:-2] + "]"


# -- instances ------------------------------------------------------------------

_INSTANCE_KEYS = ("field", "n", "orientation", "dims", "maps")


def parse_instance(text: str) -> Representation:
    doc = _load(text)
    _require(doc, _INSTANCE_KEYS)
    field = _field(doc["field"])
    n = _count(doc["n"], "n")
    if n < 1:
        raise ParseError("need at least one vertex", path="n")
    tokens = _list(doc["orientation"], "orientation", n - 1)
    dirs = []
    for i, tok in enumerate(tokens):
        if tok not in ("f", "b"):
            raise ParseError(f"expected \"f\" or \"b\", got {tok!r}", path=f"orientation[{i}]")
        dirs.append(Direction(tok))
    orientation = Orientation(n, tuple(dirs))
    dims = tuple(_count(d, f"dims[{i}]") for i, d in enumerate(_list(doc["dims"], "dims", n)))
    maps = []
    for i, m in enumerate(_list(doc["maps"], "maps", n - 1), start=1):
        s, t = orientation.arrow(i)
        maps.append(_matrix(field, m, dims[t - 1], dims[s - 1], f"maps[{i - 1}]"))
    return Representation(orientation, dims, tuple(maps), field)


def emit_instance(A: Representation) -> str:
    maps = [_inline(M.to_flat_strings()) for M in A.maps]
    return (
        "{\n"
        f"  \"field\": {_inline(str(A.field))},\n"
        f"  \"n\": {A.n},\n"
        f"  \"orientation\": {_inline([d.value for d in A.orientation.dirs])},\n"
        f"  \"dims\": {_inline(list(A.dims))},\n"
        f"  \"maps\": {_rows(maps)}\n"
        "}\n"
    )


# -- certificates ---------------------------------------------------------------

_CERT_KEYS = ("field", "n", "dims", "summands", "base_change", "column_tags")


def emit_certificate(dec: Decomposition) -> str:
    dims = [P.nrows for P in dec.base_change]
    summands = [_inline([s.interval.a, s.interval.b]) for s in dec.summands]
    base = [_inline(P.to_flat_strings()) for P in dec.base_change]
    tags = [_inline(list(t)) for t in dec.column_tags]
    return (
        "{\n"
        f"  \"field\": {_inline(str(dec.field))},\n"
        f"  \"n\": {dec.n},\n"
        f"  \"dims\": {_inline(dims)},\n"
        f"  \"summands\": {_rows(summands)},\n"
        f"  \"base_change\": {_rows(base)},\n"
        f"  \"column_tags\": {_rows(tags)}\n"
        "}\n"
    )


def parse_certificate(text: str) -> Decomposition:
    doc = _load(text)
    _require(doc, _CERT_KEYS)
    field = _field(doc["field"])
    n = _count(doc["n"], "n")
    dims = [_count(d, f"dims[{i}]") for i, d in enumerate(_list(doc["dims"], "dims", n))]
    summands = []
    for k, pair in enumerate(_list(doc["summands"], "summands")):
        a, b = (_count(v, f"summands[{k}]") for v in _list(pair, f"summands[{k}]", 2))
        try:
            iv = Interval(a, b)
        except UsageError as exc:
            raise ParseError(str(exc), path=f"summands[{k}]") from None
        summands.append(SummandTag(k, iv))
    base = tuple(_matrix(field, m, dims[x], dims[x], f"base_change[{x}]")
                 for x, m in enumerate(_list(doc["base_change"], "base_change", n)))
    tags = []
    for x, row in enumerate(_list(doc["column_tags"], "column_tags", n)):
        tags.append(tuple(_count(t, f"column_tags[{x}]") for t in _list(row, f"column_tags[{x}]", dims[x])))
    return Decomposition(n, field, tuple(summands), base, tuple(tags))


# -- filtration pairs -------------------------------------------------------------

_FILT_KEYS = ("field", "dim", "chain1", "chain2")


@dataclass(frozen=True)
class Filtrations:
    """Two nested chains of subspaces of ``field^dim`` (bases as columns)."""

    field: FieldSpec
    dim: int
    chain1: tuple[Subspace, ...]
    chain2: tuple[Subspace, ...]

    def __post_init__(self):
        for name, chain in (("chain1", self.chain1), ("chain2", self.chain2)):
            for i, U in enumerate(chain):
                if U.ambient_dim != self.dim:
                    raise UsageError(f"{name}[{i}] lives in dimension {U.ambient_dim}, expected {self.dim}")
                if i and not chain[i].contains(chain[i - 1].basis):
                    raise UsageError(f"{name}[{i - 1}] is not contained in {name}[{i}]")


def parse_filtrations(text: str) -> Filtrations:
    doc = _load(text)
    _require(doc, _FILT_KEYS)
    field = _field(doc["field"])
    dim = _count(doc["dim"], "dim")
    chains = []
    for name in ("chain1", "chain2"):
        chain = []
        for i, vecs in enumerate(_list(doc[name], name)):
            path = f"{name}[{i}]"
            cols = []
            for j, v in enumerate(_list(vecs, path)):
                cols.append(_matrix(field, v, dim, 1, f"{path}[{j}]").column(0))
            M = Matrix(field, dim, len(cols), tuple(zip(*cols)) if cols else tuple(() for _ in range(dim)))
            chain.append(image_basis(M))
        chains.append(tuple(chain))
    try:
        return Filtrations(field, dim, chains[0], chains[1])
    except UsageError as exc:
        raise ParseError(str(exc)) from None


def emit_filtrations(filt: Filtrations) -> str:
    def chain(ch: tuple[Subspace, ...]) -> str:
        return _rows([_inline([[filt.field.format_scalar(x) for x in c] for c in U.basis.columns()])
                      for U in ch])

    return (
        "{\n"
        f"  \"field\": {_inline(str(filt.field))},\n"
        f"  \"dim\": {filt.dim},\n"
        f"  \"chain1\": {chain(filt.chain1)},\n"
        f"  \"chain2\": {chain(filt.chain2)}\n"
        "}\n"
    )
