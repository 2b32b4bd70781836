"""Interval decomposition of A_n quiver representations over exact fields."""

from .decompose import (
    Collapse,
    Decomposition,
    PeakSplit,
    SummandTag,
    certificate_problems,
    collapse_middle,
    decompose,
    decompose_a3_peak,
    decompose_linear_map,
    peak_split,
    verify_certificate,
)
from .errors import (
    CertificateError,
    FieldMismatchError,
    InternalLogicError,
    NoSolution,
    ParseError,
    ThinrepError,
    UsageError,
)
from .field import GF, GF2, QQ, FieldScalar, FieldSpec
from .linalg import Matrix, PartitionedBasis, Subspace
from .quiver import (
    Barcode,
    Direction,
    Interval,
    Orientation,
    Representation,
    apply_base_change,
    direct_sum,
    is_peak,
    restrict,
    reverse,
    thin,
)

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "CertificateError",
    "Collapse",
    "Decomposition",
    "Direction",
    "FieldMismatchError",
    "FieldScalar",
    "FieldSpec",
    "GF",
    "GF2",
    "InternalLogicError",
    "Interval",
    "Matrix",
    "NoSolution",
    "Orientation",
    "ParseError",
    "PartitionedBasis",
    "PeakSplit",
    "QQ",
    "Representation",
    "Subspace",
    "SummandTag",
    "ThinrepError",
    "UsageError",
    "apply_base_change",
    "certificate_problems",
    "collapse_middle",
    "decompose",
    "decompose_a3_peak",
    "decompose_linear_map",
    "direct_sum",
    "is_peak",
    "peak_split",
    "restrict",
    "reverse",
    "thin",
    "verify_certificate",
]
