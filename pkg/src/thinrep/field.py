"""Exact scalars: prime fields GF(p) and the rationals.

Matrices store *raw* canonical values (``int`` in ``[0, p)``, or a reduced
``gmpy2.mpq`` with positive denominator) and call the raw helpers on
:class:`FieldSpec` directly.
:class:`FieldScalar` wraps a raw value together with its field for callers
who want checked, self-describing arithmetic.
"""

from __future__ import annotations

import re
from random import Random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from .errors import FieldMismatchError, ParseError, UsageError

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Rational = Fraction

Raw = Union[int, Fraction, "Rational"]

# Largest admissible modulus: products of two residues must fit in a signed
# 64-bit word for the compiled kernels.
MAX_PRIME = 2**31 - 1


def is_prime(n: int) -> bool:
    """Trial division; moduli are bounded by ``MAX_PRIME``."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Which field a scalar lives in: ``GF(p)`` when ``p`` is set, else Q."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if isinstance(self.p, bool) or not isinstance(self.p, int):
                raise UsageError(f"modulus must be an integer, got {self.p!r}")
            if not is_prime(self.p):
                raise UsageError(f"modulus {self.p} is not prime")
            if self.p > MAX_PRIME:
                raise UsageError(f"modulus {self.p} exceeds {MAX_PRIME}")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(None)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    # -- text form -----------------------------------------------------------

    _SPEC_RE = re.compile(r"^(?:GF\((\d+)\)|GF(\d+)|F_?(\d+)|(\d+))$", re.IGNORECASE)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Accept ``Q``/``QQ``/``rational`` or ``GF(p)``/``GFp``/``Fp``/``F_p``/``p``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ", "RATIONAL"):
            return cls(None)
        m = cls._SPEC_RE.match(t)
        if not m:
            raise ParseError(f"unrecognised field {text!r}")
        p = int(next(g for g in m.groups() if g is not None))
        try:
            return cls(p)
        except UsageError as exc:
            raise ParseError(str(exc)) from None

    # -- raw arithmetic on canonical representatives ------------------------

    @property
    def zero(self) -> Raw:
        return 0 if self.p is not None else Rational(0)

    @property
    def one(self) -> Raw:
        return 1 if self.p is not None else Rational(1)

    def convert(self, value: Any) -> Raw:
        """Canonicalise an int, Fraction, FieldScalar or scalar string."""
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} scalar used over {self}")
            return value.value
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value % self.p if self.p is not None else Rational(value)
        if isinstance(value, (Fraction, Rational)):
            if self.p is None:
                return Rational(int(value.numerator), int(value.denominator))
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return int(value.numerator) * pow(int(value.denominator), -1, self.p) % self.p
        raise UsageError(f"cannot convert {value!r} to {self}")

    def add(self, a: Raw, b: Raw) -> Raw:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        return (a - b) % self.p if self.p is not None else a - b

    def neg(self, a: Raw) -> Raw:
        return -a % self.p if self.p is not None else -a

    def mul(self, a: Raw, b: Raw) -> Raw:
        return a * b % self.p if self.p is not None else a * b

    def inv(self, a: Raw) -> Raw:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p is not None else 1 / a

    def random(self, rng: Random) -> Raw:
        """A pseudo-random element.

        Uniform over GF(p).  Over Q the numerator is drawn from [-9, 9] and the
        denominator from [1, 9]; there is no uniform distribution on Q.
        """
        if self.p is not None:
            return rng.randrange(self.p)
        return Rational(rng.randint(-9, 9), rng.randint(1, 9))

    # -- scalar text encoding ------------------------------------------------

    def format_scalar(self, a: Raw) -> str:
        if self.p is not None:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    _INT_RE = re.compile(r"^[+-]?\d+$")

    def parse_scalar(self, text: str) -> Raw:
        t = text.strip()
        if self.p is not None:
            if not self._INT_RE.match(t):
                raise ParseError(f"expected an integer residue, got {text!r}")
            v = int(t)
            if not 0 <= v < self.p:
                raise ParseError(f"residue {v} outside [0, {self.p})")
            return v
        num, sep, den = t.partition("/")
        if not self._INT_RE.match(num) or (sep and not self._INT_RE.match(den)):
            raise ParseError(f"expected a rational 'a' or 'a/b', got {text!r}")
        if sep and int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Rational(int(num), int(den) if sep else 1)


GF2 = FieldSpec(2)
QQ = FieldSpec(None)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


@dataclass(frozen=True)
class FieldScalar:
    """A field element paired with its field; equality compares canonical forms."""

    value: Raw
    field: FieldSpec

    @classmethod
    def of(cls, field: FieldSpec, value: Any) -> FieldScalar:
        return cls(field.convert(value), field)

    def _other(self, other: Any) -> Raw:
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldScalar(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return FieldScalar(self.field.sub(self._other(other), self.value), self.field)

    def __mul__(self, other):
        return FieldScalar(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FieldScalar(self.field.inv(self._other(other)), self.field)

    def __neg__(self):
        return FieldScalar(self.field.neg(self.value), self.field)

    def __pow__(self, k: int):
        if self.field.p is not None:
            return FieldScalar(pow(self.value, k, self.field.p), self.field)
        return FieldScalar(self.value**k, self.field)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return self.field.format_scalar(self.value)


def _check(a: FieldScalar, b: FieldScalar) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    return a.field


def add(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    f = _check(a, b)
    return FieldScalar(f.add(a.value, b.value), f)


def sub(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    f = _check(a, b)
    return FieldScalar(f.sub(a.value, b.value), f)


def mul(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    f = _check(a, b)
    return FieldScalar(f.mul(a.value, b.value), f)


def neg(a: FieldScalar) -> FieldScalar:
    return FieldScalar(a.field.neg(a.value), a.field)


def inv(a: FieldScalar) -> FieldScalar:
    return FieldScalar(a.field.inv(a.value), a.field)


def is_zero(a: FieldScalar) -> bool:
    return not a.value
