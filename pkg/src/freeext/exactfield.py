"""Exact coefficient fields: the rationals and prime fields F_p.

Rational scalars are :class:`fractions.Fraction` (arbitrary precision, always
in lowest terms).  Prime-field scalars are :class:`Mod` residues.  Plain
``int`` values are accepted wherever a scalar is expected.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields meet in one operation."""


class SmallCharacteristicWarning(UserWarning):
    """char k is positive but not larger than a socle degree in use."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Mod:
    """Residue class modulo a prime ``p``, stored in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} and F_{other.p} scalars mixed")
            return other.value
        if isinstance(other, int):
            return other
        raise FieldMismatchError(f"cannot combine F_{self.p} scalar with {type(other).__name__}")

    def __add__(self, other):
        return Mod(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Mod(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Mod(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Mod(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other) % self.p
        if d == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Mod(self.value * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Mod(self._coerce(other), self.p) / self

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"division by zero in F_{self.p}")
            return Mod(pow(self.value, e, self.p), self.p)
        return Mod(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Mod, int]

_SCALAR_RE = re.compile(r"\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class FieldSpec:
    """The base field k: ``p == 0`` means the rationals, otherwise F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x) -> Scalar:
        """Convert an int, Fraction, Mod or scalar literal into this field."""
        if self.p == 0 and type(x) is Fraction:
            return x
        if isinstance(x, str):
            return self.parse(x)
        if self.p == 0:
            if isinstance(x, Mod):
                raise FieldMismatchError("F_p scalar used over the rationals")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatchError(f"F_{x.p} scalar used over F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Mod(x.numerator, self.p) / x.denominator
        return Mod(int(x), self.p)

    def contains(self, x) -> bool:
        if self.p == 0:
            return isinstance(x, (Fraction, int)) and not isinstance(x, bool)
        return isinstance(x, Mod) and x.p == self.p

    def parse(self, text: str) -> Scalar:
        """Parse ``a``, ``-a`` or ``a/b`` (decimal integers)."""
        m = _SCALAR_RE.match(text)
        if not m:
            raise ValueError(f"not a scalar literal: {text!r}")
        sign, num, den = m.groups()
        value = Fraction(int(num), int(den) if den else 1)
        if sign == "-":
            value = -value
        return self(value)

    def format(self, x) -> str:
        return str(self(x))

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def check_characteristic(field: FieldSpec, socle_degree: int) -> bool:
    """Warn when 0 < char k <= socle degree; returns True if it warned."""
    if 0 < field.p <= socle_degree:
        warnings.warn(
            f"characteristic {field.p} <= socle degree {socle_degree}: divided powers "
            "remain valid but the derivative basis is unavailable",
            SmallCharacteristicWarning,
            stacklevel=3,
        )
        return True
    return False
