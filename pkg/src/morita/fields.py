"""Exact ground fields: the rationals and prime fields F_p.

Raw field elements are plain Python objects (``int`` or ``Fraction`` for Q, ``int`` in
``range(p)`` for F_p).  Hot loops work on raw values through the ``Field``
methods; ``Scalar`` is the tagged, user-facing wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


class FieldMismatch(ValueError):
    """Raised when values from two different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``char == 0``, otherwise the prime field F_char."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not _is_prime(self.char):
            raise ValueError(f"characteristic must be 0 or prime, got {self.char}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``q`` or ``fp:<prime>``."""
        t = text.strip().lower()
        if t in ("q", "qq", "0"):
            return cls(0)
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field selector {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field selector {text!r}; use 'q' or 'fp:<prime>'")

    @property
    def tag(self) -> str:
        return "q" if self.char == 0 else f"fp:{self.char}"

    def __str__(self):
        return "Q" if self.char == 0 else f"F_{self.char}"

    # raw-value arithmetic

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __call__(self, x):
        """Coerce an int, Fraction, string or Scalar to a raw value."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} scalar used in {self}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.char == 0:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            num = x.numerator % self.char
            den = x.denominator % self.char
            if den == 0:
                raise ZeroDivisionError(f"{x} has no image in {self}")
            return num * pow(den, -1, self.char) % self.char
        return int(x) % self.char

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            q = Fraction(1) / a
            return q.numerator if q.denominator == 1 else q
        return pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sign(self, k: int):
        """(-1)^k as a raw value."""
        return self.one if k % 2 == 0 else self.neg(self.one)

    def render(self, a) -> str:
        if self.char == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@total_ordering
@dataclass(frozen=True)
class Scalar:
    """An element of Q or F_p, tagged with its field."""

    value: object
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return Scalar(self.field.sub(self._other(other), self.value), self.field)

    def __mul__(self, other):
        return Scalar(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field.div(self.value, self._other(other)), self.field)

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.value, self.field))

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"Scalar({self.field.render(self.value)}, {self.field})"

    def __str__(self):
        return self.field.render(self.value)
