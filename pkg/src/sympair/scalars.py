"""Exact scalars: rationals and real quadratic extensions Q(sqrt(d)).

A Scalar is a + b*sqrt(d) with a, b arbitrary-precision rationals and d a
square-free positive integer tag.  d = 1 encodes a plain rational, and any
value whose surd part is zero is canonicalized back to d = 1, so plain
rationals coerce into every extension while two distinct nontrivial tags
refuse to mix.  Equality is exact and decidable; floats exist only for
display (never feed them back into a decision).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ExtensionMismatchError, UsageError


def _is_square_free(n: int) -> bool:
    if n <= 0:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _join_tags(d1: int, d2: int) -> int:
    if d1 == d2:
        return d1
    if d1 == 1:
        return d2
    if d2 == 1:
        return d1
    raise ExtensionMismatchError(f"cannot mix sqrt({d1}) and sqrt({d2}) values")


class Scalar:
    """Element of Q(sqrt(d)), stored as (rational part, surd part, d)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=1):
        a = Fraction(a)
        b = Fraction(b)
        if d == 1:
            a, b = a + b, Fraction(0)
        elif not _is_square_free(d):
            raise UsageError(f"extension tag must be square-free and positive, got {d}")
        if b == 0:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def of(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(value)
        raise UsageError(f"cannot coerce {value!r} to Scalar")

    @staticmethod
    def sqrt(d: int) -> "Scalar":
        """The element sqrt(d) itself."""
        return Scalar(0, 1, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise UsageError(f"{self} is not rational")
        return self.a

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = Scalar.of(other)
        d = _join_tags(self.d, other.d)
        return Scalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-Scalar.of(other))

    def __rsub__(self, other):
        return Scalar.of(other) - self

    def __mul__(self, other):
        other = Scalar.of(other)
        d = _join_tags(self.d, other.d)
        a = self.a * other.a + d * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return Scalar(a, b, d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * Scalar.of(other).inverse()

    def __rtruediv__(self, other):
        return Scalar.of(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        """Galois conjugate a - b*sqrt(d)."""
        return Scalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - d*b^2 (a rational)."""
        return self.a * self.a - self.d * self.b * self.b

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    # -- display only (never used for decisions) ----------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        surd = f"{abs(self.b)}*sqrt({self.d})"
        if self.a == 0:
            sign = "-" if self.b < 0 else ""
            return sign + surd
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{surd}"

    def __repr__(self):
        return f"Scalar({self})"


ZERO = Scalar(0)
ONE = Scalar(1)

_RAT = r"[+-]?\d+(?:/\d+)?"
_URAT = r"\d+(?:/\d+)?"
_SURD = rf"(?:(?P<coef>{_URAT})\*)?sqrt\((?P<d>\d+)\)"
_RAT_ONLY_RE = re.compile(rf"^(?P<rat>{_RAT})$")
_SURD_ONLY_RE = re.compile(rf"^(?P<csign>[+-]?){_SURD}$")
_FULL_RE = re.compile(rf"^(?P<rat>{_RAT})(?P<csign>[+-]){_SURD}$")


def parse_scalar(text: str) -> Scalar:
    """Parse "p/q" or "p/q+r/s*sqrt(d)" (also bare "sqrt(d)", "-3*sqrt(2)")."""
    s = text.replace(" ", "")
    m = _RAT_ONLY_RE.match(s)
    if m:
        return Scalar(Fraction(m.group("rat")))
    m = _SURD_ONLY_RE.match(s) or _FULL_RE.match(s)
    if not m:
        raise UsageError(f"cannot parse scalar {text!r}")
    a = Fraction(m.group("rat")) if "rat" in m.groupdict() and m.groupdict().get("rat") else Fraction(0)
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    if m.group("csign") == "-":
        coef = -coef
    return Scalar(a, coef, int(m.group("d")))


def format_scalar(x: Scalar) -> str:
    """Canonical string form; parse_scalar(format_scalar(x)) == x."""
    return str(x)
