"""Exact scalars: rationals, elements of quadratic fields, Bernoulli numbers.

Rationals are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator.  Elements ``a + b*sqrt(D)`` of ``Q(sqrt(D))``
are :class:`QuadScalar`; they mix freely with ``int`` and ``Fraction``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, FormatError, ResourceError

__all__ = [
    "Fraction",
    "Rational",
    "QuadScalar",
    "BERNOULLI_BOUND",
    "bernoulli",
    "quad_mul",
    "quad_inv",
    "is_squarefree",
    "format_scalar",
    "parse_rational",
    "parse_scalar",
    "to_fraction",
]

BERNOULLI_BOUND = 200

Rational = Fraction


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuadScalar):
        if x.b:
            raise DomainError(f"{x} is not rational")
        return x.a
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class QuadScalar:
    """The element ``a + b*sqrt(D)`` of ``Q(sqrt(D))`` for squarefree ``D``.

    Values are immutable.  Arithmetic with another ``QuadScalar`` requires
    the same ``D``; ints and Fractions are treated as elements with ``b = 0``.
    A value with ``b = 0`` compares and hashes like the rational ``a``.
    """

    __slots__ = ("_a", "_b", "_D")

    def __init__(self, a=0, b=0, D: int = -1):
        if not isinstance(D, int) or D in (0, 1) or not is_squarefree(D):
            raise DomainError(f"D must be a squarefree integer other than 0, 1; got {D!r}")
        self._a = to_fraction(a)
        self._b = to_fraction(b)
        self._D = D

    @classmethod
    def sqrt(cls, D: int) -> QuadScalar:
        return cls(0, 1, D)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def D(self) -> int:
        return self._D

    def key(self) -> tuple:
        return (self._a, self._b, self._D)

    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other._D != self._D:
                raise DomainError(
                    f"cannot combine elements of Q(sqrt({self._D})) and Q(sqrt({other._D}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(other, 0, self._D)
        return None

    def conjugate(self) -> QuadScalar:
        return QuadScalar(self._a, -self._b, self._D)

    def norm(self) -> Fraction:
        return self._a * self._a - self._D * self._b * self._b

    def trace(self) -> Fraction:
        return 2 * self._a

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self._a + o._a, self._b + o._b, self._D)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self._a, -self._b, self._D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self._a - o._a, self._b - o._b, self._D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadScalar(self._a * other, self._b * other, self._D)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        return QuadScalar(a * c + self._D * b * e, a * e + b * c, self._D)

    __rmul__ = __mul__

    def inverse(self) -> QuadScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadScalar(self._a / n, -self._b / n, self._D)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadScalar(self._a / other, self._b / other, self._D)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = QuadScalar(1, 0, self._D)
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            if self._b == 0 and other._b == 0:
                return self._a == other._a
            return self.key() == other.key()
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash(self.key())

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __repr__(self):
        return f"QuadScalar({str(self._a)!r}, {str(self._b)!r}, D={self._D})"

    def __str__(self):
        return format_scalar(self)


def quad_mul(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    """Product in ``Q(sqrt(D))``; raises :class:`DomainError` on mismatched ``D``."""
    if isinstance(x, QuadScalar) and isinstance(y, QuadScalar) and x.D != y.D:
        raise DomainError(f"mismatched fields: D={x.D} and D={y.D}")
    return x * y


def quad_inv(x: QuadScalar) -> QuadScalar:
    """Inverse computed as conjugate over norm."""
    if not x:
        raise ZeroDivisionError("inverse of zero in a quadratic field")
    return x.inverse()


@lru_cache(maxsize=8)
def _bernoulli_table(n: int) -> tuple:
    # Akiyama-Tanigawa; yields B_1 = +1/2, which is irrelevant for even n.
    out = []
    row = []
    for m in range(n + 1):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    return tuple(out)


def bernoulli(n: int, bound: int = BERNOULLI_BOUND) -> Fraction:
    """Return the Bernoulli number ``B_n`` for even ``n`` (``B_2 = 1/6``)."""
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"bernoulli index must be a nonnegative integer, got {n!r}")
    if n % 2 == 1 and n > 1:
        raise DomainError(f"odd-index Bernoulli number B_{n} requested")
    if n > bound:
        raise ResourceError(f"bernoulli index {n} exceeds configured bound {bound}")
    if n == 1:
        return Fraction(-1, 2)
    return _bernoulli_table(max(n, 32))[n]


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_QUAD_TERM_RE = re.compile(
    r"""^\s*
    (?P<a>[+-]?\d+(?:/\d+)?)?      # rational part
    \s*
    (?:
      (?P<sign>[+-])?\s*
      (?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?
      sqrt\(\s*(?P<D>[+-]?\d+)\s*\)
      (?:\s*/\s*(?P<bden>\d+))?
    )?
    \s*$""",
    re.VERBOSE,
)


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise FormatError(f"not a rational number: {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise FormatError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_scalar(text: str):
    """Parse ``p``, ``p/q`` or ``a+b*sqrt(D)``.

    Returns an ``int`` for integers, a ``Fraction`` for other rationals and
    a :class:`QuadScalar` whenever a ``sqrt`` term is present.
    """
    text = text.strip()
    if "sqrt" not in text:
        r = parse_rational(text)
        return r.numerator if r.denominator == 1 else r
    m = _QUAD_TERM_RE.match(text)
    if not m or m.group("D") is None:
        raise FormatError(f"not a quadratic scalar: {text!r}")
    a = parse_rational(m.group("a")) if m.group("a") else Fraction(0)
    if m.group("a") and m.group("sign") is None:
        raise FormatError(f"missing sign before sqrt term in {text!r}")
    b = parse_rational(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("bden"):
        b /= int(m.group("bden"))
    if m.group("sign") == "-":
        b = -b
    try:
        return QuadScalar(a, b, int(m.group("D")))
    except DomainError as exc:
        raise FormatError(str(exc)) from None


def _format_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def format_scalar(x) -> str:
    """Render a scalar in the grammar accepted by :func:`parse_scalar`."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return _format_rational(x)
    if isinstance(x, QuadScalar):
        if x.b == 0:
            return _format_rational(x.a)
        root = f"sqrt({x.D})"
        mag = abs(x.b)
        term = root if mag == 1 else f"{_format_rational(mag)}*{root}"
        if x.a == 0:
            return ("-" if x.b < 0 else "") + term
        return f"{_format_rational(x.a)}{'-' if x.b < 0 else '+'}{term}"
    raise TypeError(f"cannot format {type(x).__name__}")
