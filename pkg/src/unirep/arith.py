"""Exact scalars and the base-p combinatorics used throughout.

Two coefficient domains are supported: arbitrary-precision rationals
(``fractions.Fraction``) for characteristic zero, and ``Residue`` for the
prime fields F_p.  Everything is immutable and exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConversionError, ModulusMismatchError, ShapeError

__all__ = [
    "Residue",
    "coerce_scalar",
    "scalar_to_str",
    "scalar_from_str",
    "factorial",
    "multinomial",
    "matrix_multinomial",
    "PAryDigits",
    "p_ary_digits",
    "sum_carries",
    "gamma_factor",
]


@dataclass(frozen=True)
class Residue:
    """An element of F_p, kept reduced into [0, p)."""

    value: int
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"modulus must be at least 2, got {self.p}")
        object.__setattr__(self, "value", self.value % self.p)

    def _match(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ModulusMismatchError(f"cannot mix residues mod {self.p} and mod {other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._match(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._match(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._match(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(v - self.value, self.p)

    def __mul__(self, other):
        v = self._match(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __truediv__(self, other):
        v = self._match(other)
        if v is NotImplemented:
            return NotImplemented
        if v % self.p == 0:
            raise ConversionError(f"division by {v} is not invertible mod {self.p}")
        return Residue(self.value * pow(v, -1, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)


def coerce_scalar(c, p: int):
    """Coerce ``c`` (int, Fraction or Residue) into the field of characteristic p.

    p == 0 yields a Fraction; p > 0 yields a Residue.  A rational whose reduced
    denominator is divisible by p cannot be converted and raises ConversionError.
    """
    if p == 0:
        if isinstance(c, Residue):
            raise ConversionError("cannot lift a residue to characteristic zero")
        return Fraction(c)
    if isinstance(c, Residue):
        if c.p != p:
            raise ModulusMismatchError(f"residue mod {c.p} used where mod {p} expected")
        return c
    if isinstance(c, int):
        return Residue(c, p)
    frac = Fraction(c)
    if frac.denominator % p == 0:
        raise ConversionError(f"denominator of {frac} is divisible by {p}")
    return Residue(frac.numerator * pow(frac.denominator, -1, p), p)


def scalar_to_str(c) -> str:
    """Canonical decimal-string form: 'a/b' for rationals, 'r' for residues."""
    if isinstance(c, Residue):
        return str(c.value)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def scalar_from_str(text: str, p: int):
    """Inverse of scalar_to_str for the field of characteristic p."""
    if p == 0:
        return Fraction(text)
    value = int(text)
    if not 0 <= value < p:
        raise ValueError(f"residue {value} out of range [0, {p})")
    return Residue(value, p)


def factorial(k: int) -> int:
    if k < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(k)


def multinomial(whole: int, parts) -> int:
    """(whole choose parts) with parts summing to whole; 0 on a sum mismatch."""
    parts = list(parts)
    if sum(parts) != whole or any(q < 0 for q in parts):
        return 0
    out = 1
    rest = whole
    for q in parts:
        out *= math.comb(rest, q)
        rest -= q
    return out


def _rows(m):
    return m.rows if hasattr(m, "rows") else tuple(tuple(r) for r in m)


def matrix_multinomial(whole, parts) -> int:
    """Entrywise product of multinomial coefficients (whole_ij choose parts at ij)."""
    wrows = _rows(whole)
    prows = [_rows(q) for q in parts]
    n = len(wrows)
    for q in prows:
        if len(q) != n:
            raise ShapeError("parts must have the same size as the whole matrix")
    out = 1
    for i in range(n):
        for j in range(n):
            col = [q[i][j] for q in prows]
            if sum(col) != wrows[i][j]:
                raise ShapeError("parts do not sum entrywise to the whole matrix")
            out *= multinomial(wrows[i][j], col)
    return out


@dataclass(frozen=True)
class PAryDigits:
    """Base-p digits of a non-negative integer, least significant first.

    r = 0 is represented as the single digit [0]; otherwise there is no
    trailing zero digit.
    """

    digits: tuple
    p: int

    def reconstruct(self) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits))


def p_ary_digits(r: int, p: int) -> PAryDigits:
    if r < 0:
        raise ValueError("p-ary digits of a negative integer")
    if r == 0:
        return PAryDigits((0,), p)
    digits = []
    while r:
        r, d = divmod(r, p)
        digits.append(d)
    return PAryDigits(tuple(digits), p)


def sum_carries(r: int, s: int, p: int) -> bool:
    """True iff adding r and s in base p carries in some digit position."""
    rd = p_ary_digits(r, p).digits
    sd = p_ary_digits(s, p).digits
    if len(rd) < len(sd):
        rd, sd = sd, rd
    sd = sd + (0,) * (len(rd) - len(sd))
    return any(a + b >= p for a, b in zip(rd, sd))


def gamma_factor(r: int, p: int) -> int:
    """Product of the factorials of the base-p digits of r; always coprime to p."""
    return math.prod(math.factorial(d) for d in p_ary_digits(r, p).digits)
