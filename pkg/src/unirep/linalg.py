"""Exact square matrices with truncated exponential and logarithm.

Entries are either scalars (Fraction / Residue) or Polynomials, never mixed
within one matrix.  The exp/log series are truncated at the measured
nilpotency index, so no division by k! for k >= index ever happens; this is
what keeps every denominator coprime to the characteristic.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import Residue, coerce_scalar
from .errors import NotNilpotentError, SeriesTerminationError, ShapeError
from .hopf import Polynomial

__all__ = [
    "SquareMatrix",
    "nilpotency_index",
    "exp_nilpotent",
    "log_unipotent",
    "commutator",
    "scalar_matrix",
    "one_like",
]


def one_like(entry):
    if isinstance(entry, Polynomial):
        return Polynomial.one(entry.n, entry.p)
    if isinstance(entry, Residue):
        return Residue(1, entry.p)
    return Fraction(1)


class SquareMatrix:
    """A d x d matrix over an exact commutative ring."""

    __slots__ = ("size", "entries")

    def __init__(self, entries):
        entries = [list(row) for row in entries]
        d = len(entries)
        if any(len(row) != d for row in entries):
            raise ShapeError("matrix must be square")
        self.size = d
        self.entries = entries

    @classmethod
    def from_rows(cls, rows):
        return cls(rows)

    @classmethod
    def identity(cls, d, one):
        zero = one - one
        return cls([[one if i == j else zero for j in range(d)] for i in range(d)])

    def identity_like(self):
        return SquareMatrix.identity(self.size, one_like(self.entries[0][0]))

    def zero_like(self):
        one = one_like(self.entries[0][0])
        zero = one - one
        return SquareMatrix([[zero] * self.size for _ in range(self.size)])

    def _check(self, other):
        if self.size != other.size:
            raise ShapeError("matrix size mismatch")

    def __add__(self, other):
        self._check(other)
        return SquareMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        self._check(other)
        return SquareMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return SquareMatrix([[-a for a in row] for row in self.entries])

    def __matmul__(self, other):
        self._check(other)
        d = self.size
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append([_dot(row, col) for col in cols])
        return SquareMatrix(out)

    __mul__ = __matmul__

    def scale(self, c):
        return SquareMatrix([[a * c for a in row] for row in self.entries])

    def __truediv__(self, k):
        return SquareMatrix([[a / k for a in row] for row in self.entries])

    def map_entries(self, fn):
        return SquareMatrix([[fn(a) for a in row] for row in self.entries])

    def transpose(self):
        return SquareMatrix([list(col) for col in zip(*self.entries)])

    def is_zero(self):
        return all(not a for row in self.entries for a in row)

    def __eq__(self, other):
        return (
            isinstance(other, SquareMatrix)
            and self.size == other.size
            and self.entries == other.entries
        )

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in row) for row in self.entries) + "]"

    __repr__ = __str__


def _dot(row, col):
    acc = None
    for a, b in zip(row, col):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def nilpotency_index(m: SquareMatrix, cap: int) -> int:
    """Least k <= cap with m^k = 0 (zero meaning zero polynomial for
    polynomial entries)."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    power = m
    for k in range(1, cap + 1):
        if power.is_zero():
            return k
        if k < cap:
            power = power @ m
    raise NotNilpotentError(f"matrix is not nilpotent within {cap} powers")


def _series_index(x: SquareMatrix, char_bound) -> int:
    """Nilpotency index of x, enforcing index <= char_bound when bounded.

    Over a domain a nilpotent d x d matrix has index <= d, so the search is
    capped at min(char_bound, d).
    """
    cap = x.size if char_bound is None else min(char_bound, x.size)
    try:
        return nilpotency_index(x, cap)
    except NotNilpotentError:
        if char_bound is not None and char_bound < x.size:
            raise SeriesTerminationError(
                f"nilpotency index exceeds the characteristic bound {char_bound}"
            ) from None
        raise


def exp_nilpotent(x: SquareMatrix, char_bound=None) -> SquareMatrix:
    """sum_{k < index} x^k / k!, requiring index <= char_bound when given.

    char_bound is p in characteristic p (the series must terminate before any
    denominator divisible by p) and None over the rationals.
    """
    index = _series_index(x, char_bound)
    result = x.identity_like()
    power = x.identity_like()
    kfact = 1
    for k in range(1, index):
        power = power @ x
        kfact *= k
        result = result + power / kfact
    return result


def log_unipotent(g: SquareMatrix, char_bound=None) -> SquareMatrix:
    """Truncated alternating series sum ((-1)^(k-1)/k) (g-1)^k."""
    u = g - g.identity_like()
    index = _series_index(u, char_bound)
    result = u.zero_like()
    power = g.identity_like()
    for k in range(1, index):
        power = power @ u
        term = power / k
        result = result + (term if k % 2 == 1 else -term)
    return result


def commutator(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    return a @ b - b @ a


def scalar_matrix(entries, p: int) -> SquareMatrix:
    """Matrix from nested ints/Fractions, coerced into characteristic p."""
    return SquareMatrix([[coerce_scalar(v, p) for v in row] for row in entries])
