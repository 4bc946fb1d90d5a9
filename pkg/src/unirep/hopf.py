"""The representing Hopf algebra of U_n.

Polynomials in the commuting variables x_ij (1 <= i < j <= n) are keyed by
whole exponent matrices: the monomial x^M is the strictly upper-triangular
matrix M of its exponents.  Tensor-square elements are keyed by pairs of
exponent matrices.  The coproduct encodes matrix multiplication in U_n:

    Delta(x_ij) = 1 (x) x_ij  +  sum_{k=i+1}^{j-1} x_ik (x) x_kj  +  x_ij (x) 1
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .arith import Residue, coerce_scalar, p_ary_digits
from .errors import ShapeError

__all__ = [
    "ExponentMatrix",
    "Polynomial",
    "TensorElement",
    "coproduct",
    "counit",
    "frobenius_substitute",
    "matrix_product_tensor_side",
    "tensor_of",
]


@dataclass(frozen=True)
class ExponentMatrix:
    """A strictly upper-triangular n x n matrix of non-negative integers."""

    n: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ShapeError(f"expected a {self.n}x{self.n} matrix")
        for i in range(self.n):
            for j in range(self.n):
                if rows[i][j] < 0:
                    raise ShapeError("exponents must be non-negative")
                if j <= i and rows[i][j] != 0:
                    raise ShapeError("exponent matrix must be strictly upper triangular")

    @classmethod
    def zero(cls, n):
        return cls(n, tuple((0,) * n for _ in range(n)))

    @classmethod
    def epsilon(cls, n, i, j, mult=1):
        """mult at the (i, j) position (1-based), zeroes elsewhere."""
        rows = [[0] * n for _ in range(n)]
        rows[i - 1][j - 1] = mult
        return cls(n, tuple(tuple(r) for r in rows))

    def entry(self, i, j):
        return self.rows[i - 1][j - 1]

    def __add__(self, other):
        if self.n != other.n:
            raise ShapeError("size mismatch")
        return ExponentMatrix(
            self.n,
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)),
        )

    def scale(self, e):
        return ExponentMatrix(self.n, tuple(tuple(e * v for v in r) for r in self.rows))

    def is_zero(self):
        return all(v == 0 for r in self.rows for v in r)

    def total_degree(self):
        return sum(v for r in self.rows for v in r)

    def positions(self):
        """Yield ((i, j), exponent) over the nonzero entries, row-major, 1-based."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.rows[i][j]:
                    yield (i + 1, j + 1), self.rows[i][j]

    def sort_key(self):
        return tuple(v for r in self.rows for v in r)

    def max_entry(self):
        return max(v for r in self.rows for v in r)

    def __str__(self):
        if self.is_zero():
            return "1"
        return "*".join(
            f"x{i}{j}" + (f"^{m}" if m > 1 else "") for (i, j), m in self.positions()
        )


def variable_pairs(n):
    """All (i, j) with 1 <= i < j <= n, row-major."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


class Polynomial:
    """Exact polynomial over Q (p == 0) or F_p (p prime), keyed by exponent matrices."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n, p, terms=None):
        self.n = n
        self.p = p
        clean = {}
        for key, c in (terms or {}).items():
            c = coerce_scalar(c, p)
            if c:
                if key.n != n:
                    raise ShapeError("term key has wrong ambient size")
                clean[key] = c
        self.terms = clean

    @classmethod
    def constant(cls, n, p, c):
        return cls(n, p, {ExponentMatrix.zero(n): c})

    @classmethod
    def one(cls, n, p):
        return cls.constant(n, p, 1)

    @classmethod
    def zero(cls, n, p):
        return cls(n, p)

    @classmethod
    def variable(cls, n, p, i, j):
        return cls(n, p, {ExponentMatrix.epsilon(n, i, j): 1})

    def _check(self, other):
        if self.n != other.n or self.p != other.p:
            raise ShapeError("polynomials from different rings")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, self.p, other)
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return Polynomial(self.n, self.p, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, self.p, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -coerce_scalar(other, self.p))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = coerce_scalar(other, self.p)
            return Polynomial(self.n, self.p, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        terms = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = ka + kb
                terms[key] = terms.get(key, 0) + ca * cb
        return Polynomial(self.n, self.p, terms)

    __rmul__ = __mul__

    def __truediv__(self, k):
        c = coerce_scalar(1, self.p) / k if self.p else Fraction(1, k)
        return self * c

    def scale_exponents(self, e):
        """Substitute x_ij -> x_ij^e (monomials map to monomials)."""
        return Polynomial(self.n, self.p, {k.scale(e): c for k, c in self.terms.items()})

    def __pow__(self, m):
        return _power(self, m, Polynomial.one(self.n, self.p))

    def constant_term(self):
        return self.terms.get(ExponentMatrix.zero(self.n), coerce_scalar(0, self.p))

    def coefficient(self, key):
        return self.terms.get(key, coerce_scalar(0, self.p))

    def evaluate_mod(self, point):
        """Evaluate at a dict (i, j) -> int, mod p.  Requires p > 0."""
        total = 0
        for key, c in self.terms.items():
            v = c.value
            for (i, j), m in key.positions():
                v = v * pow(point[(i, j)], m, self.p) % self.p
            total = (total + v) % self.p
        return total

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.n == other.n
            and self.p == other.p
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms, key=ExponentMatrix.sort_key):
            c = self.terms[key]
            bits.append(f"{c}" if key.is_zero() else f"{c}*{key}")
        return " + ".join(bits)

    __repr__ = __str__


class TensorElement:
    """An element of the tensor square, keyed by pairs of exponent matrices."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n, p, terms=None):
        self.n = n
        self.p = p
        clean = {}
        for key, c in (terms or {}).items():
            c = coerce_scalar(c, p)
            if c:
                clean[key] = c
        self.terms = clean

    @classmethod
    def one(cls, n, p):
        z = ExponentMatrix.zero(n)
        return cls(n, p, {(z, z): 1})

    @classmethod
    def zero(cls, n, p):
        return cls(n, p)

    def _check(self, other):
        if self.n != other.n or self.p != other.p:
            raise ShapeError("tensor elements from different rings")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return TensorElement(self.n, self.p, terms)

    def __neg__(self):
        return TensorElement(self.n, self.p, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            c = coerce_scalar(other, self.p)
            return TensorElement(self.n, self.p, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        terms = {}
        for (la, ra), ca in self.terms.items():
            for (lb, rb), cb in other.terms.items():
                key = (la + lb, ra + rb)
                terms[key] = terms.get(key, 0) + ca * cb
        return TensorElement(self.n, self.p, terms)

    __rmul__ = __mul__

    def scale_exponents(self, e):
        return TensorElement(
            self.n, self.p, {(l.scale(e), r.scale(e)): c for (l, r), c in self.terms.items()}
        )

    def __pow__(self, m):
        return _power(self, m, TensorElement.one(self.n, self.p))

    def coefficient(self, left, right):
        return self.terms.get((left, right), coerce_scalar(0, self.p))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.n == other.n
            and self.p == other.p
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda k: (k[0].sort_key(), k[1].sort_key()))
        return " + ".join(f"{self.terms[k]}*({k[0]})(x)({k[1]})" for k in keys)

    __repr__ = __str__


def _power(base, m, one):
    """base**m.  In characteristic p the p-ary digits of m are used so that
    raising to p^l is a key rescaling (the freshman's dream); this keeps
    intermediate term counts small for the large exponents p^l that occur in
    Frobenius-layer calculations."""
    if m < 0:
        raise ValueError("negative power")
    if m == 0:
        return one
    if base.p == 0:
        result = one
        square = base
        while m:
            if m & 1:
                result = result * square
            m >>= 1
            if m:
                square = square * square
        return result
    result = one
    block = base  # base**(p^l), by key rescaling
    for l, digit in enumerate(p_ary_digits(m, base.p).digits):
        if l > 0:
            block = base.scale_exponents(base.p**l)
        for _ in range(digit):
            result = result * block
    return result


def _generator_coproduct(n, p, i, j):
    z = ExponentMatrix.zero(n)
    eps = ExponentMatrix.epsilon
    terms = {(z, eps(n, i, j)): 1, (eps(n, i, j), z): 1}
    for k in range(i + 1, j):
        terms[(eps(n, i, k), eps(n, k, j))] = 1
    return TensorElement(n, p, terms)


def coproduct(poly: Polynomial) -> TensorElement:
    """Algebra-map extension of the coproduct to an arbitrary polynomial."""
    n, p = poly.n, poly.p
    out = TensorElement.zero(n, p)
    for key, c in poly.terms.items():
        acc = TensorElement.one(n, p)
        for (i, j), m in key.positions():
            acc = acc * _generator_coproduct(n, p, i, j) ** m
        out = out + acc * c
    return out


def counit(poly: Polynomial):
    """Evaluation at all variables = 0, i.e. the constant term."""
    return poly.constant_term()


def frobenius_substitute(obj, e: int):
    """Replace every variable x_ij by x_ij^e; scalars are untouched.

    Accepts a Polynomial, a TensorElement, or a square matrix of polynomials.
    """
    if e < 1:
        raise ValueError("substitution power must be at least 1")
    if hasattr(obj, "scale_exponents"):
        return obj.scale_exponents(e)
    return obj.map_entries(lambda f: f.scale_exponents(e))


def tensor_of(f: Polynomial, g: Polynomial) -> TensorElement:
    """The elementary tensor f (x) g, expanded into the monomial-tensor basis."""
    f._check(g)
    terms = {}
    for kf, cf in f.terms.items():
        for kg, cg in g.terms.items():
            terms[(kf, kg)] = terms.get((kf, kg), 0) + cf * cg
    return TensorElement(f.n, f.p, terms)


def matrix_product_tensor_side(a):
    """The d x d grid with (i, j) entry sum_k a_ik (x) a_kj.

    ``a`` is a square matrix with polynomial entries; the result is a list of
    lists of TensorElement.
    """
    d = a.size
    sample = a.entries[0][0]
    n, p = sample.n, sample.p
    grid = [[TensorElement.zero(n, p) for _ in range(d)] for _ in range(d)]
    for i, k in itertools.product(range(d), repeat=2):
        left = a.entries[i][k]
        if not left:
            continue
        for j in range(d):
            right = a.entries[k][j]
            if right:
                grid[i][j] = grid[i][j] + tensor_of(left, right)
    return grid
