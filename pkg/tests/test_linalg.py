"""Exact matrices and the truncated exponential / logarithm."""

import random
from fractions import Fraction

import pytest

from unirep.arith import Residue, coerce_scalar
from unirep.errors import NotNilpotentError, SeriesTerminationError, ShapeError
from unirep.linalg import (
    SquareMatrix,
    commutator,
    exp_nilpotent,
    log_unipotent,
    nilpotency_index,
    scalar_matrix,
)
from unirep.samples import random_strict_upper


class TestSquareMatrix:
    def test_shape_enforced(self):
        with pytest.raises(ShapeError):
            SquareMatrix([[1, 2], [3]])

    def test_product(self):
        a = scalar_matrix([[0, 1], [0, 0]], 0)
        b = scalar_matrix([[0, 0], [1, 0]], 0)
        assert (a @ b) == scalar_matrix([[1, 0], [0, 0]], 0)
        assert commutator(a, b) == scalar_matrix([[1, 0], [0, -1]], 0)

    def test_identity_and_scale(self):
        m = SquareMatrix.identity(3, Fraction(1))
        assert m.scale(Fraction(2)).entries[1][1] == 2
        assert m.transpose() == m


class TestNilpotency:
    def test_index(self):
        n = scalar_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]], 0)
        assert nilpotency_index(n, 3) == 3
        assert nilpotency_index(n.zero_like(), 3) == 1

    def test_not_nilpotent(self):
        with pytest.raises(NotNilpotentError):
            nilpotency_index(SquareMatrix.identity(2, Fraction(1)), 5)


class TestExpLog:
    def test_exp_superdiagonal(self):
        n = scalar_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]], 0)
        e = exp_nilpotent(n)
        assert e == scalar_matrix([[1, 1, Fraction(1, 2)], [0, 1, 1], [0, 0, 1]], 0)

    def test_log_inverts_exp_rational(self):
        rng = random.Random(1)
        for _ in range(10):
            x = random_strict_upper(4, 0, rng)
            assert log_unipotent(exp_nilpotent(x)) == x

    def test_exp_inverts_log_mod_p(self):
        p = 7
        rng = random.Random(2)
        for _ in range(10):
            x = random_strict_upper(5, p, rng)
            g = exp_nilpotent(x, p)
            assert log_unipotent(g, p) == x
            assert exp_nilpotent(log_unipotent(g, p), p) == g

    def test_exp_is_homomorphism_on_commuting(self):
        x = scalar_matrix([[0, 2, 0], [0, 0, 0], [0, 0, 0]], 11)
        y = x.scale(Residue(3, 11))
        assert exp_nilpotent(x + y, 11) == exp_nilpotent(x, 11) @ exp_nilpotent(y, 11)

    def test_char_bound_violation(self):
        # nilpotency index 4 exceeds char bound 3: series would divide by 3!
        n = scalar_matrix(
            [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]], 3
        )
        with pytest.raises(SeriesTerminationError):
            exp_nilpotent(n, 3)

    def test_exp_requires_nilpotent(self):
        with pytest.raises(NotNilpotentError):
            exp_nilpotent(SquareMatrix.identity(2, Fraction(1)))

    def test_no_p_denominator_when_index_small(self):
        # index d <= p never touches 1/p, so entries are honest residues
        p = 5
        rng = random.Random(3)
        x = random_strict_upper(5, p, rng)
        g = exp_nilpotent(x, p)
        assert all(isinstance(v, Residue) for row in g.entries for v in row)
