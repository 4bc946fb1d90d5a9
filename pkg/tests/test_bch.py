"""The series log(e^x e^y), its components, and the projection machinery."""

import random
from fractions import Fraction

import pytest

from unirep.bch import (
    FreeElement,
    bch_components,
    bch_evaluate,
    bracket_expand,
    bracket_normalize,
    denominator_audit,
    dynkin_projection,
    homogeneous_component,
    left_nested_expand,
    log_product_series,
)
from unirep.errors import SeriesTerminationError
from unirep.linalg import exp_nilpotent, log_unipotent
from unirep.samples import random_strict_upper


def F(terms):
    return FreeElement(terms)


class TestGoldenComponents:
    def test_p1(self):
        assert bch_components(1)[0] == F({("x",): 1, ("y",): 1})

    def test_p2(self):
        assert bch_components(2)[1] == F({("x", "y"): Fraction(1, 2), ("y", "x"): Fraction(-1, 2)})

    def test_p3_six_terms(self):
        expected = F({
            ("x", "x", "y"): Fraction(1, 12),
            ("x", "y", "x"): Fraction(-1, 6),
            ("x", "y", "y"): Fraction(1, 12),
            ("y", "x", "x"): Fraction(1, 12),
            ("y", "x", "y"): Fraction(-1, 6),
            ("y", "y", "x"): Fraction(1, 12),
        })
        assert bch_components(3)[2] == expected

    def test_components_partition_series(self):
        series = log_product_series(4)
        total = FreeElement.zero()
        for comp in bch_components(4):
            total = total + comp
        assert total == series
        assert homogeneous_component(series, 2) == bch_components(4)[1]


class TestDynkin:
    def test_fixes_components(self):
        for m, comp in enumerate(bch_components(6), start=1):
            assert dynkin_projection(comp) == comp, m

    def test_left_nested_expand(self):
        # (x o y) o x = xyx - yx^2 - x^2y + xyx = 2xyx - yx^2 - x^2y
        got = left_nested_expand(("x", "y", "x"))
        assert got == F({
            ("x", "y", "x"): 2,
            ("y", "x", "x"): -1,
            ("x", "x", "y"): -1,
        })

    def test_projection_of_p2_bracket_form(self):
        # phi(P_2) = 1/4 x o y - 1/4 y o x = 1/2 x o y, re-expanded equals P_2
        p2 = bch_components(2)[1]
        half_bracket = left_nested_expand(("x", "y"), Fraction(1, 2))
        assert dynkin_projection(p2) == half_bracket

    def test_rejects_constants(self):
        with pytest.raises(ValueError):
            dynkin_projection(F({(): 1}))


class TestBracketRewriting:
    def random_tree(self, rng, depth):
        if depth == 0 or rng.random() < 0.3:
            return rng.choice(("x", "y"))
        return (self.random_tree(rng, depth - 1), self.random_tree(rng, depth - 1))

    def test_normalize_matches_direct_expansion(self):
        rng = random.Random(0)
        for _ in range(30):
            tree = self.random_tree(rng, 3)
            expanded = FreeElement.zero()
            for letters, coeff in bracket_normalize(tree):
                expanded = expanded + left_nested_expand(letters, coeff)
            assert expanded == bracket_expand(tree)

    def test_left_nested_identity(self):
        # P o (Q o x) = -(P o x) o Q + (P o Q) o x with P = x, Q = y, x = x
        lhs = bracket_expand(("x", ("y", "x")))
        rhs = bracket_expand((("x", "x"), "y")) * (-1) + bracket_expand((("x", "y"), "x"))
        assert lhs == rhs


class TestDenominatorAudit:
    def test_small_primes(self):
        for p in (5, 7, 11):
            comps = bch_components(p - 1)
            for m in range(1, p):
                assert denominator_audit(comps[m - 1], p), (p, m)

    def test_detects_bad_denominator(self):
        assert not denominator_audit(F({("x",): Fraction(1, 5)}), 5)


class TestEvaluation:
    def test_matches_log_of_product(self):
        p = 5
        rng = random.Random(7)
        comps = bch_components(4)
        for _ in range(25):
            x = random_strict_upper(4, p, rng)
            y = random_strict_upper(4, p, rng)
            lhs = bch_evaluate(comps, x, y)
            rhs = log_unipotent(exp_nilpotent(x, p) @ exp_nilpotent(y, p), p)
            assert lhs == rhs

    def test_rational_case(self):
        rng = random.Random(8)
        comps = bch_components(3)
        x = random_strict_upper(3, 0, rng)
        y = random_strict_upper(3, 0, rng)
        assert bch_evaluate(comps, x, y) == log_unipotent(exp_nilpotent(x) @ exp_nilpotent(y))

    def test_audit_failure_raises(self):
        p = 3
        rng = random.Random(9)
        x = random_strict_upper(4, p, rng)
        y = random_strict_upper(4, p, rng)
        with pytest.raises(SeriesTerminationError):
            bch_evaluate(bch_components(4), x, y)
