import random
from fractions import Fraction

import pytest

from stieltjes_lab.arith import (
    INFINITY,
    ZERO,
    DegreeSentinel,
    LaurentTail,
    Poly,
    PolyMatrix2,
    RationalFunction,
    matrix_apply,
    parameter_pair,
    poly_gcd,
    poly_neg_index,
    series_at_infinity,
    series_inverse,
)
from stieltjes_lab.util import DegenerateTransformError

from .data import RANDOM_SEED, random_poly, random_rational

Z = Poly.z()
ONE = Poly.constant(1)


def degree_of(poly: Poly) -> int:
    return int(poly.degree)


class TestPoly:
    def test_trailing_zeros_stripped(self):
        assert Poly((1, 2, 0, 0)).coeffs == (Fraction(1), Fraction(2))
        assert Poly((1, 2, 0, 0)) == Poly((1, 2))

    def test_zero_degree_sentinel(self):
        assert Poly().is_zero
        assert Poly((0, 0)).degree is DegreeSentinel.MINUS_INFINITY

    def test_degree_and_leading(self):
        p = Poly((2, -4, 1))
        assert p.degree == 2
        assert p.leading == 1

    def test_evaluate_exact(self):
        assert Poly((2, -4, 1))(1) == -1
        assert Poly((0, 3))(Fraction(1, 3)) == 1

    def test_product(self):
        assert (Z + 1) * (Z - 1) == Poly((-1, 0, 1))

    def test_scalar_coercion(self):
        assert 2 * Z - 1 == Poly((-1, 2))
        assert Z / 2 == Poly((0, Fraction(1, 2)))

    def test_divmod(self):
        quotient, remainder = divmod(Poly((-1, 0, 1)), Poly((-1, 1)))
        assert quotient == Poly((1, 1))
        assert remainder.is_zero

    def test_divmod_with_remainder(self):
        quotient, remainder = divmod(Poly((1, 0, 1)), Poly((0, 2)))
        assert quotient == Poly((0, Fraction(1, 2)))
        assert remainder == ONE

    def test_times_and_quotient_by_z(self):
        p = Poly((3, 1, 2))
        assert p.times_z().quotient_by_z() == p
        assert p.quotient_by_z() == Poly((1, 2))

    def test_derivative(self):
        assert Poly((5, 3, 0, 2)).derivative() == Poly((3, 0, 6))


def test_gcd_is_monic():
    assert poly_gcd(Poly((-2, 0, 2)), Poly((1, 2, 1))) == Poly((1, 1))


@pytest.mark.parametrize(
    "coeffs,expected",
    [
        [(), 0],
        [(1,), 0],
        [(-1,), 0],
        [(0, 1), 0],
        [(0, -1), 1],
        [(0, 0, -1), 1],
        [(0, 0, 0, 1), 1],
        [(0, 0, 0, -1), 2],
    ],
)
def test_poly_neg_index(coeffs, expected):
    assert poly_neg_index(Poly(coeffs)) == expected


class TestRandomizedArithmetic:
    def test_rational_sum_difference(self):
        rng = random.Random(RANDOM_SEED)
        for _ in range(50):
            a, b = random_rational(rng), random_rational(rng)
            assert (a + b) - b == a

    def test_ring_laws(self):
        rng = random.Random(RANDOM_SEED)
        for _ in range(30):
            p, q, r = (random_poly(rng, rng.randint(0, 4)) for _ in range(3))
            assert p + q == q + p
            assert p * q == q * p
            assert (p + q) + r == p + (q + r)
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r
            assert (p - q) + q == p

    def test_expansion_ignores_common_factors(self):
        rng = random.Random(RANDOM_SEED + 1)
        for _ in range(20):
            denom = random_poly(rng, rng.randint(1, 4))
            numer = random_poly(rng, rng.randint(0, degree_of(denom) - 1))
            factor = random_poly(rng, rng.randint(0, 3))
            assert series_at_infinity(numer * factor, denom * factor, 6) == series_at_infinity(
                numer, denom, 6
            )

    def test_tail_sum_and_product(self):
        rng = random.Random(RANDOM_SEED + 2)
        for _ in range(20):
            v1, v2 = random_poly(rng, rng.randint(1, 3)), random_poly(rng, rng.randint(1, 3))
            u1 = random_poly(rng, rng.randint(0, degree_of(v1) - 1))
            u2 = random_poly(rng, rng.randint(0, degree_of(v2) - 1))
            f, g = series_at_infinity(u1, v1, 5), series_at_infinity(u2, v2, 5)
            assert f + g == series_at_infinity(u1 * v2 + u2 * v1, v1 * v2, 5)
            # a product of two tails is exact one order further
            assert f * g == series_at_infinity(u1 * u2, v1 * v2, 6)

    def test_composition_on_random_matrices(self):
        rng = random.Random(RANDOM_SEED + 3)

        def matrix() -> PolyMatrix2:
            return PolyMatrix2(*(random_poly(rng, rng.randint(0, 2)) for _ in range(4)))

        checked = 0
        for _ in range(30):
            left, right = matrix(), matrix()
            tau = RationalFunction(random_poly(rng, 1), random_poly(rng, 2))
            try:
                expected = matrix_apply(left, matrix_apply(right, tau))
            except DegenerateTransformError:
                continue
            assert matrix_apply(left @ right, tau) == expected
            checked += 1
        assert checked > 20


class TestSeries:
    def test_series_inverse_geometric(self):
        assert series_inverse([Fraction(1), Fraction(-1)], 4) == [Fraction(1)] * 4

    def test_series_inverse_needs_unit(self):
        with pytest.raises(ZeroDivisionError):
            series_inverse([Fraction(0), Fraction(1)], 3)

    def test_expansion_at_infinity(self):
        # -1/(z - 1) = -sum z^(-j-1) carries the moments 1, 1, 1, 1
        tail = series_at_infinity(Poly.constant(-1), Z - 1, 3)
        assert tail.coeffs == (Fraction(1),) * 4

    def test_expansion_rejects_polynomial_part(self):
        with pytest.raises(ValueError):
            series_at_infinity(Z, ONE, 3)

    def test_expansion_rejects_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            series_at_infinity(ONE, Poly(), 3)

    def test_invert_tail(self):
        poly_part, remainder = LaurentTail((1, 1, 2, 6)).invert()
        assert poly_part == Poly((-1, 1))
        assert remainder.coeffs == (Fraction(1), Fraction(3))

    def test_invert_vanishing_tail(self):
        with pytest.raises(ZeroDivisionError):
            LaurentTail((0, 0)).invert()

    def test_tail_sum_truncates(self):
        assert LaurentTail((1, 2, 3)) + LaurentTail((1, 1)) == LaurentTail((2, 3))

    def test_tail_product(self):
        # (-1/z) * (-1/z) = 1/z^2
        assert LaurentTail((1,)) * LaurentTail((1,)) == LaurentTail((0, -1))

    def test_first_nonzero(self):
        assert LaurentTail((0, 0, 5)).first_nonzero() == 2
        assert LaurentTail((0, 0)).first_nonzero() is None
        assert LaurentTail((0, 0, 5, 1, 1, 1)).steps_needed() == 6


class TestRationalFunction:
    def test_equality_after_cancellation(self):
        left = RationalFunction(Poly((-1, 0, 1)), Z - 1)
        right = RationalFunction(Z + 1, ONE)
        assert left == right
        assert hash(left) == hash(right)

    def test_reduced_denominator_is_monic(self):
        reduced = RationalFunction(Poly((2,)), Poly((0, 4))).reduced()
        assert reduced.denom == Z
        assert reduced.numer == Poly.constant(Fraction(1, 2))

    def test_evaluate(self):
        assert RationalFunction(ONE, Z + 1)(1) == Fraction(1, 2)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(ONE, Poly())

    def test_vanishes_at_infinity(self):
        assert RationalFunction(ONE, Z).vanishes_at_infinity
        assert not RationalFunction(Z, Z + 1).vanishes_at_infinity


class TestLinearFractional:
    def test_parameter_pairs(self):
        assert parameter_pair(ZERO) == (Poly(), ONE)
        assert parameter_pair(INFINITY) == (ONE, Poly())
        assert parameter_pair(Fraction(1, 2)) == (Poly.constant(Fraction(1, 2)), ONE)

    def test_identity(self):
        identity = PolyMatrix2.identity()
        assert identity.det() == ONE
        assert matrix_apply(identity, RationalFunction(ONE, Z)) == RationalFunction(ONE, Z)

    def test_composition_matches_product(self):
        left = PolyMatrix2(ONE, Poly.constant(2), -Z, ONE)
        right = PolyMatrix2(ONE, Poly(), Z * 3, ONE)
        tau = RationalFunction(ONE, Z + 1)
        assert matrix_apply(left @ right, tau) == matrix_apply(left, matrix_apply(right, tau))

    def test_infinity_selects_first_column(self):
        matrix = PolyMatrix2(ONE, Poly.constant(2), -Z, ONE)
        assert matrix_apply(matrix, INFINITY) == RationalFunction(ONE, -Z)

    def test_degenerate_transform(self):
        matrix = PolyMatrix2(ONE, Poly(), Poly(), Poly())
        with pytest.raises(DegenerateTransformError):
            matrix_apply(matrix, ZERO)

    def test_evaluate(self):
        matrix = PolyMatrix2(ONE, Poly.constant(2), -Z, Z + 1)
        assert matrix.evaluate(2) == (1, 2, -2, 3)
