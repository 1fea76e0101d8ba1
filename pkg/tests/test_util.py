from fractions import Fraction

import pytest

from stieltjes_lab import logger
from stieltjes_lab.util import (
    InsufficientMomentsError,
    NotRegularError,
    format_rational,
    format_rationals,
    prefix_match_length,
    to_rational,
)


class TestToRational:
    @pytest.mark.parametrize(
        "value,expected",
        [
            ["-15/16", Fraction(-15, 16)],
            [" 3 / 4 ", Fraction(3, 4)],
            ["+7", Fraction(7)],
            [2, Fraction(2)],
            [Fraction(1, 3), Fraction(1, 3)],
        ],
    )
    def test_valid(self, value, expected):
        assert to_rational(value) == expected

    @pytest.mark.parametrize("value", ["1.5", "1/", "a/b", "", "1/2/3"])
    def test_not_a_literal(self, value):
        with pytest.raises(ValueError):
            to_rational(value)

    @pytest.mark.parametrize("value", [0.5, True, None])
    def test_wrong_type(self, value):
        with pytest.raises(TypeError):
            to_rational(value)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            to_rational("1/0")


@pytest.mark.parametrize(
    "value,text", [[Fraction(3), "3"], [Fraction(-1, 2), "-1/2"], [Fraction(0), "0"]]
)
def test_format_rational(value, text):
    assert format_rational(value) == text
    assert to_rational(text) == value


def test_format_rationals():
    assert format_rationals([Fraction(1, 2), Fraction(2)]) == ["1/2", "2"]


@pytest.mark.parametrize(
    "left,right,expected",
    [[[1, 2, 3], [1, 2, 4], 2], [[1, 2], [1, 2, 3], 2], [[0], [1], 0], [[], [1], 0]],
)
def test_prefix_match_length(left, right, expected):
    assert prefix_match_length(left, right) == expected


class TestErrors:
    def test_insufficient_moments_message(self):
        err = InsufficientMomentsError(6, 4, "D_3")
        assert err.required == 6
        assert err.available == 4
        assert "(D_3)" in str(err)

    def test_not_regular_step(self):
        assert NotRegularError(2).step == 2


def test_package_logger_name():
    assert logger.name == "stieltjes_lab"
