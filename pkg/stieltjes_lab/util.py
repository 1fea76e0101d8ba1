import logging
import re
from fractions import Fraction
from typing import Iterable, List, Sequence, Union

# name the logger after the package to make it simple to disable for packages using this one as a dependency
# https://stackoverflow.com/questions/11029717/how-do-i-disable-log-messages-from-the-requests-library

logger = logging.getLogger("stieltjes_lab")

RationalLike = Union[Fraction, int, str]

RATIONAL_PATTERN = re.compile(r"^\s*[-+]?\d+\s*(/\s*\d+\s*)?$")


class StieltjesError(Exception):
    pass


class InsufficientMomentsError(StieltjesError):
    def __init__(self, required: int, available: int, context: str = ""):
        self.required = required
        self.available = available
        self.context = context
        where = f" ({context})" if context else ""
        super().__init__(
            f"need more moments{where}: {required} required but only {available} available"
        )


class NotRegularError(StieltjesError):
    def __init__(self, step: int):
        self.step = step
        super().__init__(f"sequence not regular at step {step}")


class DegenerateCoefficientError(StieltjesError):
    pass


class DegenerateTransformError(StieltjesError):
    pass


class ParameterClassError(StieltjesError):
    pass


class GammaPoleError(StieltjesError):
    pass


class ConsistencyError(StieltjesError):
    pass


def to_rational(value: RationalLike) -> Fraction:
    """Convert an integer, Fraction or "p/q" string to an exact Fraction.

    Floats are refused since they would silently carry a binary rounding error.

    Raises:
        ValueError: the string is not a rational literal
        TypeError: the value is a float or some other type

    Example:
        >>> to_rational("-15/16")
        Fraction(-15, 16)
    """
    if isinstance(value, bool):
        raise TypeError(f"expected a rational, got bool ({value})")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        if not RATIONAL_PATTERN.match(value):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"expected an int, Fraction or 'p/q' string, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "p/q" (or "p" for integers); never as a float."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_rationals(values: Iterable[Fraction]) -> List[str]:
    return [format_rational(v) for v in values]


def prefix_match_length(left: Sequence[Fraction], right: Sequence[Fraction]) -> int:
    """Number of leading positions where both sequences agree."""
    count = 0
    for a, b in zip(left, right):
        if a != b:
            break
        count += 1
    return count
