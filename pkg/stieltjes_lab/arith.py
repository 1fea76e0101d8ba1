"""
Exact univariate arithmetic: polynomials, 2x2 polynomial matrices, rational functions and
truncated expansions at infinity. Every coefficient is a fractions.Fraction.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union, cast

from .util import DegenerateTransformError

Scalar = Union[Fraction, int]


class DegreeSentinel(Enum):
    """Degree of the zero polynomial."""

    MINUS_INFINITY = "-inf"


class Point(Enum):
    """Boundary values of a linear-fractional parameter."""

    ZERO = "zero"
    INFINITY = "infinity"


ZERO = Point.ZERO
INFINITY = Point.INFINITY


def _fractions(values: Iterable[Scalar]) -> List[Fraction]:
    return [Fraction(v) for v in values]


@dataclass(frozen=True)
class Poly:
    """Polynomial in z with rational coefficients, lowest degree first.

    Trailing zeros are stripped on construction so equal polynomials compare equal.

    Example:
        >>> Poly([2, -4, 1])  # z^2 - 4z + 2
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        values = _fractions(self.coeffs)
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, coefficient: Scalar, power: int) -> "Poly":
        if power < 0:
            raise ValueError(f"negative power ({power}) is not a polynomial")
        return cls(tuple([0] * power + [coefficient]))

    @classmethod
    def z(cls) -> "Poly":
        return cls((0, 1))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Union[int, DegreeSentinel]:
        if not self.coeffs:
            return DegreeSentinel.MINUS_INFINITY
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __call__(self, point: Scalar) -> Fraction:
        result = Fraction(0)
        for coeff in reversed(self.coeffs):
            result = result * point + coeff
        return result

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        other_poly = _as_poly(other)
        if other_poly is None:
            return NotImplemented
        size = max(len(self.coeffs), len(other_poly.coeffs))
        return Poly(tuple(self.coefficient(i) + other_poly.coefficient(i) for i in range(size)))

    __radd__ = __add__

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        other_poly = _as_poly(other)
        if other_poly is None:
            return NotImplemented
        return self + (-other_poly)

    def __rsub__(self, other: Scalar) -> "Poly":
        other_poly = _as_poly(other)
        if other_poly is None:
            return NotImplemented
        return other_poly - self

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        other_poly = _as_poly(other)
        if other_poly is None:
            return NotImplemented
        if self.is_zero or other_poly.is_zero:
            return Poly()
        result = [Fraction(0)] * (len(self.coeffs) + len(other_poly.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other_poly.coeffs):
                result[i + j] += a * b
        return Poly(tuple(result))

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "Poly":
        if isinstance(scalar, Poly):
            return NotImplemented
        divisor = Fraction(scalar)
        if divisor == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return Poly(tuple(c / divisor for c in self.coeffs))

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by the zero polynomial")
        remainder = list(self.coeffs)
        shift = len(remainder) - len(other.coeffs)
        if shift < 0:
            return Poly(), self
        quotient = [Fraction(0)] * (shift + 1)
        lead = other.leading
        for k in range(shift, -1, -1):
            factor = remainder[k + len(other.coeffs) - 1] / lead
            quotient[k] = factor
            if factor == 0:
                continue
            for i, c in enumerate(other.coeffs):
                remainder[k + i] -= factor * c
        return Poly(tuple(quotient)), Poly(tuple(remainder[: len(other.coeffs) - 1]))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def times_z(self, power: int = 1) -> "Poly":
        """Multiply by z**power."""
        if self.is_zero:
            return self
        return Poly(tuple([Fraction(0)] * power) + self.coeffs)

    def quotient_by_z(self) -> "Poly":
        """(p(z) - p(0)) / z"""
        return Poly(self.coeffs[1:])

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroDivisionError("the zero polynomial has no monic form")
        return self / self.leading

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            coeff = self.coeffs[power]
            if coeff == 0:
                continue
            magnitude = abs(coeff)
            sign = "-" if coeff < 0 else "+"
            if power == 0:
                body = str(magnitude)
            else:
                factor = "z" if power == 1 else f"z^{power}"
                body = factor if magnitude == 1 else f"{magnitude}*{factor}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _as_poly(value: object) -> Optional[Poly]:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Poly.constant(value)
    return None


def poly_gcd(left: Poly, right: Poly) -> Poly:
    """Monic greatest common divisor (the zero polynomial when both inputs are zero)."""
    a, b = left, right
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a.monic()


def poly_neg_index(poly: Poly) -> int:
    """Number of negative squares of a real polynomial seen as a generalized Nevanlinna function.

    Depends only on the degree and the sign of the leading coefficient. The zero
    polynomial maps to 0.
    """
    if poly.is_zero:
        return 0
    degree = cast(int, poly.degree)
    if poly.leading < 0 and degree % 2 == 1:
        return (degree + 1) // 2
    return degree // 2


def series_inverse(series: Sequence[Fraction], terms: int) -> List[Fraction]:
    """First `terms` coefficients of 1/a(w) for a power series with a(0) != 0."""
    if not series or series[0] == 0:
        raise ZeroDivisionError("power series with a vanishing constant term has no inverse")
    inverse = [Fraction(1) / series[0]]
    for k in range(1, terms):
        total = Fraction(0)
        for i in range(1, min(k, len(series) - 1) + 1):
            total += series[i] * inverse[k - i]
        inverse.append(-total / series[0])
    return inverse[:terms]


@dataclass(frozen=True)
class LaurentTail:
    """Truncated expansion -c_0/z - c_1/z^2 - ... - c_L/z^(L+1) at infinity.

    The sign convention makes the coefficients of a moment function f(z) = -sum s_j z^(-j-1)
    the moments themselves. An empty tail carries no information beyond f = O(1/z).
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_fractions(self.coeffs)))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, index):
        return self.coeffs[index]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def first_nonzero(self) -> Optional[int]:
        for index, coeff in enumerate(self.coeffs):
            if coeff != 0:
                return index
        return None

    def power_series(self) -> List[Fraction]:
        """Coefficients e_0, e_1, ... of the same function written in w = 1/z."""
        return [Fraction(0)] + [-c for c in self.coeffs]

    @classmethod
    def from_power_series(cls, series: Sequence[Fraction]) -> "LaurentTail":
        if series and series[0] != 0:
            raise ValueError("a tail must vanish at infinity (nonzero constant term)")
        return cls(tuple(-c for c in series[1:]))

    def __neg__(self) -> "LaurentTail":
        return LaurentTail(tuple(-c for c in self.coeffs))

    def scale(self, factor: Scalar) -> "LaurentTail":
        return LaurentTail(tuple(factor * c for c in self.coeffs))

    def __add__(self, other: "LaurentTail") -> "LaurentTail":
        size = min(len(self), len(other))
        return LaurentTail(tuple(a + b for a, b in zip(self.coeffs[:size], other.coeffs[:size])))

    def __mul__(self, other: "LaurentTail") -> "LaurentTail":
        # the product vanishes to second order, so one more coefficient is exact
        size = min(len(self), len(other)) + 1
        left, right = self.power_series(), other.power_series()
        product = [Fraction(0)] * (size + 1)
        for i in range(1, size + 1):
            product[i] = sum(
                (
                    left[k] * right[i - k]
                    for k in range(1, i)
                    if k < len(left) and i - k < len(right)
                ),
                Fraction(0),
            )
        return LaurentTail.from_power_series(product)

    def steps_needed(self) -> Optional[int]:
        """Number of tail coefficients the next inversion consumes (None for a vanishing tail)."""
        first = self.first_nonzero()
        if first is None:
            return None
        return 2 * (first + 1)

    def invert(self) -> Tuple[Poly, "LaurentTail"]:
        """Split -1/f into its polynomial part and the remaining tail.

        If c_(nu-1) is the first nonzero coefficient, -1/f has degree nu at infinity and
        the split needs the 2*nu coefficients c_0 ... c_(2nu-1).

        Returns:
            (p, r) such that -1/f = p(z) + r(z) with r a tail of length L + 1 - 2*nu

        Raises:
            ZeroDivisionError: every stored coefficient is zero
            ValueError: fewer than 2*nu coefficients are stored
        """
        first = self.first_nonzero()
        if first is None:
            raise ZeroDivisionError("cannot invert a vanishing tail")
        nu = first + 1
        if len(self) < 2 * nu:
            raise ValueError(
                f"tail of length {len(self)} is too short to invert (needs {2 * nu} coefficients)"
            )
        # f = -w^nu g(w), so -1/f = w^(-nu) / g(w) = sum h_k z^(nu - k)
        reduced = list(self.coeffs[first:])
        inverse = series_inverse(reduced, len(reduced))
        poly_part = Poly(tuple(inverse[nu - i] for i in range(nu + 1)))
        remainder = LaurentTail(tuple(-h for h in inverse[nu + 1 :]))
        return poly_part, remainder


def series_at_infinity(numer: Poly, denom: Poly, order: int) -> LaurentTail:
    """Expand numer/denom at infinity as a tail c_0 ... c_order.

    Raises:
        ZeroDivisionError: the denominator is the zero polynomial
        ValueError: the rational function does not vanish at infinity
    """
    if denom.is_zero:
        raise ZeroDivisionError("zero denominator")
    if not numer.is_zero and cast(int, numer.degree) >= cast(int, denom.degree):
        raise ValueError("nonvanishing at infinity")
    if order < 0:
        return LaurentTail()
    top = cast(int, denom.degree)
    # numer/denom = N(w)/D(w) with both polynomials reversed against the denominator degree
    rev_numer = [numer.coefficient(top - k) for k in range(order + 2)]
    rev_denom = [denom.coefficient(top - k) for k in range(order + 2)]
    series: List[Fraction] = []
    for k in range(order + 2):
        total = rev_numer[k]
        for i in range(1, k + 1):
            total -= rev_denom[i] * series[k - i]
        series.append(total / rev_denom[0])
    return LaurentTail.from_power_series(series)


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """numer/denom, stored as given; equality and hashing use the reduced form."""

    numer: Poly
    denom: Poly

    def __post_init__(self):
        if self.denom.is_zero:
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def from_poly(cls, poly: Poly) -> "RationalFunction":
        return cls(poly, Poly.constant(1))

    def reduced(self) -> "RationalFunction":
        """Cancel the common factor and make the denominator monic."""
        common = poly_gcd(self.numer, self.denom)
        numer, denom = self.numer // common, self.denom // common
        lead = denom.leading
        return RationalFunction(numer / lead, denom / lead)

    def _key(self) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        reduced = self.reduced()
        return reduced.numer.coeffs, reduced.denom.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __call__(self, point: Scalar) -> Fraction:
        value = self.denom(point)
        if value == 0:
            raise ZeroDivisionError(f"denominator vanishes at {point}")
        return self.numer(point) / value

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numer, self.denom)

    @property
    def vanishes_at_infinity(self) -> bool:
        return self.numer.is_zero or cast(int, self.numer.degree) < cast(int, self.denom.degree)

    def series(self, order: int) -> LaurentTail:
        return series_at_infinity(self.numer, self.denom, order)

    def __str__(self) -> str:
        return f"({self.numer}) / ({self.denom})"


Parameter = Union[RationalFunction, Poly, Point, Fraction, int]


def parameter_pair(tau: Parameter) -> Tuple[Poly, Poly]:
    """Homogeneous (numerator, denominator) pair of a linear-fractional parameter."""
    if tau is Point.ZERO:
        return Poly(), Poly.constant(1)
    if tau is Point.INFINITY:
        return Poly.constant(1), Poly()
    if isinstance(tau, RationalFunction):
        return tau.numer, tau.denom
    if isinstance(tau, Poly):
        return tau, Poly.constant(1)
    return Poly.constant(tau), Poly.constant(1)


@dataclass(frozen=True)
class PolyMatrix2:
    """2x2 matrix of polynomials [[w11, w12], [w21, w22]]."""

    w11: Poly
    w12: Poly
    w21: Poly
    w22: Poly

    @classmethod
    def identity(cls) -> "PolyMatrix2":
        return cls(Poly.constant(1), Poly(), Poly(), Poly.constant(1))

    def __matmul__(self, other: "PolyMatrix2") -> "PolyMatrix2":
        return PolyMatrix2(
            self.w11 * other.w11 + self.w12 * other.w21,
            self.w11 * other.w12 + self.w12 * other.w22,
            self.w21 * other.w11 + self.w22 * other.w21,
            self.w21 * other.w12 + self.w22 * other.w22,
        )

    def det(self) -> Poly:
        return self.w11 * self.w22 - self.w12 * self.w21

    def entries(self) -> Tuple[Poly, Poly, Poly, Poly]:
        return self.w11, self.w12, self.w21, self.w22

    def evaluate(self, point: Scalar) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.w11(point), self.w12(point), self.w21(point), self.w22(point)


def matrix_apply(matrix: PolyMatrix2, tau: Parameter) -> RationalFunction:
    """Linear-fractional transform (w11 tau + w12) / (w21 tau + w22).

    Raises:
        DegenerateTransformError: the resulting denominator is identically zero
    """
    tau_numer, tau_denom = parameter_pair(tau)
    numer = matrix.w11 * tau_numer + matrix.w12 * tau_denom
    denom = matrix.w21 * tau_numer + matrix.w22 * tau_denom
    if denom.is_zero:
        raise DegenerateTransformError("degenerate transform")
    return RationalFunction(numer, denom)
