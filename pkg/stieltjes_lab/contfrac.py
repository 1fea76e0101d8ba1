"""
Schur algorithm on moment sequences and the two continued fractions it produces.

The generalized S-fraction

    f(z) = 1 / (-z m_1(z) + 1 / (l_1 + 1 / (-z m_2(z) + 1 / (l_2 + ...))))

and the P-fraction

    f(z) = -b_0 / (a_0(z) - b_1 / (a_1(z) - b_2 / (a_2(z) - ...)))

both encode the tail f(z) = -sum s_j z^(-j-1) of the moments s.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple, cast

from .arith import LaurentTail, Poly, RationalFunction, series_at_infinity, series_inverse
from .hankel import MomentSequence, bareiss_det, hankel_det
from .util import (
    DegenerateCoefficientError,
    InsufficientMomentsError,
    NotRegularError,
    RationalLike,
    logger,
    to_rational,
)

Pair = Tuple[Poly, Fraction]


@dataclass(frozen=True)
class SFraction:
    """Pairs (m_j, l_j) of a generalized S-fraction; every m_j and l_j is nonzero."""

    pairs: Tuple[Pair, ...] = ()

    def __post_init__(self):
        pairs = tuple((m, to_rational(l)) for m, l in self.pairs)
        for index, (m, l) in enumerate(pairs, start=1):
            if m.is_zero:
                raise DegenerateCoefficientError(f"degenerate leading coefficient at pair {index}")
            if l == 0:
                raise DegenerateCoefficientError(f"vanishing l at pair {index}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_values(cls, ms: Sequence[Poly], ls: Sequence[RationalLike]) -> "SFraction":
        if len(ms) != len(ls):
            raise ValueError(f"got {len(ms)} polynomials m but {len(ls)} constants l")
        return cls(tuple((m, to_rational(l)) for m, l in zip(ms, ls)))

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def ms(self) -> Tuple[Poly, ...]:
        return tuple(m for m, _ in self.pairs)

    @property
    def ls(self) -> Tuple[Fraction, ...]:
        return tuple(l for _, l in self.pairs)

    @property
    def leading_coefficients(self) -> Tuple[Fraction, ...]:
        """d_j, the leading coefficient of m_j."""
        return tuple(m.leading for m in self.ms)

    def normal_indices(self) -> Tuple[int, ...]:
        """n_j = sum over i <= j of (deg m_i + 1)."""
        result = []
        total = 0
        for m in self.ms:
            total += cast(int, m.degree) + 1
            result.append(total)
        return tuple(result)

    def determined_moments(self) -> int:
        """Number of leading moments fixed by the pairs, 2 n_N."""
        indices = self.normal_indices()
        return 2 * indices[-1] if indices else 0

    def head(self, count: int) -> "SFraction":
        return SFraction(self.pairs[:count])

    def tail_from(self, step: int) -> "SFraction":
        return SFraction(self.pairs[step:])

    def value(self) -> RationalFunction:
        """The terminating fraction as a rational function (the even convergent)."""
        numer, denom = Poly(), Poly.constant(1)
        for m, l in reversed(self.pairs):
            numer = denom * l + numer
            denom = -(m.times_z() * numer) + denom
        return RationalFunction(numer, denom)


@dataclass(frozen=True)
class PFraction:
    """Atoms (a_j, b_j) of a P-fraction, a_j monic of degree >= 1 and b_j nonzero.

    `truncated` is set when the moments ran out in the middle of the next atom.
    """

    atoms: Tuple[Pair, ...] = ()
    truncated: bool = False

    def __post_init__(self):
        atoms = tuple((a, to_rational(b)) for a, b in self.atoms)
        for index, (a, b) in enumerate(atoms):
            if a.is_zero or a.leading != 1 or cast(int, a.degree) < 1:
                raise DegenerateCoefficientError(f"atom {index}: a must be monic of degree >= 1")
            if b == 0:
                raise DegenerateCoefficientError(f"atom {index}: vanishing b")
        object.__setattr__(self, "atoms", atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def b0(self) -> Fraction:
        if not self.atoms:
            raise ValueError("empty P-fraction has no b0")
        return self.atoms[0][1]

    @property
    def a_polys(self) -> Tuple[Poly, ...]:
        return tuple(a for a, _ in self.atoms)

    @property
    def bs(self) -> Tuple[Fraction, ...]:
        return tuple(b for _, b in self.atoms)

    def btilde(self) -> Tuple[Fraction, ...]:
        """Running products b~_i = b_0 b_1 ... b_i."""
        result: List[Fraction] = []
        product = Fraction(1)
        for b in self.bs:
            product *= b
            result.append(product)
        return tuple(result)

    def normal_indices(self) -> Tuple[int, ...]:
        result = []
        total = 0
        for a in self.a_polys:
            total += cast(int, a.degree)
            result.append(total)
        return tuple(result)


class SchurResult(NamedTuple):
    fraction: SFraction
    induced: MomentSequence
    tails: Tuple[MomentSequence, ...]  # s^(0) ... s^(N)
    consumed: Tuple[int, ...]  # moments used by each step


class InducedSequence(NamedTuple):
    sequence: MomentSequence
    truncated: bool


def _check_tail(tail: LaurentTail, step: int, used: int, available: int) -> int:
    """Position of the first nonzero coefficient, after checking that the step can run."""
    first = tail.first_nonzero()
    if first is None:
        raise InsufficientMomentsError(
            used + 2 * (len(tail) + 1), available, f"no nonzero moment left for step {step}"
        )
    needed = 2 * (first + 1)
    if len(tail) < needed:
        raise InsufficientMomentsError(used + needed, available, f"step {step}")
    return first


def schur_step(tail: LaurentTail, step: int = 1) -> Tuple[Poly, Fraction, LaurentTail]:
    """One Schur step: -1/f = z m(z) - 1/(l + f_1) with f_1 vanishing at infinity.

    Raises:
        NotRegularError: the polynomial part of -1/f vanishes at zero
    """
    poly_part, remainder = tail.invert()
    constant = poly_part.coefficient(0)
    if constant == 0:
        raise NotRegularError(step)
    m = poly_part.quotient_by_z()
    l = -1 / constant
    # l + f_1 = -1 / (constant + remainder)
    shifted = remainder.power_series()
    shifted[0] = constant
    inverse = series_inverse(shifted, len(shifted))
    induced = LaurentTail.from_power_series([Fraction(0)] + [-h for h in inverse[1:]])
    return m, l, induced


def schur_s_fraction(s: MomentSequence, N: Optional[int] = None) -> SchurResult:
    """Run N Schur steps (as many as the moments allow when N is None).

    Args:
        s: the moments
        N: number of (m_j, l_j) pairs to extract

    Returns:
        the S-fraction with the induced sequence s^(N) left after the last step

    Raises:
        NotRegularError: a step met P_j(0) = 0
        InsufficientMomentsError: N steps need more moments than given (the error carries the
            minimal count)

    Example:
        >>> schur_s_fraction(MomentSequence.of(1, 1, 2, 6)).fraction.ls
        (Fraction(1, 1), Fraction(1, 2))
    """
    if N is not None and N < 0:
        raise ValueError(f"number of steps must be nonnegative (got {N})")
    tail = s.as_tail()
    pairs: List[Pair] = []
    tails = [s]
    consumed: List[int] = []
    used = 0
    while N is None or len(pairs) < N:
        step = len(pairs) + 1
        if N is None:
            needed = tail.steps_needed()
            if needed is None or needed > len(tail):
                break
        first = _check_tail(tail, step, used, len(s))
        m, l, tail = schur_step(tail, step)
        pairs.append((m, l))
        consumed.append(2 * (first + 1))
        used += consumed[-1]
        tails.append(MomentSequence.from_tail(tail))
        logger.debug(f"Schur step {step}: m = {m}, l = {l}, {len(tail)} moments left")
    logger.info(f"Schur algorithm: {len(pairs)} pairs from {len(s)} moments")
    return SchurResult(SFraction(tuple(pairs)), tails[-1], tuple(tails), tuple(consumed))


def determinant_step(s: MomentSequence) -> Tuple[Poly, Fraction]:
    """First pair (m_1, l_1) from Hankel determinants instead of series inversion.

    With s_(nu-1) the first nonzero moment, m_1 is (-1)^(nu+1) / D_nu times the nu x nu
    determinant whose rows are (s_(i+c)) for i = 1 ... nu-1 followed by (1, z, ..., z^(nu-1)),
    and l_1 = (-1)^(nu+1) s_(nu-1) D_nu / D_nu+.
    """
    first = s.as_tail().first_nonzero()
    if first is None:
        raise InsufficientMomentsError(2 * (len(s) + 1), len(s), "all moments vanish")
    nu = first + 1
    if len(s) < 2 * nu:
        raise InsufficientMomentsError(2 * nu, len(s), "first determinant step")
    sign = 1 if nu % 2 == 1 else -1  # (-1)^(nu+1)
    det = hankel_det(s, nu)
    det_plus = hankel_det(s, nu, 1)
    if det_plus == 0:
        raise NotRegularError(1)
    rows = [[s[i + c] for c in range(nu)] for i in range(1, nu)]
    expansion = []
    for k in range(nu):
        minor = [[row[c] for c in range(nu) if c != k] for row in rows]
        expansion.append((-1) ** (nu - 1 + k) * bareiss_det(minor))
    m = Poly(tuple(expansion)) * Fraction(sign) / det
    l = sign * s[nu - 1] * det / det_plus
    return m, l


def p_fraction(s: MomentSequence, max_atoms: Optional[int] = None) -> PFraction:
    """P-fraction atoms by repeated tail inversion.

    Each step takes b as the first nonzero coefficient of the tail, a = b * (polynomial part
    of -1/f) and continues on b * (-1/f - polynomial part).

    Raises:
        InsufficientMomentsError: not even the first atom is determined
    """
    tail = s.as_tail()
    atoms: List[Pair] = []
    truncated = False
    while max_atoms is None or len(atoms) < max_atoms:
        first = tail.first_nonzero()
        if first is None:
            break
        if len(tail) < 2 * (first + 1):
            truncated = True
            break
        b = tail[first]
        poly_part, remainder = tail.invert()
        atoms.append((poly_part * b, b))
        tail = remainder.scale(b)
        logger.debug(f"P-fraction atom {len(atoms) - 1}: a = {atoms[-1][0]}, b = {b}")
    if not atoms:
        first = s.as_tail().first_nonzero()
        needed = 2 * (first + 1) if first is not None else 2 * (len(s) + 1)
        raise InsufficientMomentsError(needed, len(s), "no normal index detected")
    return PFraction(tuple(atoms), truncated)


def lanczos_values_at_zero(p: PFraction) -> Tuple[Fraction, ...]:
    """P_0(0) ... P_N(0) from the three-term recurrence evaluated at z = 0."""
    previous, current = Fraction(0), Fraction(1)
    values = [current]
    for a, b in p.atoms:
        previous, current = current, a(0) * current - b * previous
        values.append(current)
    return tuple(values)


def s_from_p(p: PFraction, P_at_zero: Optional[Sequence[RationalLike]] = None) -> SFraction:
    """S-fraction parameters from P-fraction atoms.

    d_i = P_(i-1)(0)^2 / b~_(i-1), l_i = -b~_(i-1) / (P_(i-1)(0) P_i(0)) and
    m_i(z) = d_i (a_(i-1)(z) - a_(i-1)(0)) / z.

    Args:
        p: the P-fraction
        P_at_zero: P_0(0) ... P_N(0); computed from the recurrence when omitted

    Raises:
        NotRegularError: some P_i(0) vanishes
    """
    values = (
        lanczos_values_at_zero(p)
        if P_at_zero is None
        else tuple(to_rational(v) for v in P_at_zero)
    )
    if len(values) != len(p) + 1:
        raise ValueError(f"expected {len(p) + 1} values P_0(0) ... P_N(0), got {len(values)}")
    btilde = p.btilde()
    pairs: List[Pair] = []
    for i in range(1, len(p) + 1):
        if values[i] == 0:
            raise NotRegularError(i)
        d = values[i - 1] ** 2 / btilde[i - 1]
        l = -btilde[i - 1] / (values[i - 1] * values[i])
        pairs.append((p.a_polys[i - 1].quotient_by_z() * d, l))
    return SFraction(tuple(pairs))


def p_from_s(sf: SFraction) -> PFraction:
    """P-fraction atoms from S-fraction pairs.

    b_0 = 1/d_1, a_0 = (z m_1 - 1/l_1)/d_1 and, for j >= 1,
    b_j = 1/(l_j^2 d_j d_(j+1)), a_j = (z m_(j+1) - 1/l_j - 1/l_(j+1))/d_(j+1).
    """
    if not len(sf):
        return PFraction()
    ms, ls, ds = sf.ms, sf.ls, sf.leading_coefficients
    atoms: List[Pair] = [((ms[0].times_z() - 1 / ls[0]) / ds[0], 1 / ds[0])]
    for j in range(1, len(sf)):
        b = 1 / (ls[j - 1] ** 2 * ds[j - 1] * ds[j])
        a = (ms[j].times_z() - (1 / ls[j - 1] + 1 / ls[j])) / ds[j]
        atoms.append((a, b))
    return PFraction(tuple(atoms))


def induced_sequence(sf: SFraction, N: int, length: int) -> InducedSequence:
    """Moments s^(N) of the fraction that starts at m_(N+1).

    Pairs past the last one are taken as absent, so the expansion is exact only up to the
    moments the remaining pairs determine; asking for more sets `truncated`.
    """
    if not 0 <= N <= len(sf):
        raise ValueError(f"step {N} outside 0 ... {len(sf)}")
    if length < 0:
        raise ValueError(f"length must be nonnegative (got {length})")
    rest = sf.tail_from(N)
    value = rest.value()
    tail = series_at_infinity(value.numer, value.denom, length - 1)
    return InducedSequence(MomentSequence.from_tail(tail), length > rest.determined_moments())


def moments_from_s_fraction(sf: SFraction, length: int) -> MomentSequence:
    """Expansion of the whole (terminating) fraction; inverse of schur_s_fraction."""
    return induced_sequence(sf, 0, length).sequence
