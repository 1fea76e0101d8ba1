"""
Moment sequences and their Hankel matrices: determinants, normal indices, inertia and the
class indices (kappa, k)
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .arith import LaurentTail
from .util import InsufficientMomentsError, RationalLike, logger, to_rational

Matrix = List[List[Fraction]]


@dataclass(frozen=True)
class MomentSequence:
    """Finite prefix s_0 ... s_L of a moment sequence.

    The moments are the tail coefficients of f(z) = -sum s_j z^(-j-1). An empty sequence only
    appears as the induced sequence left once every moment has been consumed.
    """

    moments: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "moments", tuple(to_rational(m) for m in self.moments))

    @classmethod
    def of(cls, *values: RationalLike) -> "MomentSequence":
        return cls(tuple(to_rational(v) for v in values))

    @classmethod
    def from_tail(cls, tail: LaurentTail) -> "MomentSequence":
        return cls(tail.coeffs)

    def as_tail(self) -> LaurentTail:
        return LaurentTail(self.moments)

    @property
    def last_index(self) -> int:
        return len(self.moments) - 1

    def __len__(self) -> int:
        return len(self.moments)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.moments)

    def __getitem__(self, index):
        return self.moments[index]

    def scaled(self, factor: RationalLike) -> "MomentSequence":
        value = to_rational(factor)
        return MomentSequence(tuple(value * m for m in self.moments))

    def max_order(self, shift: int = 0) -> int:
        """Largest feasible order n, i.e. 2n - 1 <= L; S_n and S_n+ share it."""
        _check_shift(shift)
        return len(self.moments) // 2

    def hankel_matrix(self, n: int, shift: int = 0) -> Matrix:
        _check_size(self, n, shift)
        return [[self.moments[i + j + shift] for j in range(n)] for i in range(n)]


class Inertia(NamedTuple):
    negative: int
    zero: int
    positive: int


@dataclass
class HankelReport:
    normal_indices: Tuple[int, ...]
    dets: Dict[int, Fraction] = field(default_factory=dict)
    dets_plus: Dict[int, Fraction] = field(default_factory=dict)
    inertia: Dict[Tuple[int, int], Inertia] = field(default_factory=dict)
    kappa: Optional[int] = None
    k_plus: Optional[int] = None
    kappa_stabilized: bool = False
    k_stabilized: bool = False
    regular: bool = True


def _check_shift(shift: int) -> None:
    if shift not in (0, 1):
        raise ValueError(f"shift must be 0 or 1 (got {shift})")


def _check_size(s: MomentSequence, n: int, shift: int) -> None:
    _check_shift(shift)
    if n < 0:
        raise ValueError(f"matrix order must be nonnegative (got {n})")
    # S_n+ reaches s_(2n-1); both shifts need 2n moments
    if n and 2 * n - 1 > s.last_index:
        raise InsufficientMomentsError(2 * n, len(s), f"Hankel matrix of order {n}")


def bareiss_det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination with row swaps on zero pivots.

    Every division in the elimination is exact; with integer input the intermediate entries
    stay integral.
    """
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    rows = [[Fraction(v) for v in row] for row in matrix]
    sign = 1
    previous = Fraction(1)
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if rows[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / previous
        previous = rows[k][k]
    return sign * rows[size - 1][size - 1]


def hankel_det(s: MomentSequence, n: int, shift: int = 0) -> Fraction:
    """Determinant D_n (shift 0) or D_n+ (shift 1) of the Hankel matrix (s_(i+j+shift)).

    Args:
        s: the moments
        n: matrix order, D_0 = 1 by convention
        shift: 0 or 1

    Raises:
        InsufficientMomentsError: fewer than 2n moments are available

    Example:
        >>> hankel_det(MomentSequence.of(1, 1, 2, 6), 2, 1)
        Fraction(2, 1)
    """
    _check_size(s, n, shift)
    if n == 0:
        return Fraction(1)
    return bareiss_det(s.hankel_matrix(n, shift))


def symmetric_inertia(matrix: Sequence[Sequence[Fraction]]) -> Inertia:
    """Exact inertia of a symmetric rational matrix by congruent elimination.

    A nonzero diagonal entry is used as a 1x1 pivot. When the whole diagonal vanishes a nonzero
    off-diagonal entry b gives the 2x2 pivot [[0, b], [b, 0]], which carries one negative and
    one positive square.
    """
    rows = [[Fraction(v) for v in row] for row in matrix]
    negative = zero = positive = 0
    while rows:
        size = len(rows)
        pivot = next((i for i in range(size) if rows[i][i] != 0), None)
        if pivot is not None:
            value = rows[pivot][pivot]
            if value < 0:
                negative += 1
            else:
                positive += 1
            rest = [i for i in range(size) if i != pivot]
            rows = [
                [rows[r][c] - rows[r][pivot] * rows[pivot][c] / value for c in rest] for r in rest
            ]
            continue
        pair = next(
            ((i, j) for i in range(size) for j in range(i + 1, size) if rows[i][j] != 0), None
        )
        if pair is None:
            zero += size
            break
        i, j = pair
        b = rows[i][j]
        logger.debug(f"2x2 pivot at ({i}, {j}) on a vanishing diagonal")
        negative += 1
        positive += 1
        rest = [r for r in range(size) if r not in (i, j)]
        rows = [
            [rows[r][c] - (rows[r][i] * rows[j][c] + rows[r][j] * rows[i][c]) / b for c in rest]
            for r in rest
        ]
    return Inertia(negative, zero, positive)


def inertia(s: MomentSequence, n: int, shift: int = 0) -> Inertia:
    """Inertia (negative, zero, positive) of S_n (shift 0) or S_n+ (shift 1)."""
    _check_size(s, n, shift)
    return symmetric_inertia(s.hankel_matrix(n, shift))


def sign_changes(values: Sequence[Fraction]) -> int:
    """Sign changes along a sequence of nonzero numbers."""
    return sum(1 for a, b in zip(values, values[1:]) if (a < 0) != (b < 0))


def normal_indices(s: MomentSequence) -> Tuple[int, ...]:
    """All n with 2n - 1 <= L and D_n != 0, increasing."""
    return tuple(n for n in range(1, s.max_order(0) + 1) if hankel_det(s, n) != 0)


def _stabilized(values: List[int]) -> bool:
    if not values:
        return False
    window = values[len(values) // 2 :]
    return all(v == window[-1] for v in window)


def class_indices(s: MomentSequence) -> HankelReport:
    """Hankel analysis of a finite prefix.

    kappa and k are the negative indices of the largest feasible S_n and S_n+. Each comes with
    a flag telling whether the value was constant over the last half of the feasible orders;
    a finite prefix never proves that it has settled.
    """
    dets = {n: hankel_det(s, n, 0) for n in range(1, s.max_order(0) + 1)}
    dets_plus = {n: hankel_det(s, n, 1) for n in range(1, s.max_order(1) + 1)}
    report = HankelReport(
        normal_indices=tuple(n for n, value in dets.items() if value != 0),
        dets=dets,
        dets_plus=dets_plus,
    )
    for shift, orders in ((0, dets), (1, dets_plus)):
        for n in orders:
            report.inertia[(n, shift)] = inertia(s, n, shift)

    negatives = [report.inertia[(n, 0)].negative for n in sorted(dets)]
    negatives_plus = [report.inertia[(n, 1)].negative for n in sorted(dets_plus)]
    if negatives:
        report.kappa = negatives[-1]
        report.kappa_stabilized = _stabilized(negatives)
    if negatives_plus:
        report.k_plus = negatives_plus[-1]
        report.k_stabilized = _stabilized(negatives_plus)
    if not (report.kappa_stabilized and report.k_stabilized):
        logger.warning(f"class indices not stabilized: S_n {negatives}, S_n+ {negatives_plus}")

    # a normal index without a computable D_n+ counts against regularity
    report.regular = all(dets_plus.get(n, 0) != 0 for n in report.normal_indices)
    return report
