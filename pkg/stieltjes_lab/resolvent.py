"""
Resolvent matrices of the even and odd truncated problems and the linear-fractional
description of their solutions
"""
from dataclasses import dataclass
from functools import reduce
from typing import List, NamedTuple, Tuple, cast

from .arith import (
    Parameter,
    Poly,
    PolyMatrix2,
    RationalFunction,
    matrix_apply,
    parameter_pair,
    poly_neg_index,
)
from .constants import PARITIES
from .contfrac import SFraction, schur_s_fraction
from .hankel import MomentSequence
from .polysys import stieltjes_polys
from .util import ConsistencyError, ParameterClassError, logger, prefix_match_length

ONE = Poly.constant(1)


@dataclass(frozen=True)
class ResolventMatrix:
    W: PolyMatrix2
    parity: str
    N: int
    factors: Tuple[PolyMatrix2, ...]


class IndexFactor(NamedTuple):
    z_m: int  # negative index of z m_j(z)
    m: int  # of m_j(z)
    z_l: int  # of z l_j


@dataclass(frozen=True)
class IndexBudget:
    kappa_N: int
    k_N: int
    k_N_plus: int
    per_factor: Tuple[IndexFactor, ...]


class Candidate(NamedTuple):
    f: RationalFunction
    matched_order: int


def m_factor(m: Poly) -> PolyMatrix2:
    """M_j(z) = [[1, 0], [-z m_j(z), 1]]"""
    return PolyMatrix2(ONE, Poly(), -m.times_z(), ONE)


def l_factor(l) -> PolyMatrix2:
    """L_j = [[1, l_j], [0, 1]]"""
    return PolyMatrix2(ONE, Poly.constant(l), Poly(), ONE)


def elementary_factors(sf: SFraction, N: int, parity: str = PARITIES.EVEN) -> List[PolyMatrix2]:
    """M_1, L_1, ..., M_N, L_N (even) or M_1, L_1, ..., L_(N-1), M_N (odd)."""
    factors = []
    for j, (m, l) in enumerate(sf.pairs[:N], start=1):
        factors.append(m_factor(m))
        if parity == PARITIES.EVEN or j < N:
            factors.append(l_factor(l))
    return factors


def _check_order(sf: SFraction, N: int, parity: str) -> None:
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {sorted(PARITIES.values())} (got {parity!r})")
    lowest = 0 if parity == PARITIES.EVEN else 1
    if not lowest <= N <= len(sf):
        raise ValueError(f"N = {N} outside {lowest} ... {len(sf)} for the {parity} problem")


def resolvent(sf: SFraction, N: int, parity: str = PARITIES.EVEN) -> ResolventMatrix:
    """Resolvent matrix W_2N (even) or W_(2N-1) (odd).

    The even matrix has rows (Q+_(2N-1), Q+_(2N)) and (P+_(2N-1), P+_(2N)); the odd one has rows
    (Q+_(2N-1), Q+_(2N-2)) and (P+_(2N-1), P+_(2N-2)). The matrix is assembled from the
    polynomials and again as the product of the elementary factors.

    Raises:
        ConsistencyError: the two constructions disagree or det W is not 1
    """
    _check_order(sf, N, parity)
    plus = stieltjes_polys(sf, N)
    # prepend index -1 so that P[j + 1] is P+_j
    P = (Poly(),) + plus.P
    Q = (ONE,) + plus.Q
    first = 2 * N
    second = 2 * N + 1 if parity == PARITIES.EVEN else 2 * N - 1
    W = PolyMatrix2(Q[first], Q[second], P[first], P[second])

    factors = elementary_factors(sf, N, parity)
    product = reduce(lambda left, right: left @ right, factors, PolyMatrix2.identity())
    if product != W:
        raise ConsistencyError(
            f"{parity} resolvent for N = {N}: factor product differs from the assembled matrix"
        )
    if W.det() != ONE:
        raise ConsistencyError(f"{parity} resolvent for N = {N}: det W = {W.det()}")
    return ResolventMatrix(W, parity, N, tuple(factors))


def index_budget(sf: SFraction, N: int) -> IndexBudget:
    """Negative indices carried by the elementary factors of W_2N.

    kappa_N = sum of k(z m_j), k_N+ = sum of k(m_j) + sum of k(z l_j) and
    k_N = k_N+ - k(z l_N), with k the polynomial negative index.
    """
    _check_order(sf, N, PARITIES.EVEN)
    per_factor = tuple(
        IndexFactor(
            poly_neg_index(m.times_z()), poly_neg_index(m), poly_neg_index(Poly.monomial(l, 1))
        )
        for m, l in sf.pairs[:N]
    )
    kappa = sum(factor.z_m for factor in per_factor)
    k_plus = sum(factor.m + factor.z_l for factor in per_factor)
    k = k_plus - per_factor[-1].z_l if per_factor else 0
    return IndexBudget(kappa, k, k_plus, per_factor)


def admissible_parameter(tau: Parameter, parity: str) -> bool:
    """Side condition on tau: tau = o(1) (even) or 1/tau = o(z) (odd) at infinity."""
    numer, denom = parameter_pair(tau)
    if parity == PARITIES.EVEN:
        if numer.is_zero:
            return True
        return not denom.is_zero and cast(int, numer.degree) < cast(int, denom.degree)
    if numer.is_zero:
        return False
    return denom.is_zero or cast(int, numer.degree) >= cast(int, denom.degree)


def solution_candidate(W: ResolventMatrix, tau: Parameter, s: MomentSequence) -> Candidate:
    """f = T_W[tau] with the number of leading moments of s it reproduces.

    Raises:
        ParameterClassError: tau violates the side condition of the parity
    """
    if not admissible_parameter(tau, W.parity):
        raise ParameterClassError(f"parameter class violation for the {W.parity} problem: {tau}")
    f = matrix_apply(W.W, tau)
    if not f.vanishes_at_infinity:
        logger.debug(f"T_W[tau] does not vanish at infinity: {f}")
        return Candidate(f, 0)
    expansion = f.series(len(s) - 1)
    return Candidate(f, prefix_match_length(expansion.coeffs, s.moments))


def nesting_holds(s: MomentSequence, N: int, j: int, parity: str = PARITIES.EVEN) -> bool:
    """Compare W_j(s) with W_2N(s) times the resolvent of the induced sequence s^(N).

    The right factor comes from a fresh Schur run on s^(N), not from the pairs of s.
    """
    if not 0 <= N < j:
        raise ValueError(f"need 0 <= N < j (got N = {N}, j = {j})")
    run = schur_s_fraction(s, j)
    induced = schur_s_fraction(run.tails[N], j - N).fraction
    left = resolvent(run.fraction, j, parity).W
    right = resolvent(run.fraction, N).W @ resolvent(induced, j - N, parity).W
    return left == right
