"""
Pade approximants at infinity, the determinacy evidence report and pointwise probes of the
resolvent matrices
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, cast

from .arith import Poly, RationalFunction, matrix_apply
from .constants import DEFAULT_TAIL_RATIO, DEFAULT_TAIL_WINDOW, PADE_KINDS, VERDICTS
from .contfrac import SFraction, p_fraction, schur_s_fraction
from .hankel import MomentSequence
from .polysys import lanczos, stieltjes_polys
from .resolvent import resolvent
from .util import ConsistencyError, InsufficientMomentsError, logger, prefix_match_length

Values2x2 = Tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class PadeResult:
    kind: str
    j: int
    n: int  # the normal index n_j
    numer: Poly
    denom: Poly
    verified_order: int

    @property
    def function(self) -> RationalFunction:
        return RationalFunction(self.numer, self.denom)


def pade(s: MomentSequence, j: int, kind: str = PADE_KINDS.DIAGONAL) -> PadeResult:
    """Diagonal [n_j/n_j] or subdiagonal [n_j/n_j] with a denominator vanishing at 0.

    The diagonal approximant is -Q_j/P_j and only needs the j-th normal index. The subdiagonal
    one is Q+_(2j-1)/P+_(2j-1) and needs the Schur algorithm, hence a regular sequence.
    The order is checked against s by exact series comparison.

    Raises:
        ValueError: j < 1 or an unknown kind
        InsufficientMomentsError: the j-th normal index is not determined by s
        NotRegularError: (subdiagonal) the Schur algorithm breaks down before step j
        ConsistencyError: the approximant misses the order it must reach
    """
    if j < 1:
        raise ValueError(f"j must be at least 1 (got {j})")
    if kind == PADE_KINDS.DIAGONAL:
        p = p_fraction(s, max_atoms=j)
        if len(p) < j:
            raise InsufficientMomentsError(
                2 * (p.normal_indices()[-1] + 1),
                len(s),
                f"normal index {j} for the diagonal approximant",
            )
        polys = lanczos(p, j)
        numer, denom = -polys.Q[j], polys.P[j]
        n = cast(int, denom.degree)
        required = 2 * n
    elif kind == PADE_KINDS.SUBDIAGONAL:
        run = schur_s_fraction(s, j)
        plus = stieltjes_polys(run.fraction, j)
        numer, denom = plus.Q[2 * j - 1], plus.P[2 * j - 1]
        n = run.fraction.normal_indices()[-1]
        required = 2 * n - 1
        if denom(0) != 0 or denom.degree != n:
            raise ConsistencyError(
                f"subdiagonal denominator {denom} is not of degree {n} with a root at 0"
            )
    else:
        raise ValueError(f"kind must be one of {sorted(PADE_KINDS.values())} (got {kind!r})")

    expansion = RationalFunction(numer, denom).series(len(s) - 1)
    verified = prefix_match_length(expansion.coeffs, s.moments)
    if verified < min(required, len(s)):
        raise ConsistencyError(
            f"{kind} approximant for j = {j} matches {verified} moments, expected {required}"
        )
    logger.debug(f"{kind} Pade approximant j = {j}: n = {n}, order {verified}")
    return PadeResult(kind, j, n, numer, denom, verified)


class FactoredPadeReport(NamedTuple):
    diagonal: bool
    subdiagonal: bool

    @property
    def passed(self) -> bool:
        return self.diagonal and self.subdiagonal


def pade_factored_check(s: MomentSequence, N: int, j: int) -> FactoredPadeReport:
    """Compare the approximants of s at j with T_W2N applied to those of s^(N) at j - N."""
    if not 0 <= N < j:
        raise ValueError(f"need 0 <= N < j (got N = {N}, j = {j})")
    run = schur_s_fraction(s, j)
    W = resolvent(run.fraction, N).W
    induced = run.tails[N]
    outcome = {}
    for kind in (PADE_KINDS.DIAGONAL, PADE_KINDS.SUBDIAGONAL):
        whole = pade(s, j, kind).function
        inner = pade(induced, j - N, kind).function
        outcome[kind] = whole == matrix_apply(W, inner)
    return FactoredPadeReport(outcome[PADE_KINDS.DIAGONAL], outcome[PADE_KINDS.SUBDIAGONAL])


@dataclass
class DeterminacyReport:
    """Partial sums behind the indeterminacy criterion; the verdict is evidence, never proof."""

    partial_M: Tuple[Fraction, ...]
    partial_L: Tuple[Fraction, ...]
    inertia_series: Tuple[Fraction, ...]
    l_all_positive: bool
    verdict: str
    window: int = DEFAULT_TAIL_WINDOW
    tail_ratio: Fraction = DEFAULT_TAIL_RATIO
    notes: List[str] = field(default_factory=list)


def _decays_geometrically(terms: Sequence[Fraction], window: int, ratio: Fraction) -> bool:
    tail = [abs(t) for t in terms[-(window + 1) :]]
    for before, after in zip(tail, tail[1:]):
        if after == 0:
            continue
        if before == 0 or after / before >= ratio:
            return False
    return True


def _decays_slowly(terms: Sequence[Fraction], window: int) -> bool:
    """i |t_i| non-decreasing over the window: the terms fall no faster than 1/i."""
    start = len(terms) - window
    scaled = [(start + k + 1) * abs(t) for k, t in enumerate(terms[start:])]
    if any(value == 0 for value in scaled):
        return False
    return all(after >= before for before, after in zip(scaled, scaled[1:]))


def determinacy(
    sf: SFraction,
    N: Optional[int] = None,
    window: int = DEFAULT_TAIL_WINDOW,
    tail_ratio: Fraction = DEFAULT_TAIL_RATIO,
) -> DeterminacyReport:
    """Partial sums of m_j(0) and l_j with an evidence verdict.

    Both tails shrinking geometrically (ratio below `tail_ratio` over the last `window`
    steps) is taken as evidence of indeterminacy; either one falling no faster than 1/j as
    evidence of determinacy. When every l_j is positive the partial sums of
    (l_1 + ... + l_i)^2 d_(i+1) are reported as well.
    """
    pairs = sf.pairs if N is None else sf.pairs[:N]
    m_terms = [m(0) for m, _ in pairs]
    l_terms = [l for _, l in pairs]
    partial_M, partial_L = [], []
    total_m = total_l = Fraction(0)
    for m_term, l_term in zip(m_terms, l_terms):
        total_m += m_term
        total_l += l_term
        partial_M.append(total_m)
        partial_L.append(total_l)

    l_all_positive = bool(l_terms) and all(l > 0 for l in l_terms)
    inertia_series: List[Fraction] = []
    if l_all_positive:
        running = Fraction(0)
        for i in range(1, len(pairs)):
            running += partial_L[i - 1] ** 2 * pairs[i][0].leading
            inertia_series.append(running)

    notes = []
    if len(pairs) <= window:
        verdict = VERDICTS.INCONCLUSIVE
        notes.append(f"{len(pairs)} pairs do not fill a window of {window}")
    elif _decays_geometrically(m_terms, window, tail_ratio) and _decays_geometrically(
        l_terms, window, tail_ratio
    ):
        verdict = VERDICTS.INDETERMINATE
    elif _decays_slowly(m_terms, window) or _decays_slowly(l_terms, window):
        verdict = VERDICTS.DETERMINATE
    else:
        verdict = VERDICTS.INCONCLUSIVE
    logger.info(f"determinacy over {len(pairs)} pairs: {verdict}")
    return DeterminacyReport(
        tuple(partial_M),
        tuple(partial_L),
        tuple(inertia_series),
        l_all_positive,
        verdict,
        window,
        tail_ratio,
        notes,
    )


class ProbeRow(NamedTuple):
    N: int
    point: Fraction
    w11: Fraction
    w12: Fraction
    w21: Fraction
    w22: Fraction

    @property
    def values(self) -> Values2x2:
        return self.w11, self.w12, self.w21, self.w22


class ProbeDelta(NamedTuple):
    point: Fraction
    N_from: int
    N_to: int
    max_difference: float


def _multiply(left: Values2x2, right: Values2x2) -> Values2x2:
    a, b, c, d = left
    e, f, g, h = right
    return a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h


def winf_probe(
    sf: SFraction, sample_points: Sequence[Fraction], N_list: Sequence[int]
) -> List[ProbeRow]:
    """Exact values of the entries of W_2N at each point, for every N in N_list.

    The elementary factors are evaluated at the point before multiplying, so no polynomial
    of degree n_N is ever formed.
    """
    rows: List[ProbeRow] = []
    for N in N_list:
        if not 0 <= N <= len(sf):
            raise ValueError(f"N = {N} outside 0 ... {len(sf)}")
        for point in sample_points:
            value: Values2x2 = (Fraction(1), Fraction(0), Fraction(0), Fraction(1))
            for m, l in sf.pairs[:N]:
                value = _multiply(value, (Fraction(1), Fraction(0), -point * m(point), Fraction(1)))
                value = _multiply(value, (Fraction(1), l, Fraction(0), Fraction(1)))
            rows.append(ProbeRow(N, Fraction(point), *value))
    return rows


def probe_differences(rows: Sequence[ProbeRow]) -> List[ProbeDelta]:
    """Largest entry change (as a float) between consecutive N at each sample point."""
    by_point: Dict[Fraction, List[ProbeRow]] = {}
    for row in rows:
        by_point.setdefault(row.point, []).append(row)
    deltas = []
    for point, series in by_point.items():
        ordered = sorted(series, key=lambda row: row.N)
        for before, after in zip(ordered, ordered[1:]):
            difference = max(abs(a - b) for a, b in zip(after.values, before.values))
            deltas.append(ProbeDelta(point, before.N, after.N, float(difference)))
    return deltas
