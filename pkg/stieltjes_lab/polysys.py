"""
Lanczos polynomials (P_j, Q_j) of a P-fraction and generalized Stieltjes polynomials
(P+_j, Q+_j) of an S-fraction, with the identities that tie them together
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple, Union

from .arith import Poly, RationalFunction
from .contfrac import PFraction, SFraction, p_fraction, p_from_s, schur_s_fraction
from .hankel import MomentSequence
from .util import logger

ONE = Poly.constant(1)
ZERO_POLY = Poly()


class LanczosPolys(NamedTuple):
    P: Tuple[Poly, ...]  # P_0 ... P_N
    Q: Tuple[Poly, ...]


class StieltjesPolys(NamedTuple):
    P: Tuple[Poly, ...]  # P+_0 ... P+_2N
    Q: Tuple[Poly, ...]


def _lanczos_from(p: PFraction, N: int) -> Tuple[List[Poly], List[Poly]]:
    """Solutions of y_(j+1) = a_j y_j - b_j y_(j-1), listed from index -1."""
    P = [ZERO_POLY, ONE]
    Q = [-ONE, ZERO_POLY]
    for a, b in p.atoms[:N]:
        P.append(a * P[-1] - P[-2] * b)
        Q.append(a * Q[-1] - Q[-2] * b)
    return P, Q


def _stieltjes_from(sf: SFraction, N: int) -> Tuple[List[Poly], List[Poly]]:
    """Solutions of the two-step system, listed from index -1.

    y_(2j-1) = y_(2j-3) - z m_j(z) y_(2j-2) and y_(2j) = y_(2j-2) + l_j y_(2j-1).
    """
    P = [ZERO_POLY, ONE]
    Q = [ONE, ZERO_POLY]
    for m, l in sf.pairs[:N]:
        zm = m.times_z()
        for ys in (P, Q):
            ys.append(ys[-2] - zm * ys[-1])
            ys.append(ys[-2] + ys[-1] * l)
    return P, Q


def _resolve_count(available: int, N: Optional[int], what: str) -> int:
    if N is None:
        return available
    if not 0 <= N <= available:
        raise ValueError(f"requested {N} {what} but only {available} are available")
    return N


def lanczos(source: Union[MomentSequence, PFraction], N: Optional[int] = None) -> LanczosPolys:
    """Lanczos polynomials P_0 ... P_N and Q_0 ... Q_N.

    P_(-1) = 0, P_0 = 1, Q_(-1) = -1, Q_0 = 0. A moment sequence is first turned into its
    P-fraction.
    """
    p = source if isinstance(source, PFraction) else p_fraction(source, max_atoms=N)
    count = _resolve_count(len(p), N, "atoms")
    P, Q = _lanczos_from(p, count)
    return LanczosPolys(tuple(P[1:]), tuple(Q[1:]))


def stieltjes_polys(sf: SFraction, N: Optional[int] = None) -> StieltjesPolys:
    """Generalized Stieltjes polynomials P+_0 ... P+_2N and Q+_0 ... Q+_2N.

    P+_(-1) = 0, P+_0 = 1, Q+_(-1) = 1, Q+_0 = 0.
    """
    count = _resolve_count(len(sf), N, "pairs")
    P, Q = _stieltjes_from(sf, count)
    return StieltjesPolys(tuple(P[1:]), tuple(Q[1:]))


def stieltjes_polys_from_lanczos(
    lanczos_polys: LanczosPolys, btilde: Tuple[Fraction, ...]
) -> StieltjesPolys:
    """Determinant construction of the Stieltjes polynomials from Lanczos data.

    P+_(2i-1) = -(P_i(z) P_(i-1)(0) - P_(i-1)(z) P_i(0)) / b~_(i-1)
    P+_(2i)   = P_i / P_i(0)
    Q+_(2i-1) = (Q_i(z) P_(i-1)(0) - Q_(i-1)(z) P_i(0)) / b~_(i-1)
    Q+_(2i)   = -Q_i / P_i(0)
    """
    P, Q = lanczos_polys
    plus_P = [ONE]
    plus_Q = [ZERO_POLY]
    for i in range(1, len(P)):
        before, now = P[i - 1](0), P[i](0)
        plus_P.append(-(P[i] * before - P[i - 1] * now) / btilde[i - 1])
        plus_P.append(P[i] / now)
        plus_Q.append((Q[i] * before - Q[i - 1] * now) / btilde[i - 1])
        plus_Q.append(-Q[i] / now)
    return StieltjesPolys(tuple(plus_P), tuple(plus_Q))


@dataclass(frozen=True)
class PolySystem:
    """Both polynomial families of one truncated problem, stored from index -1."""

    lanczos_P: Tuple[Poly, ...]
    lanczos_Q: Tuple[Poly, ...]
    stieltjes_P: Tuple[Poly, ...]
    stieltjes_Q: Tuple[Poly, ...]
    btilde: Tuple[Fraction, ...]
    p: PFraction = field(default_factory=PFraction)

    @property
    def N(self) -> int:
        return len(self.lanczos_P) - 2

    def P(self, j: int) -> Poly:
        return self.lanczos_P[j + 1]

    def Q(self, j: int) -> Poly:
        return self.lanczos_Q[j + 1]

    def P_plus(self, j: int) -> Poly:
        return self.stieltjes_P[j + 1]

    def Q_plus(self, j: int) -> Poly:
        return self.stieltjes_Q[j + 1]


def build_poly_system(sf: SFraction, p: Optional[PFraction] = None) -> PolySystem:
    """Assemble a PolySystem; the P-fraction defaults to the one converted from `sf`."""
    if p is None:
        p = p_from_s(sf)
    count = min(len(sf), len(p))
    P, Q = _lanczos_from(p, count)
    plus_P, plus_Q = _stieltjes_from(sf, count)
    return PolySystem(
        tuple(P),
        tuple(Q),
        tuple(plus_P),
        tuple(plus_Q),
        p.btilde()[:count],
        PFraction(p.atoms[:count]),
    )


def poly_system_from_moments(
    s: MomentSequence, N: Optional[int] = None
) -> Tuple[PolySystem, SFraction]:
    """Run the Schur algorithm and the P-fraction extraction independently on the same moments."""
    sf = schur_s_fraction(s, N).fraction
    p = p_fraction(s, max_atoms=len(sf))
    return build_poly_system(sf, p), sf


def convergent(x: Union[SFraction, PFraction], j: int) -> RationalFunction:
    """j-th convergent: Q+_j / P+_j for an S-fraction, -Q_j / P_j for a P-fraction.

    Raises:
        ValueError: j outside 1 ... 2N (S-fraction) or 1 ... N (P-fraction)
    """
    if isinstance(x, SFraction):
        if not 1 <= j <= 2 * len(x):
            raise ValueError(f"S-fraction convergent {j} outside 1 ... {2 * len(x)}")
        plus = stieltjes_polys(x, (j + 1) // 2)
        return RationalFunction(plus.Q[j], plus.P[j])
    if not 1 <= j <= len(x):
        raise ValueError(f"P-fraction convergent {j} outside 1 ... {len(x)}")
    polys = lanczos(x, j)
    return RationalFunction(-polys.Q[j], polys.P[j])


Value = Union[Poly, Fraction, RationalFunction]


@dataclass
class IdentityCheck:
    name: str
    index: int
    lhs: Value
    rhs: Value

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class IdentityReport:
    checks: List[IdentityCheck] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[IdentityCheck]:
        return [check for check in self.checks if not check.passed]

    def add(self, name: str, index: int, lhs: Value, rhs: Value) -> None:
        self.checks.append(IdentityCheck(name, index, lhs, rhs))

    def extend(self, other: "IdentityReport") -> None:
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)


def verify_identities(ps: PolySystem, sf: SFraction) -> IdentityReport:
    """Check every polynomial and value identity linking ps and sf, exactly.

    Failed identities stay in the report with both sides; nothing is raised.
    """
    report = IdentityReport()
    count = min(ps.N, len(sf))
    ms, ls, ds = sf.ms, sf.ls, sf.leading_coefficients
    bt = ps.btilde
    at_zero = [ps.P(i)(0) for i in range(count + 1)]
    q_at_zero = [ps.Q(i)(0) for i in range(count + 1)]

    from_lanczos = stieltjes_polys_from_lanczos(
        LanczosPolys(ps.lanczos_P[1 : count + 2], ps.lanczos_Q[1 : count + 2]), bt
    )
    for j in range(1, 2 * count + 1):
        report.add("stieltjes_P_determinant_form", j, ps.P_plus(j), from_lanczos.P[j])
        report.add("stieltjes_Q_determinant_form", j, ps.Q_plus(j), from_lanczos.Q[j])

    l_total = Fraction(0)
    m_total = Fraction(0)
    d_total = Fraction(0)
    d_formula_total = Fraction(0)
    for i in range(1, count + 1):
        report.add(
            "liouville_ostrogradsky",
            i,
            ps.Q(i) * ps.P(i - 1) - ps.Q(i - 1) * ps.P(i),
            Poly.constant(bt[i - 1]),
        )
        report.add(
            "stieltjes_determinant",
            i,
            ps.P_plus(2 * i) * ps.Q_plus(2 * i - 1) - ps.Q_plus(2 * i) * ps.P_plus(2 * i - 1),
            ONE,
        )
        report.add("odd_P_plus_at_zero", i, ps.P_plus(2 * i - 1)(0), Fraction(0))
        report.add("even_P_plus_at_zero", i, ps.P_plus(2 * i - 2)(0), Fraction(1))
        report.add("odd_Q_plus_at_zero", i, ps.Q_plus(2 * i - 1)(0), Fraction(1))
        report.add(
            "l_from_lanczos_values",
            i,
            ls[i - 1],
            -q_at_zero[i] / at_zero[i] + q_at_zero[i - 1] / at_zero[i - 1],
        )
        report.add(
            "l_from_btilde", i, ls[i - 1], -bt[i - 1] / (at_zero[i - 1] * at_zero[i])
        )
        l_total += ls[i - 1]
        report.add("l_sum", i, l_total, -q_at_zero[i] / at_zero[i])
        m_total += ms[i - 1](0)
        report.add("m_sum", i, m_total, -ps.P_plus(2 * i - 1).derivative()(0))

        d_formula = at_zero[i - 1] ** 2 / bt[i - 1]
        report.add("d_from_lanczos_values", i, ds[i - 1], d_formula)
        if abs(d_formula) != d_formula:
            note = f"d_{i}: absolute-value variant {abs(d_formula)} differs from {d_formula}"
            report.notes.append(note)
            logger.warning(note)
        d_total += ds[i - 1]
        d_formula_total += d_formula
        report.add("d_sum", i, d_total, d_formula_total)
        if i <= len(ps.p):
            report.add(
                "m_from_atoms", i, ms[i - 1], ps.p.a_polys[i - 1].quotient_by_z() * ds[i - 1]
            )
            report.add("convergents_agree", i, convergent(sf, 2 * i), convergent(ps.p, i))
    logger.info(
        f"identity suite: {len(report.checks)} checks, {len(report.failures)} failures"
    )
    return report
