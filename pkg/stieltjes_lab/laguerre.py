"""
Closed forms for the Laguerre moment sequence s_n = Gamma(n + alpha + 1).

Every quantity is divided by |Gamma(1 + alpha)| and keeps its sign, which leaves all data
rational: s_n / |Gamma(1 + alpha)| = sign(Gamma(1 + alpha)) (alpha + 1) ... (alpha + n).
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Tuple

from .arith import Poly
from .constants import DEFAULT_LAGUERRE_COUNT
from .contfrac import PFraction, SFraction
from .hankel import MomentSequence
from .util import GammaPoleError, RationalLike, to_rational


@dataclass(frozen=True)
class LaguerreConfig:
    """Parameter alpha (not a negative integer) and the number of fraction pairs to generate."""

    alpha: Fraction
    count: int = DEFAULT_LAGUERRE_COUNT

    def __post_init__(self):
        alpha = to_rational(self.alpha)
        if alpha.denominator == 1 and alpha < 0:
            raise GammaPoleError(f"Gamma pole: 1 + alpha = {1 + alpha} is a nonpositive integer")
        if self.count < 0:
            raise ValueError(f"count must be nonnegative (got {self.count})")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def of(cls, alpha: RationalLike, count: int = DEFAULT_LAGUERRE_COUNT) -> "LaguerreConfig":
        return cls(to_rational(alpha), count)

    @property
    def gamma_sign(self) -> int:
        """Sign of Gamma(1 + alpha): negative on (-1, 0), positive on (-2, -1), and so on."""
        x = 1 + self.alpha
        if x > 0:
            return 1
        return -1 if math.floor(x) % 2 else 1

    def rising(self, start: int, stop: int) -> Fraction:
        """(alpha + start) (alpha + start + 1) ... (alpha + stop), 1 when empty."""
        product = Fraction(1)
        for j in range(start, stop + 1):
            product *= self.alpha + j
        return product


class LaguerreFractions(NamedTuple):
    s_fraction: SFraction
    p_fraction: PFraction


def laguerre_moments(cfg: LaguerreConfig) -> MomentSequence:
    """The 2 * count normalized moments, enough to determine `count` fraction pairs."""
    return MomentSequence(
        tuple(cfg.gamma_sign * cfg.rising(1, n) for n in range(2 * cfg.count))
    )


def laguerre_closed_forms(cfg: LaguerreConfig) -> LaguerreFractions:
    """S-fraction pairs and P-fraction atoms in closed form.

    l_n = sign (n-1)! / ((alpha+1) ... (alpha+n)), m_n = sign (alpha+1) ... (alpha+n-1) / (n-1)!,
    b_0 = sign, b_n = n (n + alpha) and a_(n-1)(z) = z - 2n - alpha + 1.
    """
    sign = cfg.gamma_sign
    pairs: List[Tuple[Poly, Fraction]] = []
    atoms: List[Tuple[Poly, Fraction]] = []
    for n in range(1, cfg.count + 1):
        factorial = math.factorial(n - 1)
        pairs.append(
            (
                Poly.constant(sign * cfg.rising(1, n - 1) / factorial),
                sign * Fraction(factorial) / cfg.rising(1, n),
            )
        )
        b = Fraction(sign) if n == 1 else (n - 1) * (n - 1 + cfg.alpha)
        atoms.append((Poly((-(2 * n + cfg.alpha - 1), 1)), b))
    return LaguerreFractions(SFraction(tuple(pairs)), PFraction(tuple(atoms)))


def laguerre_polys(cfg: LaguerreConfig, n: int) -> Tuple[Poly, Poly]:
    """Monic Laguerre polynomial P_n and its second-kind companion Q_n (normalized).

    P_n(z) = sum_k C(n, k) (alpha+k+1) ... (alpha+n) (-1)^(n+k) z^k
    Q_n(z) = sign (alpha+1) ... (alpha+n) sum_k z^(k-1)
             sum_j (-1)^(n+k+j) C(n, k+j) / ((alpha+j+1) ... (alpha+j+k))
    """
    if n < 0:
        raise ValueError(f"degree must be nonnegative (got {n})")
    P = Poly(
        tuple(
            math.comb(n, k) * cfg.rising(k + 1, n) * (-1) ** (n + k) for k in range(n + 1)
        )
    )
    scale = cfg.gamma_sign * cfg.rising(1, n)
    q_coeffs = []
    for k in range(1, n + 1):
        inner = sum(
            (
                Fraction((-1) ** (n + k + j) * math.comb(n, k + j)) / cfg.rising(j + 1, j + k)
                for j in range(n - k + 1)
            ),
            Fraction(0),
        )
        q_coeffs.append(scale * inner)
    return P, Poly(tuple(q_coeffs))


def laguerre_stieltjes_even(cfg: LaguerreConfig, n: int) -> Poly:
    """P+_2n(z) = sum_i C(n, i) (-z)^i / ((alpha+1) ... (alpha+i)), i.e. P_n / P_n(0)."""
    return Poly(
        tuple(
            Fraction(math.comb(n, i) * (-1) ** i) / cfg.rising(1, i) for i in range(n + 1)
        )
    )
