"""
Shared test sequences and fraction generators

All generators are seeded so that every run sees the same sequences.
"""
import math
import random
from fractions import Fraction
from typing import List

from stieltjes_lab.arith import Poly
from stieltjes_lab.contfrac import SFraction, moments_from_s_fraction
from stieltjes_lab.hankel import MomentSequence

RANDOM_SEED = 1911

# s_n = n!, the Laguerre sequence with alpha = 0
FACTORIALS = MomentSequence(tuple(Fraction(math.factorial(n)) for n in range(10)))

# first four moments of alpha = -3/2, normalized by |Gamma(-1/2)|
LAGUERRE_MINUS_3_2 = MomentSequence.of(-1, "1/2", "1/4", "3/8")


def geometric_fraction(count: int) -> SFraction:
    """m_j = l_j = 2^-j, a fraction whose moment problem is indeterminate."""
    return SFraction(
        tuple((Poly.constant(Fraction(1, 2**j)), Fraction(1, 2**j)) for j in range(1, count + 1))
    )


def _nonzero_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def random_poly(rng: random.Random, degree: int) -> Poly:
    """Polynomial of exactly the given degree (a nonzero leading coefficient)."""
    return Poly(tuple(random_rational(rng) for _ in range(degree)) + (_nonzero_rational(rng),))


def random_moments(rng: random.Random, length: int) -> MomentSequence:
    return MomentSequence(tuple(random_rational(rng) for _ in range(length)))


def random_s_fraction(rng: random.Random, pairs: int, max_degree: int = 0) -> SFraction:
    """Random pairs with nonzero l_j and m_j of degree at most `max_degree`."""
    result = []
    for _ in range(pairs):
        degree = rng.randint(0, max_degree)
        m = Poly(tuple(_nonzero_rational(rng) for _ in range(degree + 1)))
        result.append((m, _nonzero_rational(rng)))
    return SFraction(tuple(result))


def random_regular_sequences(
    count: int, max_pairs: int = 6, max_degree: int = 0
) -> List[MomentSequence]:
    """Moment sequences of random S-fractions, each exactly long enough to fix all its pairs."""
    rng = random.Random(RANDOM_SEED)
    sequences = []
    for _ in range(count):
        sf = random_s_fraction(rng, rng.randint(1, max_pairs), max_degree)
        sequences.append(moments_from_s_fraction(sf, sf.determined_moments()))
    return sequences
