from fractions import Fraction

import pytest

from stieltjes_lab.approx import (
    determinacy,
    pade,
    pade_factored_check,
    probe_differences,
    winf_probe,
)
from stieltjes_lab.arith import Poly
from stieltjes_lab.constants import PADE_KINDS, VERDICTS
from stieltjes_lab.contfrac import schur_s_fraction
from stieltjes_lab.hankel import MomentSequence
from stieltjes_lab.laguerre import LaguerreConfig, laguerre_closed_forms, laguerre_moments
from stieltjes_lab.resolvent import resolvent
from stieltjes_lab.util import InsufficientMomentsError

from .data import geometric_fraction


@pytest.fixture(scope="module", params=["0", "-3/2", "-5/2"])
def demo_moments(request):
    return laguerre_moments(LaguerreConfig.of(request.param, 4))


class TestPade:
    def test_diagonal_laguerre_zero(self):
        result = pade(MomentSequence.of(1, 1, 2, 6), 2)
        assert result.numer == Poly((3, -1))
        assert result.denom == Poly((2, -4, 1))
        assert result.n == 2
        assert result.verified_order == 4

    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_diagonal_order(self, demo_moments, j):
        result = pade(demo_moments, j)
        assert result.n == j
        assert result.verified_order >= min(2 * j, len(demo_moments))

    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_subdiagonal_order(self, demo_moments, j):
        result = pade(demo_moments, j, PADE_KINDS.SUBDIAGONAL)
        assert result.denom(0) == 0
        assert result.denom.degree == j
        assert result.verified_order >= 2 * j - 1

    def test_bad_j(self):
        with pytest.raises(ValueError):
            pade(MomentSequence.of(1, 1, 2, 6), 0)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            pade(MomentSequence.of(1, 1, 2, 6), 1, "upper")

    def test_beyond_available_atoms(self):
        with pytest.raises(InsufficientMomentsError):
            pade(MomentSequence.of(1, 1, 2, 6), 3)

    @pytest.mark.parametrize("N,j", [[1, 3], [2, 4], [0, 2]])
    def test_factored(self, demo_moments, N, j):
        assert pade_factored_check(demo_moments, N, j).passed

    def test_factored_bad_split(self, demo_moments):
        with pytest.raises(ValueError):
            pade_factored_check(demo_moments, 3, 3)


class TestDeterminacy:
    def test_geometric_fraction(self):
        report = determinacy(geometric_fraction(16))
        assert report.verdict == VERDICTS.INDETERMINATE
        # eight terms of the geometric series leave exactly 2^-8
        assert abs(report.partial_M[7] - 1) <= Fraction(1, 2**8)
        assert abs(report.partial_L[7] - 1) <= Fraction(1, 2**8)
        assert report.partial_M[7] == 1 - Fraction(1, 2**8)
        assert report.l_all_positive
        assert len(report.inertia_series) == 15

    def test_laguerre_zero(self):
        sf = laguerre_closed_forms(LaguerreConfig.of(0, 12)).s_fraction
        report = determinacy(sf)
        assert report.partial_L[11] > Fraction(5, 2)
        assert report.partial_M[11] == 12
        assert report.verdict == VERDICTS.DETERMINATE

    def test_truncated_order(self):
        report = determinacy(geometric_fraction(16), 10)
        assert len(report.partial_M) == 10

    def test_too_few_pairs(self):
        report = determinacy(geometric_fraction(3))
        assert report.verdict == VERDICTS.INCONCLUSIVE
        assert report.notes

    def test_negative_l_skips_inertia_series(self):
        sf = laguerre_closed_forms(LaguerreConfig.of("-5/2", 4)).s_fraction
        report = determinacy(sf)
        assert not report.l_all_positive
        assert report.inertia_series == ()


class TestProbe:
    def test_matches_resolvent(self):
        sf = laguerre_closed_forms(LaguerreConfig.of(0, 4)).s_fraction
        points = [Fraction(1), Fraction(1, 2), Fraction(-2)]
        rows = winf_probe(sf, points, [1, 2, 3])
        assert len(rows) == 9
        for row in rows:
            assert row.values == resolvent(sf, row.N).W.evaluate(row.point)

    def test_first_row(self):
        sf = laguerre_closed_forms(LaguerreConfig.of(0, 4)).s_fraction
        (row,) = winf_probe(sf, [Fraction(1)], [1])
        assert row.values == (1, 1, -1, 0)

    def test_geometric_fraction_settles(self):
        rows = winf_probe(geometric_fraction(32), [Fraction(1)], [8, 16, 32])
        first, second = probe_differences(rows)
        assert (first.N_from, first.N_to) == (8, 16)
        assert first.max_difference < 1e-2
        assert second.max_difference < 1e-3
        assert second.max_difference < first.max_difference

    def test_order_out_of_range(self):
        sf = schur_s_fraction(MomentSequence.of(1, 1, 2, 6)).fraction
        with pytest.raises(ValueError):
            winf_probe(sf, [Fraction(1)], [3])
