import math

import mpmath
import numpy as np
import pytest
from scipy.special import gammaln, jn_zeros

from confeig.constants import (
    GAP_SOBOLEV_CONSTANT,
    bessel_zero,
    log_gamma,
    poincare_constant_upper,
    spectral_gap_constant,
)
from confeig.errors import DomainError

# clamp margin the minimizers keep from the open-interval endpoints
EDGE = 1e-9
SCAN_POINTS = 1_000_001

# frozen dense-scan values for area pi (regenerated by the oracles below)
FROZEN_POINCARE = {
    2.0: 0.4671552175,
    3.0: 0.4099554487,
    4.0: 0.4237772086,
    6.0: 0.4790637934,
    10.0: 0.5955366144,
}
FROZEN_GAP = 0.1795871225


def scan_poincare(r, area):
    """Dense-grid oracle for the minimized area-normalized expression."""
    lo = 2.0 * r / (r + 2.0)
    p = np.linspace(lo + EDGE, 2.0 - EDGE, SCAN_POINTS)
    logf = (
        (p - 1.0) / p * (np.log(p - 1.0) - np.log(2.0 - p))
        + math.log(area) / r
        - 0.5 * math.log(math.pi)
        - math.log(2.0) / p
        - 0.5 * (gammaln(2.0 / p) + gammaln(3.0 - 2.0 / p))
    )
    i = int(np.argmin(logf))
    return float(np.exp(logf[i])), float(p[i]), logf


def scan_gap():
    p = np.linspace(4.0 / 3.0 + EDGE, 2.0 - EDGE, SCAN_POINTS)
    logf = (
        2.0 * (p - 1.0) / p * (np.log(p - 1.0) - np.log(2.0 - p))
        - 0.5 * math.log(math.pi)
        - math.log(4.0) / p
        - gammaln(2.0 / p)
        - gammaln(3.0 - 2.0 / p)
    )
    i = int(np.argmin(logf))
    return float(np.exp(logf[i])), float(p[i])


def test_log_gamma_exact_points():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)


def test_log_gamma_matches_mpmath():
    for x in (1e-3, 0.1, 0.37, 0.5, 1.5, 2.0 / 3.0, 3.7, 10.0, 171.5, 1e4):
        want = float(mpmath.loggamma(x))
        assert log_gamma(x) == pytest.approx(want, rel=1e-13, abs=1e-13)


def test_log_gamma_rejects_nonpositive():
    for x in (0.0, -1.0, -3.5, math.nan):
        with pytest.raises(DomainError):
            log_gamma(x)


def test_bessel_zeros_match_scipy():
    assert abs(bessel_zero("J0") - jn_zeros(0, 1)[0]) <= 1e-12
    assert abs(bessel_zero("J1") - jn_zeros(1, 1)[0]) <= 1e-12


def test_bessel_zero_printed_values():
    assert round(bessel_zero("J0"), 4) == 2.4048
    assert round(bessel_zero("J1"), 4) == 3.8317
    assert round(bessel_zero("J0") ** 2, 4) == 5.7832


def test_bessel_zero_rejects_unknown_kind():
    with pytest.raises(DomainError):
        bessel_zero("J2")


@pytest.mark.parametrize("r", [2.0, 3.0, 4.0, 6.0, 10.0])
def test_poincare_constant_matches_grid_scan(r):
    result = poincare_constant_upper(r, math.pi)
    scan_value, scan_p, _ = scan_poincare(r, math.pi)
    assert result.value == pytest.approx(scan_value, rel=1e-10)
    assert result.minimizer_p == pytest.approx(scan_p, abs=1e-6)
    assert result.value == pytest.approx(FROZEN_POINCARE[r], rel=1e-8)


def test_poincare_minimizer_strictly_inside_interval():
    for r in (2.0, 3.0, 4.0, 6.0, 10.0):
        result = poincare_constant_upper(r, math.pi)
        lo, hi = result.interval
        assert lo == pytest.approx(2.0 * r / (r + 2.0), rel=1e-15)
        assert hi == 2.0
        assert lo < result.minimizer_p < hi
        assert result.iterations > 0


def test_poincare_interior_minimum_for_r_two():
    # only the r = 2 objective dips in the interior (near p = 1.072); for
    # larger r the expression increases from the left endpoint on
    result = poincare_constant_upper(2.0, math.pi)
    lo, _ = result.interval
    assert lo + 1e-6 < result.minimizer_p < 2.0 - 1e-6
    assert result.minimizer_p == pytest.approx(1.07201, abs=1e-4)


def test_poincare_area_homogeneity():
    for r in (2.0, 4.0):
        one = poincare_constant_upper(r, math.pi)
        two = poincare_constant_upper(r, 2.0 * math.pi)
        assert two.value == pytest.approx(2.0 ** (1.0 / r) * one.value, rel=1e-12)
        # shifting the log objective by a constant moves the minimizer only
        # within the flat bottom the float comparisons cannot resolve
        assert two.minimizer_p == pytest.approx(one.minimizer_p, abs=1e-5)


def test_poincare_dominates_exact_disc_constant():
    result = poincare_constant_upper(2.0, math.pi)
    assert result.value >= 1.0 / bessel_zero("J0")


def test_poincare_continuous_in_r():
    for r in (2.0, 4.0):
        a = poincare_constant_upper(r, math.pi).value
        b = poincare_constant_upper(r + 1e-6, math.pi).value
        assert abs(a - b) / a <= 1e-4


def test_poincare_objective_blows_up_near_two():
    # the (2-p)^{-(p-1)/p} factor diverges at the right endpoint
    _, _, logf = scan_poincare(4.0, math.pi)
    assert logf[-1] > logf.min() + math.log(100.0)


def test_poincare_rejects_bad_inputs():
    with pytest.raises(DomainError):
        poincare_constant_upper(1.99, math.pi)
    with pytest.raises(DomainError):
        poincare_constant_upper(2.0, 0.0)
    with pytest.raises(DomainError):
        poincare_constant_upper(2.0, -1.0)


def test_gap_constant_matches_grid_scan():
    result = spectral_gap_constant()
    scan_value, scan_p = scan_gap()
    assert result.value == pytest.approx(scan_value, rel=1e-10)
    assert result.minimizer_p == pytest.approx(scan_p, abs=1e-6)
    assert result.value == pytest.approx(FROZEN_GAP, rel=1e-8)


def test_gap_constant_limit_value():
    # the infimum is the left-endpoint limit pi^{-3/2}
    assert spectral_gap_constant().value == pytest.approx(
        math.pi ** -1.5, rel=1e-8
    )


def test_gap_constant_minimizer_strictly_inside():
    result = spectral_gap_constant()
    assert 4.0 / 3.0 < result.minimizer_p < 2.0


def test_gap_constant_positive_finite_and_cached():
    result = spectral_gap_constant()
    assert result.value > 0 and math.isfinite(result.value)
    assert spectral_gap_constant() is result


def test_gap_constant_is_square_of_area_pi_constant():
    # squaring the area-pi expression for r = 4 reproduces the gap
    # integrand on the same interval (4/3, 2)
    base = poincare_constant_upper(4.0, math.pi)
    assert spectral_gap_constant().value == pytest.approx(
        base.value**2, rel=1e-12
    )


def test_gap_scalar_literal():
    assert GAP_SOBOLEV_CONSTANT == 2.539
