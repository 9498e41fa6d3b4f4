"""Explicit analytic constants.

This module owns the scalar ingredients of the bound catalogue: log-gamma,
the first zeros of the Bessel functions J0 and J1, and two constants that
are defined as minima of explicit expressions over an open interval of
integrability exponents.  The minimizations run in log space with a
golden-section search on a clamped interval, which keeps the returned
minimizer strictly interior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import DomainError

#: Fixed Sobolev-type scalar entering the spectral-gap estimate.
GAP_SOBOLEV_CONSTANT = 2.539

#: Clamp distance from the open interval's endpoints for minimization.
EDGE_MARGIN = 1e-9

#: Golden-section bracket width at termination.
BRACKET_TOL = 1e-12

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ConstantResult:
    """A minimized constant together with where the minimum was found."""

    value: float
    minimizer_p: float
    interval: tuple[float, float]
    iterations: int

    def __post_init__(self):
        lo, hi = self.interval
        if not (lo < self.minimizer_p < hi):
            raise DomainError("minimizer must lie strictly inside the interval")


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Backed by the C library's Lanczos-style ``lgamma``; the relative
    accuracy comfortably beats the 1e-13 contract on (0, 1e6].
    """
    if not (x > 0) or not math.isfinite(x):
        raise DomainError("log_gamma requires x > 0")
    return math.lgamma(x)


def _golden_min(fn: Callable[[float], float], lo: float, hi: float,
                tol: float = BRACKET_TOL) -> tuple[float, int]:
    """Golden-section minimum of a unimodal fn on [lo, hi]."""
    a, b = lo, hi
    h = b - a
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc, fd = fn(c), fn(d)
    iterations = 0
    while h > tol:
        iterations += 1
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, iterations


def poincare_constant_upper(r: float, area_value: float) -> ConstantResult:
    """Upper estimate for the (r, 2) Poincare-Sobolev constant of a planar
    domain of the given area.

    Minimizes, over p in the open interval (2r/(r+2), 2),

        ((p-1)/(2-p))^((p-1)/p) * area^(1/r)
            / (sqrt(pi) * 2^(1/p) * sqrt(Gamma(2/p) * Gamma(3 - 2/p))).

    The returned minimizer is clamped 1e-9 inside the interval ends and
    located to a bracket width of 1e-12.
    """
    if not (r >= 2.0) or not math.isfinite(r):
        raise DomainError("poincare_constant_upper requires r >= 2")
    if not (area_value > 0) or not math.isfinite(area_value):
        raise DomainError("poincare_constant_upper requires area > 0")

    p_lo = 2.0 * r / (r + 2.0)
    log_area_term = math.log(area_value) / r

    def log_objective(p: float) -> float:
        return (
            (p - 1.0) / p * (math.log(p - 1.0) - math.log(2.0 - p))
            + log_area_term
            - 0.5 * math.log(math.pi)
            - math.log(2.0) / p
            - 0.5 * (log_gamma(2.0 / p) + log_gamma(3.0 - 2.0 / p))
        )

    p_star, iterations = _golden_min(
        log_objective, p_lo + EDGE_MARGIN, 2.0 - EDGE_MARGIN
    )
    return ConstantResult(
        value=math.exp(log_objective(p_star)),
        minimizer_p=p_star,
        interval=(p_lo, 2.0),
        iterations=iterations,
    )


@lru_cache(maxsize=1)
def spectral_gap_constant() -> ConstantResult:
    """Constant entering the spectral-gap estimate for near-identity maps
    of the unit disc.

    Minimizes, over p in the open interval (4/3, 2),

        ((p-1)/(2-p))^(2(p-1)/p) / (sqrt(pi) * 4^(1/p)
            * Gamma(2/p) * Gamma(3 - 2/p)).

    Note the squared first factor and the unsquare-rooted gamma product
    relative to ``poincare_constant_upper``; the expression is of squared
    type.  The infimum sits at the lower interval end, so the clamped
    search returns the limiting value there.
    """

    def log_objective(p: float) -> float:
        return (
            2.0 * (p - 1.0) / p * (math.log(p - 1.0) - math.log(2.0 - p))
            - 0.5 * math.log(math.pi)
            - math.log(4.0) / p
            - log_gamma(2.0 / p)
            - log_gamma(3.0 - 2.0 / p)
        )

    p_lo = 4.0 / 3.0
    p_star, iterations = _golden_min(
        log_objective, p_lo + EDGE_MARGIN, 2.0 - EDGE_MARGIN
    )
    return ConstantResult(
        value=math.exp(log_objective(p_star)),
        minimizer_p=p_star,
        interval=(p_lo, 2.0),
        iterations=iterations,
    )


def _j0_series(x: float) -> float:
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, 60):
        term *= -q / (k * k)
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


def _j1_series(x: float) -> float:
    q = 0.25 * x * x
    term = 0.5 * x
    total = term
    for k in range(1, 60):
        term *= -q / (k * (k + 1))
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


@lru_cache(maxsize=None)
def bessel_zero(kind: str) -> float:
    """First positive zero of J0 or J1, to absolute error below 1e-12.

    Bisection on a bracketing interval of the series-evaluated Bessel
    function, polished with Newton steps (J0' = -J1 and
    J1'(x) = J0(x) - J1(x)/x).
    """
    if kind == "J0":
        fn, lo, hi = _j0_series, 2.0, 3.0
    elif kind == "J1":
        fn, lo, hi = _j1_series, 3.0, 4.0
    else:
        raise DomainError("bessel_zero kind must be 'J0' or 'J1'")

    flo = fn(lo)
    if flo * fn(hi) >= 0:
        raise DomainError("bessel_zero bracket does not straddle a root")
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    x = 0.5 * (lo + hi)
    for _ in range(4):
        if kind == "J0":
            fx, dfx = _j0_series(x), -_j1_series(x)
        else:
            fx, dfx = _j1_series(x), _j0_series(x) - _j1_series(x) / x
        x -= fx / dfx
    return x
