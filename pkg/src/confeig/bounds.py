"""Catalogue of eigenvalue bounds for conformal image domains.

Every bound returns a ``BoundResult`` carrying the certified value, a
validity flag, a report of the hypotheses it relied on (including the
caller-declared ones it cannot check), and the intermediate quantities
that went into the computation.

Lower bounds for the first Dirichlet eigenvalue of the image:

* Faber-Krahn via the area radius,
* Makai (any simply connected domain) and Hersch (convex domains) via the
  inradius,
* the conformal sup-norm estimate lambda1(base) / sup|phi'|^2,
* an alpha-regular estimate through the Poincare-Sobolev constant,
* a distortion estimate for convex images from declared radii.

Additionally: a variation bound for the eigenvalue difference when the
image sits inside the base, and spectral-gap estimates (lambda2 - lambda1)
for near-identity maps of the unit disc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .constants import (
    GAP_SOBOLEV_CONSTANT,
    bessel_zero,
    poincare_constant_upper,
    spectral_gap_constant,
)
from .errors import (
    AreaMismatch,
    DomainError,
    InfiniteNorm,
    NoValidBound,
    QuadratureDivergence,
)
from .geometry import Disc, DomainSpec, area, exact_lambda1, image_area, inradius
from .norms import QuadratureConfig, norm_alpha, norm_l2_dev, norm_sup

#: Relative tolerance on |image area - pi| for the gap estimates.
GAP_AREA_RTOL = 1e-3

#: Default exponent sweep for the alpha-regular estimate.
DEFAULT_ALPHAS = (3.0, 4.0, 6.0, 10.0)


class Method(str, Enum):
    FABER_KRAHN = "faber-krahn"
    MAKAI = "makai"
    HERSCH = "hersch"
    SUP_NORM = "sup-norm"
    ALPHA_REGULAR = "alpha-regular"
    CONVEX_DISTORTION = "convex-distortion"
    VARIATION = "variation"
    GAP = "gap"
    GAP_CONVEX = "gap-convex"


#: Tie-break order for ``best_bound`` (earlier wins).
METHOD_ORDER = {method: index for index, method in enumerate(Method)}

#: Methods that bound lambda1 itself (rather than a difference or a gap).
LAMBDA1_METHODS = frozenset(
    {
        Method.FABER_KRAHN,
        Method.MAKAI,
        Method.HERSCH,
        Method.SUP_NORM,
        Method.ALPHA_REGULAR,
        Method.CONVEX_DISTORTION,
    }
)


@dataclass(frozen=True)
class BoundResult:
    method: Method
    value: float
    valid: bool
    preconditions: tuple[tuple[str, bool], ...] = ()
    intermediates: dict = field(default_factory=dict)
    notes: str = ""


def bound_faber_krahn(image_area_value: float) -> BoundResult:
    """lambda1 >= j01^2 * pi / area: the disc of equal area minimizes."""
    if not (image_area_value > 0 and math.isfinite(image_area_value)):
        raise DomainError("Faber-Krahn bound requires a positive finite area")
    j01 = bessel_zero("J0")
    value = j01**2 * math.pi / image_area_value
    return BoundResult(
        method=Method.FABER_KRAHN,
        value=value,
        valid=True,
        preconditions=(("image area known", True),),
        intermediates={"image_area": image_area_value, "j01": j01},
    )


def bound_inradius(rho: float, convex: bool = False) -> BoundResult:
    """lambda1 >= gamma / rho^2 with gamma = 1/4 (Makai, simply connected)
    or pi^2/4 (Hersch, convex)."""
    if not (rho > 0 and math.isfinite(rho)):
        raise DomainError("inradius bound requires rho > 0")
    gamma = math.pi**2 / 4.0 if convex else 0.25
    method = Method.HERSCH if convex else Method.MAKAI
    pre = [("inradius known", True)]
    if convex:
        pre.append(("image convex (declared)", True))
    else:
        pre.append(("image simply connected (declared)", True))
    return BoundResult(
        method=method,
        value=gamma / rho**2,
        valid=True,
        preconditions=tuple(pre),
        intermediates={"rho": rho, "gamma": gamma},
    )


def bound_sup_norm(lambda1_base: float, sup_norm: float) -> BoundResult:
    """lambda1(image) >= lambda1(base) / sup|phi'|^2."""
    if not math.isfinite(sup_norm) or sup_norm <= 0:
        raise InfiniteNorm("sup-norm bound requires a finite positive sup|phi'|")
    if not (lambda1_base > 0 and math.isfinite(lambda1_base)):
        raise DomainError("sup-norm bound requires lambda1(base) > 0")
    return BoundResult(
        method=Method.SUP_NORM,
        value=lambda1_base / sup_norm**2,
        valid=True,
        preconditions=(("map injective on base (declared)", True),),
        intermediates={"lambda1_base": lambda1_base, "sup_norm": sup_norm},
    )


def bound_alpha_regular(alpha: float, base_area: float, alpha_norm: float) -> BoundResult:
    """lambda1 >= 1 / (A_{r,2}(base)^2 * ||phi'||_alpha^2) with
    r = 2*alpha/(alpha - 2).

    The Poincare-Sobolev constant is minimized over p in the open interval
    (alpha/(alpha-1), 2), recorded in the precondition report.
    """
    if not (alpha > 2.0 and math.isfinite(alpha)):
        raise DomainError("alpha-regular bound requires alpha > 2")
    if not (alpha_norm > 0 and math.isfinite(alpha_norm)):
        raise DomainError("alpha-regular bound requires a finite positive norm")
    r = 2.0 * alpha / (alpha - 2.0)
    constant = poincare_constant_upper(r, base_area)
    value = 1.0 / (constant.value**2 * alpha_norm**2)
    p_lo = alpha / (alpha - 1.0)
    return BoundResult(
        method=Method.ALPHA_REGULAR,
        value=value,
        valid=True,
        preconditions=(
            ("alpha-norm finite", True),
            (f"constant minimized over p in ({p_lo:.6g}, 2)", True),
        ),
        intermediates={
            "alpha": alpha,
            "r": r,
            "poincare_constant": constant.value,
            "minimizer_p": constant.minimizer_p,
            "p_lo": p_lo,
            "alpha_norm": alpha_norm,
        },
    )


def _distortion_exponent(outer: float, inner: float, curvature: float) -> float:
    """The logarithmic factor D of the convex distortion estimate.

    D = (log(inner) - log(curvature)) / (inner - curvature), continued by
    its limit 1/inner when the radii coincide.
    """
    if abs(inner - curvature) < 1e-12 * inner:
        return 1.0 / inner
    return (math.log(inner) - math.log(curvature)) / (inner - curvature)


def convex_sup_bound(outer: float, inner: float, curvature: float) -> float:
    """Distortion bound sup|phi'| <= R_C * exp(2 (R_O - R_C) D) for a
    conformal map of the unit disc onto a convex domain with declared
    circumscribed, inscribed and curvature radii."""
    _check_radii(outer, inner, curvature)
    d_factor = _distortion_exponent(outer, inner, curvature)
    return curvature * math.exp(2.0 * (outer - curvature) * d_factor)


def _check_radii(outer: float, inner: float, curvature: float) -> None:
    if not (0 < inner <= outer and 0 < curvature <= outer):
        raise DomainError(
            "convex radii require 0 < inner <= outer and 0 < curvature <= outer"
        )


def bound_convex_distortion(outer: float, inner: float, curvature: float) -> BoundResult:
    """lambda1 >= (j01^2 / R_C^2) * exp(-4 (R_O - R_C) D) for convex
    images of the unit disc, via the distortion bound on sup|phi'|."""
    _check_radii(outer, inner, curvature)
    j01 = bessel_zero("J0")
    d_factor = _distortion_exponent(outer, inner, curvature)
    value = (j01 / curvature) ** 2 * math.exp(-4.0 * (outer - curvature) * d_factor)
    return BoundResult(
        method=Method.CONVEX_DISTORTION,
        value=value,
        valid=True,
        preconditions=(
            ("image convex (declared)", True),
            ("radii ordered", True),
        ),
        intermediates={
            "outer": outer,
            "inner": inner,
            "curvature": curvature,
            "log_factor": d_factor,
            "sup_bound": convex_sup_bound(outer, inner, curvature),
        },
    )


def bound_variation(lambda1_base: float, sup_norm: float) -> BoundResult:
    """lambda1(image) - lambda1(base) >= ((1 - S^2)/S^2) * lambda1(base)
    when the image lies inside the base and S = sup|phi'|.

    The right-hand side may be nonpositive; the bound is then valid but
    uninformative, which the precondition report flags.
    """
    if not math.isfinite(sup_norm) or sup_norm <= 0:
        raise InfiniteNorm("variation bound requires a finite positive sup|phi'|")
    if not (lambda1_base > 0 and math.isfinite(lambda1_base)):
        raise DomainError("variation bound requires lambda1(base) > 0")
    value = (1.0 - sup_norm**2) / sup_norm**2 * lambda1_base
    return BoundResult(
        method=Method.VARIATION,
        value=value,
        valid=True,
        preconditions=(
            ("image contained in base (declared)", True),
            ("informative (positive right-hand side)", value > 0),
        ),
        intermediates={"lambda1_base": lambda1_base, "sup_norm": sup_norm},
        notes="" if value > 0 else "vacuous",
    )


def bound_gap(
    sup_norm: float,
    l2_dev: float,
    rho: float,
    convex_sup: Optional[float] = None,
    image_area_value: Optional[float] = None,
) -> BoundResult:
    """Spectral-gap estimate lambda2 - lambda1 >= (j11^2 - j01^2) - penalty
    for maps of the unit disc onto domains of area pi.

    The penalty is (c^2 + 1) * lambda1(inscribed disc)^2 * gamma * (S + 1)
    * ||phi' - 1||_2 with c the fixed Sobolev scalar, gamma the gap
    minimization constant, and S either sup|phi'| or, when ``convex_sup``
    is given, its convex distortion bound.  A negative value is valid but
    vacuous and is flagged, not raised.
    """
    if image_area_value is not None:
        if abs(image_area_value - math.pi) / math.pi > GAP_AREA_RTOL:
            raise AreaMismatch(
                f"gap estimate requires image area pi, got {image_area_value:.6g}"
            )
    if not (rho > 0 and math.isfinite(rho)):
        raise DomainError("gap estimate requires a positive inradius")
    s_norm = convex_sup if convex_sup is not None else sup_norm
    if not math.isfinite(s_norm) or s_norm <= 0:
        raise InfiniteNorm("gap estimate requires a finite positive sup bound")
    if l2_dev < 0 or not math.isfinite(l2_dev):
        raise DomainError("gap estimate requires a finite nonnegative deviation")

    j01 = bessel_zero("J0")
    j11 = bessel_zero("J1")
    gamma = spectral_gap_constant().value
    lam_inscribed = (j01 / rho) ** 2
    penalty = (
        (GAP_SOBOLEV_CONSTANT**2 + 1.0)
        * lam_inscribed**2
        * gamma
        * (s_norm + 1.0)
        * l2_dev
    )
    value = (j11**2 - j01**2) - penalty
    method = Method.GAP_CONVEX if convex_sup is not None else Method.GAP
    pre = [
        ("base is the unit disc (declared)", True),
        ("image area = pi (within tolerance)", True),
        ("informative (positive right-hand side)", value > 0),
    ]
    if convex_sup is not None:
        pre.insert(2, ("image convex (declared)", True))
    return BoundResult(
        method=method,
        value=value,
        valid=True,
        preconditions=tuple(pre),
        intermediates={
            "sup_norm": s_norm,
            "l2_dev": l2_dev,
            "rho": rho,
            "lambda1_inscribed": lam_inscribed,
            "gap_constant": gamma,
            "penalty": penalty,
            "unperturbed_gap": j11**2 - j01**2,
        },
        notes="" if value > 0 else "vacuous",
    )


def best_bound(results: Sequence[BoundResult]) -> BoundResult:
    """Largest valid lambda1 bound; ties break toward the earlier method
    in the catalogue order.  Gap and variation results never compete."""
    candidates = [
        r for r in results if r.valid and r.method in LAMBDA1_METHODS
    ]
    if not candidates:
        raise NoValidBound("no valid lambda1 bound to select from")
    return max(candidates, key=lambda r: (r.value, -METHOD_ORDER[r.method]))


def compute_bounds(
    spec: DomainSpec,
    quad: Optional[QuadratureConfig] = None,
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    h: float = 0.01,
) -> list[BoundResult]:
    """Evaluate every applicable lambda1 bound for a domain spec.

    Declared inradius/area/convex radii are used when present; otherwise
    the area comes from quadrature and the inradius from a raster at
    pitch ``h``.  The alpha-regular estimate sweeps ``alphas`` and keeps
    the best exponent.
    """
    results: list[BoundResult] = []

    rho = inradius(spec, h)
    results.append(bound_inradius(rho, convex=False))
    if spec.convex_radii is not None:
        results.append(bound_inradius(rho, convex=True))

    area_value = spec.area if spec.area is not None else image_area(spec, quad)
    results.append(bound_faber_krahn(area_value))

    best_alpha: Optional[BoundResult] = None
    base_area = area(spec.base)
    for alpha in alphas:
        try:
            report = norm_alpha(spec.map, spec.base, alpha, quad)
        except QuadratureDivergence:
            continue
        candidate = bound_alpha_regular(alpha, base_area, report.value)
        if best_alpha is None or candidate.value > best_alpha.value:
            best_alpha = candidate
    if best_alpha is not None:
        results.append(best_alpha)

    if spec.convex_radii is not None:
        radii = spec.convex_radii
        results.append(
            bound_convex_distortion(radii.outer, radii.inner, radii.curvature)
        )

    results.append(bound_sup_norm(exact_lambda1(spec.base), norm_sup(spec.map, spec.base)))
    return results


def compute_gap_bounds(
    spec: DomainSpec,
    quad: Optional[QuadratureConfig] = None,
    h: float = 0.01,
) -> list[BoundResult]:
    """Evaluate the spectral-gap estimates for a unit-disc spec."""
    if not isinstance(spec.base, Disc) or spec.base.center != 0 or spec.base.radius != 1.0:
        raise DomainError("gap estimate requires the unit disc as base")
    area_value = spec.area if spec.area is not None else image_area(spec, quad)
    rho = inradius(spec, h)
    sup = norm_sup(spec.map, spec.base)
    dev = norm_l2_dev(spec.map, quad)
    results = [bound_gap(sup, dev, rho, image_area_value=area_value)]
    if spec.convex_radii is not None:
        radii = spec.convex_radii
        results.append(
            bound_gap(
                sup,
                dev,
                rho,
                convex_sup=convex_sup_bound(radii.outer, radii.inner, radii.curvature),
                image_area_value=area_value,
            )
        )
    return results
