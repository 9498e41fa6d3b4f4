"""Canonical base domains, domain specs, and exact reference quantities.

A domain is described by a canonical base (axis-aligned rectangle or disc)
together with a holomorphic map understood to be injective on that base;
the domain of interest is the image.  Exact first eigenvalues are known on
the bases themselves, which is what every bound in the catalogue leans on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .constants import bessel_zero
from .errors import DomainError
from .maps import AnalyticMap, Exp, Identity, Sin


@dataclass(frozen=True)
class Rectangle:
    """Open axis-aligned rectangle (x0, x1) x (y0, y1)."""

    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        for name in ("x0", "x1", "y0", "y1"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("rectangle requires x0 < x1 and y0 < y1")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))


@dataclass(frozen=True)
class Disc:
    """Open disc of given center and radius."""

    center: complex = 0j
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0):
            raise ValueError("disc requires radius > 0")


BaseDomain = Union[Rectangle, Disc]


@dataclass(frozen=True)
class ConvexRadii:
    """Caller-declared radii for a convex image domain.

    ``outer``: radius of a circumscribed disc.
    ``inner``: radius of an inscribed disc.
    ``curvature``: a lower radius-of-curvature bound for the boundary.
    """

    outer: float
    inner: float
    curvature: float

    def __post_init__(self):
        for name in ("outer", "inner", "curvature"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not (0 < self.inner <= self.outer and 0 < self.curvature <= self.outer):
            raise ValueError(
                "convex radii require 0 < inner <= outer and 0 < curvature <= outer"
            )


@dataclass(frozen=True)
class DomainSpec:
    """A base domain plus the holomorphic map applied to it.

    ``inradius``, ``convex_radii`` and ``area`` are optional caller-declared
    facts about the image domain.  They are trusted, not derived; bounds
    that consume them say so in their precondition reports.
    """

    base: BaseDomain
    map: AnalyticMap
    inradius: Optional[float] = None
    convex_radii: Optional[ConvexRadii] = None
    area: Optional[float] = None

    def __post_init__(self):
        if self.inradius is not None and not (self.inradius > 0):
            raise ValueError("declared inradius must be positive")
        if self.area is not None and not (self.area > 0):
            raise ValueError("declared area must be positive")


def area(base: BaseDomain) -> float:
    """Exact area of a base domain."""
    if isinstance(base, Rectangle):
        return base.width * base.height
    if isinstance(base, Disc):
        return math.pi * base.radius**2
    raise DomainError(f"unsupported base domain {type(base).__name__}")


def image_area(spec: DomainSpec, quad=None) -> float:
    """Area of the image domain, computed as the integral of |phi'|^2 over
    the base.  Equals the true image area whenever the map is injective.
    """
    from .norms import norm_alpha

    return norm_alpha(spec.map, spec.base, 2.0, quad).value ** 2


def exact_lambda1(base: BaseDomain) -> float:
    """First Dirichlet eigenvalue of a base domain.

    Rectangle of sides a x b: pi^2/a^2 + pi^2/b^2.  Disc of radius R:
    (j_{0,1}/R)^2 with j_{0,1} the first zero of J0.
    """
    if isinstance(base, Rectangle):
        return math.pi**2 / base.width**2 + math.pi**2 / base.height**2
    if isinstance(base, Disc):
        return (bessel_zero("J0") / base.radius) ** 2
    raise DomainError(f"unsupported base domain {type(base).__name__}")


def exact_lambda2_disc(radius: float = 1.0) -> float:
    """Second Dirichlet eigenvalue of a disc: (j_{1,1}/R)^2."""
    if not (radius > 0):
        raise DomainError("radius must be positive")
    return (bessel_zero("J1") / radius) ** 2


def inradius(spec: DomainSpec, h: float, samples_per_cell: int = 4) -> float:
    """Inradius of the image domain.

    Uses the declared override when present.  Otherwise rasterizes the
    image at pitch ``h`` and takes the maximum of the distance transform,
    which is accurate to O(h).  The raster is eroded by construction, so a
    half-pitch compensation is added back.
    """
    if spec.inradius is not None:
        return spec.inradius
    if not (h > 0):
        raise DomainError("raster pitch h must be positive")

    from scipy import ndimage

    from .oracle import rasterize

    grid = rasterize(spec, h, samples_per_cell)
    dist = ndimage.distance_transform_edt(grid.inside, sampling=grid.h)
    return float(dist.max()) + 0.5 * grid.h


def half_annulus_spec(d: float) -> DomainSpec:
    """exp applied to (0, d) x (0, pi): the upper half-annulus
    1 < |w| < e^d.

    The annular gap width gives the inradius (e^d - 1)/2 for moderate d,
    and the image area is pi (e^(2d) - 1)/2.
    """
    if not (d > 0):
        raise DomainError("half-annulus parameter d must be positive")
    return DomainSpec(
        base=Rectangle(0.0, d, 0.0, math.pi),
        map=Exp(),
        inradius=0.5 * (math.exp(d) - 1.0),
        area=0.5 * math.pi * (math.exp(2.0 * d) - 1.0),
    )


def slit_ellipse_spec(d: float) -> DomainSpec:
    """sin applied to (-pi/2, pi/2) x (-d, d): the open ellipse with
    semi-axes cosh d, sinh d, slit along the real axis from each focus
    (+-1, 0) out to the vertex (+-cosh d, 0).

    Ships the declared inradius d used by the inradius-based bound for
    this family; the image area is pi sinh d cosh d.
    """
    if not (d > 0):
        raise DomainError("slit-ellipse parameter d must be positive")
    return DomainSpec(
        base=Rectangle(-0.5 * math.pi, 0.5 * math.pi, -d, d),
        map=Sin(),
        inradius=d,
        area=math.pi * math.sinh(d) * math.cosh(d),
    )


def unit_disc_spec(map: AnalyticMap = Identity()) -> DomainSpec:
    """Convenience spec: the unit disc as base with the given map."""
    return DomainSpec(base=Disc(0j, 1.0), map=map)
