"""Holomorphic maps as small symbolic trees with exact derivatives.

Maps are immutable value objects.  ``eval`` and ``deriv`` accept a complex
scalar or a numpy array of complex numbers and broadcast elementwise.
Derivatives come from the chain rule applied to the tree, so no numerical
differentiation enters the bound pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleError

# Mobius denominators below this magnitude count as poles.  The threshold
# only catches underflow-level denominators; poles are expected to sit
# outside any declared base domain.
POLE_THRESHOLD = 1e-300


def _require_finite_input(z: np.ndarray) -> None:
    if not (np.all(np.isfinite(z.real)) and np.all(np.isfinite(z.imag))):
        raise ValueError("map evaluation requires finite input points")


def _require_finite_output(w: np.ndarray, what: str) -> None:
    if not (np.all(np.isfinite(w.real)) and np.all(np.isfinite(w.imag))):
        raise PoleError(f"{what} produced a non-finite value")


@dataclass(frozen=True)
class AnalyticMap:
    """Base class for the symbolic map family."""

    def eval(self, z):
        """Evaluate the map at ``z`` (complex scalar or array)."""
        arr = np.asarray(z, dtype=complex)
        _require_finite_input(arr)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = np.asarray(self._eval(arr))
        _require_finite_output(out, type(self).__name__ + ".eval")
        return complex(out) if out.ndim == 0 else out

    def deriv(self, z):
        """Evaluate the complex derivative at ``z``."""
        arr = np.asarray(z, dtype=complex)
        _require_finite_input(arr)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = np.asarray(self._deriv(arr))
        _require_finite_output(out, type(self).__name__ + ".deriv")
        return complex(out) if out.ndim == 0 else out

    def _eval(self, z):  # pragma: no cover - abstract
        raise NotImplementedError

    def _deriv(self, z):  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(AnalyticMap):
    """z -> z."""

    def _eval(self, z):
        return z

    def _deriv(self, z):
        return np.ones_like(z)


@dataclass(frozen=True)
class Affine(AnalyticMap):
    """z -> a*z + b."""

    a: complex
    b: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        if self.a == 0:
            raise ValueError("Affine map requires a != 0")

    def _eval(self, z):
        return self.a * z + self.b

    def _deriv(self, z):
        return np.full_like(z, self.a)


@dataclass(frozen=True)
class Exp(AnalyticMap):
    """z -> exp(z)."""

    def _eval(self, z):
        return np.exp(z)

    def _deriv(self, z):
        return np.exp(z)


@dataclass(frozen=True)
class Sin(AnalyticMap):
    """z -> sin(z)."""

    def _eval(self, z):
        return np.sin(z)

    def _deriv(self, z):
        return np.cos(z)


@dataclass(frozen=True)
class Power(AnalyticMap):
    """z -> z**n for integer n >= 1."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError("Power exponent must be an integer >= 1")
        object.__setattr__(self, "n", int(self.n))

    def _eval(self, z):
        return z**self.n

    def _deriv(self, z):
        if self.n == 1:
            return np.ones_like(z)
        return self.n * z ** (self.n - 1)


@dataclass(frozen=True)
class Mobius(AnalyticMap):
    """z -> (a*z + b) / (c*z + d) with a*d - b*c != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("Mobius map requires a*d - b*c != 0")

    def _denominator(self, z):
        den = self.c * z + self.d
        if np.any(np.abs(den) < POLE_THRESHOLD):
            raise PoleError("Mobius evaluation at (or numerically at) a pole")
        return den

    def _eval(self, z):
        return (self.a * z + self.b) / self._denominator(z)

    def _deriv(self, z):
        det = self.a * self.d - self.b * self.c
        return det / self._denominator(z) ** 2


@dataclass(frozen=True)
class Compose(AnalyticMap):
    """outer o inner."""

    outer: AnalyticMap
    inner: AnalyticMap

    def _eval(self, z):
        return self.outer._eval(self.inner._eval(z))

    def _deriv(self, z):
        w = self.inner._eval(z)
        return self.outer._deriv(w) * self.inner._deriv(z)


def compose(outer: AnalyticMap, inner: AnalyticMap) -> Compose:
    """Return the composition outer o inner (inner applied first)."""
    return Compose(outer, inner)
