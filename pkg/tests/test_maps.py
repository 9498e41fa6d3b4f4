import math

import numpy as np
import pytest

from confeig.errors import PoleError
from confeig.geometry import Disc, Rectangle
from confeig.maps import (
    Affine,
    Compose,
    Exp,
    Identity,
    Mobius,
    Power,
    Sin,
    compose,
)

FD_STEP = 1e-5
FD_RTOL = 1e-6


def lattice_points(base, count=100):
    """Deterministic low-discrepancy points inside a base domain."""
    n = np.arange(1, count + 1)
    # additive golden-ratio lattice in the unit square
    u = (n * 0.7548776662466927) % 1.0
    v = (n * 0.5698402909980532) % 1.0
    if isinstance(base, Rectangle):
        margin = 0.05
        x = base.x0 + (margin + (1 - 2 * margin) * u) * base.width
        y = base.y0 + (margin + (1 - 2 * margin) * v) * base.height
        return x + 1j * y
    r = base.radius * 0.95 * np.sqrt(u)
    t = 2.0 * math.pi * v
    return base.center + r * np.exp(1j * t)


def central_difference(map, z, step=FD_STEP):
    return (map.eval(z + step) - map.eval(z - step)) / (2.0 * step)


PAIRINGS = [
    (Identity(), Disc(0j, 1.0)),
    (Affine(2.0 - 0.5j, 1.0 + 1.0j), Disc(0j, 1.0)),
    (Exp(), Rectangle(0.0, 1.0, 0.0, math.pi)),
    (Sin(), Rectangle(-math.pi / 2, math.pi / 2, -0.5, 0.5)),
    (Power(2), Disc(0j, 1.0)),
    (Power(5), Disc(0j, 1.0)),
    (Mobius(1.0, 0.0, 0.25, 1.0), Disc(0j, 1.0)),
    (compose(Exp(), Affine(0.5, 0.25)), Rectangle(0.0, 1.0, 0.0, math.pi)),
]


@pytest.mark.parametrize("map,base", PAIRINGS, ids=lambda m: type(m).__name__)
def test_deriv_matches_central_difference(map, base):
    z = lattice_points(base)
    want = central_difference(map, z)
    got = map.deriv(z)
    assert np.all(np.abs(got - want) <= FD_RTOL * np.maximum(np.abs(got), 1.0))


def test_eval_identity_and_elementary_values():
    assert Identity().eval(1 + 2j) == 1 + 2j
    assert Exp().eval(math.log(2.0)) == pytest.approx(2.0 + 0j, rel=1e-15)
    assert Sin().eval(math.pi / 2) == pytest.approx(1.0 + 0j, abs=1e-15)


def test_exp_derivative_modulus():
    # |d exp|^2 = e^{2x}, independent of y
    assert abs(Exp().deriv(1.0 + 0j)) ** 2 == pytest.approx(math.e**2, rel=1e-14)
    assert abs(Exp().deriv(0.3 + 2.1j)) ** 2 == pytest.approx(
        math.exp(0.6), rel=1e-14
    )


def test_sin_derivative_modulus():
    # |d sin|^2 = (cos 2x + cosh 2y) / 2
    assert Sin().deriv(0j) == pytest.approx(1.0 + 0j, abs=1e-15)
    for x, y in ((0.3, 0.2), (-1.1, 0.4), (0.7, -0.9)):
        want = 0.5 * (math.cos(2 * x) + math.cosh(2 * y))
        assert abs(Sin().deriv(complex(x, y))) ** 2 == pytest.approx(want, rel=1e-13)


def test_affine_derivative_is_constant():
    m = Affine(3.0 - 1.0j, 5.0)
    for z in (0j, 1 + 1j, -2.5j):
        assert m.deriv(z) == 3.0 - 1.0j


def test_compose_identity_is_neutral():
    z = lattice_points(Rectangle(0.0, 1.0, 0.0, math.pi), count=10)
    left = compose(Identity(), Exp())
    assert np.allclose(left.eval(z), Exp().eval(z), rtol=0, atol=0)


def test_compose_affine_pair():
    m = compose(Affine(2.0), Affine(1.0, 1.0))  # z -> 2 (z + 1)
    assert m.eval(0.0) == 2.0 + 0j
    assert m.eval(1.0) == 4.0 + 0j


def test_compose_chain_rule_value():
    m = compose(Exp(), Affine(2.0))
    assert m.deriv(0.0) == pytest.approx(2.0 + 0j, rel=1e-15)


def test_compose_chain_rule_modulus_property():
    inner = Affine(0.7, 0.1j)
    outer = Power(3)
    m = compose(outer, inner)
    z = lattice_points(Disc(0j, 1.0))
    lhs = np.abs(m.deriv(z))
    rhs = np.abs(outer.deriv(inner.eval(z))) * np.abs(inner.deriv(z))
    assert np.all(np.abs(lhs - rhs) <= 1e-12 * np.maximum(rhs, 1e-30))


def test_mobius_rejects_zero_determinant():
    with pytest.raises(ValueError):
        Mobius(1.0, 2.0, 2.0, 4.0)


def test_mobius_pole_raises():
    m = Mobius(1.0, 0.0, 1.0, -1.0)  # pole at z = 1
    with pytest.raises(PoleError):
        m.eval(1.0)
    with pytest.raises(PoleError):
        m.deriv(1.0)


def test_mobius_regular_points_fine():
    m = Mobius(1.0, 0.0, 1.0, -1.0)
    assert m.eval(0.5) == pytest.approx(-1.0 + 0j, rel=1e-15)


def test_power_requires_positive_integer():
    with pytest.raises(ValueError):
        Power(0)
    with pytest.raises(ValueError):
        Power(-2)
    with pytest.raises(ValueError):
        Power(1.5)


def test_power_one_derivative():
    assert Power(1).deriv(0.0) == 1.0 + 0j


def test_nonfinite_input_rejected():
    for bad in (math.nan, math.inf):
        with pytest.raises(ValueError):
            Exp().eval(complex(bad, 0.0))
        with pytest.raises(ValueError):
            Exp().deriv(complex(0.0, bad))


def test_overflow_surfaces_as_pole_error():
    # eval never hands back non-finite components silently
    with pytest.raises(PoleError):
        Exp().eval(1000.0)


def test_maps_are_immutable():
    m = Affine(2.0)
    with pytest.raises(Exception):
        m.a = 3.0


def test_scalar_in_scalar_out():
    out = Exp().eval(0.5 + 0.5j)
    assert isinstance(out, complex)
    arr = Exp().eval(np.array([0.5, 0.25]))
    assert isinstance(arr, np.ndarray) and arr.shape == (2,)


def test_compose_tree_structure():
    m = compose(Exp(), Sin())
    assert isinstance(m, Compose)
    assert m.outer == Exp() and m.inner == Sin()
