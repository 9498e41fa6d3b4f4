import math

import pytest

from confeig.errors import DomainError, QuadratureDivergence
from confeig.geometry import Disc, Rectangle, area
from confeig.maps import Affine, Exp, Identity, Mobius, Power, Sin
from confeig.norms import (
    QuadratureConfig,
    is_conformal_regular,
    norm_alpha,
    norm_l2_dev,
    norm_sup,
    radius_ratio_norm,
    regularity_profile,
)

UNIT_DISC = Disc(0j, 1.0)


def exp_norm_exact(d, alpha):
    return (math.pi * (math.exp(alpha * d) - 1.0) / alpha) ** (1.0 / alpha)


@pytest.mark.parametrize("d", [1.0, 0.5])
@pytest.mark.parametrize("alpha", [2.0, 3.0, 4.0])
def test_norm_alpha_exp_closed_form(d, alpha):
    base = Rectangle(0.0, d, 0.0, math.pi)
    report = norm_alpha(Exp(), base, alpha)
    assert report.value == pytest.approx(exp_norm_exact(d, alpha), rel=1e-10)
    assert report.alpha == alpha
    assert report.estimated_rel_error <= 1e-10
    assert report.node_count > 0


@pytest.mark.parametrize("d", [0.5, 0.25])
def test_norm_alpha_sin_l2_closed_form(d):
    base = Rectangle(-math.pi / 2, math.pi / 2, -d, d)
    report = norm_alpha(Sin(), base, 2.0)
    want_sq = math.pi * math.sinh(d) * math.cosh(d)
    assert report.value**2 == pytest.approx(want_sq, rel=1e-10)


def test_norm_alpha_identity_disc():
    for alpha in (2.0, 3.0, 7.0):
        report = norm_alpha(Identity(), UNIT_DISC, alpha)
        assert report.value == pytest.approx(math.pi ** (1.0 / alpha), rel=1e-12)


def test_norm_alpha_power_two_disc():
    # integral of (2 |z|)^3 over the unit disc is 16 pi / 5
    report = norm_alpha(Power(2), UNIT_DISC, 3.0)
    assert report.value == pytest.approx((16.0 * math.pi / 5.0) ** (1.0 / 3.0), rel=1e-12)


def test_norm_alpha_rejects_bad_alpha():
    with pytest.raises(DomainError):
        norm_alpha(Identity(), UNIT_DISC, 0.5)
    with pytest.raises(DomainError):
        norm_alpha(Identity(), UNIT_DISC, math.inf)


def test_norm_alpha_deterministic():
    a = norm_alpha(Exp(), Rectangle(0.0, 1.0, 0.0, math.pi), 3.0)
    b = norm_alpha(Exp(), Rectangle(0.0, 1.0, 0.0, math.pi), 3.0)
    assert a.value == b.value and a.estimated_rel_error == b.estimated_rel_error


def test_norm_sup_analytic_overrides():
    d = 0.7
    assert norm_sup(Exp(), Rectangle(0.0, d, 0.0, math.pi)) == math.exp(d)
    sin_base = Rectangle(-math.pi / 2, math.pi / 2, -d, d)
    # (1 + cosh 2d)/2 = cosh^2 d
    assert norm_sup(Sin(), sin_base) == pytest.approx(math.cosh(d), rel=1e-15)
    assert norm_sup(Affine(0.5), UNIT_DISC) == 0.5
    assert norm_sup(Identity(), Rectangle(0.0, 1.0, 0.0, 1.0)) == 1.0


def test_norm_sup_squared_values():
    d = 0.4
    assert norm_sup(Exp(), Rectangle(0.0, d, 0.0, math.pi)) ** 2 == pytest.approx(
        math.exp(2.0 * d), rel=1e-15
    )
    sin_base = Rectangle(-math.pi / 2, math.pi / 2, -d, d)
    assert norm_sup(Sin(), sin_base) ** 2 == pytest.approx(
        math.cosh(d) ** 2, rel=1e-14
    )


def test_norm_sup_search_path_disc():
    # |deriv| of z^2 peaks at the boundary with value 2
    assert norm_sup(Power(2), UNIT_DISC) == pytest.approx(2.0, rel=1e-6)
    # Mobius peak sits where the boundary comes closest to the pole
    m = Mobius(1.0, 0.0, -0.3, 1.0)
    assert norm_sup(m, UNIT_DISC) == pytest.approx(1.0 / 0.49, rel=1e-6)


def test_norm_sup_search_path_rectangle():
    base = Rectangle(0.0, 1.0, 0.0, 1.0)
    # no override for Power on rectangles; peak at the far corner 1+i
    want = 2.0 * math.sqrt(2.0)
    assert norm_sup(Power(2), base) == pytest.approx(want, rel=1e-6)


def test_norm_l2_dev_cases():
    assert norm_l2_dev(Identity()) == 0.0
    for a in (2.0, 0.5, 1.0 + 0.3j):
        want = abs(a - 1.0) * math.sqrt(math.pi)
        assert norm_l2_dev(Affine(a)) == pytest.approx(want, rel=1e-12, abs=1e-12)
    assert norm_l2_dev(Affine(1.0, 5.0 - 2.0j)) == 0.0


def test_power_mean_monotone_and_sup_dominates():
    cases = [
        (Exp(), Rectangle(0.0, 1.0, 0.0, math.pi)),
        (Sin(), Rectangle(-math.pi / 2, math.pi / 2, -0.5, 0.5)),
    ]
    for map, base in cases:
        sup = norm_sup(map, base)
        a = area(base)
        normalized = [
            norm_alpha(map, base, alpha).value * a ** (-1.0 / alpha)
            for alpha in (3.0, 4.0, 6.0, 8.0)
        ]
        for lower, higher in zip(normalized, normalized[1:]):
            assert higher >= lower * (1.0 - 1e-12)
        assert all(value <= sup * (1.0 + 1e-12) for value in normalized)


def test_radius_ratio_norm_equals_norm_alpha():
    for map, alpha in ((Power(2), 3.0), (Affine(2.0), 4.0), (Identity(), 5.0)):
        direct = norm_alpha(map, UNIT_DISC, alpha).value
        via_ratio = radius_ratio_norm(map, alpha)
        assert abs(via_ratio - direct) <= 1e-12 * direct


def test_radius_ratio_norm_closed_forms():
    assert radius_ratio_norm(Identity(), 4.0) == pytest.approx(
        math.pi**0.25, rel=1e-12
    )
    assert radius_ratio_norm(Affine(2.0), 4.0) == pytest.approx(
        2.0 * math.pi**0.25, rel=1e-12
    )


def test_quadrature_convergence_order():
    # at 2 nodes per panel, doubling panel count should cut the error
    # by a factor of 10 or more until round-off
    want = exp_norm_exact(1.0, 3.0)
    base = Rectangle(0.0, 1.0, 0.0, math.pi)
    errors = []
    for panels in (1, 2, 4):
        cfg = QuadratureConfig(nodes_per_axis=2, panels_per_axis=panels)
        errors.append(abs(norm_alpha(Exp(), base, 3.0, cfg).value - want))
    assert errors[1] <= errors[0] / 10.0
    assert errors[2] <= errors[1] / 10.0


def test_divergence_boundary_pole():
    bad = Mobius(1.0, 0.0, -1.0, 1.0)  # pole at z = 1 on the boundary
    with pytest.raises(QuadratureDivergence):
        norm_alpha(bad, UNIT_DISC, 3.0)


def test_regularity_profile_exp_all_finite():
    entries = regularity_profile(Exp(), Rectangle(0.0, 1.0, 0.0, math.pi), [3.0, 4.0, 8.0])
    assert [entry.finite for entry in entries] == [True, True, True]
    assert entries[0].value == pytest.approx(exp_norm_exact(1.0, 3.0), rel=1e-10)
    assert is_conformal_regular(entries)


def test_regularity_profile_identity_disc():
    entries = regularity_profile(Identity(), UNIT_DISC, [4.0])
    assert entries[0].finite and entries[0].value == pytest.approx(
        math.pi**0.25, rel=1e-12
    )


def test_regularity_profile_power_two():
    entries = regularity_profile(Power(2), UNIT_DISC, [3.0])
    assert entries[0].value == pytest.approx(
        (16.0 * math.pi / 5.0) ** (1.0 / 3.0), rel=1e-12
    )


def test_regularity_profile_divergent_entry():
    bad = Mobius(1.0, 0.0, -1.0, 1.0)
    entries = regularity_profile(bad, UNIT_DISC, [3.0])
    assert entries[0].finite is False and entries[0].value is None
    assert not is_conformal_regular(entries)


def test_regularity_profile_rejects_low_alpha():
    with pytest.raises(DomainError):
        regularity_profile(Identity(), UNIT_DISC, [2.0])


def test_quadrature_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(nodes_per_axis=1)
    with pytest.raises(DomainError):
        QuadratureConfig(panels_per_axis=0)
    with pytest.raises(DomainError):
        QuadratureConfig(disc_angular_nodes=3)


def test_node_budget_guard():
    cfg = QuadratureConfig(nodes_per_axis=2000, panels_per_axis=100)
    with pytest.raises(DomainError):
        norm_alpha(Exp(), Rectangle(0.0, 1.0, 0.0, math.pi), 3.0, cfg)
