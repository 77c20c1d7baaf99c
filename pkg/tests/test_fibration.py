import math

import numpy as np
import pytest

from hopftwistor import (
    AdSPoint,
    CHPoint,
    DegenerateCurveError,
    InputError,
    ParamCurve,
    ValidationError,
    canonical_rep,
    ch_equal,
    curve_curvature,
    horizontal_part,
    model_curve,
    numeric_derivative,
    real_form,
    space_norm,
    tangent_project_ads,
)
from hopftwistor.sampling import random_stiefel


def coth(x: float) -> float:
    return math.cosh(x) / math.sinh(x)


def test_ads_point_validation():
    AdSPoint(np.array([1.0, 0.0, 0.0], dtype=complex))
    with pytest.raises(ValidationError):
        AdSPoint(np.array([1.0, 1.0, 0.0], dtype=complex))


def test_horizontal_part_properties(rng):
    p = random_stiefel(rng, 3)
    w = p.u_minus
    raw = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    x = tangent_project_ads(raw, w)
    assert abs(real_form(x, w)) <= 1e-12
    h = horizontal_part(x, w)
    assert abs(real_form(h, w)) <= 1e-10
    assert abs(real_form(h, 1j * w)) <= 1e-10
    # idempotent on the horizontal subspace
    assert np.abs(horizontal_part(h, w) - h).max() <= 1e-12


def test_horizontal_part_rejects_non_tangent():
    w = np.array([1.0, 0.0, 0.0], dtype=complex)
    with pytest.raises(InputError):
        horizontal_part(w, w)


def test_numeric_derivative_accuracy():
    curve = ParamCurve(lambda t: np.array([np.exp(2j * t), 0.0, 0.0]))
    d = numeric_derivative(curve, 0.3)
    want = 2j * np.exp(2j * 0.3)
    assert abs(d[0] - want) <= 1e-7
    fine = numeric_derivative(curve, 0.3, richardson=True)
    assert abs(fine[0] - want) <= 1e-10


def test_numeric_derivative_domain_gate():
    curve = ParamCurve(lambda t: np.array([1.0 + 0j, t, 0.0]), domain=(0.0, 1.0))
    with pytest.raises(InputError):
        numeric_derivative(curve, 0.0)


def test_curvature_matches_closed_forms(canonical_pair):
    cases = [
        ("plus", 0.5, 2.0 * coth(1.0)),
        ("minus", 0.5, 2.0 * math.tanh(1.0)),
        ("zero", 0.5, 2.0),
    ]
    for sign, r, want in cases:
        curve = model_curve(sign, r, canonical_pair)
        for t in (-0.4, 0.0, 0.7):
            res = curve_curvature(curve, t)
            assert res.kappa == pytest.approx(want, abs=1e-5)
            assert res.residual <= 1e-5


def test_curvature_fiber_curve_degenerate(canonical_pair):
    # the fiber itself projects to a point
    curve = ParamCurve(lambda t: np.exp(1j * t) * canonical_pair.u_minus)
    with pytest.raises(DegenerateCurveError):
        curve_curvature(curve, 0.0)


def test_ch_equal_gauge_invariance(canonical_pair):
    a = CHPoint(AdSPoint(canonical_pair.u_minus))
    b = CHPoint(AdSPoint(np.exp(0.9j) * canonical_pair.u_minus))
    assert ch_equal(a, b)
    shifted = np.cosh(0.3) * canonical_pair.u_minus + np.sinh(0.3) * canonical_pair.u_plus
    assert not ch_equal(a, CHPoint(AdSPoint(shifted)))


def test_canonical_rep_fixes_phase(canonical_pair):
    p = CHPoint(AdSPoint(np.exp(1.2j) * canonical_pair.u_minus))
    rep = canonical_rep(p).rep.vec
    assert rep[0].imag == pytest.approx(0.0, abs=1e-15)
    assert rep[0].real > 0
    assert ch_equal(CHPoint(AdSPoint(rep)), p)


def test_space_norm_on_horizontal(rng):
    p = random_stiefel(rng, 2)
    w = p.u_minus
    raw = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    h = horizontal_part(tangent_project_ads(raw, w), w)
    assert space_norm(h, w) == pytest.approx(math.sqrt(real_form(h, h)))
