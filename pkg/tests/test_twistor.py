import numpy as np
import pytest

from hopftwistor import (
    InputError,
    StiefelPoint,
    TwistorClass,
    ValidationError,
    gauge_apply,
    is_horizontal,
    lift_coefficients,
    model_curve,
    pair_form,
    para_apply,
    parallel_shift_residual,
    twistor_equivalent,
    unit_tangent_lift,
)
from hopftwistor.twistor import SIGNS, normalize_lift_1d
from hopftwistor.sampling import random_stiefel, random_tangent_pair


def pairs_close(a, b, tol=1e-12):
    return (
        np.abs(a.x_minus - b.x_minus).max() <= tol
        and np.abs(a.x_plus - b.x_plus).max() <= tol
    )


def scaled(v, s):
    return type(v)(s * v.x_minus, s * v.x_plus, v.base, v.tol)


def test_stiefel_validation(canonical_pair):
    with pytest.raises(ValidationError):
        StiefelPoint(canonical_pair.u_minus, 2.0 * canonical_pair.u_plus)
    with pytest.raises(InputError):
        StiefelPoint(canonical_pair.u_minus, np.zeros(4, dtype=complex))


def test_para_frame_multiplication_table(rng):
    """The nine split-quaternion products of the frame generators."""
    p = random_stiefel(rng, 3)
    v = random_tangent_pair(rng, p)
    i1 = lambda u: para_apply(1, u)
    i2 = lambda u: para_apply(2, u)
    i3 = lambda u: para_apply(3, u)
    assert pairs_close(i1(i1(v)), scaled(v, -1.0))
    assert pairs_close(i2(i2(v)), v)
    assert pairs_close(i3(i3(v)), v)
    assert pairs_close(i1(i2(v)), i3(v))
    assert pairs_close(i2(i1(v)), scaled(i3(v), -1.0))
    assert pairs_close(i2(i3(v)), scaled(i1(v), -1.0))
    assert pairs_close(i3(i2(v)), i1(v))
    assert pairs_close(i3(i1(v)), i2(v))
    assert pairs_close(i1(i3(v)), scaled(i2(v), -1.0))


def test_para_frame_skew_adjoint(rng):
    p = random_stiefel(rng, 2)
    v = random_tangent_pair(rng, p)
    w = random_tangent_pair(rng, p)
    for k in (1, 2, 3):
        lhs = pair_form(
            (para_apply(k, v).x_minus, para_apply(k, v).x_plus),
            (w.x_minus, w.x_plus),
        )
        rhs = pair_form(
            (v.x_minus, v.x_plus),
            (para_apply(k, w).x_minus, para_apply(k, w).x_plus),
        )
        assert abs(lhs + rhs) <= 1e-12


def test_para_apply_rejects_bad_index(rng):
    p = random_stiefel(rng, 2)
    v = random_tangent_pair(rng, p)
    with pytest.raises(InputError):
        para_apply(0, v)


def test_model_curves_stay_on_quadric(canonical_pair):
    for sign in SIGNS:
        curve = model_curve(sign, 0.4, canonical_pair)
        for t in (-1.0, 0.0, 0.6):
            curve.point(t)  # membership check inside


def test_is_horizontal_predicates(canonical_pair):
    """Boost lifts are 'minus'-horizontal, phase lifts 'plus'-horizontal."""
    e0, e1 = canonical_pair.u_minus, canonical_pair.u_plus

    def boost(x: float) -> StiefelPoint:
        return StiefelPoint(
            np.cosh(x) * e0 + np.sinh(x) * e1,
            np.sinh(x) * e0 + np.cosh(x) * e1,
        )

    def phase(x: float) -> StiefelPoint:
        return StiefelPoint(np.exp(1j * x) * e0, np.exp(-1j * x) * e1)

    cb = lift_coefficients(boost, 0.0)
    assert is_horizontal("minus", cb)
    assert not is_horizontal("plus", cb)
    assert not is_horizontal("zero", cb)
    cp = lift_coefficients(phase, 0.0)
    assert is_horizontal("plus", cp)
    assert not is_horizontal("minus", cp)
    assert not is_horizontal("zero", cp)


def test_unit_tangent_lift_is_unit(canonical_pair):
    for sign in SIGNS:
        for t in (-0.5, 0.3):
            c = model_curve(sign, 0.7, canonical_pair).at(t)
            tv = unit_tangent_lift(sign, 0.7, canonical_pair, t)
            from hopftwistor import real_form
            assert real_form(tv, tv) == pytest.approx(1.0, abs=1e-12)
            assert abs(real_form(tv, c)) <= 1e-12
            assert abs(real_form(tv, 1j * c)) <= 1e-12


def test_parallel_shift_identity(canonical_pair):
    worst = 0.0
    for sign in SIGNS:
        for r in (-0.6, 0.2, 0.9):
            for rp in (-0.5, 0.3):
                for t in (-0.8, 0.0, 0.4):
                    if sign == "plus" and abs(r) < 1e-14:
                        continue
                    worst = max(
                        worst,
                        parallel_shift_residual(sign, r, rp, canonical_pair, t),
                    )
    assert worst <= 1e-10


def test_gauge_apply_preserves_stiefel(canonical_pair):
    for sign in SIGNS:
        q = gauge_apply(sign, 0.7, 0.3, canonical_pair)
        assert isinstance(q, StiefelPoint)
        a = TwistorClass(sign, canonical_pair)
        b = TwistorClass(sign, q)
        assert twistor_equivalent(a, b)


def test_twistor_inequivalent_when_plane_moves(rng):
    p = random_stiefel(rng, 3)
    q = random_stiefel(rng, 3)
    assert not twistor_equivalent(TwistorClass("plus", p), TwistorClass("plus", q))


def test_normalize_lift_1d_kills_gauge_part(canonical_pair):
    """A gauged horizontal lift comes back with vanishing coefficients."""
    e0 = canonical_pair.u_minus
    e1 = canonical_pair.u_plus
    e2 = np.array([0.0, 0.0, 1.0], dtype=complex)

    def clean(x: float) -> StiefelPoint:
        # moves u_minus inside the orthogonal complement of u_plus: beta = 0
        return StiefelPoint(np.cosh(x) * e0 + np.sinh(x) * e2, e1)

    def wobbled(x: float) -> StiefelPoint:
        return gauge_apply("plus", 0.2 * x, -0.3 * x, clean(x))

    co = lift_coefficients(wobbled, 0.3)
    assert is_horizontal("plus", co)
    assert abs(co.alpha_minus) > 1e-3  # the gauge part is visible before fixing
    fixed = normalize_lift_1d(wobbled, "plus", 0.1)
    cf = lift_coefficients(fixed, 0.3)
    assert abs(cf.alpha_minus) <= 1e-6
    assert abs(cf.alpha_plus) <= 1e-6
    assert abs(cf.beta) <= 1e-6
