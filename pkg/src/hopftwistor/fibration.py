"""The circle fibration of the anti-de Sitter hyperquadric over complex
hyperbolic space: projections, representatives, and finite-difference curve
geometry.

A point of the base is an S^1-orbit {e^{i theta} w}; we always compute on an
explicit representative w with ((w,w)) = -1.  "Horizontal" means orthogonal
to the fiber direction i*w.  Projected curves are handled through their lifts;
curvature is measured against the circle equation D_T T = kappa * (+-i) T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Tuple

import numpy as np

from .errors import DegenerateCurveError, InputError, ValidationError
from .linalg import STRUCTURE_TOL, herm_form, real_form

FD_STEP = 1e-4

__all__ = [
    "FD_STEP",
    "AdSPoint",
    "CHPoint",
    "ParamCurve",
    "CurvatureResult",
    "horizontal_part",
    "tangent_project_ads",
    "numeric_derivative",
    "curve_curvature",
    "ch_equal",
    "canonical_rep",
    "space_norm",
]


@dataclass(frozen=True, eq=False)
class AdSPoint:
    """A vector on the hyperquadric ((w,w)) = -1."""

    vec: np.ndarray
    tol: float = STRUCTURE_TOL

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=complex)
        object.__setattr__(self, "vec", v)
        res = abs(herm_form(v, v) + 1.0)
        if res > self.tol:
            raise ValidationError(
                f"not on the hyperquadric: |((w,w))+1| = {res:.3e}", residual=res
            )


@dataclass(frozen=True, eq=False)
class CHPoint:
    """A point of the base, stored as a chosen orbit representative."""

    rep: AdSPoint


@dataclass(frozen=True, eq=False)
class ParamCurve:
    """A curve t -> hyperquadric, evaluated on raw coordinate vectors.

    func returns the vector; point() wraps it with the membership check.
    domain is a closed interval.
    """

    func: Callable[[float], np.ndarray]
    domain: Tuple[float, float] = (-math.inf, math.inf)

    def at(self, t: float) -> np.ndarray:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise InputError(f"parameter {t} outside domain [{lo}, {hi}]")
        return np.asarray(self.func(t), dtype=complex)

    def point(self, t: float) -> AdSPoint:
        return AdSPoint(self.at(t))


class CurvatureResult(NamedTuple):
    kappa: float
    residual: float
    sign: int


def space_norm(x, w) -> float:
    """Norm of a tangent vector x at w via the real scalar product.

    Valid on horizontal vectors (the restriction there is positive definite).
    """
    val = real_form(x, x)
    return math.sqrt(max(val, 0.0))


def horizontal_part(x, w, tol: float = 1e-8) -> np.ndarray:
    """Project a tangent vector at w onto the horizontal subspace.

    HX = X + <X, iw> iw.  Requires <X, w> = 0 within tol (tangency); the
    result satisfies ((HX, w)) = 0, i.e. full complex orthogonality.
    """
    wv = np.asarray(w, dtype=complex)
    xv = np.asarray(x, dtype=complex)
    tangency = abs(real_form(xv, wv))
    if tangency > tol:
        raise InputError(
            f"not tangent to the hyperquadric: <X,w> = {tangency:.3e}",
            residual=tangency,
        )
    iw = 1j * wv
    return xv + real_form(xv, iw) * iw


def tangent_project_ads(x, w) -> np.ndarray:
    """Project an ambient vector onto the tangent space at w: X + <X,w> w."""
    wv = np.asarray(w, dtype=complex)
    xv = np.asarray(x, dtype=complex)
    return xv + real_form(xv, wv) * wv


def numeric_derivative(
    curve: ParamCurve, t: float, step: float = FD_STEP, richardson: bool = False
) -> np.ndarray:
    """Central difference, O(step^2); one Richardson level on request."""
    lo, hi = curve.domain
    if not (lo <= t - step and t + step <= hi):
        raise InputError(f"stencil [{t - step}, {t + step}] outside domain")
    coarse = (curve.at(t + step) - curve.at(t - step)) / (2.0 * step)
    if not richardson:
        return coarse
    h = step / 2.0
    fine = (curve.at(t + h) - curve.at(t - h)) / (2.0 * h)
    return (4.0 * fine - coarse) / 3.0


def curve_curvature(
    curve: ParamCurve, t: float, step: float = FD_STEP
) -> CurvatureResult:
    """Geodesic curvature of the projected curve at parameter t.

    Works on the lift: with a = <c', ic> the vertical rate, the horizontal
    velocity is Hc' = c' + a ic with speed v.  The unit tangent field
    T = Hc'/v is carried along the lift, so the covariant derivative of the
    projected tangent needs the equivariance correction a*iT before the 1/v
    arclength rescaling:

        D_T T = (dT/dt + a iT) / v,

    then tangent + horizontal projection.  Returns kappa = ||D_T T||, the sign
    sigma minimizing the circle-equation residual || D_T T - kappa sigma iT ||,
    and that residual.
    """

    def tangent_data(tau: float):
        c = curve.at(tau)
        dc = (curve.at(tau + step) - curve.at(tau - step)) / (2.0 * step)
        a = real_form(dc, 1j * c)
        hvel = dc + a * (1j * c)
        return c, hvel, a

    c0, hvel0, a0 = tangent_data(t)
    v = space_norm(hvel0, c0)
    if v <= 1e-10:
        raise DegenerateCurveError(
            f"vanishing horizontal speed at t = {t}: ||Hc'|| = {v:.3e}"
        )

    def unit_tangent(tau: float) -> np.ndarray:
        c, hvel, _ = tangent_data(tau)
        return hvel / space_norm(hvel, c)

    t0 = unit_tangent(t)
    dt_vec = (unit_tangent(t + step) - unit_tangent(t - step)) / (2.0 * step)
    deriv = (dt_vec + a0 * (1j * t0)) / v
    w = horizontal_part(tangent_project_ads(deriv, c0), c0, tol=1e-5)
    kappa = space_norm(w, c0)
    it0 = 1j * t0
    res_plus = space_norm(w - kappa * it0, c0)
    res_minus = space_norm(w + kappa * it0, c0)
    if res_plus <= res_minus:
        return CurvatureResult(kappa, res_plus, 1)
    return CurvatureResult(kappa, res_minus, -1)


def ch_equal(a: CHPoint, b: CHPoint, tol: float = 1e-9) -> bool:
    """Same fiber iff |((a, b))| = 1 within tol."""
    return abs(abs(herm_form(a.rep.vec, b.rep.vec)) - 1.0) <= tol


def canonical_rep(p: CHPoint, tol: float = 1e-12) -> CHPoint:
    """Deterministic representative: first coordinate above tol made real positive."""
    v = p.rep.vec
    idx = int(np.argmax(np.abs(v) > tol))
    phase = v[idx] / abs(v[idx])
    return CHPoint(AdSPoint(v / phase))
