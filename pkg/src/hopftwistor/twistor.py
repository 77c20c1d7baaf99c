"""Orthonormal timelike/spacelike pairs, the para-quaternionic frame, twistor
classes with their gauge actions, the three model curve families, and the
horizontal-lift calculus.

A pair p = (u_minus, u_plus) satisfies ((u-,u-)) = -1, ((u+,u+)) = 1,
((u-,u+)) = 0.  All quotient objects are handled through representatives plus
equivalence predicates; nothing is canonicalized.

The sign argument below is one of the strings "plus", "minus", "zero",
matching the three twistor bundles (fiber structures squaring to -1, +1, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .errors import DegenerateCurveError, InputError, ValidationError
from .fibration import FD_STEP, ParamCurve
from .linalg import STRUCTURE_TOL, herm_form

SIGNS = ("plus", "minus", "zero")
HORIZONTAL_TOL = 1e-8

__all__ = [
    "SIGNS",
    "HORIZONTAL_TOL",
    "StiefelPoint",
    "TangentPair",
    "TwistorClass",
    "LiftCoefficients",
    "para_apply",
    "model_curve",
    "curve_coefficients",
    "unit_tangent_lift",
    "parallel_shift_residual",
    "lift_coefficients",
    "is_horizontal",
    "gauge_apply",
    "twistor_equivalent",
    "normalize_lift_1d",
]


def _check_sign(sign: str) -> str:
    if sign not in SIGNS:
        raise InputError(f"sign must be one of {SIGNS}, got {sign!r}")
    return sign


@dataclass(frozen=True, eq=False)
class StiefelPoint:
    """An orthonormal pair: u_minus timelike (norm -1), u_plus spacelike (norm +1)."""

    u_minus: np.ndarray
    u_plus: np.ndarray
    tol: float = STRUCTURE_TOL

    def __post_init__(self):
        um = np.asarray(self.u_minus, dtype=complex)
        up = np.asarray(self.u_plus, dtype=complex)
        if um.shape != up.shape:
            raise InputError("u_minus and u_plus must share a dimension")
        object.__setattr__(self, "u_minus", um)
        object.__setattr__(self, "u_plus", up)
        res = max(
            abs(herm_form(um, um) + 1.0),
            abs(herm_form(up, up) - 1.0),
            abs(herm_form(um, up)),
        )
        if res > self.tol:
            raise ValidationError(
                f"not an orthonormal (-,+) pair: residual {res:.3e}", residual=res
            )

    @property
    def dim_n(self) -> int:
        return self.u_minus.size - 1


@dataclass(frozen=True, eq=False)
class TangentPair:
    """A pair (X_-, X_+), each complex-orthogonal to both base vectors."""

    x_minus: np.ndarray
    x_plus: np.ndarray
    base: StiefelPoint
    tol: float = 1e-8

    def __post_init__(self):
        xm = np.asarray(self.x_minus, dtype=complex)
        xp = np.asarray(self.x_plus, dtype=complex)
        object.__setattr__(self, "x_minus", xm)
        object.__setattr__(self, "x_plus", xp)
        um, up = self.base.u_minus, self.base.u_plus
        res = max(
            abs(herm_form(xm, um)),
            abs(herm_form(xm, up)),
            abs(herm_form(xp, um)),
            abs(herm_form(xp, up)),
        )
        if res > self.tol:
            raise ValidationError(
                f"pair not orthogonal to the base: residual {res:.3e}", residual=res
            )


@dataclass(frozen=True, eq=False)
class TwistorClass:
    """A twistor-space point: a sign and a Stiefel representative."""

    sign: str
    rep: StiefelPoint

    def __post_init__(self):
        _check_sign(self.sign)

    def equivalent_to(self, other: "TwistorClass", tol: float = 1e-8) -> bool:
        return twistor_equivalent(self, other, tol)


def para_apply(k: int, v: TangentPair) -> TangentPair:
    """Apply the k-th generator of the para-quaternionic frame, k in {1,2,3}.

    1: (X-, X+) -> (iX-, -iX+); 2: swap; 3: (X-, X+) -> (iX+, -iX-).
    """
    if k == 1:
        return TangentPair(1j * v.x_minus, -1j * v.x_plus, v.base, v.tol)
    if k == 2:
        return TangentPair(v.x_plus, v.x_minus, v.base, v.tol)
    if k == 3:
        return TangentPair(1j * v.x_plus, -1j * v.x_minus, v.base, v.tol)
    raise InputError(f"frame index must be 1, 2 or 3, got {k}")


def curve_coefficients(sign: str, r: float, t: float) -> Tuple[complex, complex]:
    """Coefficients (c_minus, c_plus) of the model curve on span{u-, u+}."""
    _check_sign(sign)
    if sign == "plus":
        return (
            np.exp(1j * t) * math.cosh(r),
            np.exp(-1j * t) * math.sinh(r),
        )
    if sign == "minus":
        return (
            math.cosh(r) * math.cosh(t) + 1j * math.sinh(r) * math.sinh(t),
            math.cosh(r) * math.sinh(t) + 1j * math.sinh(r) * math.cosh(t),
        )
    return (
        math.cosh(r) + 1j * t * math.exp(r),
        t * math.exp(r) + 1j * math.sinh(r),
    )


def model_curve(sign: str, r: float, p: StiefelPoint) -> ParamCurve:
    """The constant-curvature model curve of the given sign and radius.

    Values stay on the hyperquadric inside the complex span of the pair.
    """
    _check_sign(sign)

    def func(t: float) -> np.ndarray:
        cm, cp = curve_coefficients(sign, r, t)
        return cm * p.u_minus + cp * p.u_plus

    return ParamCurve(func)


def _tangent_coefficients(sign: str, r: float, t: float) -> Tuple[complex, complex]:
    if sign == "plus":
        if abs(r) < 1e-14:
            raise DegenerateCurveError(
                "unit tangent undefined for sign 'plus' at r = 0"
            )
        return (
            -1j * np.exp(1j * t) * math.sinh(r),
            -1j * np.exp(-1j * t) * math.cosh(r),
        )
    if sign == "minus":
        return (
            math.cosh(r) * math.sinh(t) - 1j * math.sinh(r) * math.cosh(t),
            math.cosh(r) * math.cosh(t) - 1j * math.sinh(r) * math.sinh(t),
        )
    return (
        t * math.exp(r) - 1j * math.sinh(r),
        math.cosh(r) - 1j * t * math.exp(r),
    )


def unit_tangent_lift(sign: str, r: float, p: StiefelPoint, t: float) -> np.ndarray:
    """Closed-form unit horizontal tangent along the model curve."""
    _check_sign(sign)
    cm, cp = _tangent_coefficients(sign, r, t)
    return cm * p.u_minus + cp * p.u_plus


def parallel_shift_residual(
    sign: str, r: float, r_prime: float, p: StiefelPoint, t: float
) -> float:
    """|| cosh r' * c_r(t) + sinh r' * i T_r(t) - c_{r+r'}(t) ||.

    Vanishes identically: the model curves form parallel families.
    """
    base = model_curve(sign, r, p).at(t)
    tangent = unit_tangent_lift(sign, r, p, t)
    shifted = model_curve(sign, r + r_prime, p).at(t)
    diff = math.cosh(r_prime) * base + math.sinh(r_prime) * (1j * tangent) - shifted
    return float(np.linalg.norm(diff))


@dataclass(frozen=True, eq=False)
class LiftCoefficients:
    """Connection coefficients of a Stiefel lift at one parameter value.

    du- = i alpha_minus u- + beta u+ + w_minus
    du+ = conj(beta) u- + i alpha_plus u+ + w_plus

    residual collects the failures of these shapes (vectors leaving the
    Stiefel manifold make the diagonal pairings grow real parts).
    """

    alpha_minus: float
    alpha_plus: float
    beta: complex
    w_minus: np.ndarray
    w_plus: np.ndarray
    residual: float


def lift_coefficients(
    lift: Callable[[float], StiefelPoint],
    x: float,
    step: float = FD_STEP,
    recon_tol: float = 1e-8,
) -> LiftCoefficients:
    """Differentiate a one-parameter lift and split off the connection part.

    Central differences at x; raises InputError when the reconstruction
    residual shows the input does not stay on the Stiefel manifold.
    """
    here = lift(x)
    plus, minus = lift(x + step), lift(x - step)
    dum = (plus.u_minus - minus.u_minus) / (2.0 * step)
    dup = (plus.u_plus - minus.u_plus) / (2.0 * step)
    um, up = here.u_minus, here.u_plus
    c_mm = herm_form(dum, um)
    c_mp = herm_form(dum, up)
    c_pm = herm_form(dup, um)
    c_pp = herm_form(dup, up)
    w_minus = dum + c_mm * um - c_mp * up
    w_plus = dup + c_pm * um - c_pp * up
    residual = max(abs(c_mm.real), abs(c_pp.real), abs(c_pm + np.conj(c_mp)))
    if residual > recon_tol:
        raise InputError(
            f"lift leaves the Stiefel manifold: residual {residual:.3e}",
            residual=residual,
        )
    return LiftCoefficients(
        alpha_minus=-c_mm.imag,
        alpha_plus=c_pp.imag,
        beta=c_mp,
        w_minus=w_minus,
        w_plus=w_plus,
        residual=float(residual),
    )


def is_horizontal(sign: str, c: LiftCoefficients, tol: float = HORIZONTAL_TOL) -> bool:
    """Horizontality of a lift direction with respect to the twistor fibration.

    plus:  beta = 0
    minus: alpha- = alpha+ and Im beta = 0
    zero:  alpha- - alpha+ = 2 Re beta and Im beta = 0
    """
    _check_sign(sign)
    if sign == "plus":
        return abs(c.beta) <= tol
    if sign == "minus":
        return (
            abs(c.alpha_minus - c.alpha_plus) <= tol and abs(c.beta.imag) <= tol
        )
    return (
        abs(c.alpha_minus - c.alpha_plus - 2.0 * c.beta.real) <= tol
        and abs(c.beta.imag) <= tol
    )


def gauge_apply(sign: str, theta: float, t: float, p: StiefelPoint) -> StiefelPoint:
    """The fiber gauge action on representatives for the given sign."""
    _check_sign(sign)
    um, up = p.u_minus, p.u_plus
    if sign == "plus":
        return StiefelPoint(
            np.exp(1j * (theta + t)) * um,
            np.exp(1j * (theta - t)) * up,
        )
    if sign == "minus":
        ph = np.exp(1j * theta)
        return StiefelPoint(
            ph * (math.cosh(t) * um + math.sinh(t) * up),
            ph * (math.sinh(t) * um + math.cosh(t) * up),
        )
    ph = np.exp(1j * theta)
    return StiefelPoint(
        ph * ((1.0 + 1j * t) * um + t * up),
        ph * (t * um + (1.0 - 1j * t) * up),
    )


def twistor_equivalent(a: TwistorClass, b: TwistorClass, tol: float = 1e-8) -> bool:
    """Same twistor point iff some gauge parameters map one rep to the other.

    The candidate parameters are reconstructed in closed form from the
    Hermitian pairings of the two representatives, then checked by applying
    the action; no search is involved.
    """
    if a.sign != b.sign:
        return False
    p, q = a.rep, b.rep
    if p.u_minus.shape != q.u_minus.shape:
        return False
    coef_a = -herm_form(q.u_minus, p.u_minus)
    coef_b = herm_form(q.u_minus, p.u_plus)
    if a.sign == "plus":
        th_sum = float(np.angle(coef_a)) if abs(coef_a) > 1e-14 else 0.0
        coef_c = herm_form(q.u_plus, p.u_plus)
        th_diff = float(np.angle(coef_c)) if abs(coef_c) > 1e-14 else 0.0
        theta, t = (th_sum + th_diff) / 2.0, (th_sum - th_diff) / 2.0
    elif a.sign == "minus":
        if abs(coef_a + coef_b) < 1e-12:
            return False
        t = math.log(abs(coef_a + coef_b))
        theta = float(np.angle(coef_a + coef_b))
    else:
        probe = coef_a - 1j * coef_b
        if abs(probe) < 1e-12:
            return False
        theta = float(np.angle(probe))
        t = float((coef_b * np.exp(-1j * theta)).real)
    moved = gauge_apply(a.sign, theta, t, p)
    res = max(
        float(np.linalg.norm(moved.u_minus - q.u_minus)),
        float(np.linalg.norm(moved.u_plus - q.u_plus)),
    )
    return res <= tol


def normalize_lift_1d(
    lift: Callable[[float], StiefelPoint],
    sign: str,
    x0: float,
    step: float = FD_STEP,
    ode_step: float = 1e-2,
    tol: float = HORIZONTAL_TOL,
) -> Callable[[float], StiefelPoint]:
    """Gauge a horizontal 1-d lift so its connection coefficients vanish.

    Integrates the gauge rates
        plus:         dtheta = -(a- + a+)/2,  dt = (a+ - a-)/2
        minus / zero: dtheta = -(a- + a+)/2,  dt = -Re beta
    from x0 by Simpson steps (the rates do not depend on the gauge state, so
    this is a quadrature) and applies the action pointwise.  Raises InputError
    when the input fails the horizontality predicate at a quadrature node.
    """
    _check_sign(sign)

    def rates(x: float) -> Tuple[float, float]:
        co = lift_coefficients(lift, x, step)
        if not is_horizontal(sign, co, tol):
            raise InputError(
                f"lift is not horizontal for sign {sign!r} at x = {x}"
            )
        dtheta = -(co.alpha_minus + co.alpha_plus) / 2.0
        if sign == "plus":
            dt = (co.alpha_plus - co.alpha_minus) / 2.0
        else:
            dt = -co.beta.real
        return dtheta, dt

    cache: dict = {}

    def gauge_at(x: float) -> Tuple[float, float]:
        if x in cache:
            return cache[x]
        span = x - x0
        theta = t_par = 0.0
        if span != 0.0:
            n = max(1, int(math.ceil(abs(span) / ode_step)))
            h = span / n
            left = rates(x0)
            for k in range(n):
                mid = rates(x0 + (k + 0.5) * h)
                right = rates(x0 + (k + 1.0) * h)
                theta += h * (left[0] + 4.0 * mid[0] + right[0]) / 6.0
                t_par += h * (left[1] + 4.0 * mid[1] + right[1]) / 6.0
                left = right
        cache[x] = (theta, t_par)
        return cache[x]

    def normalized(x: float) -> StiefelPoint:
        theta, t_par = gauge_at(x)
        return gauge_apply(sign, theta, t_par, lift(x))

    return normalized
