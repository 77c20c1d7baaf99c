"""Hypersurface patches in the hyperquadric, finite-difference shape
operators, and certification of the Hopf condition.

A patch stores a chart map into the hyperquadric together with the closed-form
lift of a unit normal.  Chart convention: params[0] is always the fiber angle
"theta"; the coordinate at t_index maps (after horizontal projection) onto the
structure direction, and seeds the tangent frame.  The remaining coordinates
are orthonormalized greedily; the frame choice affects only presentation,
never eigenvalues.

Orientation: the classical patches carry the normal e^{i theta} i T, for which
the structure eigenvalue is -2coth 2r / -2tanh 2r / -2.  Reports also carry
the eigenvalue table of the opposite normal, since both sign conventions are
in circulation for these examples.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import ExceptionalPairError, ImmersionError, InputError
from .fibration import (
    FD_STEP,
    AdSPoint,
    horizontal_part,
    space_norm,
    tangent_project_ads,
)
from .linalg import AlgebraElement, matrix_exp, real_form
from .twistor import (
    StiefelPoint,
    curve_coefficients,
    is_horizontal,
    lift_coefficients,
    unit_tangent_lift,
)

GRID_DENSITY = 3
GRID_CAP = 81
RANK_TOL = 1e-6
CLUSTER_TOL = 5e-4
PAIRING_DEGENERATE_TOL = 1e-3

DEFAULT_VERIFY_TOLS = {
    "hopf": 1e-4,
    "mu": 1e-4,
    "mu-constancy": 1e-4,
    "eigenvalue": 1e-4,
    "pairing": 1e-4,
    "symmetry": 1e-5,
    "lsq": 1e-4,
    "rank": RANK_TOL,
}

__all__ = [
    "GRID_DENSITY",
    "GRID_CAP",
    "RANK_TOL",
    "CLUSTER_TOL",
    "PAIRING_DEGENERATE_TOL",
    "DEFAULT_VERIFY_TOLS",
    "HypersurfacePatch",
    "ShapeResult",
    "ShapeReport",
    "build_patch",
    "structure_lift",
    "phi_project",
    "shape_operator",
    "verify_hopf",
    "pairing_residual",
    "cluster_eigenvalues",
    "grid_key",
    "tube_complex",
    "tube_real",
    "horosphere",
    "horosphere_defining_residual",
    "parallel_patch_residual",
]


@dataclass(frozen=True, eq=False)
class HypersurfacePatch:
    """A parametrized piece of a real hypersurface, seen through its lift.

    eval_func maps a chart point (1-d float array, params[0] = fiber angle) to
    a vector on the hyperquadric; normal_func gives the horizontal unit-normal
    lift at the same chart point.
    """

    sign: str
    r: Optional[float]
    dim_n: int
    param_names: Tuple[str, ...]
    ranges: Tuple[Tuple[float, float], ...]
    center: np.ndarray
    eval_func: Callable[[np.ndarray], np.ndarray]
    normal_func: Callable[[np.ndarray], np.ndarray]
    t_index: int
    label: str = ""
    degenerate: bool = False
    degenerate_reason: str = ""
    expected_mu: Optional[float] = None
    expected_spectrum: Optional[Tuple[Tuple[float, int], ...]] = None

    def point(self, at) -> np.ndarray:
        vec = np.asarray(self.eval_func(np.asarray(at, dtype=float)), dtype=complex)
        return AdSPoint(vec).vec

    def normal(self, at) -> np.ndarray:
        return np.asarray(self.normal_func(np.asarray(at, dtype=float)), dtype=complex)

    def grid(self, density: int = GRID_DENSITY, cap: int = GRID_CAP) -> List[np.ndarray]:
        """Lexicographic product grid over the chart ranges, subsampled to cap."""
        if density < 2:
            raise InputError("grid density must be >= 2")
        axes = [np.linspace(lo, hi, density) for lo, hi in self.ranges]
        total = density ** len(axes)
        points = [np.array(p) for p in itertools.product(*axes)]
        if total <= cap:
            return points
        keep = np.unique(np.round(np.linspace(0, total - 1, cap)).astype(int))
        return [points[i] for i in keep]


class ShapeResult(NamedTuple):
    matrix: np.ndarray
    frame: List[np.ndarray]
    lsq_residual: float
    min_singular: float


@dataclass(frozen=True, eq=False)
class ShapeReport:
    """Aggregated shape-operator data over a chart grid.

    eigenvalues holds (value, multiplicity) clusters for the stored normal;
    eigenvalues_opposite is the same table for the negated normal.
    unit_multiplicity and rho_values are filled only by the flat-generator
    verifier (minimum unit-cluster size, and the transverse eigenvalue per
    grid point).
    """

    mu: float
    mu_deviation: float
    eigenvalues: Tuple[Tuple[float, int], ...]
    eigenvalues_opposite: Tuple[Tuple[float, int], ...]
    eigenvalue_deviation: float
    hopf_residual: float
    symmetry_residual: float
    lsq_residual: float
    min_singular: float
    pairing_residuals: Tuple[float, ...]
    exceptional_pairs: int
    grid_size: int
    expected_mu: Optional[float]
    certified: bool
    failures: Tuple[str, ...]
    samples: Tuple[Tuple[str, Tuple[float, ...]], ...]
    unit_multiplicity: int = -1
    rho_values: Tuple[Tuple[float, float], ...] = ()


def grid_key(at) -> str:
    return "(" + ",".join(format(float(c), ".6g") for c in np.asarray(at).ravel()) + ")"


def structure_lift(patch: HypersurfacePatch, at) -> np.ndarray:
    """Horizontal lift of the structure vector: -i times the normal lift."""
    return -1j * patch.normal(at)


def phi_project(patch: HypersurfacePatch, at, x, tol: float = 1e-6) -> np.ndarray:
    """Tangential part of the complex structure applied to a tangent vector.

    phi X = iX - <iX, N> N.  Requires x tangent and horizontal at the point.
    """
    psi = patch.point(at)
    xv = np.asarray(x, dtype=complex)
    res = max(abs(real_form(xv, psi)), abs(real_form(xv, 1j * psi)))
    if res > tol:
        raise InputError(f"vector not horizontal-tangent: residual {res:.3e}")
    normal = patch.normal(at)
    ix = 1j * xv
    return ix - real_form(ix, normal) * normal


def pairing_residual(lam: float, lam_star: float, mu: float, c: float = -1.0) -> float:
    """Defect of the principal-curvature pairing (lam mu + 2c)/(2 lam - mu).

    Raises ExceptionalPairError when the denominator vanishes (the |mu| = 2
    exceptional case, reported separately from regular pairs).
    """
    denom = 2.0 * lam - mu
    if abs(denom) <= 1e-8:
        raise ExceptionalPairError(
            f"degenerate pair: 2*lam - mu = {denom:.3e} at lam = {lam}"
        )
    return abs(lam_star - (lam * mu + 2.0 * c) / denom)


def cluster_eigenvalues(
    values: Sequence[float], tol: float = CLUSTER_TOL
) -> List[Tuple[float, int]]:
    """Merge sorted eigenvalues into (mean, multiplicity) buckets.

    Values within tol of their neighbor share a bucket; tol sits above the
    finite-difference noise floor and below every closed-form gap used here.
    """
    vals = sorted(float(v) for v in values)
    clusters: List[List[float]] = [[vals[0]]]
    for v in vals[1:]:
        if v - clusters[-1][-1] <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return [(sum(c) / len(c), len(c)) for c in clusters]


def build_patch(
    sign: str,
    r: float,
    lift: Callable[[np.ndarray], StiefelPoint],
    base_dim: int,
    *,
    center: Optional[np.ndarray] = None,
    ranges: Optional[Sequence[Tuple[float, float]]] = None,
    label: str = "",
    expected_mu: Optional[float] = None,
    expected_spectrum: Optional[Tuple[Tuple[float, int], ...]] = None,
    check_horizontal: bool = True,
    fd_step: float = FD_STEP,
) -> HypersurfacePatch:
    """Assemble a patch from a horizontal Stiefel lift over a base chart.

    Chart is (theta, t, q_0 ... q_{base_dim-1}); the curve parameter t seeds
    the structure direction.  The lift is checked for horizontality along
    every base axis at the chart center and rejected otherwise.  sign "plus"
    at r = 0 is constructible but flagged degenerate (focal collapse), and
    sign "minus" at r = 0 likewise (the image drops rank).
    """
    q_center = np.zeros(base_dim) if center is None else np.asarray(center, dtype=float)
    if q_center.size != base_dim:
        raise InputError("center size does not match base_dim")
    probe = lift(q_center)
    dim_n = probe.dim_n

    if check_horizontal:
        for axis in range(base_dim):
            direction = np.zeros(base_dim)
            direction[axis] = 1.0

            def sliced(x: float, d=direction) -> StiefelPoint:
                return lift(q_center + x * d)

            co = lift_coefficients(sliced, 0.0, step=fd_step)
            if not is_horizontal(sign, co, tol=1e-6):
                raise InputError(
                    f"lift fails the {sign!r} horizontality condition on base "
                    f"axis {axis}"
                )

    def eval_func(at: np.ndarray) -> np.ndarray:
        theta, t, q = at[0], at[1], at[2:]
        p = lift(q)
        cm, cp = curve_coefficients(sign, r, t)
        return np.exp(1j * theta) * (cm * p.u_minus + cp * p.u_plus)

    def normal_func(at: np.ndarray) -> np.ndarray:
        theta, t, q = at[0], at[1], at[2:]
        p = lift(q)
        return np.exp(1j * theta) * (1j * unit_tangent_lift(sign, r, p, t))

    degenerate = False
    reason = ""
    if sign == "plus" and abs(r) < 1e-14:
        degenerate = True
        reason = "focal collapse at r = 0: the image is the complex subspace"
    if sign == "minus" and abs(r) < 1e-14:
        degenerate = True
        reason = "r = 0: the curve parameter is gauge and the image drops rank"

    names = ("theta", "t") + tuple(f"q{i}" for i in range(base_dim))
    if ranges is None:
        full_ranges = ((-1.0, 1.0), (-0.8, 0.8)) + ((-0.3, 0.3),) * base_dim
    else:
        full_ranges = tuple((float(lo), float(hi)) for lo, hi in ranges)
        if len(full_ranges) != base_dim + 2:
            raise InputError("ranges must cover theta, t and every base coordinate")

    full_center = np.concatenate(([0.0, 0.0], q_center))
    return HypersurfacePatch(
        sign=sign,
        r=r,
        dim_n=dim_n,
        param_names=names,
        ranges=full_ranges,
        center=full_center,
        eval_func=eval_func,
        normal_func=normal_func,
        t_index=1,
        label=label or f"patch-{sign}",
        degenerate=degenerate,
        degenerate_reason=reason,
        expected_mu=expected_mu,
        expected_spectrum=expected_spectrum,
    )


def _realify(vec: np.ndarray) -> np.ndarray:
    return np.concatenate([vec.real, vec.imag])


def shape_operator(
    patch: HypersurfacePatch,
    at,
    step: float = FD_STEP,
    rank_tol: float = RANK_TOL,
) -> ShapeResult:
    """Finite-difference shape operator in an orthonormal horizontal frame.

    Steps: chart Jacobian by central differences; rank gate on the projected
    non-fiber columns (smallest singular value >= rank_tol); frame = structure
    direction then Gram-Schmidt of the remaining projected columns; chart
    velocities for each frame vector by least squares; the matrix entry is
    A[i,j] = <-D_{E_j} N, E_i>.  Pairing against horizontal frame vectors
    annihilates any vertical contamination of the derivative.
    """
    if patch.degenerate:
        raise ImmersionError(
            f"degenerate patch {patch.label!r}: {patch.degenerate_reason}"
        )
    at = np.asarray(at, dtype=float)
    n_par = len(patch.param_names)
    psi0 = patch.point(at)
    dim = 2 * patch.dim_n - 1

    columns = []
    for k in range(n_par):
        offset = np.zeros(n_par)
        offset[k] = step
        col = (patch.eval_func(at + offset) - patch.eval_func(at - offset)) / (2 * step)
        columns.append(np.asarray(col, dtype=complex))

    projected = {}
    for k in range(1, n_par):
        vec = horizontal_part(tangent_project_ads(columns[k], psi0), psi0, tol=1e-5)
        projected[k] = vec
    proj_matrix = np.stack([_realify(projected[k]) for k in sorted(projected)], axis=1)
    singulars = np.linalg.svd(proj_matrix, compute_uv=False)
    min_singular = float(singulars[-1])
    if min_singular < rank_tol:
        raise ImmersionError(
            f"rank deficiency at {grid_key(at)}: smallest singular value "
            f"{min_singular:.3e} < {rank_tol:.1e}"
        )

    frame: List[np.ndarray] = []
    seed = projected[patch.t_index]
    frame.append(seed / space_norm(seed, psi0))
    for k in sorted(projected):
        if k == patch.t_index:
            continue
        vec = projected[k]
        for e in frame:
            vec = vec - real_form(vec, e) * e
        norm = space_norm(vec, psi0)
        if norm < 1e-8:
            continue
        frame.append(vec / norm)
    if len(frame) != dim:
        raise ImmersionError(
            f"frame collapsed at {grid_key(at)}: {len(frame)} of {dim} directions"
        )

    jac = np.stack([_realify(c) for c in columns], axis=1)
    matrix = np.zeros((dim, dim))
    lsq_residual = 0.0
    for j, e_j in enumerate(frame):
        target = _realify(e_j)
        velocity = np.linalg.lstsq(jac, target, rcond=None)[0]
        lsq_residual = max(
            lsq_residual, float(np.linalg.norm(jac @ velocity - target))
        )
        dn = (
            patch.normal(at + step * velocity) - patch.normal(at - step * velocity)
        ) / (2 * step)
        w = -horizontal_part(tangent_project_ads(dn, psi0), psi0, tol=1e-3)
        for i, e_i in enumerate(frame):
            matrix[i, j] = real_form(w, e_i)
    return ShapeResult(matrix, frame, lsq_residual, min_singular)


def _point_report(patch, at, step, pairing_tol_degenerate):
    sr = shape_operator(patch, at, step=step)
    a = sr.matrix
    sym = float(np.abs(a - a.T).max())
    sym_a = (a + a.T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(sym_a)
    mu = float(a[0, 0])
    unit0 = np.zeros(a.shape[0])
    unit0[0] = 1.0
    hopf = float(np.linalg.norm(a[:, 0] - mu * unit0))

    normal0 = patch.normal(at)
    psi0 = patch.point(at)
    xi_slot = int(np.argmax(np.abs(eigvecs[0, :])))
    pairings = []
    exceptional = 0
    for idx in range(eigvals.size):
        if idx == xi_slot:
            continue
        lam = float(eigvals[idx])
        if abs(2.0 * lam - mu) <= pairing_tol_degenerate:
            exceptional += 1
            continue
        x_vec = sum(eigvecs[i, idx] * sr.frame[i] for i in range(len(sr.frame)))
        ix = 1j * x_vec
        phi_x = ix - real_form(ix, normal0) * normal0
        coords = np.array([real_form(phi_x, e) for e in sr.frame])
        weights = np.abs(eigvecs.T @ coords)
        lam_star = float(eigvals[int(np.argmax(weights))])
        pairings.append(pairing_residual(lam, lam_star, mu))
    return {
        "at": at,
        "mu": mu,
        "hopf": hopf,
        "symmetry": sym,
        "lsq": sr.lsq_residual,
        "min_singular": sr.min_singular,
        "eigvals": [float(v) for v in eigvals],
        "pairings": pairings,
        "exceptional": exceptional,
    }


def verify_hopf(
    patch: HypersurfacePatch,
    grid: Optional[Sequence] = None,
    step: float = FD_STEP,
    tolerances: Optional[dict] = None,
    threads: int = 1,
) -> ShapeReport:
    """Certify the Hopf condition and curvature structure over a grid.

    Checks, each against its tolerance: structure-eigenvector residual,
    constancy of the structure eigenvalue across the grid, its closed-form
    value when the patch carries one, frame symmetry of the operator, least
    squares quality, consistency of the multiplicity pattern, and the
    principal-curvature pairing on non-exceptional pairs.
    """
    tols = dict(DEFAULT_VERIFY_TOLS)
    if tolerances:
        tols.update(tolerances)
    if grid is None:
        grid = patch.grid()
    grid = [np.asarray(g, dtype=float) for g in grid]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(
                pool.map(
                    lambda g: _point_report(patch, g, step, PAIRING_DEGENERATE_TOL),
                    grid,
                )
            )
    else:
        points = [
            _point_report(patch, g, step, PAIRING_DEGENERATE_TOL) for g in grid
        ]

    mus = [p["mu"] for p in points]
    mu = float(np.median(mus))
    mu_dev = max(abs(m - mu) for m in mus)
    hopf = max(p["hopf"] for p in points)
    symmetry = max(p["symmetry"] for p in points)
    lsq = max(p["lsq"] for p in points)
    min_sing = min(p["min_singular"] for p in points)
    pairings = tuple(r for p in points for r in p["pairings"])
    exceptional = sum(p["exceptional"] for p in points)

    failures = []
    per_point = [cluster_eigenvalues(p["eigvals"]) for p in points]
    pattern = tuple(m for _, m in per_point[0])
    if any(tuple(m for _, m in c) != pattern for c in per_point):
        failures.append("inconsistent multiplicity pattern across the grid")
        clusters = tuple(per_point[0])
        eig_dev = math.inf
    else:
        stacked = np.array([[v for v, _ in c] for c in per_point])
        means = stacked.mean(axis=0)
        eig_dev = float(np.abs(stacked - means).max())
        clusters = tuple((float(v), int(m)) for v, m in zip(means, pattern))

    if hopf > tols["hopf"]:
        failures.append(f"hopf residual {hopf:.3e} > {tols['hopf']:.1e}")
    if mu_dev > tols["mu-constancy"]:
        failures.append(f"mu varies by {mu_dev:.3e} across the grid")
    if symmetry > tols["symmetry"]:
        failures.append(f"symmetry residual {symmetry:.3e}")
    if lsq > tols["lsq"]:
        failures.append(f"least-squares residual {lsq:.3e}")
    if patch.expected_mu is not None and abs(mu - patch.expected_mu) > tols["mu"]:
        failures.append(
            f"mu = {mu:.8f} vs closed form {patch.expected_mu:.8f}"
        )
    bad_pairs = [r for r in pairings if r > tols["pairing"]]
    if bad_pairs:
        failures.append(f"{len(bad_pairs)} pairing residuals above tolerance")

    opposite = tuple((-v, m) for v, m in reversed(clusters))
    samples = tuple(
        (grid_key(p["at"]), tuple(p["eigvals"])) for p in points
    )
    return ShapeReport(
        mu=mu,
        mu_deviation=mu_dev,
        eigenvalues=clusters,
        eigenvalues_opposite=opposite,
        eigenvalue_deviation=eig_dev,
        hopf_residual=hopf,
        symmetry_residual=symmetry,
        lsq_residual=lsq,
        min_singular=min_sing,
        pairing_residuals=pairings,
        exceptional_pairs=exceptional,
        grid_size=len(grid),
        expected_mu=patch.expected_mu,
        certified=not failures,
        failures=tuple(failures),
        samples=samples,
    )


def _complexify(q: np.ndarray) -> np.ndarray:
    return q[0::2] + 1j * q[1::2]


def tube_complex(n: int, k: int, r: float) -> HypersurfacePatch:
    """Tube of radius r around a totally geodesic complex k-dimensional
    subspace, via the block lift (sign "plus").

    Structure eigenvalue -2coth 2r; spectrum -tanh r on 2k directions and
    -coth r on the 2(n-k-1) complementary ones.  r = 0 is the focal
    degeneracy and is rejected.
    """
    if n < 2 or not (0 <= k <= n - 1):
        raise InputError(f"need n >= 2 and 0 <= k <= n-1, got n={n}, k={k}")
    if abs(r) < 1e-14:
        raise ImmersionError(
            "r = 0 collapses the tube onto the complex subspace (focal set)"
        )

    def lift(q: np.ndarray) -> StiefelPoint:
        z = _complexify(q[: 2 * k])
        w = _complexify(q[2 * k :])
        norm_w = float(np.vdot(w, w).real)
        if norm_w >= 1.0:
            raise InputError("chart leaves the unit ball of the spacelike block")
        um = np.zeros(n + 1, dtype=complex)
        um[0] = math.sqrt(1.0 + float(np.vdot(z, z).real))
        um[1 : k + 1] = z
        up = np.zeros(n + 1, dtype=complex)
        up[k + 1] = math.sqrt(1.0 - norm_w)
        up[k + 2 :] = w
        return StiefelPoint(um, up)

    coth = lambda x: math.cosh(x) / math.sinh(x)
    spectrum = [(-2.0 * coth(2.0 * r), 1)]
    if k > 0:
        spectrum.append((-math.tanh(r), 2 * k))
    if k < n - 1:
        spectrum.append((-coth(r), 2 * (n - 1 - k)))
    return build_patch(
        "plus",
        r,
        lift,
        base_dim=2 * n - 2,
        label=f"tube-chk(n={n},k={k},r={r})",
        expected_mu=-2.0 * coth(2.0 * r),
        expected_spectrum=tuple(sorted(spectrum)),
    )


def tube_real(n: int, r: float) -> HypersurfacePatch:
    """Tube of radius r around the totally geodesic real form (sign "minus").

    Lift: real special-orthochronous motions applied to the first two basis
    vectors, parametrized by n-1 boosts and n-1 rotations.  Real matrices give
    alpha = 0 and real beta, hence the "minus" horizontality.  r = 0 is the
    real form itself and is flagged degenerate.
    """
    if n < 2:
        raise InputError(f"need n >= 2, got n={n}")
    generators = []
    for j in range(2, n + 1):
        boost = np.zeros((n + 1, n + 1))
        boost[0, j] = boost[j, 0] = 1.0
        generators.append(boost)
    for j in range(2, n + 1):
        rot = np.zeros((n + 1, n + 1))
        rot[1, j] = -1.0
        rot[j, 1] = 1.0
        generators.append(rot)

    def lift(q: np.ndarray) -> StiefelPoint:
        gen = sum(c * g for c, g in zip(q, generators))
        group = matrix_exp(AlgebraElement(gen.astype(complex), n))
        return StiefelPoint(group.matrix[:, 0], group.matrix[:, 1])

    coth = lambda x: math.cosh(x) / math.sinh(x)
    if abs(r) < 1e-14:
        expected_mu = 0.0
        spectrum = None
    else:
        expected_mu = -2.0 * math.tanh(2.0 * r)
        spectrum = tuple(
            sorted(
                [(-2.0 * math.tanh(2.0 * r), 1), (-coth(r), n - 1), (-math.tanh(r), n - 1)]
            )
        )
    return build_patch(
        "minus",
        r,
        lift,
        base_dim=2 * n - 2,
        label=f"tube-rhn(n={n},r={r})",
        expected_mu=expected_mu,
        expected_spectrum=spectrum,
    )


def horosphere(n: int, r: float) -> HypersurfacePatch:
    """Horosphere patch (sign "zero"): |z_0 - z_1| = e^r at every sample.

    Structure eigenvalue -2 and eigenvalue -1 with multiplicity 2n-2 (both
    flip sign with the opposite normal).
    """
    if n < 2:
        raise InputError(f"need n >= 2, got n={n}")

    def lift(q: np.ndarray) -> StiefelPoint:
        p = _complexify(q)
        a = float(np.vdot(p, p).real)
        um = np.zeros(n + 1, dtype=complex)
        um[0] = 1.0 + a / 2.0
        um[1] = a / 2.0
        um[2:] = p
        up = np.zeros(n + 1, dtype=complex)
        up[0] = -1j * a / 2.0
        up[1] = 1j * (1.0 - a / 2.0)
        up[2:] = -1j * p
        return StiefelPoint(um, up)

    return build_patch(
        "zero",
        r,
        lift,
        base_dim=2 * n - 2,
        label=f"horosphere(n={n},r={r})",
        expected_mu=-2.0,
        expected_spectrum=((-2.0, 1), (-1.0, 2 * n - 2)),
    )


def horosphere_defining_residual(vec, r: float) -> float:
    """| |z_0 - z_1|^2 - e^{2r} | for a point of the lifted horosphere."""
    v = np.asarray(vec, dtype=complex)
    return abs(abs(v[0] - v[1]) ** 2 - math.exp(2.0 * r))


def parallel_patch_residual(
    patch: HypersurfacePatch,
    shifted: HypersurfacePatch,
    r_prime: float,
    at,
) -> float:
    """|| cosh r' Psi_r + sinh r' N_r - Psi_{r+r'} || at one chart point."""
    base = patch.point(at)
    normal = patch.normal(at)
    target = shifted.point(at)
    diff = math.cosh(r_prime) * base + math.sinh(r_prime) * normal - target
    return float(np.linalg.norm(diff))
