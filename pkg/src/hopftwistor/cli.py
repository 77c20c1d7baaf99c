"""Command-line driver: build the classical examples, run the verification
batteries, emit machine-readable reports.

Exit status: 0 when every check passed, 1 when a verification check failed or
a geometric error surfaced mid-run, 2 for configuration problems (bad flags,
malformed constants files, invalid parameter combinations).

Reports go to stdout or --out; wall time goes to stderr only, keeping the
payload byte-reproducible.  HOPF_TWISTOR_THREADS bounds grid parallelism and
never changes the output bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .errors import ConfigError, DegenerateCurveError, GeometryError
from .fibration import curve_curvature
from .generator import (
    GeneratorForm,
    OneParamGenerator,
    commutator_residual,
    extra_curvature,
    form_value,
    is_horosphere_data,
    maurer_cartan_residual,
    one_param_omega,
    orbit_patch,
    orbit_patch_from_form,
    parse_constants,
    two_path_residual,
    verify_hopf_two,
)
from .hypersurface import (
    HypersurfacePatch,
    ShapeReport,
    grid_key,
    horosphere,
    horosphere_defining_residual,
    tube_complex,
    tube_real,
    verify_hopf,
)
from .linalg import algebra_residual, herm_form
from .report import envelope_to_csv, envelope_to_json, make_check, make_envelope
from .sampling import random_one_param, random_stiefel
from .twistor import SIGNS, StiefelPoint, model_curve, parallel_shift_residual

DEFAULT_TOLERANCES: Dict[str, float] = {
    "structure": 1e-10,
    "curvature": 1e-4,
    "circle": 1e-4,
    "parallel": 1e-10,
    "hopf": 1e-4,
    "mu": 1e-4,
    "mu-constancy": 1e-4,
    "eigenvalue": 1e-4,
    "pairing": 1e-4,
    "symmetry": 1e-5,
    "lsq": 1e-4,
    "defining": 1e-12,
    "mc": 1e-12,
    "witness": 1e-6,
    "rho": 1e-4,
    "unit": 1e-3,
    "rank": 1e-6,
}

DEFAULT_RADII = (-1.0, -0.5, 0.2, 0.5, 1.0)
PARALLEL_SHIFTS = (-0.7, -0.3, 0.0, 0.4, 0.8)
RHO_HEIGHTS = (0.5, 1.0, 2.0)

__all__ = ["main", "RunConfig", "DEFAULT_TOLERANCES"]


@dataclass
class RunConfig:
    command: str
    n: int = 2
    s: Optional[str] = None
    r: Optional[float] = None
    k: int = 0
    grid_density: int = 3
    fd_step: float = 1e-4
    tolerances: Dict[str, float] = field(default_factory=dict)
    seed: int = 0
    output_path: Optional[str] = None
    format: str = "json"
    constants_path: Optional[str] = None
    threads: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"n must be >= 2, got {self.n}")
        if self.grid_density < 2:
            raise ConfigError(f"grid density must be >= 2, got {self.grid_density}")
        if not (0.0 < self.fd_step <= 1e-2):
            raise ConfigError(
                f"fd step must lie in (0, 1e-2], got {self.fd_step}"
            )
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        if self.s is not None and self.s not in SIGNS:
            raise ConfigError(f"s must be one of {SIGNS}, got {self.s!r}")
        merged = dict(DEFAULT_TOLERANCES)
        for name, val in self.tolerances.items():
            if name not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance {name!r}")
            if not (isinstance(val, (int, float)) and math.isfinite(val) and val >= 0):
                raise ConfigError(f"tolerance {name!r} must be a finite number >= 0")
            merged[name] = float(val)
        self.tolerances = merged

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    def echo(self, constants: Optional[dict] = None) -> dict:
        return {
            "command": self.command,
            "n": self.n,
            "s": self.s,
            "r": self.r,
            "k": self.k,
            "grid_density": self.grid_density,
            "fd_step": self.fd_step,
            "seed": self.seed,
            "format": self.format,
            "constants": constants,
            "tolerances": {k: self.tolerances[k] for k in sorted(self.tolerances)},
        }


def _g(x: float) -> str:
    return format(float(x), "g")


def _threads_from_env() -> int:
    raw = os.environ.get("HOPF_TWISTOR_THREADS")
    if raw is None or not raw.strip():
        return 1
    try:
        t = int(raw)
    except ValueError:
        raise ConfigError(f"HOPF_TWISTOR_THREADS must be an integer, got {raw!r}")
    if t < 1:
        raise ConfigError("HOPF_TWISTOR_THREADS must be >= 1")
    return t


def _parse_tols(pairs: Optional[Sequence[str]]) -> Dict[str, float]:
    tols: Dict[str, float] = {}
    for item in pairs or []:
        if "=" not in item:
            raise ConfigError(f"--tol expects name=value, got {item!r}")
        name, _, raw = item.partition("=")
        try:
            tols[name.strip()] = float(raw)
        except ValueError:
            raise ConfigError(f"--tol {name!r}: {raw!r} is not a number")
    return tols


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopftwistor",
        description="Certify curve, hypersurface and generator-form claims "
        "with finite-difference measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_sign: bool = False):
        p.add_argument("--n", type=int, default=2, help="ambient complex dimension")
        p.add_argument(
            "--s",
            choices=list(SIGNS),
            required=needs_sign,
            help="twistor sign / example family",
        )
        p.add_argument("--r", type=float, default=None, help="radius parameter")
        p.add_argument("--k", type=int, default=0, help="complex subspace dimension")
        p.add_argument("--grid", type=int, default=3, help="grid density per axis")
        p.add_argument("--step", type=float, default=1e-4, help="finite-difference step")
        p.add_argument(
            "--tol", action="append", metavar="NAME=VAL", help="override a tolerance"
        )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write the report here")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--constants", default=None, help="JSON constants file")

    for name, help_text, needs_sign in (
        ("verify-curves", "measure projected-curve curvatures", False),
        ("build-example", "construct a classical example and its spectrum", True),
        ("verify-hopf", "run the Hopf battery on a classical example", True),
        ("cko-run", "verify a generator-form construction", False),
        ("mc-check", "flatness checks for a constants file", False),
    ):
        p = sub.add_parser(name, help=help_text)
        common(p, needs_sign)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=args.n,
        s=args.s,
        r=args.r,
        k=args.k,
        grid_density=args.grid,
        fd_step=args.step,
        tolerances=_parse_tols(args.tol),
        seed=args.seed,
        output_path=args.out,
        format=args.format,
        constants_path=args.constants,
        threads=_threads_from_env(),
    )


def _constants_doc(data) -> dict:
    if isinstance(data, OneParamGenerator):
        a0, a1, x, y0, y1, w = data.constants()
        return {
            "kind": "one-param",
            "alpha0": a0,
            "alpha1": a1,
            "x": x,
            "y0": y0,
            "y1": y1,
            "w": w,
        }
    return {
        "kind": "block-form",
        "alpha0": data.alpha0.tolist(),
        "alpha1": data.alpha1.tolist(),
        "x_form": data.x_form.tolist(),
        "y0": data.y0.tolist(),
        "y1": data.y1.tolist(),
        "w1": data.w1.tolist(),
        "w2": data.w2.tolist(),
    }


def _load_constants(cfg: RunConfig):
    if cfg.constants_path is None:
        return None
    try:
        with open(cfg.constants_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read constants file: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"constants file is not valid JSON: {exc}")
    return parse_constants(data)


# ---------------------------------------------------------------- commands


def _cmd_verify_curves(cfg: RunConfig) -> dict:
    checks: List[dict] = []
    signs = [cfg.s] if cfg.s else list(SIGNS)
    radii = [cfg.r] if cfg.r is not None else list(DEFAULT_RADII)
    ts = np.linspace(-1.0, 1.0, 5)
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n
    canonical = StiefelPoint(
        np.eye(n + 1, dtype=complex)[0], np.eye(n + 1, dtype=complex)[1]
    )
    bases = [("b0", canonical), ("b1", random_stiefel(rng, n))]

    for s in signs:
        for r in radii:
            if s == "plus" and abs(r) < 1e-14:
                checks.append(
                    make_check(
                        "degenerate-radius",
                        0.0,
                        0.0,
                        0.0,
                        passed=False,
                        grid_point=f"s={s},r={_g(r)}",
                    )
                )
                continue
            expected = {
                "plus": abs(2.0 / math.tanh(2.0 * r)) if r else float("inf"),
                "minus": abs(2.0 * math.tanh(2.0 * r)),
                "zero": 2.0,
            }[s]
            for bname, base in bases:
                curve = model_curve(s, r, base)
                for t in ts:
                    gp = f"s={s},r={_g(r)},t={_g(t)},{bname}"
                    res = curve_curvature(curve, float(t), step=cfg.fd_step)
                    checks.append(
                        make_check(
                            "curvature", res.kappa, expected, cfg.tol("curvature"), grid_point=gp
                        )
                    )
                    checks.append(
                        make_check(
                            "circle-residual",
                            res.residual,
                            0.0,
                            cfg.tol("circle"),
                            grid_point=gp,
                        )
                    )

    for s in signs:
        for r in radii:
            if s == "plus" and abs(r) < 1e-14:
                continue
            for rp in PARALLEL_SHIFTS:
                for t in ts:
                    gp = f"s={s},r={_g(r)},rp={_g(rp)},t={_g(t)}"
                    val = parallel_shift_residual(s, r, rp, canonical, float(t))
                    checks.append(
                        make_check(
                            "parallel-residual",
                            val,
                            0.0,
                            cfg.tol("parallel"),
                            grid_point=gp,
                        )
                    )
    return make_envelope(cfg.command, cfg.echo(), checks)


def _build_classical(cfg: RunConfig) -> HypersurfacePatch:
    if cfg.s is None:
        raise ConfigError("--s is required for this command")
    if cfg.s == "zero":
        r = 0.0 if cfg.r is None else cfg.r
        return horosphere(cfg.n, r)
    if cfg.r is None:
        raise ConfigError("--r is required for the tube families")
    if abs(cfg.r) < 1e-14:
        raise ConfigError("r = 0 is the degenerate radius for the tube families")
    try:
        if cfg.s == "plus":
            if not (0 <= cfg.k <= cfg.n - 1):
                raise ConfigError(
                    f"k must lie in [0, n-1] = [0, {cfg.n - 1}], got {cfg.k}"
                )
            return tube_complex(cfg.n, cfg.k, cfg.r)
        return tube_real(cfg.n, cfg.r)
    except GeometryError as exc:
        raise ConfigError(f"cannot build the requested example: {exc}")


def _hopf_checks(cfg: RunConfig, rep: ShapeReport, expected_mu: Optional[float]) -> List[dict]:
    checks = [
        make_check("hopf-residual", rep.hopf_residual, 0.0, cfg.tol("hopf")),
        make_check("mu-constancy", rep.mu_deviation, 0.0, cfg.tol("mu-constancy")),
        make_check("symmetry-residual", rep.symmetry_residual, 0.0, cfg.tol("symmetry")),
        make_check("lsq-residual", rep.lsq_residual, 0.0, cfg.tol("lsq")),
    ]
    if expected_mu is not None:
        checks.append(make_check("mu", rep.mu, expected_mu, cfg.tol("mu")))
    if rep.pairing_residuals:
        checks.append(
            make_check(
                "pairing-max", max(rep.pairing_residuals), 0.0, cfg.tol("pairing")
            )
        )
    consistent = not any("multiplicity pattern" in f for f in rep.failures)
    checks.append(
        make_check(
            "multiplicity-pattern",
            0.0 if consistent else 1.0,
            0.0,
            0.0,
            passed=consistent,
        )
    )
    return checks


def _spectrum_checks(cfg: RunConfig, patch: HypersurfacePatch, rep: ShapeReport) -> List[dict]:
    checks: List[dict] = []
    expected = patch.expected_spectrum
    if not expected:
        return checks
    checks.append(
        make_check(
            "spectrum-size",
            float(len(rep.eigenvalues)),
            float(len(expected)),
            0.0,
        )
    )
    if len(rep.eigenvalues) == len(expected):
        opposite = tuple((-v, m) for v, m in reversed(expected))
        tables = (
            ("eigenvalue", "multiplicity", rep.eigenvalues, expected),
            ("eigenvalue-opposite", "multiplicity-opposite", rep.eigenvalues_opposite, opposite),
        )
        for vname, mname, got, want in tables:
            for i, ((gv, gm), (wv, wm)) in enumerate(zip(got, want)):
                checks.append(
                    make_check(vname, gv, wv, cfg.tol("eigenvalue"), index=i)
                )
                checks.append(make_check(mname, float(gm), float(wm), 0.0, index=i))
    values = [v for v, _ in expected]
    for gp, eigs in rep.samples:
        for i, v in enumerate(eigs):
            nearest = min(values, key=lambda e: abs(v - e))
            checks.append(
                make_check(
                    "sample-eigenvalue",
                    v,
                    nearest,
                    cfg.tol("eigenvalue"),
                    grid_point=gp,
                    index=i,
                )
            )
    return checks


def _construction_checks(cfg: RunConfig, patch: HypersurfacePatch, grid) -> List[dict]:
    checks: List[dict] = []
    stride = max(1, len(grid) // 5)
    for at in grid[::stride][:5]:
        gp = grid_key(at)
        vec = patch.point(at)
        nvec = patch.normal(at)
        checks.append(
            make_check(
                "quadric-residual",
                abs(herm_form(vec, vec) + 1.0),
                0.0,
                cfg.tol("structure"),
                grid_point=gp,
            )
        )
        checks.append(
            make_check(
                "normal-unit",
                abs(herm_form(nvec, nvec) - 1.0),
                0.0,
                cfg.tol("structure"),
                grid_point=gp,
            )
        )
        checks.append(
            make_check(
                "normal-orthogonal",
                abs(herm_form(nvec, vec)),
                0.0,
                cfg.tol("structure"),
                grid_point=gp,
            )
        )
        if patch.sign == "zero":
            checks.append(
                make_check(
                    "defining-relation",
                    horosphere_defining_residual(vec, patch.r or 0.0),
                    0.0,
                    cfg.tol("defining"),
                    grid_point=gp,
                )
            )
    return checks


def _cmd_build_example(cfg: RunConfig) -> dict:
    patch = _build_classical(cfg)
    grid = patch.grid(cfg.grid_density)
    checks = _construction_checks(cfg, patch, grid)
    rep = verify_hopf(
        patch, grid, step=cfg.fd_step, tolerances=cfg.tolerances, threads=cfg.threads
    )
    checks += _hopf_checks(cfg, rep, patch.expected_mu)
    checks += _spectrum_checks(cfg, patch, rep)
    return make_envelope(cfg.command, cfg.echo(), checks)


def _cmd_verify_hopf(cfg: RunConfig) -> dict:
    patch = _build_classical(cfg)
    grid = patch.grid(cfg.grid_density)
    rep = verify_hopf(
        patch, grid, step=cfg.fd_step, tolerances=cfg.tolerances, threads=cfg.threads
    )
    checks = _construction_checks(cfg, patch, grid)
    checks += _hopf_checks(cfg, rep, patch.expected_mu)
    mu_abs = abs(rep.mu)
    if cfg.s == "plus":
        checks.append(
            make_check(
                "trichotomy-margin", mu_abs - 2.0, 0.0, 0.0, passed=mu_abs - 2.0 > 0
            )
        )
    elif cfg.s == "minus":
        checks.append(
            make_check(
                "trichotomy-margin", 2.0 - mu_abs, 0.0, 0.0, passed=2.0 - mu_abs > 0
            )
        )
    else:
        checks.append(
            make_check("trichotomy-margin", abs(mu_abs - 2.0), 0.0, cfg.tol("mu"))
        )
    return make_envelope(cfg.command, cfg.echo(), checks)


def _one_param_checks(cfg: RunConfig, gen: OneParamGenerator) -> List[dict]:
    checks: List[dict] = []
    offsets = ((0.0, 0.0, 0.0), (0.3, -0.2, 0.25), (-0.25, 0.3, -0.2))
    grid = [
        np.array([th, x, h, lam])
        for lam in RHO_HEIGHTS
        for (th, x, h) in offsets
    ]
    try:
        patch = orbit_patch(gen)
        rep = verify_hopf_two(
            patch,
            grid,
            step=cfg.fd_step,
            tolerances=cfg.tolerances,
            threads=cfg.threads,
        )
        predicted = {lam: extra_curvature(gen, lam) for lam in RHO_HEIGHTS}
    except GeometryError as exc:
        print(f"non-immersion: {exc}", file=sys.stderr)
        checks.append(make_check("immersion", 1.0, 0.0, 0.0, passed=False))
        return checks
    checks.append(make_check("immersion", 0.0, 0.0, 0.0, passed=True))
    checks += [
        make_check("mu", rep.mu, 2.0, cfg.tol("mu")),
        make_check("hopf-residual", rep.hopf_residual, 0.0, cfg.tol("hopf")),
        make_check("symmetry-residual", rep.symmetry_residual, 0.0, cfg.tol("symmetry")),
        make_check("lsq-residual", rep.lsq_residual, 0.0, cfg.tol("lsq")),
        make_check(
            "unit-multiplicity",
            float(rep.unit_multiplicity),
            float(patch.dim_n - 1),
            0.0,
            passed=rep.unit_multiplicity >= patch.dim_n - 1,
        ),
    ]
    by_height: Dict[float, List[float]] = {}
    for at, (lam, rho) in zip(grid, rep.rho_values):
        gp = grid_key(at)
        checks.append(
            make_check("rho", rho, predicted[lam], cfg.tol("rho"), grid_point=gp)
        )
        by_height.setdefault(lam, []).append(rho)
    for lam in sorted(by_height):
        vals = by_height[lam]
        checks.append(
            make_check(
                "rho-constancy",
                max(vals) - min(vals),
                0.0,
                cfg.tol("rho"),
                grid_point=f"lam={_g(lam)}",
            )
        )
    horo = is_horosphere_data(gen)
    checks.append(
        make_check(
            "horosphere-data",
            abs(gen.y0 - gen.y1),
            0.0,
            0.0,
            passed=True,
            grid_point="",
        )
    )
    if horo:
        for lam in sorted(by_height):
            for rho in by_height[lam]:
                checks.append(
                    make_check(
                        "rho-horosphere",
                        rho,
                        1.0,
                        cfg.tol("rho"),
                        grid_point=f"lam={_g(lam)}",
                    )
                )
    return checks


def _form_checks(cfg: RunConfig, f: GeneratorForm) -> List[dict]:
    mc = maurer_cartan_residual(f)
    checks = [
        make_check("mc-residual", mc, 0.0, cfg.tol("mc")),
        make_check("commutator-residual", commutator_residual(f), 0.0, cfg.tol("mc")),
        make_check("two-path-witness", two_path_residual(f), 0.0, cfg.tol("witness")),
    ]
    membership = 0.0
    for k in range(f.dim_g):
        e = np.zeros(f.dim_g)
        e[k] = 1.0
        membership = max(membership, algebra_residual(form_value(f, e).matrix))
    checks.append(
        make_check("algebra-membership", membership, 0.0, cfg.tol("structure"))
    )
    return checks


def _cmd_cko_run(cfg: RunConfig) -> dict:
    data = _load_constants(cfg)
    if data is None:
        rng = np.random.default_rng(cfg.seed)
        data = random_one_param(rng)
    if isinstance(data, OneParamGenerator):
        checks = _one_param_checks(cfg, data)
    else:
        checks = _form_checks(cfg, data)
        if maurer_cartan_residual(data) <= cfg.tol("mc"):
            try:
                patch = orbit_patch_from_form(data)
                rep = verify_hopf_two(
                    patch,
                    patch.grid(2, cap=4),
                    step=cfg.fd_step,
                    tolerances=cfg.tolerances,
                    threads=cfg.threads,
                )
            except GeometryError as exc:
                print(f"non-immersion: {exc}", file=sys.stderr)
                checks.append(make_check("immersion", 1.0, 0.0, 0.0, passed=False))
            else:
                checks += [
                    make_check("immersion", 0.0, 0.0, 0.0, passed=True),
                    make_check("mu", rep.mu, 2.0, cfg.tol("mu")),
                    make_check(
                        "hopf-residual", rep.hopf_residual, 0.0, cfg.tol("hopf")
                    ),
                    make_check(
                        "unit-multiplicity",
                        float(rep.unit_multiplicity),
                        float(patch.dim_n - 1),
                        0.0,
                        passed=rep.unit_multiplicity >= patch.dim_n - 1,
                    ),
                ]
    return make_envelope(cfg.command, cfg.echo(_constants_doc(data)), checks)


def _cmd_mc_check(cfg: RunConfig) -> dict:
    if cfg.constants_path is None:
        raise ConfigError("mc-check needs --constants")
    data = _load_constants(cfg)
    if isinstance(data, OneParamGenerator):
        checks = [
            make_check("mc-residual", 0.0, 0.0, cfg.tol("mc")),
            make_check("two-path-witness", 0.0, 0.0, cfg.tol("witness")),
            make_check(
                "algebra-membership",
                algebra_residual(one_param_omega(data).matrix),
                0.0,
                cfg.tol("structure"),
            ),
        ]
    else:
        checks = _form_checks(cfg, data)
    return make_envelope(cfg.command, cfg.echo(_constants_doc(data)), checks)


_COMMANDS = {
    "verify-curves": _cmd_verify_curves,
    "build-example": _cmd_build_example,
    "verify-hopf": _cmd_verify_hopf,
    "cko-run": _cmd_cko_run,
    "mc-check": _cmd_mc_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    start = time.monotonic()
    try:
        cfg = _config_from_args(args)
        envelope = _COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DegenerateCurveError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 1
    except GeometryError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 1

    text = (
        envelope_to_json(envelope)
        if cfg.format == "json"
        else envelope_to_csv(envelope)
    )
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    elapsed = int((time.monotonic() - start) * 1000)
    print(f"wall_time_ms={elapsed}", file=sys.stderr)
    return 0 if envelope["certified"] else 1


if __name__ == "__main__":
    sys.exit(main())
