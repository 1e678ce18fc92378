"""Command-line surface for the spin precession engine.

Subcommands: eigenstate (spinor and matrix-element audit), precess
(quantum polarization series), bmt (classical comparator series),
compare (quantum vs classical report), sweep (compare over a parameter
grid), scales (relativistic timescale estimates).

Exit codes: 0 pass, 1 physics-check failure, 2 configuration error,
3 I/O error.  Time columns are in units of hbar/(2|mu|H) unless
--physical converts them to seconds at the output boundary.  CSV floats
carry 17 significant digits so parsing them back is lossless.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .bmt import (
    DEFAULT_STEPS_PER_PERIOD,
    integrate,
    map_pi_to_rest,
    omega_vector,
    trajectory_exact,
)
from .compare import Tolerances, format_report, period_grid, run_comparison
from .kinematics import (
    Kinematics,
    make_coupling,
    make_kinematics,
    motion_axis,
    sr_scales,
)
from .spinors import (
    closed_form_matrix_elements,
    matrix_element,
    pi_component_matrix,
    spin_axis,
    spin_coefficients,
)
from .superposition import (
    DegenerateOrientationError,
    evolve_expectations,
    initial_amplitudes_closed,
    initial_amplitudes_general,
)

HBAR = 1.054571817e-34  # J s

#: audit threshold for eigenstate residuals and matrix-element mismatch
RESIDUAL_TOL = 1e-12
#: spin-norm conservation demanded of classical trajectories
NORM_DRIFT_TOL = 1e-9

_ORIENTATIONS = ("x", "y", "z", "momentum", "custom")

DEFAULTS = {
    "beta": 0.6,
    "alpha_deg": 45.0,
    "coupling_s": 1e-3,
    "zeta": 1,
    "epsilon": 1,
    "orientation": "y",
    "theta_n_deg": 0.0,
    "phi_n_deg": 0.0,
    "periods": 10.0,
    "samples_per_period": 1024,
    "format": None,
    "method": "exact",
    "steps_per_period": DEFAULT_STEPS_PER_PERIOD,
    "tol_deviation": 1e-8,
    "tol_invariant": 1e-10,
    "tol_frequency": 1e-6,
    "physical": False,
    "mu": None,
    "field": None,
    "output": None,
    "sweep": None,
    "gamma": None,
    "omega0": 1.0,
}

_BOOL_STRINGS = {"1": True, "true": True, "yes": True, "0": False, "false": False, "no": False}


def _cast_bool(text: str) -> bool:
    try:
        return _BOOL_STRINGS[text.strip().lower()]
    except KeyError:
        raise ValueError(f"not a boolean: {text!r}") from None


def _cast_sign(text: str) -> int:
    value = int(text)
    if value not in (-1, 1):
        raise ValueError("must be +1 or -1")
    return value


_CASTERS = {
    "beta": float,
    "alpha_deg": float,
    "coupling_s": float,
    "zeta": _cast_sign,
    "epsilon": _cast_sign,
    "orientation": str,
    "theta_n_deg": float,
    "phi_n_deg": float,
    "periods": float,
    "samples_per_period": int,
    "format": str,
    "method": str,
    "steps_per_period": int,
    "tol_deviation": float,
    "tol_invariant": float,
    "tol_frequency": float,
    "physical": _cast_bool,
    "mu": float,
    "field": float,
    "output": str,
    "sweep": str,
    "gamma": float,
    "omega0": float,
}


class ConfigError(Exception):
    """Bad flags, config-file content or physical bounds (exit code 2)."""


def _load_config_file(path: str) -> dict:
    """Parse a key=value config file; # starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, text = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CASTERS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _CASTERS[key](text.strip())
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def _merge_config(args: argparse.Namespace) -> dict:
    """Apply precedence flags > config file > defaults."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(_load_config_file(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def _resolve_kinematics(cfg: dict) -> Kinematics:
    beta = cfg["beta"]
    if not 0.0 <= beta < 1.0:
        raise ConfigError(f"beta must be < 1 and >= 0, got {beta}")
    return make_kinematics(beta, math.radians(cfg["alpha_deg"]))


def _resolve_coupling(cfg: dict):
    if cfg["coupling_s"] < 0.0:
        raise ConfigError(f"coupling s must be >= 0, got {cfg['coupling_s']}")
    return make_coupling(cfg["coupling_s"], cfg["zeta"])


def _resolve_superposition(cfg: dict, kin: Kinematics):
    orientation = cfg["orientation"]
    if orientation not in _ORIENTATIONS:
        raise ConfigError(
            f"orientation must be one of {', '.join(_ORIENTATIONS)}, got {orientation!r}"
        )
    try:
        if orientation in ("x", "y", "z"):
            return initial_amplitudes_closed(orientation, cfg["epsilon"], kin)
        if orientation == "momentum":
            return initial_amplitudes_general(motion_axis(kin), cfg["epsilon"], kin)
        n = spin_axis(math.radians(cfg["theta_n_deg"]), math.radians(cfg["phi_n_deg"]))
        return initial_amplitudes_general(n, cfg["epsilon"], kin)
    except DegenerateOrientationError as exc:
        raise ConfigError(str(exc)) from None


def _resolve_grid(cfg: dict, kin: Kinematics) -> np.ndarray:
    if cfg["periods"] <= 0:
        raise ConfigError(f"periods must be > 0, got {cfg['periods']}")
    if cfg["samples_per_period"] < 16:
        raise ConfigError(
            f"samples-per-period must be >= 16, got {cfg['samples_per_period']}"
        )
    return period_grid(kin, cfg["periods"], cfg["samples_per_period"])


def _time_scale(cfg: dict) -> float:
    """Seconds per dimensionless time unit, or 1 when staying dimensionless."""
    if not cfg["physical"]:
        return 1.0
    mu, field = cfg["mu"], cfg["field"]
    if mu is None or field is None:
        raise ConfigError("--physical requires both --mu and --field")
    if mu <= 0 or field <= 0:
        raise ConfigError("--mu and --field must be positive")
    return HBAR / (2.0 * mu * field)


def _tolerances(cfg: dict) -> Tolerances:
    return Tolerances(
        deviation=cfg["tol_deviation"],
        invariant=cfg["tol_invariant"],
        frequency_rel=cfg["tol_frequency"],
    )


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _csv(header: list[str], columns: list[np.ndarray]) -> str:
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_eigenstate(cfg: dict) -> int:
    """Audit one stationary state: residual, norm, matrix-element table."""
    kin = _resolve_kinematics(cfg)
    zeta = cfg["zeta"]
    psi = spin_coefficients(zeta, kin)
    norm_err = abs(float(np.linalg.norm(psi)) - 1.0)
    mz = pi_component_matrix(np.array([0.0, 0.0, 1.0]), kin)
    residual = float(np.linalg.norm(mz @ psi - zeta * kin.q * psi))
    closed = closed_form_matrix_elements(kin, zeta)
    other = spin_coefficients(-zeta, kin)
    rows = []
    max_err = 0.0
    for name, axis in (("x", (1.0, 0.0, 0.0)), ("y", (0.0, 1.0, 0.0)), ("z", (0.0, 0.0, 1.0))):
        m = pi_component_matrix(np.array(axis), kin)
        diag = matrix_element(psi, m, psi)
        cross = matrix_element(other, m, psi)
        cd = getattr(closed, f"diag_{name}")
        cc = getattr(closed, f"cross_{name}")
        max_err = max(max_err, abs(diag - cd), abs(cross - cc))
        rows.append((name, cd, diag, cc, cross))
    ok = max(norm_err, residual, max_err) <= RESIDUAL_TOL
    if cfg["format"] == "json":
        payload = {
            "beta": kin.beta,
            "alpha_deg": cfg["alpha_deg"],
            "zeta": zeta,
            "spinor": [float(c.real) for c in psi],
            "eigenvalue": zeta * kin.q,
            "norm_error": norm_err,
            "residual": residual,
            "max_element_error": max_err,
            "pass": ok,
        }
        _emit(_json_text(payload), cfg["output"])
    else:
        lines = [
            f"beta={kin.beta:.17g} alpha={cfg['alpha_deg']:.17g} deg zeta={zeta:+d}",
            "spinor: " + " ".join(f"{c.real:.17g}" for c in psi),
            f"eigenvalue: {zeta * kin.q:.17g}",
            f"norm error: {norm_err:.3e}",
            f"residual: {residual:.3e}",
            "matrix elements, closed form vs spinor sandwich:",
        ]
        for name, cd, diag, cc, cross in rows:
            lines.append(
                f"  diag_{name}:  {cd:.12g}  vs  {diag:.12g}"
            )
            lines.append(
                f"  cross_{name}: {cc:.12g}  vs  {cross:.12g}"
            )
        lines.append(f"max element error: {max_err:.3e}")
        lines.append(f"verdict: {'pass' if ok else 'FAIL'}")
        _emit("\n".join(lines) + "\n", cfg["output"])
    return 0 if ok else 1


def cmd_precess(cfg: dict) -> int:
    """Quantum polarization series on a period grid."""
    kin = _resolve_kinematics(cfg)
    coupling = _resolve_coupling(cfg)
    sup = _resolve_superposition(cfg, kin)
    t = _resolve_grid(cfg, kin)
    hist = evolve_expectations(sup, kin, coupling, t)
    scale = _time_scale(cfg)
    columns = [
        hist.t * scale,
        hist.pi_x,
        hist.pi_y,
        hist.pi_z,
        hist.beta_pi,
        hist.invariant,
    ]
    header = ["t", "pi_x", "pi_y", "pi_z", "beta_pi", "invariant"]
    if cfg["format"] == "json":
        payload = {name: col.tolist() for name, col in zip(header, columns)}
        _emit(_json_text(payload), cfg["output"])
    else:
        _emit(_csv(header, columns), cfg["output"])
    inv_err = float(np.abs(hist.invariant - 1.0).max())
    return 0 if inv_err <= cfg["tol_invariant"] else 1


def cmd_bmt(cfg: dict) -> int:
    """Classical comparator series seeded from the matching quantum state."""
    kin = _resolve_kinematics(cfg)
    coupling = _resolve_coupling(cfg)
    sup = _resolve_superposition(cfg, kin)
    t = _resolve_grid(cfg, kin)
    # same initial polarization as cmd_precess, so the pi columns line up
    start = evolve_expectations(sup, kin, coupling, t[:1])
    pi0 = np.array([start.pi_x[0], start.pi_y[0], start.pi_z[0]])
    s0 = map_pi_to_rest(pi0, kin)
    s0 = s0 / np.linalg.norm(s0)
    omega = omega_vector(kin)
    if cfg["method"] == "exact":
        traj = trajectory_exact(s0, omega, t, kin)
    elif cfg["method"] == "rk4":
        try:
            traj = integrate(s0, omega, t, kin, cfg["steps_per_period"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    else:
        raise ConfigError(f"method must be exact or rk4, got {cfg['method']!r}")
    scale = _time_scale(cfg)
    header = ["t", "bmt_s_x", "bmt_s_y", "bmt_s_z", "bmt_pi_x", "bmt_pi_y", "bmt_pi_z", "bmt_beta_pi"]
    columns = [
        traj.t * scale,
        traj.s[:, 0],
        traj.s[:, 1],
        traj.s[:, 2],
        traj.pi[:, 0],
        traj.pi[:, 1],
        traj.pi[:, 2],
        traj.beta_pi,
    ]
    if cfg["format"] == "json":
        payload = {name: col.tolist() for name, col in zip(header, columns)}
        _emit(_json_text(payload), cfg["output"])
    else:
        _emit(_csv(header, columns), cfg["output"])
    drift = float(np.abs(np.linalg.norm(traj.s, axis=1) - 1.0).max())
    return 0 if drift <= NORM_DRIFT_TOL else 1


def cmd_compare(cfg: dict) -> int:
    """Quantum vs classical report; JSON to the output target."""
    kin = _resolve_kinematics(cfg)
    coupling = _resolve_coupling(cfg)
    sup = _resolve_superposition(cfg, kin)
    if cfg["periods"] <= 0:
        raise ConfigError(f"periods must be > 0, got {cfg['periods']}")
    if cfg["samples_per_period"] < 16:
        raise ConfigError(
            f"samples-per-period must be >= 16, got {cfg['samples_per_period']}"
        )
    report, _, _ = run_comparison(
        sup,
        kin,
        coupling,
        periods=cfg["periods"],
        samples_per_period=cfg["samples_per_period"],
        tolerances=_tolerances(cfg),
        orientation=cfg["orientation"],
    )
    if cfg["output"] is not None:
        _emit(_json_text(report.to_dict()), cfg["output"])
        sys.stdout.write(format_report(report) + "\n")
    elif cfg["format"] == "table":
        sys.stdout.write(format_report(report) + "\n")
    else:
        _emit(_json_text(report.to_dict()), None)
    return 0 if report.passed else 1


def _parse_sweep_spec(spec: str) -> tuple[np.ndarray, np.ndarray]:
    """Parse 'beta=lo:hi:count,alpha=lo:hi:count' into value grids."""
    betas = None
    alphas = None
    for part in spec.split(","):
        name, _, rng = part.partition("=")
        name = name.strip()
        pieces = rng.split(":")
        if len(pieces) != 3:
            raise ConfigError(f"sweep range must be lo:hi:count, got {rng!r}")
        try:
            lo, hi, count = float(pieces[0]), float(pieces[1]), int(pieces[2])
        except ValueError as exc:
            raise ConfigError(f"bad sweep range {rng!r}: {exc}") from None
        if count < 1:
            raise ConfigError(f"sweep count must be >= 1, got {count}")
        values = np.linspace(lo, hi, count)
        if name == "beta":
            betas = values
        elif name == "alpha":
            alphas = values
        else:
            raise ConfigError(f"sweep parameter must be beta or alpha, got {name!r}")
    if betas is None:
        betas = np.array([DEFAULTS["beta"]])
    if alphas is None:
        alphas = np.array([DEFAULTS["alpha_deg"]])
    return betas, alphas


def cmd_sweep(cfg: dict) -> int:
    """Run compare over a (beta, alpha) grid; one summary CSV row per point."""
    if not cfg["sweep"]:
        raise ConfigError("sweep needs --sweep beta=lo:hi:count,alpha=lo:hi:count")
    betas, alphas = _parse_sweep_spec(cfg["sweep"])
    tol = _tolerances(cfg)
    coupling = _resolve_coupling(cfg)
    lines = [
        "beta,alpha_deg,orientation,max_abs_deviation,invariant_max_error,"
        "extracted_frequency,frequency_formula,pass"
    ]
    all_pass = True
    for beta in betas:
        for alpha_deg in alphas:
            point = dict(cfg, beta=float(beta), alpha_deg=float(alpha_deg))
            kin = _resolve_kinematics(point)
            sup = _resolve_superposition(point, kin)
            report, _, _ = run_comparison(
                sup,
                kin,
                coupling,
                periods=cfg["periods"],
                samples_per_period=cfg["samples_per_period"],
                tolerances=tol,
                orientation=cfg["orientation"],
            )
            all_pass = all_pass and report.passed
            worst = max(report.max_abs_deviation.values())
            freq = (
                ""
                if report.extracted_frequency is None
                else f"{report.extracted_frequency:.17g}"
            )
            lines.append(
                f"{beta:.17g},{alpha_deg:.17g},{cfg['orientation']},{worst:.17g},"
                f"{report.invariant_max_error:.17g},{freq},"
                f"{report.frequency_formula:.17g},{str(report.passed).lower()}"
            )
    _emit("\n".join(lines) + "\n", cfg["output"])
    return 0 if all_pass else 1


def cmd_scales(cfg: dict) -> int:
    """Relativistic timescale estimates for a given Lorentz factor."""
    if cfg["gamma"] is None:
        raise ConfigError("scales needs --gamma")
    try:
        scales = sr_scales(cfg["gamma"], cfg["omega0"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    payload = {
        "gamma": cfg["gamma"],
        "omega0": scales.omega0,
        "omega_max": scales.omega_max,
        "time_ratio": scales.time_ratio,
        "rho": scales.rho,
    }
    _emit(_json_text(payload), cfg["output"])
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file; flags win over it")
    parser.add_argument("--beta", type=float, help="speed in units of c, 0 <= beta < 1")
    parser.add_argument("--alpha-deg", type=float, dest="alpha_deg",
                        help="angle between velocity and field, degrees")
    parser.add_argument("--coupling-s", type=float, dest="coupling_s",
                        help="moment-field coupling |mu|H/(m0 c^2)")
    parser.add_argument("--output", help="write to this file instead of stdout")


def _add_orientation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--epsilon", type=_cast_sign, help="initial orientation sign, +1 or -1")
    parser.add_argument("--orientation", choices=_ORIENTATIONS,
                        help="initial spin axis (default y)")
    parser.add_argument("--theta-n-deg", type=float, dest="theta_n_deg",
                        help="custom axis polar angle, degrees")
    parser.add_argument("--phi-n-deg", type=float, dest="phi_n_deg",
                        help="custom axis azimuth, degrees")


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--periods", type=float, help="number of precession periods")
    parser.add_argument("--samples-per-period", type=int, dest="samples_per_period",
                        help="grid density, >= 16")


def _add_physical(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--physical", action="store_const", const=True,
                        help="emit the time column in seconds")
    parser.add_argument("--mu", type=float, help="|mu| in J/T (with --physical)")
    parser.add_argument("--field", type=float, help="H in T (with --physical)")


def _add_tolerances(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-deviation", type=float, dest="tol_deviation",
                        help="max quantum-classical deviation (default 1e-8)")
    parser.add_argument("--tol-invariant", type=float, dest="tol_invariant",
                        help="max |I - 1| (default 1e-10)")
    parser.add_argument("--tol-frequency", type=float, dest="tol_frequency",
                        help="max relative frequency error (default 1e-6)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinprec",
        description="Spin precession of a neutral Dirac particle in a uniform field",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigenstate", help="audit a stationary spin state")
    _add_common(p)
    p.add_argument("--zeta", type=_cast_sign, help="spin branch, +1 or -1")
    p.add_argument("--format", choices=["text", "json"], help="output format")

    p = sub.add_parser("precess", help="quantum polarization time series")
    _add_common(p)
    _add_orientation(p)
    _add_grid(p)
    _add_physical(p)
    p.add_argument("--zeta", type=_cast_sign, help="coupling sign branch")
    p.add_argument("--tol-invariant", type=float, dest="tol_invariant",
                   help="max |I - 1| for exit code 0")
    p.add_argument("--format", choices=["csv", "json"], help="output format")

    p = sub.add_parser("bmt", help="classical comparator time series")
    _add_common(p)
    _add_orientation(p)
    _add_grid(p)
    _add_physical(p)
    p.add_argument("--method", choices=["exact", "rk4"], help="trajectory method")
    p.add_argument("--steps-per-period", type=int, dest="steps_per_period",
                   help="rk4 step density, >= 200")
    p.add_argument("--format", choices=["csv", "json"], help="output format")

    p = sub.add_parser("compare", help="quantum vs classical agreement report")
    _add_common(p)
    _add_orientation(p)
    _add_grid(p)
    _add_tolerances(p)
    p.add_argument("--zeta", type=_cast_sign, help="coupling sign branch")
    p.add_argument("--format", choices=["json", "table"], help="output format")

    p = sub.add_parser("sweep", help="compare over a parameter grid")
    _add_common(p)
    _add_orientation(p)
    _add_grid(p)
    _add_tolerances(p)
    p.add_argument("--zeta", type=_cast_sign, help="coupling sign branch")
    p.add_argument("--sweep", help="grid spec, e.g. beta=0:0.95:20,alpha=0:90:10")

    p = sub.add_parser("scales", help="relativistic timescale estimates")
    p.add_argument("--config", help="key=value config file; flags win over it")
    p.add_argument("--gamma", type=float, help="Lorentz factor, >= 1")
    p.add_argument("--omega0", type=float, help="rest-frame angular frequency (default 1)")
    p.add_argument("--output", help="write to this file instead of stdout")

    return parser


_COMMANDS = {
    "eigenstate": cmd_eigenstate,
    "precess": cmd_precess,
    "bmt": cmd_bmt,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "scales": cmd_scales,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
