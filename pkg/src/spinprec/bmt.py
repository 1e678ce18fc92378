"""Classical comparator: BMT rest-frame spin precession in a uniform field.

For a neutral particle whose magnetic moment is entirely anomalous, the
rest-frame spin s obeys ds/dt = Omega x s with

    Omega = B_hat - (gamma/(gamma+1)) (beta . B_hat) beta

in units of 2|mu|H/hbar, the same clock the quantum engine uses.  The
field direction is the Z axis.  Omega is constant, so the exact solution
is an axis-angle rotation; a fixed-step fourth-order integrator is kept
alongside it as an independent cross-check.

The lab-frame polarization is recovered from s by boosting the
magnetic-type components of the spin tensor:

    pi = gamma s - (gamma - 1)(s . beta_hat) beta_hat,  beta_pi = beta (s . beta_hat)

which turns |pi|^2/gamma^2 + beta_pi^2 = |s|^2 into an identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kinematics import TWO_PI, Kinematics, motion_axis

#: floor demanded of the cross-check integrator
MIN_STEPS_PER_PERIOD = 200
#: default; 200 leaves ~5e-8 per-period error, 400 stays under 1e-8
DEFAULT_STEPS_PER_PERIOD = 400
#: refuse to grind through absurd spans with a fixed-step scheme
MAX_PERIODS = 1.0e6

_UNIT_TOL = 1e-8


@dataclass(frozen=True)
class PrecessionVector:
    """Constant precession vector of the rest-frame spin (units 2|mu|H/hbar)."""

    omega_vec: np.ndarray

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.omega_vec))


@dataclass(frozen=True)
class PrecessionTrajectory:
    """Rest-frame spin samples with their mapped lab polarization."""

    t: np.ndarray
    s: np.ndarray
    pi: np.ndarray
    beta_pi: np.ndarray


def omega_vector(kin: Kinematics) -> PrecessionVector:
    """Precession vector for motion in the XZ plane, field along Z.

    |Omega| = sqrt(1 - beta^2 cos^2(alpha)), matching the magnitude of the
    quantum level-splitting frequency.
    """
    g = kin.gamma / (kin.gamma + 1.0)
    return PrecessionVector(
        np.array(
            [-g * kin.beta_z * kin.beta_perp, 0.0, 1.0 - g * kin.beta_z**2]
        )
    )


def _check_unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > _UNIT_TOL:
        raise ValueError(f"{name} must be a unit vector, |{name}| = {np.linalg.norm(v)}")
    return v


def rotate_exact(s0, omega: PrecessionVector, t: float) -> np.ndarray:
    """Rotate s0 about the precession axis by |Omega| t (axis-angle form)."""
    s0 = _check_unit(s0, "s0")
    w = omega.magnitude
    if w == 0.0:
        return s0.copy()
    axis = omega.omega_vec / w
    theta = w * t
    c, si = math.cos(theta), math.sin(theta)
    return s0 * c + np.cross(axis, s0) * si + axis * (axis @ s0) * (1.0 - c)


def _check_traj_grid(t_grid) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t.size == 0:
        raise ValueError("time grid must be nonempty")
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise ValueError("time grid must be strictly ascending")
    return t


def map_rest_to_pi(s, kin: Kinematics) -> tuple[np.ndarray, np.ndarray]:
    """Lab polarization (pi, beta_pi) of rest-frame spin s; accepts (..., 3)."""
    s = np.asarray(s, dtype=float)
    bhat = motion_axis(kin)
    proj = s @ bhat
    pi = kin.gamma * s - (kin.gamma - 1.0) * proj[..., None] * bhat
    return pi, kin.beta * proj


def map_pi_to_rest(pi, kin: Kinematics) -> np.ndarray:
    """Inverse of map_rest_to_pi; exact round trip up to roundoff."""
    pi = np.asarray(pi, dtype=float)
    bhat = motion_axis(kin)
    proj = pi @ bhat
    return (pi + (kin.gamma - 1.0) * proj[..., None] * bhat) / kin.gamma


def trajectory_exact(
    s0, omega: PrecessionVector, t_grid, kin: Kinematics
) -> PrecessionTrajectory:
    """Sample the exact rotation on a grid and map to lab polarization."""
    s0 = _check_unit(s0, "s0")
    t = _check_traj_grid(t_grid)
    w = omega.magnitude
    if w == 0.0:
        s = np.broadcast_to(s0, (t.size, 3)).copy()
    else:
        axis = omega.omega_vec / w
        theta = w * t
        c = np.cos(theta)[:, None]
        si = np.sin(theta)[:, None]
        s = s0 * c + np.cross(axis, s0) * si + axis * (axis @ s0) * (1.0 - c)
    pi, beta_pi = map_rest_to_pi(s, kin)
    return PrecessionTrajectory(t, s, pi, beta_pi)


def _rk4_segment(s, omega_vec, dt: float, steps: int):
    """Advance ds/dt = Omega x s by steps equal RK4 substeps of length dt/steps."""
    wx, wy, wz = omega_vec
    sx, sy, sz = s
    h = dt / steps
    for _ in range(steps):
        k1x = wy * sz - wz * sy
        k1y = wz * sx - wx * sz
        k1z = wx * sy - wy * sx
        ax, ay, az = sx + 0.5 * h * k1x, sy + 0.5 * h * k1y, sz + 0.5 * h * k1z
        k2x = wy * az - wz * ay
        k2y = wz * ax - wx * az
        k2z = wx * ay - wy * ax
        bx, by, bz = sx + 0.5 * h * k2x, sy + 0.5 * h * k2y, sz + 0.5 * h * k2z
        k3x = wy * bz - wz * by
        k3y = wz * bx - wx * bz
        k3z = wx * by - wy * bx
        cx, cy, cz = sx + h * k3x, sy + h * k3y, sz + h * k3z
        k4x = wy * cz - wz * cy
        k4y = wz * cx - wx * cz
        k4z = wx * cy - wy * cx
        sx += h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
        sy += h * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
        sz += h * (k1z + 2.0 * k2z + 2.0 * k3z + k4z) / 6.0
    return sx, sy, sz


def integrate(
    s0,
    omega: PrecessionVector,
    t_grid,
    kin: Kinematics,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
) -> PrecessionTrajectory:
    """Fixed-step RK4 cross-check of the exact rotation.

    The step is capped at period/steps_per_period; each grid interval is
    subdivided to land exactly on the sample times.
    """
    s0 = _check_unit(s0, "s0")
    t = _check_traj_grid(t_grid)
    if steps_per_period < MIN_STEPS_PER_PERIOD:
        raise ValueError(
            f"steps_per_period must be >= {MIN_STEPS_PER_PERIOD}, got {steps_per_period}"
        )
    w = omega.magnitude
    span = float(t[-1] - t[0])
    if w > 0.0 and span * w / TWO_PI > MAX_PERIODS:
        raise ValueError(
            f"span of {span * w / TWO_PI:.3g} periods exceeds the "
            f"{MAX_PERIODS:.0e}-period fixed-step guard"
        )
    s = np.empty((t.size, 3))
    s[0] = s0
    if w > 0.0:
        h_max = TWO_PI / w / steps_per_period
        wv = tuple(float(c) for c in omega.omega_vec)
        cur = (float(s0[0]), float(s0[1]), float(s0[2]))
        for i in range(1, t.size):
            dt = float(t[i] - t[i - 1])
            cur = _rk4_segment(cur, wv, dt, max(1, math.ceil(dt / h_max)))
            s[i] = cur
    else:
        s[1:] = s0
    pi, beta_pi = map_rest_to_pi(s, kin)
    return PrecessionTrajectory(t, s, pi, beta_pi)
