"""Dimensionless kinematic state and spin-level energetics.

Geometry: the magnetic field points along +Z and the particle moves
uniformly in the XZ plane with velocity beta*(sin(alpha), 0, cos(alpha)),
in units of c.  Everything downstream is dimensionless: energies in units
of the rest energy m0*c^2, time in units of hbar/(2*|mu|*H), so a spin
state precesses through phase omega*t with omega = zeta*sqrt(1 -
beta^2*cos^2(alpha)).  Physical units enter only at the CLI boundary.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

#: default coupling strength above which first-order spin splitting is suspect
COUPLING_WARN_THRESHOLD = 1e-2


class StrongCouplingWarning(UserWarning):
    """Moment-field coupling too large for the first-order level splitting."""


@dataclass(frozen=True)
class Kinematics:
    """Derived kinematic state; construct with :func:`make_kinematics`.

    ``q = gamma*sqrt(1 - beta^2*cos^2(alpha)) = sqrt(1 + gamma^2*beta_perp^2)``
    is the transverse-energy factor; it is also the magnitude of the
    spin-projection eigenvalue along the field axis.
    """

    beta: float
    alpha: float
    gamma: float
    beta_perp: float
    beta_z: float
    q: float


@dataclass(frozen=True)
class FieldCoupling:
    """Moment-field coupling s = |mu|*H/(m0*c^2) and spin projection zeta."""

    s: float
    zeta: int


@dataclass(frozen=True)
class SRScales:
    """Synchrotron-radiation timescale estimates for a stored Lorentz factor."""

    omega0: float
    omega_max: float
    rho: float
    time_ratio: float


def make_kinematics(beta: float, alpha: float) -> Kinematics:
    """Build the kinematic state for speed ``beta`` and pitch angle ``alpha``.

    ``alpha`` is the angle (radians) between the velocity and the field axis.
    Raises ValueError unless 0 <= beta < 1.
    """
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must be in [0, 1), got {beta}")
    # (1-beta)*(1+beta) keeps gamma accurate as beta -> 1
    gamma = 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))
    beta_perp = beta * math.sin(alpha)
    beta_z = beta * math.cos(alpha)
    q = math.hypot(1.0, gamma * beta_perp)
    return Kinematics(beta, alpha, gamma, beta_perp, beta_z, q)


def make_coupling(
    s: float, zeta: int, warn_threshold: float = COUPLING_WARN_THRESHOLD
) -> FieldCoupling:
    """Validate and build a field coupling; warns when ``s`` is not small."""
    if s < 0.0:
        raise ValueError(f"coupling strength must be >= 0, got {s}")
    if zeta not in (-1, 1):
        raise ValueError(f"zeta must be +1 or -1, got {zeta}")
    if s > warn_threshold:
        warnings.warn(
            f"coupling s={s:g} exceeds {warn_threshold:g}; level energies are "
            "first order in s",
            StrongCouplingWarning,
            stacklevel=2,
        )
    return FieldCoupling(s, zeta)


def energy_level(kin: Kinematics, coupling: FieldCoupling) -> float:
    """Level energy gamma_zeta = gamma + zeta*s*q/gamma, in units m0*c^2.

    First order in the coupling; the pair of levels is symmetric about
    gamma and their splitting reproduces :func:`precession_frequency`.
    """
    return kin.gamma + coupling.zeta * coupling.s * (kin.q / kin.gamma)


def precession_frequency(kin: Kinematics, coupling: FieldCoupling) -> float:
    """Spin precession frequency zeta*sqrt(1 - beta^2*cos^2(alpha)).

    Units 2*|mu|*H/hbar, i.e. the level splitting divided by 2*s.  Equals
    zeta*q/gamma, which is how it is evaluated.
    """
    return coupling.zeta * (kin.q / kin.gamma)


def motion_axis(kin: Kinematics) -> np.ndarray:
    """Unit vector along the velocity, (sin(alpha), 0, cos(alpha)).

    Well defined also at beta = 0, where it is the axis the pitch angle
    refers to.
    """
    return np.array([math.sin(kin.alpha), 0.0, math.cos(kin.alpha)])


def sr_scales(gamma: float, omega0: float, c_over_rho_scale: float = 1.0) -> SRScales:
    """Spin-flip timescale estimates at Lorentz factor ``gamma``.

    ``omega0`` is an externally supplied cyclotron-scale frequency; the
    characteristic radiated frequency is omega0*gamma^3 and the ratio of
    the transition time to the radiation-forming time is 2*pi/gamma^4.
    ``rho = c_over_rho_scale/omega0`` is the associated curvature radius.
    """
    if gamma < 1.0:
        raise ValueError(f"gamma must be >= 1, got {gamma}")
    if omega0 <= 0.0:
        raise ValueError(f"omega0 must be > 0, got {omega0}")
    return SRScales(
        omega0=omega0,
        omega_max=omega0 * gamma**3,
        rho=c_over_rho_scale / omega0,
        time_ratio=TWO_PI / gamma**4,
    )
