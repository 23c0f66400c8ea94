"""Two-link rigid manipulator in the vertical plane.

Rigid-body model M(q)q̈ + C(q,q̇)q̇ + G(q) = τ + d with the two structural
properties the controller relies on: M(q) symmetric positive definite with
uniform eigenvalue bounds, and Ṁ − 2C skew-symmetric (C is built from
Christoffel symbols, which guarantees the identity exactly).

Angle convention: q1 is measured from the downward vertical, q2 is relative
to link 1, so q = 0 is the stable hanging equilibrium and G(0) = 0.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularDynamics

N_JOINTS = 2


@dataclass(frozen=True)
class ManipulatorParams:
    """Physical parameters of the arm.

    m1, m2   link masses (kg)
    l1, l2   link lengths (m)
    lc1, lc2 distances from joint to link center of mass (m)
    i1, i2   link rotational inertias about the COM (kg m^2)
    g        gravitational acceleration (m/s^2)
    """

    m1: float = 1.0
    m2: float = 1.0
    l1: float = 0.5
    l2: float = 0.5
    lc1: float = 0.25
    lc2: float = 0.25
    i1: float = 1.0 * 0.5**2 / 12.0
    i2: float = 1.0 * 0.5**2 / 12.0
    g: float = 9.81

    def __post_init__(self):
        for name in ("m1", "m2", "l1", "l2", "lc1", "lc2", "i1", "i2"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.lc1 > self.l1 or self.lc2 > self.l2:
            raise ValueError("center of mass must lie on the link (lc_i <= l_i)")
        if self.g < 0.0:
            raise ValueError("g must be nonnegative")


@dataclass
class JointState:
    q: np.ndarray
    qdot: np.ndarray

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.q)) and np.all(np.isfinite(self.qdot)))


@dataclass(frozen=True)
class DisturbanceSpec:
    """Bounded joint-torque disturbance: zero, or amp_i * sin(freq * t)."""

    mode: str = "zero"
    amplitude: tuple = (0.0, 0.0)
    frequency: float = 1.0

    def __post_init__(self):
        if self.mode not in ("zero", "sinusoidal"):
            raise ValueError(f"unknown disturbance mode {self.mode!r}")
        if any(a < 0.0 or not np.isfinite(a) for a in self.amplitude):
            raise ValueError("disturbance amplitudes must be finite and >= 0")
        if not np.isfinite(self.frequency):
            raise ValueError("disturbance frequency must be finite")


def default_params() -> ManipulatorParams:
    """Uniform-rod textbook arm: 1 kg x 0.5 m links, lc = l/2, I = m l^2/12."""
    return ManipulatorParams()


def dynamic_coefficients(params: ManipulatorParams):
    """Collapse the physical parameters into the five coefficients that the
    closed-form M, C, G expressions depend on.

    Returns (p1, p2, p3, ga, gb) with
      M11 = p1 + 2 p2 cos q2,  M12 = p3 + p2 cos q2,  M22 = p3,
      C from h = p2 sin q2,
      G1 = ga sin q1 + gb sin(q1+q2),  G2 = gb sin(q1+q2).
    """
    p = params
    p1 = p.i1 + p.i2 + p.m1 * p.lc1**2 + p.m2 * (p.l1**2 + p.lc2**2)
    p2 = p.m2 * p.l1 * p.lc2
    p3 = p.i2 + p.m2 * p.lc2**2
    ga = (p.m1 * p.lc1 + p.m2 * p.l1) * p.g
    gb = p.m2 * p.lc2 * p.g
    return p1, p2, p3, ga, gb


def inertia_matrix(params: ManipulatorParams, q) -> np.ndarray:
    """Symmetric positive definite inertia matrix M(q)."""
    p1, p2, p3, _, _ = dynamic_coefficients(params)
    c2 = np.cos(q[1])
    m12 = p3 + p2 * c2
    return np.array([[p1 + 2.0 * p2 * c2, m12], [m12, p3]])


def coriolis_matrix(params: ManipulatorParams, q, qdot) -> np.ndarray:
    """Coriolis/centrifugal matrix from Christoffel symbols.

    This construction makes z^T (Ṁ - 2C) z vanish identically, which the
    stability argument uses; do not replace it with an algebraically
    equivalent form that loses the identity.
    """
    _, p2, _, _, _ = dynamic_coefficients(params)
    h = p2 * np.sin(q[1])
    dq1, dq2 = qdot[0], qdot[1]
    return np.array([[-h * dq2, -h * (dq1 + dq2)], [h * dq1, 0.0]])


def gravity_vector(params: ManipulatorParams, q) -> np.ndarray:
    """Gravity torque G(q) = dU/dq."""
    _, _, _, ga, gb = dynamic_coefficients(params)
    s1 = np.sin(q[0])
    s12 = np.sin(q[0] + q[1])
    return np.array([ga * s1 + gb * s12, gb * s12])


def potential_energy(params: ManipulatorParams, q) -> float:
    """Gravitational potential, zero datum at the joint-1 axis height."""
    p = params
    c1 = np.cos(q[0])
    c12 = np.cos(q[0] + q[1])
    return float(
        -p.m1 * p.g * p.lc1 * c1 - p.m2 * p.g * (p.l1 * c1 + p.lc2 * c12)
    )


def kinetic_energy(params: ManipulatorParams, q, qdot) -> float:
    qdot = np.asarray(qdot, dtype=float)
    m = inertia_matrix(params, q)
    return float(0.5 * qdot @ m @ qdot)


def forward_dynamics(params: ManipulatorParams, state: JointState, tau, d) -> np.ndarray:
    """Joint accelerations q̈ = M^{-1}(τ + d - C q̇ - G)."""
    m = inertia_matrix(params, state.q)
    c = coriolis_matrix(params, state.q, state.qdot)
    g = gravity_vector(params, state.q)
    rhs = np.asarray(tau, dtype=float) + np.asarray(d, dtype=float) - c @ state.qdot - g
    try:
        return np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as exc:  # impossible for valid params
        raise SingularDynamics(f"inertia matrix solve failed: {exc}") from exc


def disturbance(spec: DisturbanceSpec, t: float) -> np.ndarray:
    """Disturbance torque d(t); ||d(t)||_inf <= amplitude for all t."""
    if spec.mode == "zero":
        return np.zeros(N_JOINTS)
    amp = np.asarray(spec.amplitude, dtype=float)
    return amp * np.sin(spec.frequency * t)


def inertia_bounds(params: ManipulatorParams, n_grid: int = 720):
    """Uniform eigenvalue bounds (mu1, mu2) of M(q), computed once.

    M depends on q only through cos(q2), so a dense sweep of q2 over one
    period gives the exact extremes up to grid resolution.
    """
    q2 = np.linspace(0.0, 2.0 * np.pi, n_grid, endpoint=False)
    p1, p2, p3, _, _ = dynamic_coefficients(params)
    c2 = np.cos(q2)
    m = np.empty((n_grid, 2, 2))
    m[:, 0, 0] = p1 + 2.0 * p2 * c2
    m[:, 0, 1] = m[:, 1, 0] = p3 + p2 * c2
    m[:, 1, 1] = p3
    eig = np.linalg.eigvalsh(m)
    return float(eig[:, 0].min()), float(eig[:, 1].max())
