"""Backstepping error signals, virtual control α, and torque law τ.

The virtual control stabilizes the position error Z1 through the velocity
channel; the torque stabilizes the residual Z2 = q̇ − α, adds the barrier
feedback on the transformed error, and delegates all unknown dynamics to
the actor network output (α̇ is never computed analytically).
"""

from dataclasses import dataclass

import numpy as np

from .constraint import DENOM_GUARD
from .errors import ConstraintViolation


@dataclass(frozen=True)
class ControllerConfig:
    """Feedback gains and barrier/robustness design parameters."""

    k1: float = 15.0
    k2: float = 15.0
    beta: float = 10.0
    a: float = 1.0

    def __post_init__(self):
        if self.k1 <= 1.0:
            raise ValueError("K1 must exceed 1")
        if self.k2 <= 0.5:
            raise ValueError("K2 must exceed 1/2 (K2 - I/2 positive definite)")
        if self.beta <= 0.0:
            raise ValueError("beta must be positive")
        if self.a <= 0.0:
            raise ValueError("robustness parameter a must be positive")


@dataclass
class ErrorPair:
    z1: np.ndarray       # q - q_d
    z2: np.ndarray       # q̇ - α
    z1gamma: np.ndarray  # γ (q - q_d)


def compute_errors(q, qdot, qd, alpha, gamma: float) -> ErrorPair:
    z1 = np.asarray(q, dtype=float) - np.asarray(qd, dtype=float)
    z2 = np.asarray(qdot, dtype=float) - np.asarray(alpha, dtype=float)
    return ErrorPair(z1, z2, gamma * z1)


def _denominators(z1gamma, kc, beta: float, mode: str):
    """β(k² − z²) per joint, or the shared β(k² − ‖z‖²) in scalar_min mode."""
    z1gamma = np.asarray(z1gamma, dtype=float)
    kc = np.asarray(kc, dtype=float)
    if mode == "scalar_min":
        den = kc**2 - float(z1gamma @ z1gamma)
    else:
        den = kc**2 - z1gamma**2
    if np.any(den < DENOM_GUARD):
        bad = int(np.argmin(den))
        raise ConstraintViolation(float(z1gamma[bad]), float(kc[bad]), joint=bad)
    return beta * den


def virtual_control(z1, z1gamma, gamma_dot: float, kc, kc_dot, qd_dot,
                    cfg: ControllerConfig, mode: str = "per_joint") -> np.ndarray:
    """α = −K1 Z1 − a γ̇² Z1 ‖Z1‖² / (β(k²−z²)) + q̇_d + (k̇/k) Z1."""
    z1 = np.asarray(z1, dtype=float)
    den = _denominators(z1gamma, kc, cfg.beta, mode)
    kc = np.asarray(kc, dtype=float)
    kc_dot = np.asarray(kc_dot, dtype=float)
    return (
        -cfg.k1 * z1
        - cfg.a * gamma_dot**2 * z1 * float(z1 @ z1) / den
        + np.asarray(qd_dot, dtype=float)
        + (kc_dot / kc) * z1
    )


def torque(actor_output, z2, z1gamma, gamma: float, kc,
           cfg: ControllerConfig, mode: str = "per_joint") -> np.ndarray:
    """τ = actor output − K2 Z2 − γ z / (β(k²−z²)).

    The barrier contribution is exactly zero at t = 0 (γ(0) = 0), finite for
    any bounded initial error, and diverges only as |z| → k."""
    den = _denominators(z1gamma, kc, cfg.beta, mode)
    return (
        np.asarray(actor_output, dtype=float)
        - cfg.k2 * np.asarray(z2, dtype=float)
        - gamma * np.asarray(z1gamma, dtype=float) / den
    )
