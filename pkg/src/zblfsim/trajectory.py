"""Desired joint trajectories with analytic first and second derivatives."""

from dataclasses import dataclass

import numpy as np

KINDS = ("sin", "cos", "const")


@dataclass(frozen=True)
class JointTrajectory:
    """One joint's reference: offset + amplitude * sin/cos(omega t), or const."""

    kind: str = "sin"
    amplitude: float = 1.0
    omega: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown trajectory kind {self.kind!r}")


@dataclass(frozen=True)
class TrajectorySpec:
    joints: tuple

    def __post_init__(self):
        if len(self.joints) != 2:
            raise ValueError("exactly two joint trajectories required")


def desired_trajectory(spec: TrajectorySpec, t: float):
    """Return (q_d, q̇_d, q̈_d) at time t."""
    qd = np.empty(2)
    qd_dot = np.empty(2)
    qd_ddot = np.empty(2)
    for i, j in enumerate(spec.joints):
        a, w, off = j.amplitude, j.omega, j.offset
        if j.kind == "sin":
            s, c = np.sin(w * t), np.cos(w * t)
            qd[i] = off + a * s
            qd_dot[i] = a * w * c
            qd_ddot[i] = -a * w * w * s
        elif j.kind == "cos":
            s, c = np.sin(w * t), np.cos(w * t)
            qd[i] = off + a * c
            qd_dot[i] = -a * w * s
            qd_ddot[i] = -a * w * w * c
        else:  # const
            qd[i] = off
            qd_dot[i] = 0.0
            qd_ddot[i] = 0.0
    return qd, qd_dot, qd_ddot
