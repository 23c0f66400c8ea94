"""Deferred time-varying error constraints and the smooth zone barrier.

Three pieces work together:

* a shifting function γ(t) that ramps from 0 to 1 over a prescribed window
  [0, Tc], so the constraint machinery acts on the transformed error
  γ(t)·Z1 and tolerates initial conditions outside the bounds;
* time-varying error bounds k_c,i(t), either given directly (constant or
  sinusoidal families) or derived as the distance from the desired
  trajectory to position limits;
* the zone barrier function V(z) = ln(k²/(k² − z²))/(2β), which grows
  slowly for |z| ≪ k (low feedback effort in the safe zone) and diverges
  as |z| → k.

`lemma3_margin` exposes the inequality z²/(β(k²−z²)) ≥ V(z) that the
boundedness argument rests on; it is checked on dense grids in the
verification suite.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolation
from .trajectory import TrajectorySpec, desired_trajectory

# Below this squared distance to the boundary the barrier is considered
# violated; aborting beats letting the term overflow and mask the failure.
DENOM_GUARD = 1e-9

FAMILIES = ("const", "sin", "cos", "derived")
MODES = ("per_joint", "scalar_min")


@dataclass(frozen=True)
class ShiftSample:
    """γ and γ̇ at one instant; γ ∈ [0,1], γ̇ ≥ 0 and zero once t ≥ Tc."""

    gamma: float
    gamma_dot: float


def shift(t: float, tc: float) -> ShiftSample:
    """Cubic shifting function: γ = 1 − ((Tc−t)/Tc)³ on [0, Tc), then 1."""
    if tc <= 0.0:
        raise ValueError("activation time Tc must be positive")
    if t < tc:
        rel = (tc - t) / tc
        return ShiftSample(1.0 - rel**3, 3.0 * (tc - t) ** 2 / tc**3)
    return ShiftSample(1.0, 0.0)


@dataclass(frozen=True)
class PositionBound:
    """A scalar position limit from the same function families as k_c."""

    family: str
    a: float = 0.0
    b: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        if self.family not in ("const", "sin", "cos"):
            raise ValueError(f"unknown position-bound family {self.family!r}")

    def value(self, t: float) -> float:
        if self.family == "sin":
            return self.a + self.b * np.sin(self.omega * t)
        if self.family == "cos":
            return self.a + self.b * np.cos(self.omega * t)
        return self.a

    def derivative(self, t: float) -> float:
        if self.family == "sin":
            return self.b * self.omega * np.cos(self.omega * t)
        if self.family == "cos":
            return -self.b * self.omega * np.sin(self.omega * t)
        return 0.0


@dataclass(frozen=True)
class ErrorBound:
    """Per-joint error bound k_c,i(t).

    Direct families: const (a), sin (a + b sin ωt), cos (a + b cos ωt).
    Derived: min(upper(t) − q_d,i(t), q_d,i(t) − lower(t)), the distance
    from the desired trajectory to the position limits.
    """

    family: str
    a: float = 0.0
    b: float = 0.0
    omega: float = 0.0
    upper: PositionBound | None = None
    lower: PositionBound | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown error-bound family {self.family!r}")
        if self.family == "derived":
            if self.upper is None or self.lower is None:
                raise ValueError("derived bound needs upper and lower position bounds")
        elif self.family == "const":
            if self.a <= 0.0:
                raise ValueError("constant bound must be positive")
        else:
            # min over t of a + b sin/cos(ωt) is a − |b|
            if self.a - abs(self.b) <= 0.0:
                raise ValueError("bound family permits k_c(t) <= 0 (need a > |b|)")


@dataclass(frozen=True)
class ConstraintSpec:
    """Bounds for both joints plus activation time and barrier sharpness.

    mode 'per_joint' gives each joint its own barrier with denominator
    k_c,i² − z_i²; mode 'scalar_min' collapses the bounds to their minimum
    and uses the vector denominator k_c² − ‖z‖² (analysis parity form).
    """

    joints: tuple
    tc: float
    beta: float
    mode: str = "per_joint"
    trajectory: TrajectorySpec | None = None  # needed by derived bounds

    def __post_init__(self):
        if len(self.joints) != 2:
            raise ValueError("exactly two error bounds required")
        if self.tc <= 0.0:
            raise ValueError("Tc must be positive")
        if self.beta <= 0.0:
            raise ValueError("beta must be positive")
        if self.mode not in MODES:
            raise ValueError(f"unknown constraint mode {self.mode!r}")
        if any(j.family == "derived" for j in self.joints) and self.trajectory is None:
            raise ValueError("derived bounds require the trajectory spec")


def _joint_bound(spec: ConstraintSpec, i: int, t: float):
    b = spec.joints[i]
    if b.family == "derived":
        qd, qd_dot, _ = desired_trajectory(spec.trajectory, t)
        vu = b.upper.value(t) - qd[i]
        vl = qd[i] - b.lower.value(t)
        if vu <= vl:
            return vu, b.upper.derivative(t) - qd_dot[i]
        return vl, qd_dot[i] - b.lower.derivative(t)
    pb = PositionBound(b.family, b.a, b.b, b.omega)
    return pb.value(t), pb.derivative(t)


def error_bound(spec: ConstraintSpec, t: float):
    """Per-joint (k_c(t), k̇_c(t)); in scalar_min mode both entries carry the
    minimum bound and its derivative."""
    vals = np.empty(2)
    ders = np.empty(2)
    for i in range(2):
        vals[i], ders[i] = _joint_bound(spec, i, t)
    if np.any(vals <= 0.0):
        raise ConstraintViolation(0.0, float(vals.min()), time=t)
    if spec.mode == "scalar_min":
        j = 0 if vals[0] <= vals[1] else 1
        return np.full(2, vals[j]), np.full(2, ders[j])
    return vals, ders


def transformed_error(gamma: float, z1):
    """Shifted tracking error γ·Z1 (zero at t = 0 for any bounded Z1)."""
    return gamma * np.asarray(z1, dtype=float)


def _check_inside(z, kc):
    denom = np.asarray(kc, dtype=float) ** 2 - np.asarray(z, dtype=float) ** 2
    if np.any(denom < DENOM_GUARD):
        bad = np.argmin(denom - DENOM_GUARD)
        zf = np.atleast_1d(np.asarray(z, dtype=float))
        kf = np.atleast_1d(np.asarray(kc, dtype=float))
        raise ConstraintViolation(float(zf.flat[bad]), float(kf.flat[bad]))
    return denom


def szblf_value(z, kc, beta: float):
    """Zone barrier value ln(k²/(k²−z²))/(2β); requires |z| < k."""
    denom = _check_inside(z, kc)
    return np.log(np.asarray(kc, dtype=float) ** 2 / denom) / (2.0 * beta)


def barrier_term(z, kc, beta: float, gamma: float):
    """Barrier feedback γ z / (β (k²−z²)): odd in z, ≈ γz/(βk²) in the safe
    zone, divergent as |z| → k."""
    denom = _check_inside(z, kc)
    return gamma * np.asarray(z, dtype=float) / (beta * denom)


def lemma3_margin(xi, k, beta: float):
    """Gap xi²/(β(k²−xi²)) − ln(k²/(k²−xi²))/(2β); nonnegative on |xi| < k
    with equality only at xi = 0."""
    denom = _check_inside(xi, k)
    xi = np.asarray(xi, dtype=float)
    k = np.asarray(k, dtype=float)
    return xi**2 / (beta * denom) - np.log(k**2 / denom) / (2.0 * beta)
