"""Actor-critic adaptation: TD machinery and continuous-time weight laws.

The critic estimates the cost-to-go Ĵ = Ŵ_c^T S_c over the stacked error
Z = [Z1; Z2] and adapts by gradient descent on the squared TD residual
δ = r + Ŵ_c^T Λ with Λ = −S_c/ψ + ∇S_c Ż_c.  The actor absorbs the lumped
unknown dynamics; its integrated error couples the tracking residual Z2 and
the critic value through the gain k_a.  Both laws carry σ·η damping so the
weights decay in the absence of excitation.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CriticConfig:
    sigma_c: float = 50.0   # learning rate
    eta_c: float = 0.5      # damping
    psi: float = 1.0        # discount horizon (s)
    q_cost: float = 1.0     # state cost weight, Q = q_cost * I
    r_cost: float = 0.01    # input cost weight, R = r_cost * I

    def __post_init__(self):
        if self.sigma_c <= 0.0 or self.eta_c <= 0.0 or self.psi <= 0.0:
            raise ValueError("sigma_c, eta_c, psi must be positive")
        if self.q_cost < 0.0 or self.r_cost < 0.0:
            raise ValueError("cost weights must be nonnegative")

    @property
    def q_matrix(self) -> np.ndarray:
        return self.q_cost * np.eye(4)

    @property
    def r_matrix(self) -> np.ndarray:
        return self.r_cost * np.eye(2)


@dataclass(frozen=True)
class ActorConfig:
    sigma_a: float = 50.0
    eta_a: float = 0.01
    k_a: float = 0.01       # critic-coupling gain

    def __post_init__(self):
        if self.sigma_a <= 0.0 or self.eta_a <= 0.0 or self.k_a <= 0.0:
            raise ValueError("sigma_a, eta_a, k_a must be positive")


@dataclass
class LearningState:
    """Estimated weights: actor (k, 2) matrix, critic (k,) vector."""

    wa: np.ndarray
    wc: np.ndarray

    @classmethod
    def zeros(cls, neurons: int):
        return cls(np.zeros((neurons, 2)), np.zeros(neurons))


def instantaneous_cost(z, tau, q_matrix, r_matrix) -> float:
    """r = Z^T Q Z + τ^T R τ ≥ 0."""
    z = np.asarray(z, dtype=float)
    tau = np.asarray(tau, dtype=float)
    return float(z @ q_matrix @ z + tau @ r_matrix @ tau)


def critic_value(wc, sc) -> float:
    """Ĵ = Ŵ_c^T S_c."""
    return float(np.asarray(wc, dtype=float) @ np.asarray(sc, dtype=float))


def lambda_vector(sc, grad_sc, zc_dot, psi: float) -> np.ndarray:
    """Λ = −S_c/ψ + ∇S_c Ż_c."""
    return -np.asarray(sc, dtype=float) / psi + np.asarray(grad_sc, dtype=float) @ np.asarray(zc_dot, dtype=float)


def td_error(r: float, wc, lam) -> float:
    """δ = r + Ŵ_c^T Λ (the Bellman residual, features differentiated)."""
    return r + critic_value(wc, lam)


def critic_rate(wc, r: float, lam, cfg: CriticConfig) -> np.ndarray:
    """Ẇ_c = −σ_c (r + Ŵ_c^T Λ) Λ − σ_c η_c Ŵ_c."""
    wc = np.asarray(wc, dtype=float)
    lam = np.asarray(lam, dtype=float)
    return -cfg.sigma_c * (r + float(wc @ lam)) * lam - cfg.sigma_c * cfg.eta_c * wc


def actor_rate(wa, sa, z2, j_hat: float, cfg: ActorConfig) -> np.ndarray:
    """Column i: Ẇ_a,i = −σ_a (Ŵ_a,i^T S_a + Z2_i/σ_a + k_a Ĵ) S_a − σ_a η_a Ŵ_a,i.

    The scalar k_a Ĵ is broadcast to every component of the integrated
    error, the only dimensionally consistent reading of the coupling."""
    wa = np.asarray(wa, dtype=float)
    sa = np.asarray(sa, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    varsigma = wa.T @ sa + z2 / cfg.sigma_a + cfg.k_a * j_hat
    return -cfg.sigma_a * np.outer(sa, varsigma) - cfg.sigma_a * cfg.eta_a * wa
