"""Gaussian radial-basis-function networks for the actor and critic.

Single hidden layer, linear in the trainable weights: output = W^T S(Z) with
S_t(Z) = exp(−‖Z−μ_t‖²/η²).  The basis Jacobian feeds the critic's feature
derivative, so it is exposed alongside evaluation.
"""

from dataclasses import dataclass, field

import numpy as np


def diagonal_lattice(neurons: int, dim: int, lo: float = -5.0, hi: float = 5.0):
    """Centers on the diagonal of the input hypercube.

    A full grid is infeasible for high-dimensional inputs at a fixed neuron
    count, so each center takes all coordinates equal to one of `neurons`
    evenly spaced values in [lo, hi].
    """
    values = np.linspace(lo, hi, neurons)
    return np.repeat(values[:, None], dim, axis=1)


@dataclass
class RbfNetwork:
    """centers: (k, p); width η > 0; weights: (k, m), zero-initialized."""

    centers: np.ndarray
    width: float
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        self.centers = np.asarray(self.centers, dtype=float)
        if self.centers.ndim != 2 or self.centers.shape[0] < 1:
            raise ValueError("centers must be a (k, p) matrix with k >= 1")
        if self.width <= 0.0:
            raise ValueError("width must be positive")
        if self.weights is None:
            self.weights = np.zeros((self.centers.shape[0], 1))
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.shape[0] != self.centers.shape[0]:
            raise ValueError("weights must have one row per neuron")

    @classmethod
    def lattice(cls, neurons: int, dim: int, outputs: int,
                lo: float = -5.0, hi: float = 5.0, width: float = 1.0):
        return cls(diagonal_lattice(neurons, dim, lo, hi), width,
                   np.zeros((neurons, outputs)))

    def basis(self, z) -> np.ndarray:
        """Activation vector S(Z), each entry in (0, 1]."""
        diff = np.asarray(z, dtype=float) - self.centers
        return np.exp(-np.sum(diff * diff, axis=1) / self.width**2)

    def basis_jacobian(self, z) -> np.ndarray:
        """(k, p) matrix with row t = −(2/η²) S_t (Z − μ_t)^T."""
        diff = np.asarray(z, dtype=float) - self.centers
        s = np.exp(-np.sum(diff * diff, axis=1) / self.width**2)
        return (-2.0 / self.width**2) * s[:, None] * diff

    def output(self, z) -> np.ndarray:
        """W^T S(Z)."""
        return self.weights.T @ self.basis(z)
