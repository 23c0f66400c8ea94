"""Property-check suites behind the CLI `verify` command.

Each check returns a CheckResult; all are deterministic given the seed in
the [verify] config section.  These are the same invariants the pytest
suite asserts, packaged so a deployed build can re-verify itself without a
test harness.
"""

from dataclasses import dataclass

import numpy as np

from . import learning
from .config import SimConfig
from .constraint import lemma3_margin, shift
from .plant import (JointState, coriolis_matrix, forward_dynamics,
                    gravity_vector, inertia_bounds, inertia_matrix,
                    potential_energy)
from .rbf import RbfNetwork
from .sim import rk4_step


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_shift_profile(grid_points: int = 10000, tol: float = 1e-12,
                        tc: float = 2.0) -> CheckResult:
    """γ endpoints, strict monotonicity, derivative continuity and bound."""
    ts = np.linspace(0.0, tc, grid_points)
    gam = np.array([shift(float(t), tc).gamma for t in ts])
    gdot = np.array([shift(float(t), tc).gamma_dot for t in ts])
    end = shift(tc, tc)
    eps = 1e-9
    problems = []
    if abs(gam[0]) > tol:
        problems.append(f"gamma(0) = {gam[0]:.3e}")
    if abs(end.gamma - 1.0) > tol or abs(end.gamma_dot) > tol:
        problems.append("gamma(Tc) != 1 or gamma_dot(Tc) != 0")
    if not np.all(np.diff(gam) > 0.0):
        problems.append("gamma not strictly increasing on [0, Tc)")
    if abs(shift(tc - eps, tc).gamma_dot) > tol:
        problems.append("gamma_dot discontinuous at Tc")
    if np.any(gdot > 3.0 / tc + tol) or np.any(gdot < -tol):
        problems.append("gamma_dot outside [0, 3/Tc]")
    if shift(2.0 * tc, tc).gamma != 1.0 or shift(2.0 * tc, tc).gamma_dot != 0.0:
        problems.append("gamma not clamped after Tc")
    return CheckResult("shift-profile", not problems, "; ".join(problems) or
                       f"{grid_points} grid points within {tol:g}")


def check_barrier_inequality(points_per_case: int = 10000, tol: float = 1e-12) -> CheckResult:
    """Zone-barrier gap nonnegative over |xi| <= 0.999 k for a (k, beta) grid."""
    worst = np.inf
    for k in (0.1, 0.5, 1.0, 5.0):
        for beta in (1.0, 10.0, 100.0):
            xi = np.linspace(-0.999 * k, 0.999 * k, points_per_case)
            margin = lemma3_margin(xi, k, beta)
            worst = min(worst, float(margin.min()))
    return CheckResult("barrier-inequality", worst >= -tol,
                       f"minimum margin {worst:.3e}")


def check_skew_symmetry(config: SimConfig, samples: int = 10000,
                        tol: float = 1e-9, seed: int = 0) -> CheckResult:
    """z^T (Ṁ − 2C) z ≈ 0 with Ṁ by central difference along the motion."""
    rng = np.random.default_rng(seed)
    eps = 1e-6
    worst = 0.0
    for _ in range(samples):
        q = rng.uniform(-np.pi, np.pi, 2)
        qdot = rng.uniform(-3.0, 3.0, 2)
        z = rng.uniform(-1.0, 1.0, 2)
        mdot = (inertia_matrix(config.plant, q + eps * qdot)
                - inertia_matrix(config.plant, q - eps * qdot)) / (2.0 * eps)
        c = coriolis_matrix(config.plant, q, qdot)
        worst = max(worst, abs(float(z @ (mdot - 2.0 * c) @ z)))
    return CheckResult("skew-symmetry", worst <= tol, f"max residual {worst:.3e}")


def check_inertia_bounds(config: SimConfig, samples: int = 10000,
                         seed: int = 0) -> CheckResult:
    """Eigenvalues of M stay inside the parameter-derived [mu1, mu2]."""
    mu1, mu2 = inertia_bounds(config.plant)
    rng = np.random.default_rng(seed)
    q2 = rng.uniform(-np.pi, np.pi, samples)
    from .plant import dynamic_coefficients
    p1, p2, p3, _, _ = dynamic_coefficients(config.plant)
    c2 = np.cos(q2)
    m = np.empty((samples, 2, 2))
    m[:, 0, 0] = p1 + 2.0 * p2 * c2
    m[:, 0, 1] = m[:, 1, 0] = p3 + p2 * c2
    m[:, 1, 1] = p3
    eig = np.linalg.eigvalsh(m)
    lo, hi = float(eig[:, 0].min()), float(eig[:, 1].max())
    slack = 1e-12
    ok = lo > 0.0 and lo >= mu1 - slack and hi <= mu2 + slack
    return CheckResult("inertia-bounds", ok,
                       f"eigenvalues in [{lo:.6g}, {hi:.6g}] vs [{mu1:.6g}, {mu2:.6g}]")


def check_gravity_gradient(config: SimConfig, samples: int = 100,
                           tol: float = 1e-6, seed: int = 0) -> CheckResult:
    """G(q) equals the finite-difference gradient of the potential."""
    rng = np.random.default_rng(seed)
    eps = 1e-6
    worst = 0.0
    for _ in range(samples):
        q = rng.uniform(-np.pi, np.pi, 2)
        g = gravity_vector(config.plant, q)
        for i in range(2):
            dq = np.zeros(2)
            dq[i] = eps
            fd = (potential_energy(config.plant, q + dq)
                  - potential_energy(config.plant, q - dq)) / (2.0 * eps)
            denom = max(1.0, abs(fd))
            worst = max(worst, abs(g[i] - fd) / denom)
    return CheckResult("gravity-gradient", worst <= tol, f"max rel error {worst:.3e}")


def check_dynamics_residual(config: SimConfig, samples: int = 200,
                            tol: float = 1e-10, seed: int = 0) -> CheckResult:
    """‖M q̈ + C q̇ + G − τ − d‖ below tolerance on random inputs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        q = rng.uniform(-np.pi, np.pi, 2)
        qdot = rng.uniform(-3.0, 3.0, 2)
        tau = rng.uniform(-20.0, 20.0, 2)
        d = rng.uniform(-1.0, 1.0, 2)
        acc = forward_dynamics(config.plant, JointState(q, qdot), tau, d)
        res = (inertia_matrix(config.plant, q) @ acc
               + coriolis_matrix(config.plant, q, qdot) @ qdot
               + gravity_vector(config.plant, q) - tau - d)
        worst = max(worst, float(np.linalg.norm(res)))
    return CheckResult("dynamics-residual", worst <= tol, f"max residual {worst:.3e}")


def check_rbf_gradient(config: SimConfig, samples: int = 100,
                       tol: float = 1e-5, seed: int = 0) -> CheckResult:
    """Basis Jacobian vs central finite differences."""
    rng = np.random.default_rng(seed)
    net = RbfNetwork.lattice(config.rbf.neurons, 4, 1,
                             config.rbf.center_min, config.rbf.center_max,
                             config.rbf.width)
    eps = 1e-6
    worst = 0.0
    for _ in range(samples):
        z = rng.uniform(-6.0, 6.0, 4)
        jac = net.basis_jacobian(z)
        for i in range(4):
            dz = np.zeros(4)
            dz[i] = eps
            fd = (net.basis(z + dz) - net.basis(z - dz)) / (2.0 * eps)
            scale = np.maximum(np.abs(fd), 1e-3)
            worst = max(worst, float(np.max(np.abs(jac[:, i] - fd) / scale)))
    return CheckResult("rbf-gradient", worst <= tol, f"max rel error {worst:.3e}")


def check_rk4_order() -> CheckResult:
    """Global error on ẋ = −x falls ~16x when the step is halved."""
    def f(y, t):
        return -y

    def global_error(dt):
        y = np.array([1.0])
        n = int(round(1.0 / dt))
        for i in range(n):
            y = rk4_step(f, y, i * dt, dt)
        return abs(float(y[0]) - np.exp(-1.0))

    ratio = global_error(0.01) / global_error(0.005)
    return CheckResult("rk4-order", 12.0 <= ratio <= 20.0, f"error ratio {ratio:.2f}")


def check_td_consistency(config: SimConfig, samples: int = 200,
                         tol: float = 1e-12, seed: int = 0,
                         lambda_fn=None) -> CheckResult:
    """δ = r + Ŵ_c^T Λ must equal r − Ĵ/ψ + Ŵ_c^T ∇S_c Ż_c identically."""
    if lambda_fn is None:
        lambda_fn = learning.lambda_vector
    rng = np.random.default_rng(seed)
    net = RbfNetwork.lattice(config.rbf.neurons, 4, 1,
                             config.rbf.center_min, config.rbf.center_max,
                             config.rbf.width)
    worst = 0.0
    for _ in range(samples):
        zc = rng.uniform(-3.0, 3.0, 4)
        zc_dot = rng.uniform(-3.0, 3.0, 4)
        wc = rng.uniform(-1.0, 1.0, config.rbf.neurons)
        r = float(rng.uniform(0.0, 5.0))
        sc = net.basis(zc)
        grad = net.basis_jacobian(zc)
        lam = lambda_fn(sc, grad, zc_dot, config.critic.psi)
        lhs = learning.td_error(r, wc, lam)
        rhs = (r - learning.critic_value(wc, sc) / config.critic.psi
               + float(wc @ grad @ zc_dot))
        worst = max(worst, abs(lhs - rhs))
    return CheckResult("td-consistency", worst <= tol, f"max deviation {worst:.3e}")


def run_all(config: SimConfig) -> list:
    v = config.verify
    return [
        check_shift_profile(v.grid_points, 1e-12, config.constraint.tc),
        check_barrier_inequality(v.grid_points, 1e-12),
        check_skew_symmetry(config, v.grid_points, v.skew_tol, v.seed),
        check_inertia_bounds(config, v.grid_points, v.seed),
        check_gravity_gradient(config, 100, 1e-6, v.seed),
        check_dynamics_residual(config, 200, 1e-10, v.seed),
        check_rbf_gradient(config, 100, v.rbf_grad_tol, v.seed),
        check_rk4_order(),
        check_td_consistency(config, 200, 1e-12, v.seed),
    ]
