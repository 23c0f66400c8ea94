"""Closed-loop simulation: backend selection, the reference derivative
pipeline, fixed-step integration, logging, Lyapunov diagnostics, and the
constraint monitor.

Two execution paths produce the same trajectories:

* `run` drives the packed kernel (`zblfsim._kernel`), compiled when the
  extension was built, interpreted otherwise;
* `evaluate_pipeline`/`augmented_derivative` compose the public module
  functions step by step and serve as the readable reference the kernel is
  cross-checked against in the test suite.
"""

import importlib.util
import time
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import _kernel
from .config import SimConfig, initial_state, pack_kernel_config
from .constraint import error_bound, shift, szblf_value, transformed_error
from .control import compute_errors, torque, virtual_control
from .errors import ZblfsimError
from .learning import (LearningState, actor_rate, critic_rate, critic_value,
                       instantaneous_cost, lambda_vector, td_error)
from .plant import (JointState, disturbance, forward_dynamics, inertia_bounds,
                    inertia_matrix)
from .rbf import RbfNetwork
from .trajectory import desired_trajectory

LOG_COLUMNS = (
    "t", "q1", "q2", "qdot1", "qdot2", "qd1", "qd2", "qd_dot1", "qd_dot2",
    "z1_1", "z1_2", "z2_1", "z2_2", "z1g_1", "z1g_2", "gamma", "kc1", "kc2",
    "alpha1", "alpha2", "tau1", "tau2", "cost", "td_error", "value",
    "wa_norm", "wc_norm", "V1", "Vr", "Vc", "Va",
)
assert len(LOG_COLUMNS) == _kernel.N_LOG_COLS

_CSV_FMT = "%.17g"

_py_kernel = None


def kernel_backend() -> str:
    """Backend selected at import: 'compiled' extension or 'python' fallback."""
    return "compiled" if _kernel.KERNEL_COMPILED else "python"


def _python_kernel():
    """Load the interpreted kernel source even when the extension shadows it."""
    global _py_kernel
    if not _kernel.KERNEL_COMPILED:
        return _kernel
    if _py_kernel is None:
        path = resources.files(__package__).joinpath("_kernel.py")
        spec = importlib.util.spec_from_file_location(f"{__package__}._kernel_py", str(path))
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
        _py_kernel = module
    return _py_kernel


def resolve_kernel(backend: str = "auto"):
    if backend == "auto":
        return _kernel
    if backend == "compiled":
        if not _kernel.KERNEL_COMPILED:
            raise ZblfsimError("compiled kernel requested but the extension is not built")
        return _kernel
    if backend == "python":
        return _python_kernel()
    raise ZblfsimError(f"unknown backend {backend!r}")


class SimLog:
    """Uniformly sampled run log; one row per accepted step."""

    def __init__(self, data: np.ndarray):
        data = np.asarray(data, dtype=float)
        if data.ndim != 2 or data.shape[1] != len(LOG_COLUMNS):
            raise ValueError("log table must have one column per log field")
        self.data = data

    def __len__(self):
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, LOG_COLUMNS.index(name)]

    @property
    def t(self) -> np.ndarray:
        return self.data[:, 0]

    def to_csv(self, path):
        np.savetxt(path, self.data, delimiter=",", fmt=_CSV_FMT,
                   header=",".join(LOG_COLUMNS), comments="")

    @classmethod
    def from_csv(cls, path):
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().strip().split(",")
        if tuple(header) != LOG_COLUMNS:
            raise ValueError(f"unexpected CSV columns: {header}")
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(data)


@dataclass
class FailureReport:
    """Structured abort report for a run that did not reach t_end."""

    kind: str            # constraint_violation | divergence
    time: float
    joint: int | None
    last_valid_row: int

    def describe(self) -> str:
        lines = [f"failure: {self.kind}", f"time: {self.time:.6f} s"]
        if self.joint is not None:
            lines.append(f"joint: {self.joint + 1}")
        lines.append(f"last valid log row: {self.last_valid_row}")
        return "\n".join(lines)


@dataclass
class RunResult:
    log: "SimLog"
    status: str          # ok | constraint_violation | divergence
    failure: FailureReport | None
    final_weights: LearningState
    sc_norm2_min: float
    sc_norm2_max: float
    sa_norm2_max: float
    backend: str
    elapsed: float
    config: SimConfig

    @property
    def ok(self) -> bool:
        return self.status == "ok"


_STATUS_NAMES = {
    _kernel.STATUS_OK: "ok",
    _kernel.STATUS_VIOLATION: "constraint_violation",
    _kernel.STATUS_NONFINITE: "divergence",
}


def run(config: SimConfig, backend: str = "auto") -> RunResult:
    """Simulate the closed loop; deterministic for a fixed config/backend."""
    config.validate()
    kern = resolve_kernel(backend)
    cfg, icfg = pack_kernel_config(config)
    k = config.rbf.neurons
    nstate = 4 + 3 * k
    n_steps = config.n_steps
    ca = _actor_centers(config)
    cc = _critic_centers(config)
    table = np.zeros((n_steps + 1, len(LOG_COLUMNS)))
    out_info = np.zeros(_kernel.N_OI)
    x = initial_state(config)
    bufs = [np.zeros(nstate) for _ in range(5)]
    rowb = np.zeros(_kernel.N_ROW_BUF)
    sab = np.zeros(k)
    lamb = np.zeros(k)

    start = time.perf_counter()
    status = kern.run_loop(cfg, icfg, ca, cc, x, table, out_info,
                           bufs[0], bufs[1], bufs[2], bufs[3], bufs[4],
                           rowb, sab, lamb)
    elapsed = time.perf_counter() - start

    nrows = int(out_info[_kernel.OI_N_ROWS])
    log = SimLog(table[:nrows].copy())
    status_name = _STATUS_NAMES[int(status)]
    failure = None
    if status_name != "ok":
        joint = int(out_info[_kernel.OI_VIOL_JOINT])
        failure = FailureReport(
            kind=status_name,
            time=float(out_info[_kernel.OI_VIOL_TIME]),
            joint=joint if joint >= 0 else None,
            last_valid_row=nrows - 1,
        )
    weights = LearningState(
        wa=np.array(x[4:4 + 2 * k]).reshape(k, 2).copy(),
        wc=np.array(x[4 + 2 * k:]).copy(),
    )
    return RunResult(
        log=log, status=status_name, failure=failure, final_weights=weights,
        sc_norm2_min=float(out_info[_kernel.OI_SC_MIN]),
        sc_norm2_max=float(out_info[_kernel.OI_SC_MAX]),
        sa_norm2_max=float(out_info[_kernel.OI_SA_MAX]),
        backend="compiled" if kern.KERNEL_COMPILED else "python",
        elapsed=elapsed, config=config,
    )


def _actor_centers(config: SimConfig) -> np.ndarray:
    net = RbfNetwork.lattice(config.rbf.neurons, 8, 2,
                             config.rbf.center_min, config.rbf.center_max,
                             config.rbf.width)
    return np.ascontiguousarray(net.centers)


def _critic_centers(config: SimConfig) -> np.ndarray:
    net = RbfNetwork.lattice(config.rbf.neurons, 4, 1,
                             config.rbf.center_min, config.rbf.center_max,
                             config.rbf.width)
    return np.ascontiguousarray(net.centers)


def build_networks(config: SimConfig, state=None):
    """Actor and critic networks; weights taken from `state` when given."""
    k = config.rbf.neurons
    actor = RbfNetwork.lattice(k, 8, 2, config.rbf.center_min,
                               config.rbf.center_max, config.rbf.width)
    critic = RbfNetwork.lattice(k, 4, 1, config.rbf.center_min,
                                config.rbf.center_max, config.rbf.width)
    if state is not None:
        state = np.asarray(state, dtype=float)
        actor.weights = state[4:4 + 2 * k].reshape(k, 2).copy()
        critic.weights = state[4 + 2 * k:4 + 3 * k].reshape(k, 1).copy()
    return actor, critic


@dataclass
class PipelineEval:
    """Every intermediate of one closed-loop derivative evaluation."""

    qd: np.ndarray
    qd_dot: np.ndarray
    gamma: float
    gamma_dot: float
    kc: np.ndarray
    kc_dot: np.ndarray
    z1: np.ndarray
    z1gamma: np.ndarray
    alpha: np.ndarray
    z2: np.ndarray
    sa: np.ndarray
    sc: np.ndarray
    actor_output: np.ndarray
    tau: np.ndarray
    d: np.ndarray
    qddot: np.ndarray
    cost: float
    j_hat: float
    lam: np.ndarray
    delta: float
    wa_rate: np.ndarray
    wc_rate: np.ndarray
    deriv: np.ndarray


def evaluate_pipeline(x, t: float, config: SimConfig,
                      alpha_dot=None) -> PipelineEval:
    """Reference composition of the per-module operations.

    `alpha_dot` is the frozen per-step backward-difference estimate of α̇
    used only inside the critic's feature derivative; None means zero
    (startup convention).
    """
    x = np.asarray(x, dtype=float)
    k = config.rbf.neurons
    q = x[0:2]
    qdot = x[2:4]
    wa = x[4:4 + 2 * k].reshape(k, 2)
    wc = x[4 + 2 * k:4 + 3 * k]
    if alpha_dot is None:
        alpha_dot = np.zeros(2)

    qd, qd_dot, _ = desired_trajectory(config.trajectory, t)
    sample = shift(t, config.constraint.tc)
    kc, kc_dot = error_bound(config.constraint, t)
    z1 = q - qd
    z1g = transformed_error(sample.gamma, z1)
    mode = config.constraint.mode
    alpha = virtual_control(z1, z1g, sample.gamma_dot, kc, kc_dot, qd_dot,
                            config.controller, mode)
    errs = compute_errors(q, qdot, qd, alpha, sample.gamma)
    z2 = errs.z2

    actor, critic = build_networks(config, x)
    sa = actor.basis(np.concatenate([q, qdot, z1, z2]))
    actor_out = actor.output(np.concatenate([q, qdot, z1, z2]))
    tau = torque(actor_out, z2, z1g, sample.gamma, kc, config.controller, mode)

    d = disturbance(config.disturbance, t)
    qddot = forward_dynamics(config.plant, JointState(q, qdot), tau, d)

    zc = np.concatenate([z1, z2])
    sc = critic.basis(zc)
    grad_sc = critic.basis_jacobian(zc)
    cost = instantaneous_cost(zc, tau, config.critic.q_matrix, config.critic.r_matrix)
    j_hat = critic_value(wc, sc)
    zc_dot = np.concatenate([qdot - qd_dot, qddot - np.asarray(alpha_dot, dtype=float)])
    lam = lambda_vector(sc, grad_sc, zc_dot, config.critic.psi)
    delta = td_error(cost, wc, lam)
    wc_dot = critic_rate(wc, cost, lam, config.critic)
    wa_dot = actor_rate(wa, sa, z2, j_hat, config.actor)

    deriv = np.concatenate([qdot, qddot, wa_dot.reshape(-1), wc_dot])
    return PipelineEval(
        qd=qd, qd_dot=qd_dot, gamma=sample.gamma, gamma_dot=sample.gamma_dot,
        kc=kc, kc_dot=kc_dot, z1=z1, z1gamma=z1g, alpha=alpha, z2=z2,
        sa=sa, sc=sc, actor_output=actor_out, tau=tau, d=d, qddot=qddot,
        cost=cost, j_hat=j_hat, lam=lam, delta=delta,
        wa_rate=wa_dot, wc_rate=wc_dot, deriv=deriv,
    )


def augmented_derivative(x, t: float, config: SimConfig, alpha_dot=None) -> np.ndarray:
    """Stacked derivative of [q, q̇, actor weights, critic weights]."""
    return evaluate_pipeline(x, t, config, alpha_dot).deriv


def rk4_step(f, y, t: float, dt: float):
    """One classical Runge-Kutta-4 step of ẏ = f(y, t)."""
    k1 = f(y, t)
    k2 = f(y + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = f(y + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = f(y + dt * k3, t + dt)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


# --- diagnostics ------------------------------------------------------------


@dataclass
class LyapunovDiagnostics:
    v1: float
    vr: float
    vc: float
    va: float

    @property
    def total(self) -> float:
        return self.vr + self.vc + self.va


def lyapunov_diagnostics(row, config: SimConfig) -> LyapunovDiagnostics:
    """Recompute the Lyapunov columns from one log row.

    The weight components use estimated weights in place of the unknowable
    estimation errors; they track boundedness of what is measurable.
    """
    get = lambda name: float(row[LOG_COLUMNS.index(name)])
    z1g = np.array([get("z1g_1"), get("z1g_2")])
    kc = np.array([get("kc1"), get("kc2")])
    beta = config.constraint.beta
    if config.constraint.mode == "scalar_min":
        v1 = float(szblf_value(np.linalg.norm(z1g), kc[0], beta))
    else:
        v1 = float(np.sum(szblf_value(z1g, kc, beta)))
    q = np.array([get("q1"), get("q2")])
    z2 = np.array([get("z2_1"), get("z2_2")])
    m = inertia_matrix(config.plant, q)
    vr = v1 + 0.5 * float(z2 @ m @ z2)
    vc = get("wc_norm") ** 2 / (2.0 * config.critic.sigma_c)
    va = 0.5 * get("wa_norm") ** 2
    return LyapunovDiagnostics(v1, vr, vc, va)


def iota_estimates(config: SimConfig, result: RunResult) -> dict:
    """Empirical contraction/offset estimates for the V̇ ≤ −ι1 V + ι2 bound.

    ι1 follows the analysis expression with λmax(M) from the parameter sweep
    and the observed minimum of ‖S_c‖² standing in for its infimum (the true
    infimum of a Gaussian basis is 0, which would make the expression
    vacuous).  ι2 substitutes observed weight/basis maxima for the unknowable
    ideal-weight bounds and omits the approximation-error term.
    """
    _, mu2 = inertia_bounds(config.plant)
    c = config
    terms = {
        "tracking": c.controller.k1,
        "velocity": 2.0 * (c.controller.k2 - 0.5) / mu2,
        "critic": (c.critic.eta_c
                   - 2.0 * c.actor.sigma_a * c.actor.k_a**2 * result.sc_norm2_min)
                  / c.critic.sigma_c,
        "actor": c.actor.sigma_a * c.actor.eta_a,
    }
    wa_max2 = float(np.max(result.log.column("wa_norm"))) ** 2 if len(result.log) else 0.0
    wc_max2 = float(np.max(result.log.column("wc_norm"))) ** 2 if len(result.log) else 0.0
    iota2 = (0.5 * (c.critic.eta_c + 2.0 * c.actor.sigma_a * c.actor.k_a**2
                    * result.sc_norm2_max) * wc_max2
             + 0.5 * c.actor.sigma_a * (c.actor.eta_a + result.sa_norm2_max) * wa_max2)
    return {
        "iota1": min(terms.values()),
        "iota1_terms": terms,
        "iota2_estimate": iota2,
        "lambda_max_inertia": mu2,
        "sc_norm2_min": result.sc_norm2_min,
        "sc_norm2_max": result.sc_norm2_max,
        "sa_norm2_max": result.sa_norm2_max,
    }


@dataclass(frozen=True)
class Violation:
    time: float
    joint: int
    kind: str      # raw_error | transformed_error
    value: float
    bound: float


def constraint_monitor(log: SimLog, tc: float) -> list:
    """Scan a log for bound violations.

    Reports |Z1_i(t)| ≥ k_c,i(t) at any logged t ≥ Tc, and
    |Z1γ_i(t)| ≥ k_c,i(t) at any logged t.  Empty list = pass.
    """
    out = []
    t = log.t
    for i in (0, 1):
        z1 = log.column(f"z1_{i + 1}")
        z1g = log.column(f"z1g_{i + 1}")
        kc = log.column(f"kc{i + 1}")
        raw = (np.abs(z1) >= kc) & (t >= tc)
        for idx in np.flatnonzero(raw):
            out.append(Violation(float(t[idx]), i, "raw_error",
                                 float(z1[idx]), float(kc[idx])))
        for idx in np.flatnonzero(np.abs(z1g) >= kc):
            out.append(Violation(float(t[idx]), i, "transformed_error",
                                 float(z1g[idx]), float(kc[idx])))
    out.sort(key=lambda v: (v.time, v.joint, v.kind))
    return out


def steady_state_band(log: SimLog, fraction: float = 0.25) -> np.ndarray:
    """Mean |Z1| per joint over the last `fraction` of the run."""
    n = len(log)
    start = int(np.floor(n * (1.0 - fraction)))
    if start >= n:
        return np.array([float("nan"), float("nan")])
    return np.array([
        float(np.mean(np.abs(log.column("z1_1")[start:]))),
        float(np.mean(np.abs(log.column("z1_2")[start:]))),
    ])


def summarize_log(log: SimLog, tc: float) -> dict:
    """Summary values recomputable from the CSV alone (plus Tc)."""
    violations = constraint_monitor(log, tc)
    z2 = np.hypot(log.column("z2_1"), log.column("z2_2"))
    band = steady_state_band(log)
    return {
        "rows": len(log),
        "violations": len(violations),
        "max_z2_norm": float(np.max(z2)) if len(log) else float("nan"),
        "max_wa_norm": float(np.max(log.column("wa_norm"))) if len(log) else float("nan"),
        "max_wc_norm": float(np.max(log.column("wc_norm"))) if len(log) else float("nan"),
        "steady_state_mean_abs_z1": [band[0], band[1]],
        "finite": bool(np.all(np.isfinite(log.data))),
    }
