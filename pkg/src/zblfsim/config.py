"""Experiment configuration: flat `key = value` file with one section per
module, strict validation, canonical serialization, and packing into the
flat arrays the simulation kernel consumes.

The bundled configs/default.cfg reproduces the reference experiment (gains
K1 = K2 = 15, beta = 10, learning rates 50, ten-neuron networks, sinusoidal
error bounds, activation time 2 s) so the baseline run is a single command.
"""

import configparser
import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import _kernel as _k
from .constraint import ConstraintSpec, ErrorBound, PositionBound, error_bound
from .control import ControllerConfig
from .errors import ConfigError, ConstraintViolation
from .learning import ActorConfig, CriticConfig
from .plant import DisturbanceSpec, ManipulatorParams, dynamic_coefficients
from .trajectory import JointTrajectory, TrajectorySpec, desired_trajectory


@dataclass(frozen=True)
class RbfParams:
    """Hyperparameters shared by the actor and critic networks."""

    neurons: int = 10
    center_min: float = -5.0
    center_max: float = 5.0
    width: float = 1.0

    def __post_init__(self):
        if self.neurons < 1:
            raise ValueError("need at least one neuron")
        if self.center_min >= self.center_max:
            raise ValueError("center range must be nonempty")
        if self.width <= 0.0:
            raise ValueError("width must be positive")


@dataclass(frozen=True)
class VerifySettings:
    """Tolerances and sizes for the property-check suite."""

    skew_tol: float = 1e-9
    grid_points: int = 10000
    rbf_grad_tol: float = 1e-5
    seed: int = 0

    def __post_init__(self):
        if self.skew_tol <= 0.0 or self.rbf_grad_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.grid_points < 10:
            raise ValueError("grid_points too small")


@dataclass(frozen=True)
class SimConfig:
    plant: ManipulatorParams
    trajectory: TrajectorySpec
    constraint: ConstraintSpec
    controller: ControllerConfig
    critic: CriticConfig
    actor: ActorConfig
    rbf: RbfParams
    disturbance: DisturbanceSpec
    dt: float = 1e-3
    t_end: float = 20.0
    substeps: int = 50
    q0: tuple = (0.0, 0.0)
    qdot0: tuple = (0.0, 0.0)
    signal_ceiling: float = 100.0
    verify: VerifySettings = VerifySettings()

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    def validate(self):
        """Cross-module invariants; sub-config invariants hold by construction."""
        if self.dt <= 0.0:
            raise ConfigError("sim.dt must be positive")
        if self.t_end <= self.dt:
            raise ConfigError("sim.t_end must exceed sim.dt")
        if self.substeps < 1:
            raise ConfigError("sim.substeps must be at least 1")
        if self.signal_ceiling <= 0.0:
            raise ConfigError("sim.signal_ceiling must be positive")
        if not all(np.isfinite(v) for v in (*self.q0, *self.qdot0)):
            raise ConfigError("initial state must be finite")
        if self.controller.beta != self.constraint.beta:
            raise ConfigError("barrier sharpness mismatch between controller and constraint")
        # adaptation stability precondition, with ||S_c||^2 <= neuron count
        bound = 2.0 * self.actor.sigma_a * self.actor.k_a**2 * self.rbf.neurons
        if not self.critic.eta_c > bound:
            raise ConfigError(
                "critic damping too small for the actor coupling: need "
                f"eta_c > 2 sigma_a k_a^2 neurons = {bound:.6g}, got {self.critic.eta_c:.6g}"
            )
        self._validate_bounds_on_grid()

    def _validate_bounds_on_grid(self, points: int = 2001):
        ts = np.linspace(0.0, self.t_end, points)
        try:
            for t in ts:
                kc, _ = error_bound(self.constraint, float(t))
                if np.any(kc <= 0.0):
                    raise ConfigError(f"error bound not positive at t = {t:.3f} s")
        except ConstraintViolation as exc:
            raise ConfigError(f"error bound not positive: {exc}") from exc
        for i, joint in enumerate(self.constraint.joints):
            if joint.family != "derived":
                continue
            for t in ts:
                qd, _, _ = desired_trajectory(self.trajectory, float(t))
                ub = joint.upper.value(float(t))
                lb = joint.lower.value(float(t))
                if not lb < ub:
                    raise ConfigError(
                        f"joint {i + 1} position bounds cross at t = {t:.3f} s")
                if not lb < qd[i] < ub:
                    raise ConfigError(
                        f"desired trajectory leaves joint {i + 1} position bounds "
                        f"at t = {t:.3f} s")


# --- file schema ------------------------------------------------------------

_BOUND_KEYS = ("family", "a", "b", "omega",
               "upper_family", "upper_a", "upper_b", "upper_omega",
               "lower_family", "lower_a", "lower_b", "lower_omega")

SCHEMA = {
    "plant": {k: float for k in ("m1", "m2", "l1", "l2", "lc1", "lc2", "i1", "i2", "g")},
    "trajectory": {
        "j1_kind": str, "j1_amplitude": float, "j1_omega": float, "j1_offset": float,
        "j2_kind": str, "j2_amplitude": float, "j2_omega": float, "j2_offset": float,
    },
    "constraint": {
        "mode": str, "tc": float, "beta": float,
        **{f"j{j}_{k}": (str if k.endswith("family") else float)
           for j in (1, 2) for k in _BOUND_KEYS},
    },
    "controller": {"k1": float, "k2": float, "a": float},
    "rbf": {"neurons": int, "center_min": float, "center_max": float, "width": float},
    "critic": {"sigma_c": float, "eta_c": float, "psi": float,
               "q_cost": float, "r_cost": float},
    "actor": {"sigma_a": float, "eta_a": float, "k_a": float},
    "disturbance": {"mode": str, "amp1": float, "amp2": float, "freq": float},
    "sim": {"dt": float, "t_end": float, "substeps": int,
            "q1_0": float, "q2_0": float,
            "qdot1_0": float, "qdot2_0": float, "signal_ceiling": float},
    "verify": {"skew_tol": float, "grid_points": int, "rbf_grad_tol": float,
               "seed": int},
}

# keys that may be absent (bound-derivation inputs, used only by derived mode)
_OPTIONAL = {("constraint", f"j{j}_{side}_{k}")
             for j in (1, 2) for side in ("upper", "lower")
             for k in ("family", "a", "b", "omega")}


def default_config_path() -> str:
    return str(resources.files(__package__).joinpath("configs/default.cfg"))


def _parse_file(path: str) -> dict:
    if not os.path.isfile(path):
        raise ConfigError(f"cannot read config file: {path}")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh, source=path)
    except (configparser.Error, OSError) as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    raw = {s: dict(parser.items(s)) for s in parser.sections()}
    _check_schema(raw)
    return raw


def _check_schema(raw: dict):
    for section, items in raw.items():
        if section not in SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key in items:
            if key not in SCHEMA[section]:
                raise ConfigError(f"unknown config key {section}.{key}")
    for section, keys in SCHEMA.items():
        if section not in raw:
            raise ConfigError(f"missing config section [{section}]")
        for key in keys:
            if key not in raw[section] and (section, key) not in _OPTIONAL:
                raise ConfigError(f"missing config key {section}.{key}")


def apply_overrides(raw: dict, overrides) -> dict:
    """Apply `section.key=value` strings; keys must exist in the schema."""
    out = {s: dict(items) for s, items in raw.items()}
    for spec in overrides:
        if "=" not in spec:
            raise ConfigError(f"override must look like section.key=value: {spec!r}")
        name, value = spec.split("=", 1)
        name = name.strip().lower()
        if "." not in name:
            raise ConfigError(f"override must name section.key: {spec!r}")
        section, key = name.split(".", 1)
        if section not in SCHEMA or key not in SCHEMA[section]:
            raise ConfigError(f"override names unknown config key: {name}")
        out.setdefault(section, {})[key] = value.strip()
    return out


def _get(raw: dict, section: str, key: str, default=None):
    if key not in raw[section]:
        if default is not None:
            return default
        raise ConfigError(f"missing config key {section}.{key}")
    caster = SCHEMA[section][key]
    text = raw[section][key]
    try:
        if caster is int:
            return int(text)
        if caster is float:
            return float(text)
        return text.strip().lower()
    except ValueError as exc:
        raise ConfigError(f"bad value for {section}.{key}: {text!r}") from exc


def _build_bound(raw: dict, j: int) -> ErrorBound:
    family = _get(raw, "constraint", f"j{j}_family")
    if family == "derived":
        sides = {}
        for side in ("upper", "lower"):
            sides[side] = PositionBound(
                _get(raw, "constraint", f"j{j}_{side}_family"),
                _get(raw, "constraint", f"j{j}_{side}_a"),
                _get(raw, "constraint", f"j{j}_{side}_b"),
                _get(raw, "constraint", f"j{j}_{side}_omega"),
            )
        return ErrorBound("derived", upper=sides["upper"], lower=sides["lower"])
    return ErrorBound(family,
                      _get(raw, "constraint", f"j{j}_a"),
                      _get(raw, "constraint", f"j{j}_b"),
                      _get(raw, "constraint", f"j{j}_omega"))


def build_config(raw: dict) -> SimConfig:
    _check_schema(raw)
    try:
        plant = ManipulatorParams(**{k: _get(raw, "plant", k) for k in SCHEMA["plant"]})
        trajectory = TrajectorySpec(tuple(
            JointTrajectory(
                _get(raw, "trajectory", f"j{j}_kind"),
                _get(raw, "trajectory", f"j{j}_amplitude"),
                _get(raw, "trajectory", f"j{j}_omega"),
                _get(raw, "trajectory", f"j{j}_offset"),
            ) for j in (1, 2)))
        beta = _get(raw, "constraint", "beta")
        constraint = ConstraintSpec(
            joints=(_build_bound(raw, 1), _build_bound(raw, 2)),
            tc=_get(raw, "constraint", "tc"),
            beta=beta,
            mode=_get(raw, "constraint", "mode"),
            trajectory=trajectory,
        )
        controller = ControllerConfig(
            k1=_get(raw, "controller", "k1"),
            k2=_get(raw, "controller", "k2"),
            beta=beta,
            a=_get(raw, "controller", "a"),
        )
        critic = CriticConfig(**{k: _get(raw, "critic", k) for k in SCHEMA["critic"]})
        actor = ActorConfig(**{k: _get(raw, "actor", k) for k in SCHEMA["actor"]})
        rbf = RbfParams(**{k: _get(raw, "rbf", k) for k in SCHEMA["rbf"]})
        disturbance = DisturbanceSpec(
            mode=_get(raw, "disturbance", "mode"),
            amplitude=(_get(raw, "disturbance", "amp1"), _get(raw, "disturbance", "amp2")),
            frequency=_get(raw, "disturbance", "freq"),
        )
        config = SimConfig(
            plant=plant, trajectory=trajectory, constraint=constraint,
            controller=controller, critic=critic, actor=actor, rbf=rbf,
            disturbance=disturbance,
            dt=_get(raw, "sim", "dt"),
            t_end=_get(raw, "sim", "t_end"),
            substeps=_get(raw, "sim", "substeps"),
            q0=(_get(raw, "sim", "q1_0"), _get(raw, "sim", "q2_0")),
            qdot0=(_get(raw, "sim", "qdot1_0"), _get(raw, "sim", "qdot2_0")),
            signal_ceiling=_get(raw, "sim", "signal_ceiling"),
            verify=VerifySettings(**{k: _get(raw, "verify", k) for k in SCHEMA["verify"]}),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    config.validate()
    return config


def load_config(path: str | None = None, overrides=()) -> SimConfig:
    """Read, override, build, and validate a configuration."""
    raw = _parse_file(path if path is not None else default_config_path())
    if overrides:
        raw = apply_overrides(raw, overrides)
    return build_config(raw)


def to_raw(config: SimConfig) -> dict:
    """Canonical raw mapping; load(serialize(config)) round-trips exactly."""
    p, cs = config.plant, config.constraint
    raw = {
        "plant": {k: repr(getattr(p, k)) for k in SCHEMA["plant"]},
        "trajectory": {},
        "constraint": {"mode": cs.mode, "tc": repr(cs.tc), "beta": repr(cs.beta)},
        "controller": {"k1": repr(config.controller.k1),
                       "k2": repr(config.controller.k2),
                       "a": repr(config.controller.a)},
        "rbf": {"neurons": repr(config.rbf.neurons),
                "center_min": repr(config.rbf.center_min),
                "center_max": repr(config.rbf.center_max),
                "width": repr(config.rbf.width)},
        "critic": {k: repr(getattr(config.critic, k)) for k in SCHEMA["critic"]},
        "actor": {k: repr(getattr(config.actor, k)) for k in SCHEMA["actor"]},
        "disturbance": {"mode": config.disturbance.mode,
                        "amp1": repr(config.disturbance.amplitude[0]),
                        "amp2": repr(config.disturbance.amplitude[1]),
                        "freq": repr(config.disturbance.frequency)},
        "sim": {"dt": repr(config.dt), "t_end": repr(config.t_end),
                "substeps": repr(config.substeps),
                "q1_0": repr(config.q0[0]), "q2_0": repr(config.q0[1]),
                "qdot1_0": repr(config.qdot0[0]), "qdot2_0": repr(config.qdot0[1]),
                "signal_ceiling": repr(config.signal_ceiling)},
        "verify": {k: repr(getattr(config.verify, k)) for k in SCHEMA["verify"]},
    }
    for j, traj in enumerate(config.trajectory.joints, start=1):
        raw["trajectory"][f"j{j}_kind"] = traj.kind
        raw["trajectory"][f"j{j}_amplitude"] = repr(traj.amplitude)
        raw["trajectory"][f"j{j}_omega"] = repr(traj.omega)
        raw["trajectory"][f"j{j}_offset"] = repr(traj.offset)
    for j, bound in enumerate(cs.joints, start=1):
        raw["constraint"][f"j{j}_family"] = bound.family
        raw["constraint"][f"j{j}_a"] = repr(bound.a)
        raw["constraint"][f"j{j}_b"] = repr(bound.b)
        raw["constraint"][f"j{j}_omega"] = repr(bound.omega)
        if bound.family == "derived":
            for side_name, side in (("upper", bound.upper), ("lower", bound.lower)):
                raw["constraint"][f"j{j}_{side_name}_family"] = side.family
                raw["constraint"][f"j{j}_{side_name}_a"] = repr(side.a)
                raw["constraint"][f"j{j}_{side_name}_b"] = repr(side.b)
                raw["constraint"][f"j{j}_{side_name}_omega"] = repr(side.omega)
    return raw


def serialize(config: SimConfig) -> str:
    raw = to_raw(config)
    lines = []
    for section in SCHEMA:
        lines.append(f"[{section}]")
        for key, value in raw[section].items():
            lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)


def parse_text(text: str) -> SimConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    raw = {s: dict(parser.items(s)) for s in parser.sections()}
    return build_config(raw)


# --- kernel packing ---------------------------------------------------------

_TR_CODES = {"sin": _k.TR_SIN, "cos": _k.TR_COS, "const": _k.TR_CONST}
_FAM_CODES = {"const": _k.FAM_CONST, "sin": _k.FAM_SIN, "cos": _k.FAM_COS,
              "derived": _k.FAM_DERIVED}
_CMODE_CODES = {"per_joint": _k.CMODE_PER_JOINT, "scalar_min": _k.CMODE_SCALAR_MIN}
_DIST_CODES = {"zero": _k.DIST_ZERO, "sinusoidal": _k.DIST_SIN}


def pack_kernel_config(config: SimConfig):
    """Flatten a SimConfig into the kernel's (cfg, icfg) arrays."""
    cfg = np.zeros(_k.N_CF)
    icfg = np.zeros(_k.N_IC, dtype=np.int64)

    cfg[_k.CF_DT] = config.dt
    cfg[_k.CF_TC] = config.constraint.tc
    cfg[_k.CF_BETA] = config.constraint.beta
    cfg[_k.CF_K1] = config.controller.k1
    cfg[_k.CF_K2] = config.controller.k2
    cfg[_k.CF_A_YOUNG] = config.controller.a
    cfg[_k.CF_SIGMA_C] = config.critic.sigma_c
    cfg[_k.CF_ETA_C] = config.critic.eta_c
    cfg[_k.CF_PSI] = config.critic.psi
    cfg[_k.CF_Q_COST] = config.critic.q_cost
    cfg[_k.CF_R_COST] = config.critic.r_cost
    cfg[_k.CF_SIGMA_A] = config.actor.sigma_a
    cfg[_k.CF_ETA_A] = config.actor.eta_a
    cfg[_k.CF_K_A] = config.actor.k_a
    cfg[_k.CF_INV_WIDTH2] = 1.0 / config.rbf.width**2
    from .constraint import DENOM_GUARD
    cfg[_k.CF_GUARD] = DENOM_GUARD
    p1, p2, p3, ga, gb = dynamic_coefficients(config.plant)
    cfg[_k.CF_P1] = p1
    cfg[_k.CF_P2] = p2
    cfg[_k.CF_P3] = p3
    cfg[_k.CF_GA] = ga
    cfg[_k.CF_GB] = gb

    for j, traj in enumerate(config.trajectory.joints):
        base = (_k.CF_TR_AMP0, _k.CF_TR_OM0, _k.CF_TR_OFF0) if j == 0 else \
               (_k.CF_TR_AMP1, _k.CF_TR_OM1, _k.CF_TR_OFF1)
        cfg[base[0]] = traj.amplitude
        cfg[base[1]] = traj.omega
        cfg[base[2]] = traj.offset
        icfg[_k.IC_TR_KIND0 if j == 0 else _k.IC_TR_KIND1] = _TR_CODES[traj.kind]

    bound_slots = (
        ((_k.CF_B_A0, _k.CF_B_B0, _k.CF_B_OM0), _k.IC_B_FAM0,
         (_k.CF_UB_A0, _k.CF_UB_B0, _k.CF_UB_OM0), _k.IC_UB_FAM0,
         (_k.CF_LB_A0, _k.CF_LB_B0, _k.CF_LB_OM0), _k.IC_LB_FAM0),
        ((_k.CF_B_A1, _k.CF_B_B1, _k.CF_B_OM1), _k.IC_B_FAM1,
         (_k.CF_UB_A1, _k.CF_UB_B1, _k.CF_UB_OM1), _k.IC_UB_FAM1,
         (_k.CF_LB_A1, _k.CF_LB_B1, _k.CF_LB_OM1), _k.IC_LB_FAM1),
    )
    for j, bound in enumerate(config.constraint.joints):
        direct, fam_slot, up, up_fam, lo, lo_fam = bound_slots[j]
        icfg[fam_slot] = _FAM_CODES[bound.family]
        cfg[direct[0]] = bound.a
        cfg[direct[1]] = bound.b
        cfg[direct[2]] = bound.omega
        if bound.family == "derived":
            icfg[up_fam] = _FAM_CODES[bound.upper.family]
            cfg[up[0]], cfg[up[1]], cfg[up[2]] = bound.upper.a, bound.upper.b, bound.upper.omega
            icfg[lo_fam] = _FAM_CODES[bound.lower.family]
            cfg[lo[0]], cfg[lo[1]], cfg[lo[2]] = bound.lower.a, bound.lower.b, bound.lower.omega

    cfg[_k.CF_DIST_AMP0] = config.disturbance.amplitude[0]
    cfg[_k.CF_DIST_AMP1] = config.disturbance.amplitude[1]
    cfg[_k.CF_DIST_FREQ] = config.disturbance.frequency
    icfg[_k.IC_DIST_MODE] = _DIST_CODES[config.disturbance.mode]
    icfg[_k.IC_CMODE] = _CMODE_CODES[config.constraint.mode]
    icfg[_k.IC_NSTEPS] = config.n_steps
    icfg[_k.IC_NEURONS] = config.rbf.neurons
    icfg[_k.IC_SUBSTEPS] = config.substeps
    return cfg, icfg


def initial_state(config: SimConfig) -> np.ndarray:
    """Augmented state [q, q̇, actor weights, critic weights], weights zero."""
    x = np.zeros(4 + 3 * config.rbf.neurons)
    x[0:2] = config.q0
    x[2:4] = config.qdot0
    return x
