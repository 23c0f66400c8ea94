"""Constrained neuroadaptive tracking control of a two-link arm.

A zone barrier keeps the (shift-transformed) tracking error inside
time-varying bounds that activate over a prescribed window, while an
actor-critic pair adapts to the unknown arm dynamics online.  The package
bundles the plant model, the control and adaptation laws, a deterministic
fixed-step simulator with a compiled hot loop, and a CLI for runs, property
verification, and parameter sweeps.
"""

from .config import SimConfig, default_config_path, load_config, serialize
from .constraint import (ConstraintSpec, ErrorBound, PositionBound,
                         ShiftSample, barrier_term, error_bound,
                         lemma3_margin, shift, szblf_value, transformed_error)
from .control import ControllerConfig, ErrorPair, compute_errors, torque, virtual_control
from .errors import (ConfigError, ConstraintViolation, SingularDynamics,
                     ZblfsimError)
from .learning import (ActorConfig, CriticConfig, LearningState, actor_rate,
                       critic_rate, critic_value, instantaneous_cost,
                       lambda_vector, td_error)
from .plant import (DisturbanceSpec, JointState, ManipulatorParams,
                    coriolis_matrix, default_params, disturbance,
                    forward_dynamics, gravity_vector, inertia_bounds,
                    inertia_matrix)
from .rbf import RbfNetwork, diagonal_lattice
from .sim import (LOG_COLUMNS, FailureReport, RunResult, SimLog,
                  augmented_derivative, constraint_monitor, evaluate_pipeline,
                  iota_estimates,kernel_backend, lyapunov_diagnostics,
                  rk4_step, run, steady_state_band, summarize_log)
from .trajectory import JointTrajectory, TrajectorySpec, desired_trajectory

__version__ = "0.1.0"
