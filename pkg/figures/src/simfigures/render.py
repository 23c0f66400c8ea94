"""Render result figures from a simulation CSV log.

The log schema (column names) is the interface contract with the simulator;
each figure declares the columns it needs and the schema check runs before
any drawing.  Output is deterministic SVG: a fixed hash salt and no
timestamp metadata, so identical inputs give identical bytes.
"""

from dataclasses import dataclass
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

matplotlib.rcParams["svg.hashsalt"] = "simfigures"

FIGURE_IDS = ("positions", "velocities", "errors", "weights", "torques")

REQUIRED_COLUMNS = {
    "positions": ("t", "q1", "q2", "qd1", "qd2", "kc1", "kc2"),
    "velocities": ("t", "qdot1", "qdot2", "qd_dot1", "qd_dot2"),
    "errors": ("t", "z1_1", "z1_2", "z1g_1", "z1g_2", "kc1", "kc2"),
    "weights": ("t", "wa_norm", "wc_norm"),
    "torques": ("t", "tau1", "tau2"),
}


class MissingColumnError(ValueError):
    def __init__(self, column: str, figure: str):
        self.column = column
        super().__init__(f"figure {figure!r} needs CSV column {column!r}, not found")


class EmptyLogError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    figure: str
    csv_path: Path
    out_path: Path

    def __post_init__(self):
        if self.figure not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.figure!r}; "
                             f"choose from {', '.join(FIGURE_IDS)}")


def load_log(csv_path) -> dict:
    """Read the CSV into a column-name -> array mapping."""
    csv_path = Path(csv_path)
    with open(csv_path, encoding="utf-8") as fh:
        header = fh.readline().strip()
    if not header:
        raise EmptyLogError(f"{csv_path}: no header row")
    names = header.split(",")
    data = np.loadtxt(csv_path, delimiter=",", skiprows=1, ndmin=2)
    if data.size == 0:
        raise EmptyLogError(f"{csv_path}: header only, nothing to plot")
    if data.shape[1] != len(names):
        raise ValueError(f"{csv_path}: {data.shape[1]} data columns vs "
                         f"{len(names)} header names")
    return {name: data[:, i] for i, name in enumerate(names)}


def _check_schema(columns: dict, figure: str):
    for name in REQUIRED_COLUMNS[figure]:
        if name not in columns:
            raise MissingColumnError(name, figure)


def _two_joint_axes(title):
    fig, axes = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
    fig.suptitle(title)
    axes[1].set_xlabel("time (s)")
    return fig, axes


def _draw_positions(cols):
    fig, axes = _two_joint_axes("Joint positions and constraint corridor")
    for i, ax in enumerate(axes, start=1):
        qd = cols[f"qd{i}"]
        kc = cols[f"kc{i}"]
        ax.plot(cols["t"], cols[f"q{i}"], label=f"q{i}")
        ax.plot(cols["t"], qd, "--", label=f"q{i} desired")
        ax.plot(cols["t"], qd + kc, "r--", linewidth=0.8, label="bounds")
        ax.plot(cols["t"], qd - kc, "r--", linewidth=0.8)
        ax.set_ylabel(f"joint {i} (rad)")
        ax.legend(loc="upper right", fontsize=8)
    return fig


def _draw_velocities(cols):
    fig, axes = _two_joint_axes("Joint velocities")
    for i, ax in enumerate(axes, start=1):
        ax.plot(cols["t"], cols[f"qdot{i}"], label=f"qdot{i}")
        ax.plot(cols["t"], cols[f"qd_dot{i}"], "--", label=f"qdot{i} desired")
        ax.set_ylabel(f"joint {i} (rad/s)")
        ax.legend(loc="upper right", fontsize=8)
    return fig


def _draw_errors(cols):
    fig, axes = _two_joint_axes("Tracking errors and time-varying bounds")
    for i, ax in enumerate(axes, start=1):
        kc = cols[f"kc{i}"]
        ax.plot(cols["t"], cols[f"z1_{i}"], label=f"error {i}")
        ax.plot(cols["t"], cols[f"z1g_{i}"], ":", label=f"shifted error {i}")
        ax.plot(cols["t"], kc, "r--", linewidth=0.8, label="bounds")
        ax.plot(cols["t"], -kc, "r--", linewidth=0.8)
        ax.set_ylabel(f"joint {i} (rad)")
        ax.legend(loc="upper right", fontsize=8)
    return fig


def _draw_weights(cols):
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.plot(cols["t"], cols["wa_norm"], label="actor weight norm")
    ax.plot(cols["t"], cols["wc_norm"], label="critic weight norm")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("norm")
    ax.set_title("Network weight norms")
    ax.legend(loc="upper right", fontsize=8)
    return fig


def _draw_torques(cols):
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.plot(cols["t"], cols["tau1"], label="joint 1")
    ax.plot(cols["t"], cols["tau2"], label="joint 2")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("torque (N m)")
    ax.set_title("Control torques")
    ax.legend(loc="upper right", fontsize=8)
    return fig


_DRAWERS = {
    "positions": _draw_positions,
    "velocities": _draw_velocities,
    "errors": _draw_errors,
    "weights": _draw_weights,
    "torques": _draw_torques,
}


def render(spec: FigureSpec) -> Path:
    """Render one figure; read-only over the CSV."""
    columns = load_log(spec.csv_path)
    _check_schema(columns, spec.figure)
    fig = _DRAWERS[spec.figure](columns)
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)
    return out


def render_all(csv_path, out_dir, only=None) -> list:
    ids = FIGURE_IDS if only is None else tuple(only)
    out_dir = Path(out_dir)
    written = []
    for figure in ids:
        spec = FigureSpec(figure, Path(csv_path), out_dir / f"{figure}.svg")
        written.append(render(spec))
    return written
