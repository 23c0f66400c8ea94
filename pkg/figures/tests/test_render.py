import numpy as np
import pytest

from simfigures import (FIGURE_IDS, EmptyLogError, FigureSpec,
                        MissingColumnError, load_log, render, render_all)
from simfigures.cli import main

# the simulator's CSV schema (the interface contract this package consumes)
LOG_COLUMNS = (
    "t", "q1", "q2", "qdot1", "qdot2", "qd1", "qd2", "qd_dot1", "qd_dot2",
    "z1_1", "z1_2", "z2_1", "z2_2", "z1g_1", "z1g_2", "gamma", "kc1", "kc2",
    "alpha1", "alpha2", "tau1", "tau2", "cost", "td_error", "value",
    "wa_norm", "wc_norm", "V1", "Vr", "Vc", "Va",
)


def synthetic_log():
    """Schema-conforming run shaped like the baseline experiment: initial
    errors outside the bounds, inside them well before t = 2 s."""
    t = np.linspace(0.0, 5.0, 251)
    tc = 2.0
    qd = np.c_[np.sin(2 * t), np.cos(t)]
    qd_dot = np.c_[2 * np.cos(2 * t), -np.sin(t)]
    kc = np.c_[0.5 + 0.1 * np.sin(0.5 * t), 0.45 + 0.1 * np.cos(0.5 * t)]
    z1 = np.c_[0.6 * np.exp(-3 * t), 0.8 * np.exp(-3 * t)]
    gamma = np.where(t < tc, 1 - ((tc - t) / tc) ** 3, 1.0)
    z1g = gamma[:, None] * z1
    q = qd + z1
    qdot = qd_dot + np.c_[-1.8 * np.exp(-3 * t), -2.4 * np.exp(-3 * t)]
    z2 = qdot - qd_dot
    tau = 5 * np.c_[np.sin(t), np.cos(t)] * np.exp(-0.2 * t)[:, None]
    wa = 0.02 * (1 - np.exp(-t))
    wc = 8.0 * (1 - np.exp(-t))
    cost = (z1**2).sum(axis=1) + (z2**2).sum(axis=1)
    zeros = np.zeros_like(t)
    cols = {
        "t": t, "q1": q[:, 0], "q2": q[:, 1],
        "qdot1": qdot[:, 0], "qdot2": qdot[:, 1],
        "qd1": qd[:, 0], "qd2": qd[:, 1],
        "qd_dot1": qd_dot[:, 0], "qd_dot2": qd_dot[:, 1],
        "z1_1": z1[:, 0], "z1_2": z1[:, 1],
        "z2_1": z2[:, 0], "z2_2": z2[:, 1],
        "z1g_1": z1g[:, 0], "z1g_2": z1g[:, 1],
        "gamma": gamma, "kc1": kc[:, 0], "kc2": kc[:, 1],
        "alpha1": qd_dot[:, 0], "alpha2": qd_dot[:, 1],
        "tau1": tau[:, 0], "tau2": tau[:, 1],
        "cost": cost, "td_error": zeros, "value": wc * 0.1,
        "wa_norm": wa, "wc_norm": wc,
        "V1": cost * 0.01, "Vr": cost * 0.02, "Vc": wc**2 / 100.0,
        "Va": 0.5 * wa**2,
    }
    return np.column_stack([cols[name] for name in LOG_COLUMNS])


@pytest.fixture
def csv_path(tmp_path):
    path = tmp_path / "log.csv"
    np.savetxt(path, synthetic_log(), delimiter=",", fmt="%.17g",
               header=",".join(LOG_COLUMNS), comments="")
    return path


class TestRenderAll:
    def test_five_svg_files(self, csv_path, tmp_path):
        written = render_all(csv_path, tmp_path / "figs")
        assert [p.name for p in written] == [f"{f}.svg" for f in FIGURE_IDS]
        for p in written:
            content = p.read_bytes()
            assert len(content) > 1000
            assert content.startswith(b"<?xml")
            assert b"</svg>" in content

    def test_deterministic_output(self, csv_path, tmp_path):
        a = render_all(csv_path, tmp_path / "a")
        b = render_all(csv_path, tmp_path / "b")
        for pa, pb in zip(a, b):
            assert pa.read_bytes() == pb.read_bytes()

    def test_subset_filter(self, csv_path, tmp_path):
        written = render_all(csv_path, tmp_path / "figs", only=("errors",))
        assert [p.name for p in written] == ["errors.svg"]

    def test_read_only_over_csv(self, csv_path, tmp_path):
        before = csv_path.read_bytes()
        render_all(csv_path, tmp_path / "figs")
        assert csv_path.read_bytes() == before


class TestSchemaChecks:
    def test_missing_column_named(self, csv_path, tmp_path):
        data = synthetic_log()
        keep = [i for i, name in enumerate(LOG_COLUMNS) if name != "kc1"]
        path = tmp_path / "partial.csv"
        np.savetxt(path, data[:, keep], delimiter=",", fmt="%.17g",
                   header=",".join(LOG_COLUMNS[i] for i in keep), comments="")
        with pytest.raises(MissingColumnError, match="kc1"):
            render(FigureSpec("errors", path, tmp_path / "e.svg"))
        # figures that do not need the column still render
        render(FigureSpec("weights", path, tmp_path / "w.svg"))

    def test_header_only_csv(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(LOG_COLUMNS) + "\n")
        with pytest.raises(EmptyLogError):
            load_log(path)

    def test_unknown_figure_id(self, csv_path, tmp_path):
        with pytest.raises(ValueError, match="unknown figure id"):
            FigureSpec("sankey", csv_path, tmp_path / "x.svg")


class TestDataShape:
    def test_errors_enter_bounds_by_activation(self, csv_path):
        """The story the errors figure must show: initial errors outside the
        bounds, strictly inside for t >= 2 s."""
        cols = load_log(csv_path)
        for i in (1, 2):
            z1 = np.abs(cols[f"z1_{i}"])
            kc = cols[f"kc{i}"]
            assert z1[0] > kc[0]
            after = cols["t"] >= 2.0
            assert np.all(z1[after] < kc[after])

    def test_weight_norms_nonnegative(self, csv_path):
        cols = load_log(csv_path)
        assert np.all(cols["wa_norm"] >= 0.0)
        assert np.all(cols["wc_norm"] >= 0.0)


class TestCli:
    def test_cli_renders(self, csv_path, tmp_path, capsys):
        assert main([str(csv_path), "--out", str(tmp_path / "figs")]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 5

    def test_cli_subset(self, csv_path, tmp_path):
        assert main([str(csv_path), "--out", str(tmp_path / "figs"),
                     "--figures", "positions,torques"]) == 0
        names = sorted(p.name for p in (tmp_path / "figs").iterdir())
        assert names == ["positions.svg", "torques.svg"]

    def test_cli_missing_file(self, tmp_path):
        assert main([str(tmp_path / "nope.csv")]) == 2

    def test_cli_bad_figure_id(self, csv_path, tmp_path):
        assert main([str(csv_path), "--out", str(tmp_path),
                     "--figures", "sankey"]) == 2

    def test_cli_empty_log(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(LOG_COLUMNS) + "\n")
        assert main([str(path), "--out", str(tmp_path / "figs")]) == 2
