"""Compiled-extension kernel vs interpreted fallback.

Both backends come from the same pure-mode source and must produce
bit-identical trajectories (the extension is built with FP contraction
disabled).
"""

import numpy as np
import pytest

from zblfsim import load_config, run
from zblfsim.sim import kernel_backend, resolve_kernel


@pytest.fixture
def parity_config():
    return load_config(overrides=[
        "sim.t_end=0.15", "sim.q1_0=0.0", "sim.q2_0=1.0",
        "sim.qdot1_0=2.0", "sim.qdot2_0=0.0",
    ])


def test_backend_reported():
    assert kernel_backend() in ("compiled", "python")


def test_python_kernel_always_loadable():
    kern = resolve_kernel("python")
    assert kern.KERNEL_COMPILED is False


def test_backends_bit_identical(parity_config):
    res_py = run(parity_config, backend="python")
    res_auto = run(parity_config, backend="auto")
    assert res_py.status == res_auto.status == "ok"
    assert np.array_equal(res_py.log.data, res_auto.log.data)
    assert res_py.sc_norm2_min == res_auto.sc_norm2_min
    assert res_py.sc_norm2_max == res_auto.sc_norm2_max
    assert np.array_equal(res_py.final_weights.wa, res_auto.final_weights.wa)
    assert np.array_equal(res_py.final_weights.wc, res_auto.final_weights.wc)


@pytest.mark.skipif(kernel_backend() != "compiled",
                    reason="extension not built")
def test_compiled_backend_selected_by_default(parity_config):
    res = run(parity_config)
    assert res.backend == "compiled"


def test_unknown_backend_rejected(parity_config):
    from zblfsim.errors import ZblfsimError
    with pytest.raises(ZblfsimError):
        run(parity_config, backend="gpu")
