"""Plant model against independent rigid-body oracles.

The oracles below build the dynamics from scratch (center-of-mass
kinematics, energies, Christoffel symbols via finite differences of the
oracle inertia) and never call the formulas under test.
"""

import numpy as np
import pytest

from zblfsim import (DisturbanceSpec, JointState, ManipulatorParams,
                     coriolis_matrix, disturbance, forward_dynamics,
                     gravity_vector, inertia_bounds, inertia_matrix)
from zblfsim.plant import kinetic_energy, potential_energy

M1 = M2 = 1.0
L1 = L2 = 0.5
LC1 = LC2 = 0.25
I1 = I2 = 1.0 * 0.5**2 / 12.0
G = 9.81


def oracle_kinetic(q, qd):
    q1, q2 = q
    d1, d2 = qd
    v1 = LC1 * d1
    v2x = L1 * np.cos(q1) * d1 + LC2 * np.cos(q1 + q2) * (d1 + d2)
    v2y = L1 * np.sin(q1) * d1 + LC2 * np.sin(q1 + q2) * (d1 + d2)
    return (0.5 * M1 * v1**2 + 0.5 * I1 * d1**2
            + 0.5 * M2 * (v2x**2 + v2y**2) + 0.5 * I2 * (d1 + d2)**2)


def oracle_potential(q):
    q1, q2 = q
    return -M1 * G * LC1 * np.cos(q1) - M2 * G * (L1 * np.cos(q1) + LC2 * np.cos(q1 + q2))


def oracle_inertia(q):
    # polarization of the quadratic form T = q̇ᵀ M q̇ / 2 (exact, no stepping)
    e = np.eye(2)
    m = np.empty((2, 2))
    for i in range(2):
        m[i, i] = 2.0 * oracle_kinetic(q, e[i])
    m[0, 1] = m[1, 0] = (oracle_kinetic(q, e[0] + e[1])
                         - oracle_kinetic(q, e[0]) - oracle_kinetic(q, e[1]))
    return m


def oracle_coriolis(q, qd, eps=1e-6):
    dm = np.empty((2, 2, 2))
    for k in range(2):
        dq = np.zeros(2)
        dq[k] = eps
        dm[k] = (oracle_inertia(q + dq) - oracle_inertia(q - dq)) / (2.0 * eps)
    c = np.zeros((2, 2))
    for i in range(2):
        for j in range(2):
            c[i, j] = sum(
                0.5 * (dm[k][i, j] + dm[j][i, k] - dm[i][j, k]) * qd[k]
                for k in range(2))
    return c


def oracle_gravity(q, eps=1e-7):
    g = np.empty(2)
    for i in range(2):
        dq = np.zeros(2)
        dq[i] = eps
        g[i] = (oracle_potential(q + dq) - oracle_potential(q - dq)) / (2.0 * eps)
    return g


class TestInertia:
    def test_matches_energy_oracle(self, params, rng):
        for _ in range(25):
            q = rng.uniform(-np.pi, np.pi, 2)
            assert np.allclose(inertia_matrix(params, q), oracle_inertia(q),
                               rtol=0, atol=1e-12)

    def test_frozen_entries_at_right_angle(self, params):
        m = inertia_matrix(params, [0.3, np.pi / 2])
        expected = np.array([[0.4166666666666666, 0.08333333333333337],
                             [0.08333333333333337, 0.08333333333333333]])
        assert np.allclose(m, expected, rtol=0, atol=1e-15)

    def test_symmetric_and_positive_definite(self, params, rng):
        for _ in range(200):
            q = rng.uniform(-np.pi, np.pi, 2)
            m = inertia_matrix(params, q)
            assert np.array_equal(m, m.T)
            assert np.linalg.eigvalsh(m)[0] > 0.0

    def test_kinetic_energy_consistency(self, params, rng):
        q = rng.uniform(-np.pi, np.pi, 2)
        qd = rng.uniform(-2, 2, 2)
        assert kinetic_energy(params, q, qd) == pytest.approx(
            oracle_kinetic(q, qd), abs=1e-12)

    def test_uniform_bounds_hold(self, params, rng):
        mu1, mu2 = inertia_bounds(params)
        assert mu1 > 0.0
        for _ in range(500):
            q = rng.uniform(-np.pi, np.pi, 2)
            eig = np.linalg.eigvalsh(inertia_matrix(params, q))
            assert eig[0] >= mu1 - 1e-12
            assert eig[1] <= mu2 + 1e-12


class TestCoriolis:
    def test_zero_velocity(self, params, rng):
        q = rng.uniform(-np.pi, np.pi, 2)
        assert np.array_equal(coriolis_matrix(params, q, np.zeros(2)), np.zeros((2, 2)))

    def test_matches_christoffel_oracle(self, params, rng):
        for _ in range(25):
            q = rng.uniform(-np.pi, np.pi, 2)
            qd = rng.uniform(-3, 3, 2)
            assert np.allclose(coriolis_matrix(params, q, qd),
                               oracle_coriolis(q, qd), rtol=0, atol=1e-8)

    def test_frozen_entries(self, params):
        c = coriolis_matrix(params, [0.2, np.pi / 4], [1.0, 1.0])
        h = 0.125 * np.sin(np.pi / 4)
        assert np.allclose(
            c, [[-h, -2.0 * h], [h, 0.0]], rtol=0, atol=1e-15)
        assert c[0, 0] == pytest.approx(-0.08838834764831845, abs=1e-15)

    def test_skew_symmetry_identity(self, params, rng):
        eps = 1e-6
        for _ in range(1000):
            q = rng.uniform(-np.pi, np.pi, 2)
            qd = rng.uniform(-3, 3, 2)
            z = rng.uniform(-1, 1, 2)
            mdot = (inertia_matrix(params, q + eps * qd)
                    - inertia_matrix(params, q - eps * qd)) / (2.0 * eps)
            c = coriolis_matrix(params, q, qd)
            assert abs(z @ (mdot - 2.0 * c) @ z) <= 1e-9


class TestGravity:
    def test_zero_gravity(self, rng):
        params = ManipulatorParams(g=0.0)
        q = rng.uniform(-np.pi, np.pi, 2)
        assert np.array_equal(gravity_vector(params, q), np.zeros(2))

    def test_matches_potential_gradient(self, params, rng):
        for _ in range(50):
            q = rng.uniform(-np.pi, np.pi, 2)
            g = gravity_vector(params, q)
            fd = oracle_gravity(q)
            assert np.allclose(g, fd, rtol=1e-6, atol=1e-6)

    def test_horizontal_configuration_is_maximal(self, params, rng):
        g_flat = gravity_vector(params, [np.pi / 2, 0.0])
        assert g_flat[0] == pytest.approx(9.81, abs=1e-12)
        assert g_flat[1] == pytest.approx(2.4525, abs=1e-12)
        for _ in range(200):
            q = rng.uniform(-np.pi, np.pi, 2)
            assert abs(gravity_vector(params, q)[0]) <= g_flat[0] + 1e-12

    def test_hanging_equilibrium(self, params):
        assert np.allclose(gravity_vector(params, [0.0, 0.0]), 0.0, atol=1e-15)


class TestForwardDynamics:
    def test_exact_cancellation(self, params, rng):
        q = rng.uniform(-np.pi, np.pi, 2)
        qd = rng.uniform(-3, 3, 2)
        tau = coriolis_matrix(params, q, qd) @ qd + gravity_vector(params, q)
        acc = forward_dynamics(params, JointState(q, qd), tau, np.zeros(2))
        assert np.allclose(acc, 0.0, atol=1e-12)

    def test_residual_identity(self, params, rng):
        for _ in range(100):
            q = rng.uniform(-np.pi, np.pi, 2)
            qd = rng.uniform(-3, 3, 2)
            tau = rng.uniform(-20, 20, 2)
            d = rng.uniform(-1, 1, 2)
            acc = forward_dynamics(params, JointState(q, qd), tau, d)
            res = (inertia_matrix(params, q) @ acc
                   + coriolis_matrix(params, q, qd) @ qd
                   + gravity_vector(params, q) - tau - d)
            assert np.linalg.norm(res) <= 1e-10

    def test_free_fall_from_rest(self, params):
        acc = forward_dynamics(params, JointState(np.array([0.6, 1.8]), np.zeros(2)),
                               np.zeros(2), np.zeros(2))
        # correctness vs the independent oracle (finite-difference gravity
        # limits its accuracy to ~1e-8 relative here)
        oracle = np.linalg.solve(oracle_inertia(np.array([0.6, 1.8])),
                                 -oracle_gravity(np.array([0.6, 1.8])))
        assert acc == pytest.approx(oracle, abs=1e-5)
        # regression pin of the exact analytic value
        assert acc == pytest.approx([-14.580125981772824, -10.267708167769383],
                                    abs=1e-9)


class TestDisturbance:
    def test_zero_mode(self):
        spec = DisturbanceSpec()
        assert np.array_equal(disturbance(spec, 3.7), np.zeros(2))

    def test_sine_phase_zero(self):
        spec = DisturbanceSpec("sinusoidal", (0.1, 0.1), 2.0)
        assert np.array_equal(disturbance(spec, 0.0), np.zeros(2))

    def test_bounded_by_amplitude(self, rng):
        spec = DisturbanceSpec("sinusoidal", (0.3, 0.7), 5.0)
        for t in rng.uniform(0, 100, 200):
            d = disturbance(spec, float(t))
            assert abs(d[0]) <= 0.3 and abs(d[1]) <= 0.7

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            DisturbanceSpec(mode="square")
        with pytest.raises(ValueError):
            DisturbanceSpec("sinusoidal", (-0.1, 0.0), 1.0)


class TestParamsValidation:
    @pytest.mark.parametrize("field,value", [
        ("m1", -1.0), ("m2", 0.0), ("l1", -0.5), ("i2", 0.0),
    ])
    def test_positivity(self, field, value):
        with pytest.raises(ValueError):
            ManipulatorParams(**{field: value})

    def test_com_on_link(self):
        with pytest.raises(ValueError):
            ManipulatorParams(lc1=0.6)
