import numpy as np
import pytest

from zblfsim import RbfNetwork, diagonal_lattice


@pytest.fixture
def net():
    return RbfNetwork.lattice(10, 4, 1, -5.0, 5.0, 1.0)


class TestBasis:
    def test_unit_activation_at_center(self, net):
        for t in (0, 4, 9):
            s = net.basis(net.centers[t])
            assert s[t] == 1.0

    def test_value_at_one_width(self):
        net = RbfNetwork(np.zeros((1, 3)), width=2.0, weights=np.zeros((1, 1)))
        z = np.array([2.0, 0.0, 0.0])  # distance equals the width
        assert net.basis(z)[0] == pytest.approx(0.36787944117144233, rel=1e-15)

    def test_decay_far_away(self, net):
        # distances chosen so the Gaussians are tiny but not yet IEEE-underflowed
        s = net.basis(np.full(4, 8.0))
        assert np.all(s > 0.0) and np.all(s < 1e-15)

    def test_activation_range_and_norm_bound(self, net, rng):
        for _ in range(200):
            z = rng.uniform(-20, 20, 4)
            s = net.basis(z)
            # mathematically (0, 1]; far activations may underflow to +0
            assert np.all(s >= 0.0) and np.all(s <= 1.0)
            assert float(s @ s) <= net.centers.shape[0]


class TestBasisJacobian:
    def test_zero_row_at_center(self, net):
        jac = net.basis_jacobian(net.centers[3])
        assert np.array_equal(jac[3], np.zeros(4))

    def test_finite_difference_oracle(self, net, rng):
        eps = 1e-6
        worst = 0.0
        for _ in range(100):
            z = rng.uniform(-6, 6, 4)
            jac = net.basis_jacobian(z)
            for i in range(4):
                dz = np.zeros(4)
                dz[i] = eps
                fd = (net.basis(z + dz) - net.basis(z - dz)) / (2.0 * eps)
                scale = np.maximum(np.abs(fd), 1e-3)
                worst = max(worst, float(np.max(np.abs(jac[:, i] - fd) / scale)))
        assert worst <= 1e-5

    def test_width_scaling(self):
        center = np.zeros((1, 2))
        narrow = RbfNetwork(center, width=1.0, weights=np.zeros((1, 1)))
        wide = RbfNetwork(center, width=np.sqrt(2.0), weights=np.zeros((1, 1)))
        z = np.array([0.3, -0.2])
        ratio = narrow.basis_jacobian(z) / wide.basis_jacobian(z)
        # doubling width^2 halves the prefactor and changes the exponent
        d2 = float(z @ z)
        expected = 2.0 * np.exp(-d2) / np.exp(-d2 / 2.0)
        assert np.allclose(ratio, expected, rtol=1e-12)


class TestOutput:
    def test_zero_weights(self, net, rng):
        assert np.array_equal(net.output(rng.uniform(-3, 3, 4)), np.zeros(1))

    def test_single_neuron_at_center(self):
        net = RbfNetwork(np.zeros((1, 2)), 1.0, np.array([[1.5, -2.0]]))
        assert np.allclose(net.output(np.zeros(2)), [1.5, -2.0], atol=1e-15)

    def test_matches_manual_dot_products(self, rng):
        net = RbfNetwork(rng.uniform(-1, 1, (5, 3)), 0.8, rng.uniform(-1, 1, (5, 2)))
        z = rng.uniform(-1, 1, 3)
        manual = np.zeros(2)
        for t in range(5):
            diff = z - net.centers[t]
            s = np.exp(-float(diff @ diff) / 0.8**2)
            manual += net.weights[t] * s
        assert np.allclose(net.output(z), manual, rtol=1e-12)

    def test_linear_in_weights(self, rng):
        centers = rng.uniform(-2, 2, (6, 4))
        w1 = rng.uniform(-1, 1, (6, 2))
        w2 = rng.uniform(-1, 1, (6, 2))
        z = rng.uniform(-2, 2, 4)
        a = RbfNetwork(centers, 1.0, w1).output(z)
        b = RbfNetwork(centers, 1.0, w2).output(z)
        ab = RbfNetwork(centers, 1.0, w1 + w2).output(z)
        assert np.allclose(ab, a + b, atol=1e-12)


class TestLattice:
    def test_diagonal_placement(self):
        centers = diagonal_lattice(10, 8, -5.0, 5.0)
        assert centers.shape == (10, 8)
        values = np.linspace(-5.0, 5.0, 10)
        for j in range(10):
            assert np.array_equal(centers[j], np.full(8, values[j]))

    def test_validation(self):
        with pytest.raises(ValueError):
            RbfNetwork(np.zeros((3, 2)), width=0.0)
        with pytest.raises(ValueError):
            RbfNetwork(np.zeros((3, 2)), width=1.0, weights=np.zeros((4, 1)))
        with pytest.raises(ValueError):
            RbfNetwork(np.zeros(3), width=1.0)
