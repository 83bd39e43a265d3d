import numpy as np
import pytest
from scipy import integrate

from spectral import (
    DegenerateState,
    FunctionState,
    InvalidState,
    StateExpansion,
    eigenfunction,
    eigenfunction_grad,
    energy,
    eval_f,
    eval_psi,
    gauss_legendre,
    grad_x_f,
    momentum_amplitude,
    product_state,
    project_gaussian,
)
from spectral.basis import basis_transforms, mode_array


class TestBasis:
    def test_orthonormal_on_the_box(self):
        nodes, weights = gauss_legendre(200)
        chi = np.stack([eigenfunction(n, nodes) for n in range(1, 11)], axis=-1)
        gram = chi.T @ (weights[:, np.newaxis] * chi)
        assert np.max(np.abs(gram - np.eye(10))) < 1e-12

    def test_eigenfunctions_vanish_exactly_on_the_walls(self):
        for n in (1, 2, 7, 10):
            assert eigenfunction(n, [-1.0, 1.0]).tolist() == [0.0, 0.0]

    def test_gradient_matches_cosine_form(self):
        x = np.linspace(-0.9, 0.9, 7)
        expected = 1.5 * np.pi * np.cos(1.5 * np.pi * (x + 1.0))
        assert eigenfunction_grad(3, x)[..., 0] == pytest.approx(expected, abs=1e-12)

    def test_energy(self):
        assert energy(1) == pytest.approx(np.pi ** 2 / 8.0)
        assert energy([1, 2], mass=2.0) == pytest.approx(5.0 * np.pi ** 2 / 16.0)


class TestStateExpansion:
    def test_ground_state_at_the_centre(self, ground_state):
        assert eval_psi(ground_state, 0.0) == pytest.approx(1.0)

    def test_phase_evolution(self, ground_state):
        t = 8.0 / np.pi ** 2
        assert eval_psi(ground_state, 0.0, t) == pytest.approx(np.exp(-1j))

    def test_dirichlet_walls(self, packet_state):
        for t in (0.0, 0.3, 2.0):
            assert np.abs(eval_psi(packet_state, [-1.0, 1.0], t)).tolist() == [0.0, 0.0]

    def test_norm_is_conserved(self, packet_state):
        for t in (0.0, 1.0, 17.0):
            assert np.sum(np.abs(packet_state.amplitudes(t)) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_stationary(self, ground_state, two_mode_state):
        assert ground_state.is_stationary()
        assert not two_mode_state.is_stationary()

    @pytest.mark.parametrize('modes, coeffs', [
        ([], []),
        ([1, 1], [0.6, 0.8]),
        ([1, 2], [1.0, 1.0]),
        ([0], [1.0]),
        ([1, 2], [1.0]),
    ])
    def test_invalid_states(self, modes, coeffs):
        with pytest.raises(InvalidState):
            StateExpansion(modes, coeffs)

    def test_mass_must_be_positive(self):
        with pytest.raises(InvalidState):
            StateExpansion([1], [1.0], mass=0.0)


class TestTwoPointFunction:
    def test_diagonal_is_the_density(self, packet_state):
        x = np.linspace(-0.8, 0.8, 9)
        density = np.abs(eval_psi(packet_state, x, 0.4)) ** 2
        assert eval_f(packet_state, x, np.zeros_like(x), 0.4) == pytest.approx(density, abs=1e-14)

    def test_reflection_in_y_conjugates(self, packet_state, rng):
        x = rng.uniform(-0.5, 0.5, 20)
        y = rng.uniform(-0.9, 0.9, 20)
        forward = eval_f(packet_state, x, y, 0.7)
        backward = eval_f(packet_state, x, -y, 0.7)
        assert backward == pytest.approx(np.conj(forward), abs=1e-14)

    def test_zero_when_one_point_is_on_the_wall(self, packet_state):
        assert eval_f(packet_state, 0.5, 1.0, 0.2) == 0.0

    def test_gradient_on_the_diagonal(self, two_mode_state):
        x = np.linspace(-0.8, 0.8, 9)
        step = 1e-6
        density = lambda s: np.abs(eval_psi(two_mode_state, s, 0.3)) ** 2
        numeric = (density(x + step) - density(x - step)) / (2.0 * step)
        analytic = grad_x_f(two_mode_state, x, np.zeros_like(x), 0.3)[..., 0]
        assert np.max(np.abs(analytic.imag)) < 1e-14
        assert analytic.real == pytest.approx(numeric, abs=1e-8)


class TestProjection:
    def test_projected_packet_is_normalised(self, packet_state):
        assert np.linalg.norm(packet_state.coeffs) == pytest.approx(1.0, abs=1e-12)
        assert packet_state.modes[:, 0].tolist() == [1, 5, 10]

    def test_packet_coefficients(self, packet_state):
        # odd modes are even about the centre and pick up cos(p0 x); mode 10 picks up -i sin(p0 x)
        expected = [0.3431139576172179, 0.9159828725122092, -0.2079619901629430j]
        assert packet_state.coeffs == pytest.approx(expected, abs=1e-10)

    def test_doubling_the_order_changes_nothing(self):
        coarse = project_gaussian(1.0, 5.0, [1, 5, 10], order=200)
        fine = project_gaussian(1.0, 5.0, [1, 5, 10], order=400)
        assert np.max(np.abs(coarse.coeffs - fine.coeffs)) < 1e-10

    def test_odd_mode_misses_a_centred_packet(self):
        with pytest.raises(DegenerateState):
            project_gaussian(1.0, 0.0, [2])

    def test_width_must_be_positive(self):
        with pytest.raises(ValueError):
            project_gaussian(0.0, 1.0, [1])

    def test_transforms_in_closed_form(self):
        modes = mode_array([1, 4, 7])
        p = np.array([-9.3, -0.2, 0.0, 3.7, 11.0])
        nodes, weights = gauss_legendre(200)
        chi = np.stack([eigenfunction(n, nodes) for n in (1, 4, 7)], axis=-1)
        quadrature = (np.exp(-1j * p[:, np.newaxis] * nodes) * weights) @ chi
        assert basis_transforms(modes, p) == pytest.approx(quadrature, abs=1e-12)

    def test_transform_at_the_mode_momentum(self):
        # p = k is the removable point of the closed form
        ground = mode_array([1])
        assert basis_transforms(ground, 0.0)[0] == pytest.approx(4.0 / np.pi, abs=1e-15)
        assert basis_transforms(ground, 0.5 * np.pi)[0] == pytest.approx(1.0, abs=1e-15)

    def test_transforms_factorise_on_the_square(self):
        modes = mode_array([(1, 2), (3, 1)])
        p = np.array([[0.4, -1.3], [5.0, 2.5]])
        first = basis_transforms(modes[:, [0]], p[:, 0])
        second = basis_transforms(modes[:, [1]], p[:, 1])
        assert basis_transforms(modes, p) == pytest.approx(first * second, abs=1e-14)

    def test_momentum_amplitude_is_normalised(self, ground_state):
        p = np.linspace(-60.0, 60.0, 4001)
        density = np.abs(momentum_amplitude(ground_state, p)) ** 2
        assert integrate.trapezoid(density, p) == pytest.approx(1.0, abs=1e-3)


class TestOtherStates:
    def test_product_state_factorises(self, two_mode_state, real_two_mode_state, rng):
        square = product_state(two_mode_state, real_two_mode_state)
        points = rng.uniform(-1.0, 1.0, size=(10, 2))
        expected = eval_psi(two_mode_state, points[:, 0], 0.5) * eval_psi(real_two_mode_state, points[:, 1], 0.5)
        assert eval_psi(square, points, 0.5) == pytest.approx(expected, abs=1e-14)

    def test_function_state_evaluates_user_callables(self):
        state = FunctionState(
            psi_fn=lambda x, t: np.cos(0.5 * np.pi * x[..., 0]),
            grad_fn=lambda x, t: -0.5 * np.pi * np.sin(0.5 * np.pi * x)[..., :1],
            dim=1,
        )
        assert eval_f(state, 0.0, 0.0) == pytest.approx(1.0)
        assert grad_x_f(state, 0.0, 0.5)[..., 0] == pytest.approx(0.0, abs=1e-14)
