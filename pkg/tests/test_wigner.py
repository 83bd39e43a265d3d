import warnings

import numpy as np
import pytest

from geometry import BilliardShape
from spectral import FunctionState, StateExpansion
from wigner import (
    OutOfDomain,
    PhaseSpaceGrid,
    QuadratureNotConverged,
    ScalarField,
    WindowTooSmall,
    convolve_p,
    deposit_comb,
    free_wigner,
    g_box,
    g_field,
    lambda_nm,
    marginals,
    momentum_density,
    position_density,
    total_probability,
    wigner_box_analytic,
    wigner_box_dt,
    wigner_box_field,
    wigner_box_grad_x,
    wigner_convolved,
    wigner_direct,
    wigner_field,
)
from wigner.box import axis_kernel

P = np.linspace(-4.0 * np.pi, 4.0 * np.pi, 41)


def cosine_ground_state():
    return FunctionState(
        psi_fn=lambda x, t: np.cos(0.5 * np.pi * x[..., 0]) * np.exp(-1j * np.pi ** 2 / 8.0 * t),
        grad_fn=lambda x, t: (-0.5 * np.pi * np.sin(0.5 * np.pi * x) * np.exp(-1j * np.pi ** 2 / 8.0 * t)),
        dim=1,
    )


class TestKernel:
    def test_g_at_the_centre(self):
        assert g_box(0.0, 0.0) == pytest.approx(2.0 / np.pi)
        assert g_box(0.5, 1.3) == pytest.approx(np.sin(1.3) / (np.pi * 1.3))

    def test_g_vanishes_on_and_beyond_the_walls(self):
        assert g_box([-1.0, 1.0, 1.2], 0.7).tolist() == [0.0, 0.0, 0.0]

    def test_comb_of_the_ground_state(self):
        comb = lambda_nm(1, 1)
        assert len(comb) == 4
        assert sorted(comb.shifts) == pytest.approx([-np.pi / 2.0, 0.0, 0.0, np.pi / 2.0])
        assert [term.amplitude for term in comb] == [0.25, 0.25, -0.25, -0.25]

    def test_comb_convolution_is_the_single_mode_wigner_function(self):
        state = StateExpansion([3], [1.0])
        for x in (-0.6, 0.1, 0.45):
            expected = wigner_box_analytic(state, x, P)
            assert lambda_nm(3, 3).convolve(g_box, x, P).real == pytest.approx(expected, abs=1e-12)

    def test_vectorised_kernel_is_built_from_the_combs(self):
        modes = np.array([1, 2, 5])
        for derivative in (False, True):
            kernel = axis_kernel(modes, modes, 0.3, P, derivative=derivative)
            assert kernel.shape == P.shape + (3, 3)
            for i, n in enumerate(modes):
                for j, m in enumerate(modes):
                    expected = lambda_nm(n, m).convolve(g_box, 0.3, P, derivative=derivative)
                    assert kernel[:, i, j] == pytest.approx(expected, abs=1e-14)

    def test_modes_start_at_one(self):
        with pytest.raises(ValueError):
            lambda_nm(0, 2)


class TestAnalytic:
    @pytest.mark.parametrize('t', [0.0, 0.25, 1.0])
    def test_matches_the_quadrature_oracle(self, interval, packet_state, t):
        for x in np.linspace(-1.0, 1.0, 11):
            analytic = wigner_box_analytic(packet_state, x, P, t)
            direct = wigner_direct(packet_state, interval, x, P, t)
            assert np.max(np.abs(analytic - direct)) < 1e-6

    def test_zero_on_the_walls_and_outside(self, packet_state):
        for x in (-1.0, 1.0, 1.5):
            assert np.all(wigner_box_analytic(packet_state, x, P, 0.3) == 0.0)

    def test_even_state_is_even_in_x(self, ground_state):
        for x in (0.2, 0.55, 0.9):
            assert wigner_box_analytic(ground_state, -x, P) == pytest.approx(
                wigner_box_analytic(ground_state, x, P), abs=1e-12)

    def test_real_state_is_even_in_p(self, real_two_mode_state):
        assert wigner_box_analytic(real_two_mode_state, 0.3, P) == pytest.approx(
            wigner_box_analytic(real_two_mode_state, 0.3, -P), abs=1e-12)

    def test_eigenstate_does_not_move(self, ground_state):
        for x in (0.0, 0.4):
            assert wigner_box_analytic(ground_state, x, P, 3.0) == pytest.approx(
                wigner_box_analytic(ground_state, x, P, 0.0), abs=1e-12)
            assert np.max(np.abs(wigner_box_dt(ground_state, x, P, 3.0))) < 1e-12

    def test_time_derivative(self, two_mode_state):
        step = 1e-4
        for x in (-0.5, 0.0, 0.7):
            numeric = (wigner_box_analytic(two_mode_state, x, P, 0.3 + step)
                       - wigner_box_analytic(two_mode_state, x, P, 0.3 - step)) / (2.0 * step)
            analytic = wigner_box_dt(two_mode_state, x, P, 0.3)
            assert np.max(np.abs(analytic - numeric)) < 1e-5 * np.max(np.abs(analytic))

    def test_position_gradient(self, two_mode_state):
        step = 1e-6
        for x in (-0.45, 0.3, 0.8):
            numeric = (wigner_box_analytic(two_mode_state, x + step, P, 0.2)
                       - wigner_box_analytic(two_mode_state, x - step, P, 0.2)) / (2.0 * step)
            analytic = wigner_box_grad_x(two_mode_state, x, P, 0.2)
            assert analytic.shape == P.shape + (1,)
            assert analytic[..., 0] == pytest.approx(numeric, abs=1e-7)

    def test_square_factorises(self, two_mode_state, real_two_mode_state, square_state, rng):
        for _ in range(5):
            x = rng.uniform(-1.0, 1.0, 2)
            p = rng.uniform(-8.0, 8.0, size=(7, 2))
            expected = (wigner_box_analytic(two_mode_state, x[0], p[:, 0], 0.4)
                        * wigner_box_analytic(real_two_mode_state, x[1], p[:, 1], 0.4))
            assert wigner_box_analytic(square_state, x, p, 0.4) == pytest.approx(expected, abs=1e-8)


class TestDirect:
    def test_polygon_square_agrees_with_the_box(self, square_state):
        square = BilliardShape.polygon([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
        x = np.array([0.3, -0.2])
        p = np.array([[0.0, 0.0], [1.5, -2.0], [-3.0, 0.5], [4.0, 4.0]])
        direct = wigner_direct(square_state, square, x, p, 0.1)
        assert direct == pytest.approx(wigner_box_analytic(square_state, x, p, 0.1), abs=1e-7)

    def test_outside_the_billiard(self, interval, packet_state):
        assert np.all(wigner_direct(packet_state, interval, 1.3, P) == 0.0)

    def test_unconverged_quadrature_raises(self, interval, packet_state):
        with pytest.raises(QuadratureNotConverged):
            wigner_direct(packet_state, interval, 0.0, P, max_nodes=32)

    def test_wigner_field_falls_back_to_quadrature(self, interval, ground_state):
        grid = PhaseSpaceGrid.uniform((-0.9, 0.9), (-6.0, 6.0), 7, 13)
        direct = wigner_field(cosine_ground_state(), interval, grid, 0.5)
        analytic = wigner_field(ground_state, interval, grid, 0.5)
        assert direct.values == pytest.approx(analytic.values, abs=1e-6)


class TestMarginals:
    def test_position_marginal_at_the_centre(self, ground_state):
        grid = PhaseSpaceGrid.uniform((-1.0, 1.0), (-8.0 * np.pi, 8.0 * np.pi), 5, 513)
        density_x, _ = marginals(wigner_box_field(ground_state, grid))
        assert density_x[2] == pytest.approx(1.0, abs=1e-4)
        assert density_x[[0, -1]].tolist() == [0.0, 0.0]

    def test_normalisation(self, ground_state):
        grid = PhaseSpaceGrid.uniform((-1.0, 1.0), (-8.0 * np.pi, 8.0 * np.pi), 201, 513)
        assert total_probability(wigner_box_field(ground_state, grid)) == pytest.approx(1.0, abs=1e-3)

    def test_marginals_match_the_densities(self, two_mode_state):
        # near the walls W spreads out in p, so the window has to be wide
        grid = PhaseSpaceGrid.uniform((-1.0, 1.0), (-64.0 * np.pi, 64.0 * np.pi), 201, 4097)
        density_x, density_p = marginals(wigner_box_field(two_mode_state, grid, 0.2))
        assert density_x == pytest.approx(position_density(two_mode_state, grid, 0.2), abs=5e-4)
        assert density_p == pytest.approx(momentum_density(two_mode_state, grid, 0.2), abs=5e-4)

    def test_packet_marginals(self, packet_state):
        grid = PhaseSpaceGrid.uniform((-1.0, 1.0), (-256.0 * np.pi, 256.0 * np.pi), 401, 16385)
        w = wigner_box_field(packet_state, grid)
        density_x, density_p = marginals(w)
        exact_x = position_density(packet_state, grid)
        exact_p = momentum_density(packet_state, grid)
        assert np.max(np.abs(density_x - exact_x)) <= 1e-4 * np.max(exact_x)
        assert np.max(np.abs(density_p - exact_p)) <= 1e-4 * np.max(exact_p)
        assert total_probability(w) == pytest.approx(1.0, abs=1e-6)

    def test_narrow_window_loses_the_wall_tails(self, packet_state):
        grid = PhaseSpaceGrid.uniform((-1.0, 1.0), (-8.0 * np.pi, 8.0 * np.pi), 101, 201)
        density_x, _ = marginals(wigner_box_field(packet_state, grid))
        error = np.abs(density_x - position_density(packet_state, grid))
        assert np.max(error) > 1e-3 * np.max(position_density(packet_state, grid))
        worst = grid.x_axes[0][np.argmax(error)]
        assert abs(worst) > 0.9


class TestConvolution:
    def grid(self, window=4.0 * np.pi, nodes=513):
        return PhaseSpaceGrid.uniform((-0.9, 0.9), (-window, window), 19, nodes)

    def test_free_shear_of_a_callable(self):
        def initial(x, p):
            return np.exp(-x ** 2 - p ** 2) / np.pi
        evolved = free_wigner(initial, 0.5, mass=2.0)
        x, p = np.array([0.3, -1.0]), np.array([1.2, 0.4])
        assert evolved(x, p) == pytest.approx(initial(x - 0.25 * p, p))

    def test_shear_off_the_grid_warns(self):
        grid = PhaseSpaceGrid.uniform((-1.0, 1.0), (-4.0, 4.0), 21, 17)
        initial = ScalarField(grid, np.ones(grid.shape))
        with pytest.warns(OutOfDomain):
            evolved = free_wigner(initial, 1.0)
        assert evolved.out_of_domain > 0

    def test_shear_at_time_zero_is_the_identity(self):
        grid = PhaseSpaceGrid.uniform((-1.0, 1.0), (-4.0, 4.0), 21, 17)
        initial = ScalarField(grid, np.ones(grid.shape))
        with warnings.catch_warnings():
            warnings.simplefilter('error', OutOfDomain)
            assert free_wigner(initial, 0.0) is initial

    def test_fft_and_direct_agree(self, real_two_mode_state):
        grid = self.grid()
        free = deposit_comb(real_two_mode_state, grid)
        kernel = g_field(grid)
        fft = convolve_p(free, kernel, method='fft', decay_tol=None)
        direct = convolve_p(free, kernel, method='direct', decay_tol=None)
        assert np.max(np.abs(fft.values - direct.values)) < 1e-10

    def test_kernel_must_decay_inside_the_window(self, ground_state):
        grid = self.grid(window=2.0, nodes=41)
        with pytest.raises(WindowTooSmall):
            convolve_p(deposit_comb(ground_state, grid), g_field(grid))

    def test_momentum_axis_must_be_centred(self, ground_state):
        grid = PhaseSpaceGrid.uniform((-0.9, 0.9), (-3.0, 5.0), 19, 41)
        with pytest.raises(ValueError):
            convolve_p(deposit_comb(ground_state, grid), g_field(grid), decay_tol=None)

    def test_discrete_delta_kernel_is_the_identity(self, rng):
        grid = PhaseSpaceGrid.uniform((-0.9, 0.9), (-4.0, 4.0), 7, 41)
        free = ScalarField(grid, rng.normal(size=grid.shape))
        delta = np.zeros(grid.shape)
        delta[:, 20] = 1.0 / (grid.p_axes[0][1] - grid.p_axes[0][0])
        for method in ('direct', 'fft'):
            smeared = convolve_p(free, ScalarField(grid, delta), method=method)
            assert smeared.values[:, 1:-1] == pytest.approx(free.values[:, 1:-1], abs=1e-12)
            # trapezoid end weights
            assert smeared.values[:, [0, -1]] == pytest.approx(0.5 * free.values[:, [0, -1]], abs=1e-12)

    def test_constant_convolves_to_one(self):
        grid = PhaseSpaceGrid.uniform((-0.5, 0.5), (-100.0, 100.0), 3, 4001)
        smeared = convolve_p(ScalarField(grid, np.ones(grid.shape)), g_field(grid), decay_tol=None)
        assert smeared.values[:, 2000] == pytest.approx(np.ones(3), abs=2e-2)

    def test_gridded_path_reproduces_the_closed_form(self, real_two_mode_state):
        grid = self.grid()
        convolved = wigner_convolved(real_two_mode_state, grid)
        inner = np.abs(grid.p_axes[0]) <= 2.0 * np.pi
        expected = wigner_box_field(real_two_mode_state, grid).values
        assert np.max(np.abs(convolved.values[:, inner] - expected[:, inner])) < 1e-8
