"""Assembly of fields on phase-space grids and their marginal densities."""
import numpy as np
from scipy.integrate import trapezoid

from spectral import momentum_amplitude
from .box import wigner_box_analytic, wigner_box_dt
from .direct import wigner_direct
from .models import ScalarField


def assemble_field(evaluate, grid, trailing=()):
    """values[i..., j...] = evaluate(x_i, momenta) over every x node.

    `evaluate` receives one position and all momenta in the form of
    `grid.x_values()` / `grid.p_values()`. Each x node writes its own slice.
    """
    momenta = grid.p_values()
    positions = grid.x_values()
    values = np.empty(grid.shape + tuple(trailing))
    for index in np.ndindex(*grid.x_shape):
        values[index] = evaluate(positions[index], momenta)
    return values


def wigner_box_field(state, grid, t=0.0):
    return ScalarField(grid, assemble_field(lambda x, p: wigner_box_analytic(state, x, p, t), grid))


def wigner_box_dt_field(state, grid, t=0.0):
    return ScalarField(grid, assemble_field(lambda x, p: wigner_box_dt(state, x, p, t), grid))


def wigner_direct_field(state, shape, grid, t=0.0):
    return ScalarField(grid, assemble_field(lambda x, p: wigner_direct(state, shape, x, p, t), grid))


def wigner_field(state, shape, grid, t=0.0):
    """Closed form on the reference box, quadrature oracle anywhere else"""
    if shape.is_reference_box and hasattr(state, 'modes'):
        return wigner_box_field(state, grid, t)
    return wigner_direct_field(state, shape, grid, t)


def marginals(field):
    """Trapezoidal densities: integral over p (on x nodes) and over x (on p nodes)"""
    grid = field.grid
    density_x = field.values
    for axis in reversed(range(grid.dim)):
        density_x = trapezoid(density_x, grid.p_axes[axis], axis=grid.dim + axis)
    density_p = field.values
    for axis in reversed(range(grid.dim)):
        density_p = trapezoid(density_p, grid.x_axes[axis], axis=axis)
    return density_x, density_p


def total_probability(field):
    density_x, _ = marginals(field)
    for axis in reversed(range(field.grid.dim)):
        density_x = trapezoid(density_x, field.grid.x_axes[axis], axis=axis)
    return float(density_x)


def position_density(state, grid, t=0.0):
    """|phi(x, t)|^2 on the x nodes"""
    return np.abs(state.psi(grid.x_points(), t)) ** 2


def momentum_density(state, grid, t=0.0):
    """|phi~(p, t)|^2 on the p nodes"""
    return np.abs(momentum_amplitude(state, grid.p_values(), t)) ** 2
