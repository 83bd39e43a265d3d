from dataclasses import dataclass

import numpy as np

UNIFORM_TOLERANCE = 1e-12


def _check_axis(axis, label):
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or axis.size < 2:
        raise ValueError(f"{label} axis needs at least two nodes")
    steps = np.diff(axis)
    if not np.all(steps > 0):
        raise ValueError(f"{label} axis must be strictly increasing")
    if np.max(np.abs(steps - steps[0])) > UNIFORM_TOLERANCE * max(1.0, abs(steps[0])):
        raise ValueError(f"{label} axis must be uniformly spaced")
    return axis


# ========================================
# PHASE-SPACE GRID
# ========================================

@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    """Tensor-product (x, p) grid; field values are shaped (*Nx_k, *Np_k)"""
    x_axes: tuple
    p_axes: tuple

    def __post_init__(self):
        if len(self.x_axes) != len(self.p_axes) or not self.x_axes:
            raise ValueError("need one x axis and one p axis per dimension")
        object.__setattr__(self, 'x_axes', tuple(_check_axis(a, 'x') for a in self.x_axes))
        object.__setattr__(self, 'p_axes', tuple(_check_axis(a, 'p') for a in self.p_axes))

    @classmethod
    def uniform(cls, x_range, p_range, nx, np_, dim=1):
        """Same ranges and node counts on every axis"""
        x_axis = np.linspace(x_range[0], x_range[1], nx)
        p_axis = np.linspace(p_range[0], p_range[1], np_)
        return cls((x_axis,) * dim, (p_axis,) * dim)

    def __str__(self):
        return f"PhaseSpaceGrid(dim={self.dim}, shape={self.shape})"

    @property
    def dim(self):
        return len(self.x_axes)

    @property
    def x_shape(self):
        return tuple(a.size for a in self.x_axes)

    @property
    def p_shape(self):
        return tuple(a.size for a in self.p_axes)

    @property
    def shape(self):
        return self.x_shape + self.p_shape

    @property
    def x_spacing(self):
        return np.array([a[1] - a[0] for a in self.x_axes])

    @property
    def p_spacing(self):
        return np.array([a[1] - a[0] for a in self.p_axes])

    def x_points(self):
        """Positions shaped (*Nx_k, dim)"""
        return np.stack(np.meshgrid(*self.x_axes, indexing='ij'), axis=-1)

    def p_points(self):
        """Momenta shaped (*Np_k, dim)"""
        return np.stack(np.meshgrid(*self.p_axes, indexing='ij'), axis=-1)

    def x_values(self):
        """Positions as evaluators take them: a plain array in 1D, (*Nx_k, dim) otherwise"""
        points = self.x_points()
        return points[..., 0] if self.dim == 1 else points

    def p_values(self):
        points = self.p_points()
        return points[..., 0] if self.dim == 1 else points

    def describe(self):
        return {
            'x_axes': [[float(a[0]), float(a[-1]), int(a.size)] for a in self.x_axes],
            'p_axes': [[float(a[0]), float(a[-1]), int(a.size)] for a in self.p_axes],
        }


# ========================================
# FIELDS
# ========================================

@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real field sampled on a grid"""
    grid: PhaseSpaceGrid
    values: np.ndarray
    out_of_domain: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise ValueError(f"values shaped {values.shape}, grid is {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("field contains NaN or Inf")
        object.__setattr__(self, 'values', values)


@dataclass(frozen=True, eq=False)
class PhaseVectorField:
    """Vector field with n x-components followed by n p-components"""
    grid: PhaseSpaceGrid
    values: np.ndarray
    wall_nodes: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.shape + (2 * self.grid.dim,):
            raise ValueError(f"values shaped {values.shape} do not match {self.grid}")
        if not np.all(np.isfinite(values)):
            raise ValueError("vector field contains NaN or Inf")
        object.__setattr__(self, 'values', values)

    @property
    def jx(self):
        return self.values[..., :self.grid.dim]

    @property
    def jp(self):
        return self.values[..., self.grid.dim:]


# ========================================
# DELTA COMBS
# ========================================

@dataclass(frozen=True)
class CombTerm:
    """amplitude * exp(i rate (1 + x)) * delta(p - shift)"""
    shift: float
    amplitude: float
    rate: float

    def coeff(self, x):
        return self.amplitude * np.exp(1j * self.rate * (1.0 + np.asarray(x)))

    def coeff_dx(self, x):
        return 1j * self.rate * self.coeff(x)


@dataclass(frozen=True)
class DeltaComb:
    """Finite sum of momentum deltas with x-dependent complex coefficients"""
    terms: tuple

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def shifts(self):
        return [term.shift for term in self.terms]

    def convolve(self, kernel, x, p, derivative=False):
        """sum_terms coeff(x) kernel(x, p - shift), the comb convolved in p.

        With `derivative` the coefficients are differentiated in x and the
        kernel is left alone.
        """
        return sum(
            (term.coeff_dx(x) if derivative else term.coeff(x)) * kernel(x, p - term.shift)
            for term in self.terms
        )
