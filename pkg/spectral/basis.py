"""Dirichlet eigenbasis of the reference box [-1, 1]^n (hbar = 1)."""
import numpy as np

from geometry import as_points


def sinpi(r):
    """sin(pi r), exactly zero at integer r"""
    r = np.mod(r, 2.0)
    return np.where(np.mod(r, 1.0) == 0.0, 0.0, np.sin(np.pi * r))


def cospi(r):
    """cos(pi r), exactly zero at half-integer r"""
    r = np.mod(r, 2.0)
    return np.where(np.mod(r, 1.0) == 0.5, 0.0, np.cos(np.pi * r))


def mode_array(modes):
    """Mode indices as an int array (K, dim); plain integers are 1D modes"""
    arr = np.asarray(modes, dtype=int)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr[:, np.newaxis]
    return arr


def axis_factors(modes, points):
    """Per-axis sine and derivative factors, each shaped (..., K, dim)"""
    r = 0.5 * modes * (points[..., np.newaxis, :] + 1.0)
    sines = sinpi(r)
    slopes = 0.5 * np.pi * modes * cospi(r)
    return sines, slopes


def basis_values(modes, points):
    """chi_n at points (..., dim) for modes (K, dim) -> (..., K)"""
    sines, _ = axis_factors(modes, points)
    return np.prod(sines, axis=-1)


def basis_gradients(modes, points):
    """grad chi_n at points (..., dim) -> (..., K, dim)"""
    sines, slopes = axis_factors(modes, points)
    dim = modes.shape[1]
    columns = []
    for k in range(dim):
        others = np.prod(np.delete(sines, k, axis=-1), axis=-1) if dim > 1 else 1.0
        columns.append(slopes[..., k] * others)
    return np.stack(columns, axis=-1)


def basis_transforms(modes, p):
    """Integral of chi_n(x) exp(-i p . x) over the box in closed form -> (..., K).

    Per axis it is -i (e^{ik} sinc((k - p) / pi) - e^{-ik} sinc((k + p) / pi))
    with k = pi n / 2; np.sinc keeps p = +-k finite.
    """
    half = 0.5 * modes  # k / pi, (K, dim)
    phase = cospi(half) + 1j * sinpi(half)
    scaled = as_points(p, modes.shape[1])[..., np.newaxis, :] / np.pi
    factors = -1j * (phase * np.sinc(half - scaled) - np.conj(phase) * np.sinc(half + scaled))
    return np.prod(factors, axis=-1)


def eigenfunction(n, x):
    """chi_n(x) = prod_i sin(pi n_i (x_i + 1) / 2) on the reference box"""
    modes = mode_array([n]) if np.ndim(n) else mode_array(n)
    return basis_values(modes, as_points(x, modes.shape[1]))[..., 0]


def eigenfunction_grad(n, x):
    modes = mode_array([n]) if np.ndim(n) else mode_array(n)
    return basis_gradients(modes, as_points(x, modes.shape[1]))[..., 0, :]


def energy(n, mass=1.0):
    """E_n = pi^2 |n|^2 / (8 m)"""
    n = np.asarray(n, dtype=float)
    return float(np.pi ** 2 * np.sum(n ** 2) / (8.0 * mass))
