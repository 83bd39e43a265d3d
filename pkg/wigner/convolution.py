"""Gridded form of W = W0(x - p t/m, p) *_p G(x, p) for one-dimensional boxes.

The analytic comb path in `box` is what production runs use; this module samples
every ingredient on a grid so the convolution itself can be exercised. Deltas of
the free comb are deposited with linear (hat) weights, which limits accuracy.
"""
import logging
import warnings

import numpy as np
from scipy import signal
from scipy.interpolate import RectBivariateSpline

from .box import g_box, lambda_nm
from .exceptions import OutOfDomain, WindowTooSmall
from .models import ScalarField

logger = logging.getLogger(__name__)

DECAY_TOLERANCE = 1e-3


def _one_dimensional(grid):
    if grid.dim != 1:
        raise ValueError("gridded convolution is implemented for one-dimensional billiards")
    return grid.x_axes[0], grid.p_axes[0]


def _centre_index(p_axis):
    centre = (p_axis.size - 1) // 2
    if p_axis.size % 2 == 0 or abs(p_axis[centre]) > 1e-12 * (p_axis[1] - p_axis[0]):
        raise ValueError("convolution needs an odd, zero-centred momentum axis")
    return centre


# ========================================
# Free evolution
# ========================================

def free_wigner(initial, t, mass=1.0):
    """Shear W0(x, p) -> W0(x - p t / m, p).

    `initial` is either a callable of (x, p) arrays or a one-dimensional
    ScalarField, which is resampled with cubic splines along x. Samples whose
    sheared position leaves the stored x range are set to zero and counted.
    """
    if callable(initial):
        def evolved(x, p):
            return initial(np.asarray(x) - np.asarray(p) * t / mass, p)
        return evolved

    x_axis, p_axis = _one_dimensional(initial.grid)
    if t == 0:
        return initial
    spline = RectBivariateSpline(x_axis, p_axis, initial.values, kx=3, ky=1)
    xs, ps = np.meshgrid(x_axis, p_axis, indexing='ij')
    sheared = xs - ps * t / mass
    outside = (sheared < x_axis[0]) | (sheared > x_axis[-1])
    values = np.where(outside, 0.0, spline.ev(np.clip(sheared, x_axis[0], x_axis[-1]), ps))
    count = int(outside.sum())
    if count:
        logger.warning("shear to t=%s left the grid at %d samples", t, count)
        warnings.warn(f"{count} sheared samples fell outside the x range", OutOfDomain)
    return ScalarField(initial.grid, values, out_of_domain=count)


# ========================================
# Sampled ingredients
# ========================================

def deposit_comb(state, grid, t=0.0):
    """Free Wigner function of a 1D box state with its deltas spread on the p axis"""
    x_axis, p_axis = _one_dimensional(grid)
    spacing = p_axis[1] - p_axis[0]
    values = np.zeros(grid.shape, dtype=complex)
    amplitudes = state.amplitudes(t)
    modes = state.modes[:, 0]
    for i, n in enumerate(modes):
        for j, m in enumerate(modes):
            weight = np.conj(amplitudes[i]) * amplitudes[j]
            for term in lambda_nm(int(n), int(m)):
                position = (term.shift - p_axis[0]) / spacing
                lower = int(np.floor(position))
                frac = position - lower
                for index, share in ((lower, 1.0 - frac), (lower + 1, frac)):
                    if 0 <= index < p_axis.size and share:
                        values[:, index] += weight * term.coeff(x_axis) * share / spacing
    return ScalarField(grid, values.real)


def g_field(grid):
    """G(x, p) of the reference box sampled on the grid"""
    x_axis, p_axis = _one_dimensional(grid)
    return ScalarField(grid, g_box(x_axis[:, np.newaxis], p_axis[np.newaxis, :]))


# ========================================
# Convolution in p
# ========================================

def convolve_p(free_field, kernel_field, method='direct', decay_tol=DECAY_TOLERANCE):
    """Per x-slice trapezoidal convolution over p with zero padding.

    `kernel_field` holds G(x, q) at q = p_j on an odd, zero-centred axis, so
    G(x, p_j - p_k) is the sample at index offset j - k.
    """
    if free_field.grid is not kernel_field.grid and free_field.grid.shape != kernel_field.grid.shape:
        raise ValueError("free field and kernel must share a grid")
    x_axis, p_axis = _one_dimensional(free_field.grid)
    _centre_index(p_axis)
    kernel = kernel_field.values

    if decay_tol is not None:
        peak = np.max(np.abs(kernel), axis=1)
        edge = np.maximum(np.abs(kernel[:, 0]), np.abs(kernel[:, -1]))
        failing = (peak > 0) & (edge > decay_tol * peak)
        if np.any(failing):
            worst = float(np.max(edge[failing] / peak[failing]))
            raise WindowTooSmall(f"kernel keeps {worst:.3g} of its peak at the window edge")

    spacing = p_axis[1] - p_axis[0]
    trapezoid = np.full(p_axis.size, spacing)
    trapezoid[[0, -1]] *= 0.5
    weighted = free_field.values * trapezoid

    if method == 'fft':
        values = signal.fftconvolve(weighted, kernel, mode='same', axes=1)
    elif method == 'direct':
        values = np.stack([np.convolve(row, g, mode='same') for row, g in zip(weighted, kernel)])
    else:
        raise ValueError(f"unknown convolution method {method!r}")
    return ScalarField(free_field.grid, values, out_of_domain=free_field.out_of_domain)


def wigner_convolved(state, grid, t=0.0, method='direct', decay_tol=None):
    """Box Wigner function through deposit -> shear -> convolve.

    The hat deposit moves each delta onto its two neighbouring p nodes, so the
    shear applies p_j t / m instead of shift * t / m; away from t = 0 this costs a
    phase error of order (mode rate) * dp * t / m.
    """
    initial = deposit_comb(state, grid, 0.0)
    evolved = free_wigner(initial, t, state.mass)
    return convolve_p(evolved, g_field(grid), method=method, decay_tol=decay_tol)
