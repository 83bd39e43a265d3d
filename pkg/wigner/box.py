"""Closed-form Wigner function of box states: delta combs convolved with G.

For the ordered mode pair (n, m) the product chi_n(x - y/2) chi_m(x + y/2) is a sum
of four plane waves in y, so its transform is a four-term comb. Convolving each
delta with G(x, p) = F_y{Omega} only shifts G. The 1/4 comes from the two
product-to-sum steps; the (2 pi)^-1 of the transform is part of G.
"""
import numpy as np

from geometry import as_points
from .exceptions import ImaginaryResidue
from .models import CombTerm, DeltaComb

RESIDUE_TOLERANCE = 1e-10


def g_box(x, p):
    """G(x, p) = sin(2 p (1 - |x|)) / (pi p) on [-1, 1], zero outside.

    Written as (L / pi) sinc(p L / pi) with L = 2 (1 - |x|), which takes the
    p -> 0 limit L / pi without a special case.
    """
    x = np.asarray(x, dtype=float)
    half = 2.0 * (1.0 - np.abs(x))
    inside = half > 0.0
    half = np.where(inside, half, 0.0)
    return np.where(inside, half / np.pi * np.sinc(np.asarray(p) * half / np.pi), 0.0)


def lambda_nm(n, m):
    """Four-term comb of chi_n(x - y/2) chi_m(x + y/2) for one axis.

    `n` and `m` may be index arrays; they broadcast like numpy operands and the
    shifts and rates of each term take the broadcast shape.
    """
    n = np.asarray(n)
    m = np.asarray(m)
    if np.any(n < 1) or np.any(m < 1):
        raise ValueError("mode indices start at 1")
    diff = 0.5 * np.pi * (n - m)
    total = 0.5 * np.pi * (n + m)
    return DeltaComb((
        CombTerm(shift=-np.pi * (n + m) / 4.0, amplitude=0.25, rate=diff),
        CombTerm(shift=np.pi * (n + m) / 4.0, amplitude=0.25, rate=-diff),
        CombTerm(shift=np.pi * (m - n) / 4.0, amplitude=-0.25, rate=total),
        CombTerm(shift=-np.pi * (m - n) / 4.0, amplitude=-0.25, rate=-total),
    ))


def axis_kernel(n, m, x, p, derivative=False):
    """The comb of every pair (n_i, m_j) convolved with G at one x, vectorised.

    `n` and `m` are 1D mode indices of length K; x is a scalar and p any array.
    Returns (*p.shape, K, K). With `derivative` the coefficients are
    differentiated in x; the terms with d/dx G integrate f over the boundary of
    Omega, where f vanishes, so they sum to zero.
    """
    comb = lambda_nm(np.asarray(n)[:, np.newaxis], np.asarray(m)[np.newaxis, :])
    p = np.asarray(p, dtype=float)[..., np.newaxis, np.newaxis]
    return comb.convolve(g_box, x, p, derivative=derivative)


def _pair_weights(state, t):
    """conj(a_i) a_j with a = c exp(-i E t); equal energies keep a phase of exactly 1"""
    gaps = state.energies[:, np.newaxis] - state.energies[np.newaxis, :]
    return np.conj(state.coeffs)[:, np.newaxis] * state.coeffs[np.newaxis, :] * np.exp(1j * gaps * t)


def _box_sum(state, x, p, pair_weights, derivative_axis=None):
    point = as_points(x, state.dim).reshape(state.dim)
    momenta = as_points(p, state.dim)
    if np.any(np.abs(point) > 1.0):
        return np.zeros(momenta.shape[:-1], dtype=complex)
    product = 1.0
    for axis in range(state.dim):
        modes = state.modes[:, axis]
        product = product * axis_kernel(
            modes, modes, point[axis], momenta[..., axis], derivative=axis == derivative_axis,
        )
    return np.sum(product * pair_weights, axis=(-2, -1))


def _real(values, label):
    residue = np.max(np.abs(values.imag), initial=0.0)
    scale = max(1.0, np.max(np.abs(values.real), initial=0.0))
    if residue > RESIDUE_TOLERANCE * scale:
        raise ImaginaryResidue(f"{label} kept an imaginary part of {residue:.3g}")
    return values.real


def wigner_box_analytic(state, x, p, t=0.0):
    """W(x, p, t) of a box state at one position x and any array of momenta"""
    return _real(_box_sum(state, x, p, _pair_weights(state, t)), 'W')


def wigner_box_dt(state, x, p, t=0.0):
    """dW/dt from the energy phases: each pair carries i (E_i - E_j)"""
    gaps = state.energies[:, np.newaxis] - state.energies[np.newaxis, :]
    return _real(_box_sum(state, x, p, 1j * gaps * _pair_weights(state, t)), 'dW/dt')


def wigner_box_grad_x(state, x, p, t=0.0):
    """x-gradient of W, shaped (..., dim)"""
    weights = _pair_weights(state, t)
    return np.stack(
        [_real(_box_sum(state, x, p, weights, derivative_axis=k), 'dW/dx')
         for k in range(state.dim)],
        axis=-1,
    )
