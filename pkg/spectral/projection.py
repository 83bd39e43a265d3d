"""Projection of Gaussian packets on the box eigenbasis and momentum-space amplitudes."""
import logging

import numpy as np
from scipy import special

from .basis import basis_transforms, basis_values, mode_array
from .exceptions import DegenerateState
from .models import StateExpansion

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 200
OVERLAP_FLOOR = 1e-14


def gauss_legendre(order, lo=-1.0, hi=1.0):
    """Nodes and weights on [lo, hi]"""
    nodes, weights = special.roots_legendre(order)
    half = 0.5 * (hi - lo)
    return lo + half * (nodes + 1.0), half * weights


def gaussian_packet(x, a, p0):
    """phi_0(x) = (2/pi)^(1/4) exp(-x^2/a^2 - i p0 x) on one axis"""
    return (2.0 / np.pi) ** 0.25 * np.exp(-x ** 2 / a ** 2 - 1j * p0 * x)


def raw_overlaps(a, p0, modes, order=DEFAULT_ORDER):
    """Unnormalised c_n = integral of chi_n(x) phi_0(x) over the box, axis by axis"""
    modes = mode_array(modes)
    p0 = np.broadcast_to(np.asarray(p0, dtype=float), (modes.shape[1],))
    nodes, weights = gauss_legendre(order)
    overlaps = np.ones(len(modes), dtype=complex)
    for axis in range(modes.shape[1]):
        chi = basis_values(modes[:, [axis]], nodes[:, np.newaxis])  # (order, K)
        packet = gaussian_packet(nodes, a, p0[axis])
        overlaps *= (weights * packet) @ chi
    return overlaps


def project_gaussian(a, p0, modes, mass=1.0, order=DEFAULT_ORDER):
    """Expand the Gaussian packet phi_0 on the listed modes and normalise"""
    if not a > 0:
        raise ValueError(f"packet width must be positive, got {a}")
    overlaps = raw_overlaps(a, p0, modes, order)
    if np.max(np.abs(overlaps)) < OVERLAP_FLOOR:
        raise DegenerateState(f"all overlaps of the packet with modes {list(modes)} vanish")
    logger.debug("projected packet a=%s p0=%s on %d modes", a, p0, len(overlaps))
    return StateExpansion.normalized(mode_array(modes), overlaps, mass)


def momentum_amplitude(state, p, t=0.0):
    """phi~(p, t) = (2 pi)^(-n/2) integral of phi(x, t) exp(-i p . x) over the box"""
    return basis_transforms(state.modes, p) @ state.amplitudes(t) / (2.0 * np.pi) ** (state.dim / 2.0)
