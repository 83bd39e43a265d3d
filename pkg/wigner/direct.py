"""Brute-force Wigner transform by Gauss-Legendre quadrature over Omega(x, .).

This is the reference every other construction is checked against.
"""
import logging

import numpy as np

from geometry import as_points, omega_extent, omega_polygon
from spectral import gauss_legendre
from .exceptions import ImaginaryResidue, QuadratureNotConverged

logger = logging.getLogger(__name__)

ORACLE_TOLERANCE = 1e-8
START_NODES = 32
MAX_NODES = 4096
P_CHUNK = 256


def _box_nodes(half_widths, order):
    """Tensor Gauss-Legendre nodes on the product of [-L_k, L_k]"""
    axes = [gauss_legendre(order, -h, h) for h in half_widths]
    nodes = np.stack(np.meshgrid(*[a[0] for a in axes], indexing='ij'), axis=-1)
    weights = np.ones(nodes.shape[:-1])
    for k, (_, w) in enumerate(axes):
        shape = [1] * len(axes)
        shape[k] = w.size
        weights = weights * w.reshape(shape)
    return nodes.reshape(-1, len(axes)), weights.reshape(-1)


def _polygon_nodes(vertices, order):
    """Collapsed-square Gauss-Legendre rule on a fan triangulation of a convex polygon"""
    xi, wx = gauss_legendre(order, 0.0, 1.0)
    u, v = np.meshgrid(xi, xi, indexing='ij')
    w = np.outer(wx, wx)
    nodes, weights = [], []
    apex = vertices[0]
    for b, c in zip(vertices[1:-1], vertices[2:]):
        edge_b, edge_c = b - apex, c - apex
        twice_area = abs(edge_b[0] * edge_c[1] - edge_b[1] * edge_c[0])
        points = apex + u[..., None] * edge_b + (u * v)[..., None] * (c - b)
        nodes.append(points.reshape(-1, 2))
        weights.append((twice_area * u * w).reshape(-1))
    return np.concatenate(nodes), np.concatenate(weights)


def _support_nodes(shape, point, order):
    """Quadrature of Omega(x, .), or None when it has no interior"""
    if shape.kind == 'polygon':
        vertices = omega_polygon(shape, point)
        if len(vertices) == 0:
            return None
        return _polygon_nodes(vertices, order)
    half_widths = omega_extent(shape, point)
    if half_widths is None or np.any(half_widths <= 0.0):
        return None
    return _box_nodes(half_widths, order)


def _transform(state, point, momenta, t, nodes, weights):
    values = weights * state.f(point, nodes, t)
    flat = momenta.reshape(-1, momenta.shape[-1])
    out = np.empty(len(flat), dtype=complex)
    for start in range(0, len(flat), P_CHUNK):
        chunk = flat[start:start + P_CHUNK]
        out[start:start + P_CHUNK] = np.exp(-1j * chunk @ nodes.T) @ values
    return out.reshape(momenta.shape[:-1]) / (2.0 * np.pi) ** state.dim


def wigner_direct(state, shape, x, p, t=0.0, tol=ORACLE_TOLERANCE, max_nodes=MAX_NODES):
    """W(x, p, t) = (2 pi)^-n integral of exp(-i p.y) f(x, y, t) Omega(x, y) d^n y.

    Nodes per axis double until two successive results agree within `tol`.
    """
    point = as_points(x, shape.dim).reshape(shape.dim)
    momenta = as_points(p, shape.dim)
    if not shape.contains(point):
        return np.zeros(momenta.shape[:-1])

    order = START_NODES
    support = _support_nodes(shape, point, order)
    if support is None:
        return np.zeros(momenta.shape[:-1])
    previous = _transform(state, point, momenta, t, *support)
    while True:
        order *= 2
        if order > max_nodes:
            raise QuadratureNotConverged(
                f"W at x={point.tolist()} still moving at {order // 2} nodes per axis"
            )
        current = _transform(state, point, momenta, t, *_support_nodes(shape, point, order))
        change = np.max(np.abs(current - previous), initial=0.0)
        if change <= tol:
            break
        logger.debug("oracle at x=%s: %d nodes changed W by %.3g", point, order, change)
        previous = current

    residue = np.max(np.abs(current.imag), initial=0.0)
    if residue > ORACLE_TOLERANCE:
        raise ImaginaryResidue(f"oracle W at x={point.tolist()} has imaginary part {residue:.3g}")
    return current.real
