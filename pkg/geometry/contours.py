"""Indicator functions, the region Omega(x, y) and quadrature on its boundary omega(x, y).

Omega(x, .) is the set of y with both x - y/2 and x + y/2 in the billiard, i.e. the
intersection of the reflected copies 2(x - B) and 2(B - x). For convex billiards it
is convex and centrally symmetric in y.
"""
import logging

import numpy as np

from .clipping import clip_polygon, clip_segment, polygon_area
from .exceptions import UnsupportedDimension
from .models import BoundaryContour, as_points

logger = logging.getLogger(__name__)


def indicator(shape, x):
    """B(x): 1 inside or on the surface of the billiard, 0 outside"""
    return shape.contains(as_points(x, shape.dim)).astype(int)


def omega_indicator(shape, x, y):
    """Omega(x, y) = B(x - y/2) B(x + y/2)"""
    x = as_points(x, shape.dim)
    y = as_points(y, shape.dim)
    inside = shape.contains(x - 0.5 * y) & shape.contains(x + 0.5 * y)
    return inside.astype(int)


# ========================================
# Omega(x, .) as a region
# ========================================

def omega_extent(shape, x):
    """Half-widths L of Omega(x, .) for intervals and boxes (region |y_k| <= L_k).

    Returns None when x lies outside the billiard. On the surface some L_k is 0.
    """
    if shape.kind == 'polygon':
        raise UnsupportedDimension("use omega_polygon for polygon billiards")
    point = as_points(x, shape.dim).reshape(shape.dim)
    offset = point - shape.center
    half = np.where(offset >= 0.0, shape.hi - point, point - shape.lo)
    at_centre = offset == 0.0
    if np.any(at_centre):
        # both branches of the omega formula meet at the centre
        assert np.allclose((shape.hi - point)[at_centre], (point - shape.lo)[at_centre])
    if np.any(half < -shape.tolerance):
        return None
    return 2.0 * np.maximum(half, 0.0)


def omega_polygon(shape, x):
    """Vertices of Omega(x, .) for a planar billiard, empty (0, 2) array if degenerate"""
    verts = shape.polygon_vertices()
    point = as_points(x, 2).reshape(2)
    region = clip_polygon(2.0 * (point - verts), 2.0 * (verts - point), tol=shape.tolerance)
    if len(region) < 3 or polygon_area(region) <= shape.tolerance * shape.diameter:
        return np.empty((0, 2))
    return region


def omega_region(shape, x):
    """Omega(x, .) as polygon vertices in 2D or half-widths for intervals and boxes"""
    if shape.dim == 2:
        return omega_polygon(shape, x)
    return omega_extent(shape, x)


# ========================================
# Boundary contours
# ========================================

def omega_contour(shape, x, resolution=64):
    """Quadrature of omega(x, .) with inward normals; empty when Omega has no interior"""
    if shape.dim == 1:
        extent = omega_extent(shape, x)
        if extent is None:
            return BoundaryContour.empty(1)
        half = extent[0]
        return BoundaryContour(
            y=np.array([[-half], [half]]),
            normal=np.array([[1.0], [-1.0]]),
            weight=np.ones(2),
        )
    if shape.dim == 2:
        return polygon_contour(omega_polygon(shape, x), resolution)
    raise UnsupportedDimension(f"no surface quadrature in {shape.dim} dimensions")


def boundary_contour(shape, resolution=64):
    """Quadrature of the billiard's own surface S in x-space"""
    if shape.dim == 1:
        return BoundaryContour(
            y=np.array([shape.lo, shape.hi]),
            normal=np.array([[1.0], [-1.0]]),
            weight=np.ones(2),
        )
    if shape.dim == 2:
        return polygon_contour(shape.polygon_vertices(), resolution)
    raise UnsupportedDimension(f"no surface quadrature in {shape.dim} dimensions")


def polygon_contour(vertices, resolution):
    """Midpoint nodes, `resolution` per edge, on a counter-clockwise polygon"""
    if len(vertices) < 3:
        return BoundaryContour.empty(2)
    parts = [
        segment_nodes(a, b, _left_normal(b - a), resolution)
        for a, b in zip(vertices, np.roll(vertices, -1, axis=0))
    ]
    return BoundaryContour.concat(parts, 2)


def segment_nodes(start, end, normal, resolution, scale=1.0):
    length = float(np.linalg.norm(end - start))
    if length == 0.0:
        return BoundaryContour.empty(2)
    fractions = (np.arange(resolution) + 0.5) / resolution
    return BoundaryContour(
        y=start + fractions[:, np.newaxis] * (end - start),
        normal=np.tile(normal, (resolution, 1)),
        weight=np.full(resolution, scale * length / resolution),
    )


def _left_normal(edge):
    return np.array([-edge[1], edge[0]]) / np.linalg.norm(edge)


def shifted_surface_contours(shape, x, resolution=64):
    """Surfaces S+ of B(x + y/2) and S- of B(x - y/2) in y-space, restricted to Omega.

    A point s of S maps to y = 2(s - x) on S+ (inward normal n_s) and to
    y = 2(x - s) on S- (inward normal -n_s). Each piece keeps only the part where
    the other shifted copy is 1; where that copy is on its own surface the node
    carries half weight, so coincident edges of S+ and S- are not counted twice.
    """
    point = as_points(x, shape.dim).reshape(shape.dim)
    if not shape.contains(point):
        return BoundaryContour.empty(shape.dim), BoundaryContour.empty(shape.dim)
    surface = boundary_contour(shape, resolution)
    if shape.dim == 1:
        plus = _mask_points(shape, point, 2.0 * (surface.y - point), surface.normal, sign=-1.0)
        minus = _mask_points(shape, point, 2.0 * (point - surface.y), -surface.normal, sign=1.0)
        return plus, minus
    if shape.dim != 2:
        raise UnsupportedDimension(f"no surface quadrature in {shape.dim} dimensions")

    verts = shape.polygon_vertices()
    plus_parts, minus_parts = [], []
    for a, b, normal in zip(verts, np.roll(verts, -1, axis=0), _edge_normals(verts)):
        plus_parts.append(_clipped_piece(shape, point, 2.0 * (a - point), 2.0 * (b - point),
                                         normal, sign=-1.0, resolution=resolution))
        minus_parts.append(_clipped_piece(shape, point, 2.0 * (point - a), 2.0 * (point - b),
                                          -normal, sign=1.0, resolution=resolution))
    return BoundaryContour.concat(plus_parts, 2), BoundaryContour.concat(minus_parts, 2)


def _edge_normals(verts):
    return [_left_normal(b - a) for a, b in zip(verts, np.roll(verts, -1, axis=0))]


def _other_depth(shape, point, y, sign):
    """Depth of x + sign y/2 in the billiard"""
    return shape.depth(point + sign * 0.5 * y)


def _mask_points(shape, point, y, normal, sign):
    depth = _other_depth(shape, point, y, sign)
    keep = depth >= -shape.tolerance
    weight = np.where(np.abs(depth) <= shape.tolerance, 0.5, 1.0)
    return BoundaryContour(y[keep], normal[keep], weight[keep])


def _clipped_piece(shape, point, start, end, normal, sign, resolution):
    # x + sign y/2 in B  <=>  (sign/2) A . y >= b - A . x
    normals = 0.5 * sign * shape.normals
    offsets = shape.offsets - shape.normals @ point
    span = clip_segment(start, end, normals, offsets, tol=shape.tolerance)
    if span is None or span[1] - span[0] <= 0.0:
        return BoundaryContour.empty(2)
    direction = end - start
    piece = segment_nodes(start + span[0] * direction, start + span[1] * direction,
                          normal, resolution)
    middle = start + 0.5 * (span[0] + span[1]) * direction
    if abs(_other_depth(shape, point, middle, sign)) <= shape.tolerance:
        piece = BoundaryContour(piece.y, piece.normal, 0.5 * piece.weight)
    return piece


# ========================================
# Surface integrals
# ========================================

def surface_integral(contour, integrand):
    """Sum of weight * integrand(y, normal) over the nodes (integrand is vectorised over nodes)"""
    if contour.is_empty():
        return 0.0 + 0.0j
    values = np.asarray(integrand(contour.y, contour.normal))
    return np.tensordot(contour.weight, values, axes=(0, 0))


def surface_delta_prime_apply(shape, u, resolution=256, grad=None):
    """Action of the surface delta-prime on u: -integral over S of n . grad u.

    `u` and `grad` take points shaped (..., dim); without `grad` the gradient is a
    central difference with step 1e-6 times the shape diameter.
    """
    contour = boundary_contour(shape, resolution)
    if grad is None:
        step = 1e-6 * shape.diameter
        eye = np.eye(shape.dim) * step
        gradient = np.stack(
            [(u(contour.y + e) - u(contour.y - e)) / (2.0 * step) for e in eye], axis=-1,
        )
    else:
        gradient = np.asarray(grad(contour.y))
    flux = np.einsum('ij,ij->i', contour.normal, gradient)
    return -float(contour.weight @ flux)
