"""Billiard shapes, the shifted-intersection region Omega(x, y) and its boundary quadrature."""
from .clipping import polygon_area
from .models import BilliardShape, BoundaryContour, as_points
from .contours import (
    indicator,
    omega_indicator,
    omega_extent,
    omega_polygon,
    omega_region,
    omega_contour,
    boundary_contour,
    shifted_surface_contours,
    surface_integral,
    surface_delta_prime_apply,
)

__all__ = [
    'BilliardShape',
    'BoundaryContour',
    'as_points',
    'indicator',
    'omega_indicator',
    'omega_extent',
    'omega_polygon',
    'omega_region',
    'polygon_area',
    'omega_contour',
    'boundary_contour',
    'shifted_surface_contours',
    'surface_integral',
    'surface_delta_prime_apply',
]
