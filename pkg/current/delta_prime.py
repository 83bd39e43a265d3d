"""The confinement term written with the surface delta-prime Hamiltonian.

Applying delta'_S(x - y/2) - delta'_S(x + y/2) to f and integrating by parts
leaves surface integrals of n . grad_x f over S+ and S-, the surfaces of
B(x + y/2) and B(x - y/2) inside Omega; the f delta term drops because f
vanishes there. Their sum must equal the omega-boundary source S.
"""
from geometry import as_points, shifted_surface_contours
from .flux import DEFAULT_RESOLUTION, SOURCE_RESIDUE, _real, boundary_source, source_on_contour


def delta_prime_equivalence(state, shape, x, p, t=0.0, resolution=DEFAULT_RESOLUTION):
    """(delta' form, omega-boundary form) of the confinement term at (x, p, t)"""
    point = as_points(x, shape.dim).reshape(shape.dim)
    plus, minus = shifted_surface_contours(shape, point, resolution)
    lhs = (source_on_contour(state, point, p, plus, t)
           + source_on_contour(state, point, p, minus, t))
    rhs = boundary_source(state, shape, point, p, t, resolution)
    return _real(lhs, SOURCE_RESIDUE, "delta' term"), rhs
