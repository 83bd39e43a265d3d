"""Wigner current, the billiard equation of motion and its continuity and delta-prime checks."""
from .continuity import continuity_residual, derivative_4th
from .delta_prime import delta_prime_equivalence
from .exceptions import CurrentError, NodeOnAxis, RemovableSingularity
from .flux import (
    boundary_source,
    current_field,
    current_p_box,
    current_p_surface,
    current_x,
    eom_rhs,
    sign_law_violations,
    source_on_contour,
)
from .models import ContinuityReport, CurrentSample

__all__ = [
    'continuity_residual',
    'derivative_4th',
    'delta_prime_equivalence',
    'CurrentError',
    'NodeOnAxis',
    'RemovableSingularity',
    'boundary_source',
    'current_field',
    'current_p_box',
    'current_p_surface',
    'current_x',
    'eom_rhs',
    'sign_law_violations',
    'source_on_contour',
    'ContinuityReport',
    'CurrentSample',
]
