"""Wigner functions of billiard states: quadrature oracle, analytic box formula and gridded convolution."""
from .box import g_box, lambda_nm, wigner_box_analytic, wigner_box_dt, wigner_box_grad_x
from .convolution import convolve_p, deposit_comb, free_wigner, g_field, wigner_convolved
from .direct import wigner_direct
from .exceptions import ImaginaryResidue, OutOfDomain, QuadratureNotConverged, WindowTooSmall
from .fields import (
    assemble_field,
    marginals,
    momentum_density,
    position_density,
    total_probability,
    wigner_box_dt_field,
    wigner_box_field,
    wigner_direct_field,
    wigner_field,
)
from .models import CombTerm, DeltaComb, PhaseSpaceGrid, PhaseVectorField, ScalarField

__all__ = [
    'g_box',
    'lambda_nm',
    'wigner_box_analytic',
    'wigner_box_dt',
    'wigner_box_grad_x',
    'convolve_p',
    'deposit_comb',
    'free_wigner',
    'g_field',
    'wigner_convolved',
    'wigner_direct',
    'ImaginaryResidue',
    'OutOfDomain',
    'QuadratureNotConverged',
    'WindowTooSmall',
    'assemble_field',
    'marginals',
    'momentum_density',
    'position_density',
    'total_probability',
    'wigner_box_dt_field',
    'wigner_box_field',
    'wigner_direct_field',
    'wigner_field',
    'CombTerm',
    'DeltaComb',
    'PhaseSpaceGrid',
    'PhaseVectorField',
    'ScalarField',
]
