"""Box eigenbasis, state construction and evaluation of phi(x, t) and f(x, y, t)."""
from .basis import eigenfunction, eigenfunction_grad, energy
from .evaluation import eval_f, eval_psi, grad_x_f
from .exceptions import DegenerateState, InvalidState
from .models import FunctionState, StateExpansion, Wavefunction, product_state
from .projection import gauss_legendre, momentum_amplitude, project_gaussian

__all__ = [
    'eigenfunction',
    'eigenfunction_grad',
    'energy',
    'eval_f',
    'eval_psi',
    'grad_x_f',
    'DegenerateState',
    'InvalidState',
    'FunctionState',
    'StateExpansion',
    'Wavefunction',
    'product_state',
    'gauss_legendre',
    'momentum_amplitude',
    'project_gaussian',
]
