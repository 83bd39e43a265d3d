"""Point-wise evaluators taking user coordinates (scalars allowed in one dimension)."""
from geometry import as_points


def eval_psi(state, x, t=0.0):
    """phi(x, t)"""
    return state.psi(as_points(x, state.dim), t)


def eval_f(state, x, y, t=0.0):
    """f(x, y, t) = phi*(x - y/2, t) phi(x + y/2, t)"""
    return state.f(as_points(x, state.dim), as_points(y, state.dim), t)


def grad_x_f(state, x, y, t=0.0):
    """Analytic x-gradient of f, shaped (..., dim)"""
    return state.grad_x_f(as_points(x, state.dim), as_points(y, state.dim), t)
