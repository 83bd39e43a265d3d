"""Wigner current j = (p W / m, j_p) and the boundary source of the billiard equation of motion.

Both j_p and the source are integrals over omega(x, .), the boundary of
Omega(x, .), with inward normals:

    S(x, p, t)  = -(i / ((2 pi)^n m)) sum_nodes w exp(-i p.y) n . grad_x f
    j_p,k       = -(1 / ((2 pi)^n m)) sum_nodes w exp(-i p.y) n_k d_k f / y_k

so that sum_k d/dp_k j_p,k = -S and dW/dt + div_x j_x + div_p j_p = 0.
"""
import logging
import warnings

import numpy as np

from geometry import as_points, omega_contour, omega_extent, surface_integral
from wigner import (
    ImaginaryResidue,
    PhaseVectorField,
    assemble_field,
    wigner_box_grad_x,
    wigner_direct,
    wigner_field,
)
from .exceptions import CurrentError, NodeOnAxis, RemovableSingularity

logger = logging.getLogger(__name__)

WALL_OFFSET = 1e-6
AXIS_TOLERANCE = 1e-9
AXIS_OFFSET = 1e-6
CURRENT_RESIDUE = 1e-10
SOURCE_RESIDUE = 1e-8
DEFAULT_RESOLUTION = 64


def _real(values, tolerance, label):
    residue = np.max(np.abs(np.imag(values)), initial=0.0)
    scale = max(1.0, np.max(np.abs(np.real(values)), initial=0.0))
    if residue > tolerance * scale:
        raise ImaginaryResidue(f"{label} kept an imaginary part of {residue:.3g}")
    return np.real(values)


def _prefactor(state):
    return 1.0 / ((2.0 * np.pi) ** state.dim * state.mass)


# ========================================
# x component
# ========================================

def current_x(w, p, mass=1.0):
    """j_x = (p / m) W, componentwise"""
    if not mass > 0:
        raise CurrentError(f"mass must be positive, got {mass}")
    p = np.asarray(p, dtype=float)
    w = np.asarray(w, dtype=float)
    if p.ndim > w.ndim:
        w = w[..., np.newaxis]
    return p * w / mass


# ========================================
# p component
# ========================================

def _box_branch(state, x, p, t, positive):
    """Closed-form 1D sum over the two points of omega(x, .) on one side of the centre"""
    if positive:
        points = ((2.0 * x - 2.0, 1.0), (2.0 - 2.0 * x, -1.0))
    else:
        points = ((-2.0 * x - 2.0, 1.0), (2.0 * x + 2.0, -1.0))
    total = np.zeros(p.shape, dtype=complex)
    for y, sign in points:
        slope = state.grad_x_f(np.array([x]), np.array([y]), t)[0]
        total += sign * np.exp(-1j * p * y) / y * slope
    return -_prefactor(state) * total


def current_p_box(state, x, p, t=0.0):
    """j_p for a one-dimensional state on the reference box [-1, 1].

    x >= 0 uses the boundary points y = 2x - 2 and y = 2 - 2x, x < 0 their
    mirror images. Walls are approached from inside by WALL_OFFSET, where
    grad_x f vanishes like the denominator and the ratio has a finite limit.
    """
    if state.dim != 1:
        raise CurrentError("current_p_box is the one-dimensional closed form")
    x = float(x)
    p = np.asarray(p, dtype=float)
    if abs(x) > 1.0:
        return np.zeros(p.shape)
    if 1.0 - abs(x) < WALL_OFFSET:
        warnings.warn(f"j_p at x={x} taken {WALL_OFFSET:g} inside the wall", RemovableSingularity)
        x = np.copysign(1.0 - WALL_OFFSET, x)
    if x == 0.0:
        right = _box_branch(state, x, p, t, positive=True)
        left = _box_branch(state, x, p, t, positive=False)
        gap = np.max(np.abs(right - left), initial=0.0)
        if gap > WALL_OFFSET * max(1.0, np.max(np.abs(right), initial=0.0)):
            raise CurrentError(f"branches of j_p disagree by {gap:.3g} at the centre")
        return _real(right, CURRENT_RESIDUE, 'j_p')
    return _real(_box_branch(state, x, p, t, positive=x > 0.0), CURRENT_RESIDUE, 'j_p')


def _axis_nodes(state, point, contour, k, t):
    """Nodes and coefficients w n_k d_k f / y_k for component k.

    Nodes with n_k = 0 drop out. A node with y_k on the axis is replaced by
    two half-weight nodes at y_k = +-AXIS_OFFSET.
    """
    active = contour.normal[:, k] != 0.0
    y = contour.y[active]
    scale = contour.weight[active] * contour.normal[active, k]
    on_axis = np.abs(y[:, k]) < AXIS_TOLERANCE
    regular = ~on_axis
    nodes = [y[regular]]
    coeffs = [scale[regular] * state.grad_x_f(point, y[regular], t)[:, k] / y[regular, k]]
    if np.any(on_axis):
        count = int(on_axis.sum())
        logger.debug("split %d contour nodes on y_%d = 0", count, k)
        warnings.warn(f"{count} contour nodes on y_{k} = 0 were split", NodeOnAxis)
        step = np.zeros(y.shape[1])
        step[k] = AXIS_OFFSET
        for sign in (1.0, -1.0):
            moved = y[on_axis] + sign * step
            nodes.append(moved)
            coeffs.append(
                0.5 * scale[on_axis] * state.grad_x_f(point, moved, t)[:, k] / moved[:, k]
            )
    return np.concatenate(nodes), np.concatenate(coeffs)


def _degenerate(shape, point):
    if shape.dim != 1:
        return False
    extent = omega_extent(shape, point)
    return extent is None or extent[0] <= shape.tolerance


def _off_the_wall(shape, point):
    """A 1D point within WALL_OFFSET of a wall moves that far inside, as in current_p_box"""
    lo, hi = shape.lo[0], shape.hi[0]
    x = point[0]
    if not lo <= x <= hi or min(x - lo, hi - x) >= WALL_OFFSET:
        return point
    warnings.warn(f"j_p at x={x} taken {WALL_OFFSET:g} inside the wall", RemovableSingularity)
    return np.array([min(max(x, lo + WALL_OFFSET), hi - WALL_OFFSET)])


def current_p_surface(state, shape, x, p, t=0.0, resolution=DEFAULT_RESOLUTION):
    """j_p by quadrature over omega(x, .); shaped like p with a trailing component axis.

    On an interval the walls are approached from inside like current_p_box
    does. In 2D a point on the surface gives a degenerate Omega and j_p = 0.
    """
    point = as_points(x, shape.dim).reshape(shape.dim)
    momenta = as_points(p, shape.dim)
    out = np.zeros(momenta.shape, dtype=complex)
    if shape.dim == 1:
        point = _off_the_wall(shape, point)
    if _degenerate(shape, point):
        return out.real
    contour = omega_contour(shape, point, resolution)
    if contour.is_empty():
        return out.real
    for k in range(shape.dim):
        nodes, coeffs = _axis_nodes(state, point, contour, k, t)
        if len(nodes):
            out[..., k] = np.exp(-1j * momenta @ nodes.T) @ coeffs
    return _real(-_prefactor(state) * out, CURRENT_RESIDUE, 'j_p')


# ========================================
# Equation of motion
# ========================================

def source_on_contour(state, point, p, contour, t=0.0, per_component=False):
    """-(i / ((2 pi)^n m)) times the integral of exp(-i p.y) n . grad_x f over `contour`.

    With `per_component` the contraction n . grad_x f is left open and the
    result gains a trailing axis with one term per direction.
    """
    momenta = as_points(p, state.dim)
    if contour.is_empty():
        shape = momenta.shape if per_component else momenta.shape[:-1]
        return np.zeros(shape, dtype=complex)

    def integrand(y, normal):
        flux = normal * state.grad_x_f(point, y, t)
        phases = np.exp(-1j * np.tensordot(y, momenta, axes=(1, -1)))
        terms = flux.reshape(flux.shape[:1] + (1,) * (phases.ndim - 1) + flux.shape[1:]) * phases[..., np.newaxis]
        return terms if per_component else terms.sum(axis=-1)

    return -1j * _prefactor(state) * surface_integral(contour, integrand)


def boundary_source(state, shape, x, p, t=0.0, resolution=DEFAULT_RESOLUTION, per_component=False):
    """The omega-boundary term S of dW/dt = -(p/m) . grad_x W + S, or its terms S_k"""
    point = as_points(x, shape.dim).reshape(shape.dim)
    momenta = as_points(p, shape.dim)
    if _degenerate(shape, point):
        return np.zeros(momenta.shape if per_component else momenta.shape[:-1])
    contour = omega_contour(shape, point, resolution)
    return _real(source_on_contour(state, point, p, contour, t, per_component), SOURCE_RESIDUE, 'S')


def _grad_x_w(state, shape, point, p, t):
    if shape.is_reference_box and hasattr(state, 'modes'):
        return wigner_box_grad_x(state, point, p, t)
    step = 1e-3 * shape.diameter
    columns = []
    for k in range(shape.dim):
        shift = np.zeros(shape.dim)
        shift[k] = step
        forward = wigner_direct(state, shape, point + shift, p, t)
        backward = wigner_direct(state, shape, point - shift, p, t)
        columns.append((forward - backward) / (2.0 * step))
    return np.stack(columns, axis=-1)


def eom_rhs(state, shape, x, p, t=0.0, resolution=DEFAULT_RESOLUTION):
    """Right-hand side of the billiard equation of motion, i.e. dW/dt"""
    point = as_points(x, shape.dim).reshape(shape.dim)
    momenta = as_points(p, shape.dim)
    if not shape.contains(point):
        return np.zeros(momenta.shape[:-1])
    transport = -np.einsum('...d,...d->...', momenta, _grad_x_w(state, shape, point, p, t))
    return transport / state.mass + boundary_source(state, shape, point, p, t, resolution)


# ========================================
# Fields
# ========================================

def current_field(state, shape, grid, t=0.0, w=None, resolution=DEFAULT_RESOLUTION):
    """(j_x, j_p) on every grid node; `w` is the Wigner field when already assembled"""
    if w is None:
        w = wigner_field(state, shape, grid, t)
    jx = current_x(w.values[..., np.newaxis], grid.p_points(), state.mass)

    if shape.dim == 1 and shape.is_reference_box and hasattr(state, 'modes'):
        def evaluate(x, p):
            return current_p_box(state, x, p, t)[..., np.newaxis]
    else:
        def evaluate(x, p):
            return current_p_surface(state, shape, x, p, t, resolution)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        jp = assemble_field(evaluate, grid, trailing=(grid.dim,))
    wall_nodes = 0
    for entry in caught:
        if issubclass(entry.category, RemovableSingularity):
            wall_nodes += 1
        else:
            warnings.warn_explicit(entry.message, entry.category, entry.filename, entry.lineno)
    if wall_nodes:
        logger.debug("j_p taken %g inside the wall at %d positions", WALL_OFFSET, wall_nodes)
    return PhaseVectorField(grid, np.concatenate([jx, jp], axis=-1), wall_nodes=wall_nodes)


def sign_law_violations(w, currents):
    """Grid nodes where sign(j_x,k) differs from sign(p_k W)"""
    expected = np.sign(currents.grid.p_points() * w.values[..., np.newaxis])
    return int(np.count_nonzero(np.sign(currents.jx) != expected))
