"""Fourth-order differencing and the continuity residual dW/dt + div j."""
import logging

import numpy as np

from wigner import ScalarField, wigner_box_dt_field, wigner_box_field
from .exceptions import CurrentError
from .flux import current_field
from .models import ContinuityReport

logger = logging.getLogger(__name__)

SEAM_TOLERANCE = 1e-9
NEGLIGIBLE = 1e-8

# first-derivative weights (times 1/12h) for stencils starting at offsets -2, -1, 0, -3, -4
CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
SECOND = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0
FIRST = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
PENULTIMATE = np.array([-1.0, 6.0, -18.0, 10.0, 3.0]) / 12.0
LAST = np.array([3.0, -16.0, 36.0, -48.0, 25.0]) / 12.0


def _stencil(values, spacing):
    out = np.empty_like(values)
    out[2:-2] = np.tensordot(
        CENTRAL, np.stack([values[i:len(values) - 4 + i] for i in range(5)]), axes=1,
    )
    head, tail = values[:5], values[-5:]
    out[0] = np.tensordot(FIRST, head, axes=1)
    out[1] = np.tensordot(SECOND, head, axes=1)
    out[-2] = np.tensordot(PENULTIMATE, tail, axes=1)
    out[-1] = np.tensordot(LAST, tail, axes=1)
    return out / spacing


def _pieces(coords, seams):
    """Index ranges [start, stop) that no seam cuts; a node on a seam closes one piece and opens the next"""
    spacing = coords[1] - coords[0]
    pieces, start = [], 0
    for seam in sorted(seams):
        if not coords[0] + SEAM_TOLERANCE * spacing < seam < coords[-1] - SEAM_TOLERANCE * spacing:
            continue
        index = int(np.searchsorted(coords, seam))
        if abs(coords[index] - seam) <= SEAM_TOLERANCE * spacing:
            pieces.append((start, index + 1))
        else:
            pieces.append((start, index))
        start = index
    pieces.append((start, len(coords)))
    return pieces


def derivative_4th(values, coords, axis=0, seams=()):
    """d/dx along `axis` with fourth-order stencils that never reach across a seam.

    Near seams and grid ends the stencils become one-sided. Pieces shorter than
    five nodes fall back to np.gradient.
    """
    coords = np.asarray(coords, dtype=float)
    moved = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    if moved.shape[0] != coords.size:
        raise ValueError(f"{coords.size} coordinates for an axis of length {moved.shape[0]}")
    spacing = coords[1] - coords[0]
    out = np.zeros_like(moved)
    for start, stop in _pieces(coords, seams):
        piece = moved[start:stop]
        if len(piece) >= 5:
            out[start:stop] = _stencil(piece, spacing)
        elif len(piece) >= 2:
            out[start:stop] = np.gradient(piece, spacing, axis=0, edge_order=2 if len(piece) >= 3 else 1)
    return np.moveaxis(out, 0, axis)


def continuity_residual(state, shape, grid, t=0.0, resolution=64):
    """dW/dt + div_x j_x + div_p j_p on the grid, judged on interior nodes.

    dW/dt comes from the energy phases; both divergences are differenced. The
    scale is max |dW/dt|, or max |div_x j_x| for stationary states.
    """
    if not (shape.is_reference_box and hasattr(state, 'modes')):
        raise CurrentError("continuity residual needs a box eigenstate expansion on [-1, 1]")
    w = wigner_box_field(state, grid, t)
    dw_dt = wigner_box_dt_field(state, grid, t).values
    currents = current_field(state, shape, grid, t, w=w, resolution=resolution)

    div_x = np.zeros(grid.shape)
    div_p = np.zeros(grid.shape)
    for k in range(grid.dim):
        seams = (shape.center[k], shape.lo[k], shape.hi[k])
        div_x += derivative_4th(currents.jx[..., k], grid.x_axes[k], axis=k, seams=seams)
        div_p += derivative_4th(currents.jp[..., k], grid.p_axes[k], axis=grid.dim + k)
    residual = dw_dt + div_x + div_p

    interior = tuple(slice(1, -1) for _ in grid.shape)
    max_abs = float(np.max(np.abs(residual[interior])))
    scale = float(np.max(np.abs(dw_dt[interior])))
    transport = float(np.max(np.abs(div_x[interior])))
    if scale <= NEGLIGIBLE * transport:
        scale = transport
    logger.debug("continuity on %s at t=%s: max %.3g, scale %.3g", grid, t, max_abs, scale)
    return ContinuityReport(ScalarField(grid, residual), max_abs, scale)
