"""W = 0 contours by marching squares and the check that they separate opposite x-currents."""
import numpy as np
from scipy.interpolate import RegularGridInterpolator
from skimage import measure


def zero_contours(grid, values):
    """Polylines of W = 0 in (x, p) coordinates for a one-dimensional billiard"""
    if grid.dim != 1:
        raise ValueError("zero contours are extracted for one-dimensional billiards")
    x_axis, p_axis = grid.x_axes[0], grid.p_axes[0]
    lines = measure.find_contours(np.asarray(values, dtype=float), 0.0)
    return [
        np.column_stack([
            np.interp(line[:, 0], np.arange(x_axis.size), x_axis),
            np.interp(line[:, 1], np.arange(p_axis.size), p_axis),
        ])
        for line in lines
    ]


def crossing_violations(grid, values, segments, offset=1.0, floor=1e-12):
    """(checked, violations): sample W one cell either side of every polyline segment.

    j_x = p W / m flips direction across a contour when W changes sign there.
    Segments whose samples leave the grid, sit on p = 0 or see |W| <= floor
    are not checked.
    """
    x_axis, p_axis = grid.x_axes[0], grid.p_axes[0]
    spacing = np.array([x_axis[1] - x_axis[0], p_axis[1] - p_axis[0]])
    interpolate = RegularGridInterpolator((x_axis, p_axis), values, bounds_error=False, fill_value=np.nan)
    checked = violations = 0
    for line in segments:
        if len(line) < 2:
            continue
        middle = 0.5 * (line[1:] + line[:-1])
        along = (line[1:] - line[:-1]) / spacing
        normal = np.column_stack([-along[:, 1], along[:, 0]])
        length = np.linalg.norm(normal, axis=1)
        usable = length > 0
        normal = normal[usable] / length[usable, np.newaxis] * spacing * offset
        middle = middle[usable]
        ahead = interpolate(middle + normal)
        behind = interpolate(middle - normal)
        jx_ahead = np.sign(middle[:, 1] * ahead)
        jx_behind = np.sign(middle[:, 1] * behind)
        valid = (
            np.isfinite(ahead) & np.isfinite(behind)
            & (np.abs(ahead) > floor) & (np.abs(behind) > floor)
            & (middle[:, 1] != 0.0)
        )
        checked += int(valid.sum())
        violations += int(np.count_nonzero(valid & (jx_ahead == jx_behind)))
    return checked, violations
