"""CSV and JSON writers. Every file is written to a temporary sibling and renamed into place."""
import json
import logging
import os
import tempfile
import warnings
from collections import Counter
from pathlib import Path

import numpy as np
import pandas as pd
from django.conf import settings

import wigner_billiards
from .exceptions import ExportError

logger = logging.getLogger(__name__)


def _atomic_write(path, write):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(handle, 'w', newline='') as stream:
            write(stream)
        os.replace(temporary, path)
    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise
    logger.debug("wrote %s", path)
    return path


def write_frame(frame, path):
    numeric = frame.select_dtypes(include='number').to_numpy(dtype=float)
    if not np.all(np.isfinite(numeric)):
        raise ExportError(f"refusing to write NaN or Inf to {path}")
    return _atomic_write(
        path, lambda stream: frame.to_csv(stream, index=False, float_format=settings.WIGNER_FLOAT_FORMAT),
    )


def write_json(data, path):
    text = json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + '\n'
    return _atomic_write(path, lambda stream: stream.write(text))


# ========================================
# Frames
# ========================================

def _axis_labels(prefix, dim):
    return [prefix] if dim == 1 else [f"{prefix}{k + 1}" for k in range(dim)]


def phase_space_columns(grid):
    """One column per x and p axis, rows in C order of the grid"""
    axes = np.meshgrid(*grid.x_axes, *grid.p_axes, indexing='ij')
    labels = _axis_labels('x', grid.dim) + _axis_labels('p', grid.dim)
    return {label: axis.ravel() for label, axis in zip(labels, axes)}


def wigner_frame(grid, values):
    columns = phase_space_columns(grid)
    columns['W'] = np.asarray(values).ravel()
    return pd.DataFrame(columns)


def wavefunction_frame(grid, psi):
    """Rows (x, psi_re, psi_im, density) over the x nodes of the grid"""
    axes = np.meshgrid(*grid.x_axes, indexing='ij')
    columns = {label: axis.ravel() for label, axis in zip(_axis_labels('x', grid.dim), axes)}
    psi = np.asarray(psi, dtype=complex).ravel()
    columns.update(psi_re=psi.real, psi_im=psi.imag, density=np.abs(psi) ** 2)
    return pd.DataFrame(columns)


def current_frame(grid, values, currents):
    frame = wigner_frame(grid, values)
    for label, k in zip(_axis_labels('jx', grid.dim), range(grid.dim)):
        frame[label] = currents[..., k].ravel()
    for label, k in zip(_axis_labels('jp', grid.dim), range(grid.dim)):
        frame[label] = currents[..., grid.dim + k].ravel()
    return frame


def contour_frame(segments):
    """Polylines as rows (segment, x, p)"""
    rows = [
        pd.DataFrame({'segment': index, 'x': line[:, 0], 'p': line[:, 1]})
        for index, line in enumerate(segments)
    ]
    if not rows:
        return pd.DataFrame({'segment': pd.Series(dtype=int), 'x': pd.Series(dtype=float),
                             'p': pd.Series(dtype=float)})
    return pd.concat(rows, ignore_index=True)


def sidecar(run, command, files, extra=None, caught=None):
    """Everything needed to repeat the run: the raw config echo, the tool version and the state.

    `caught` is the WarningLog of the run; its counts go under "warnings".
    """
    data = {
        'command': command,
        'version': wigner_billiards.__version__,
        'config': run.raw,
        'state': run.describe_state(),
        'grid': run.grid.describe(),
        'times': run.times,
        'tolerances': {
            'oracle': settings.WIGNER_ORACLE_TOLERANCE,
            'max_quadrature_nodes': settings.WIGNER_MAX_QUADRATURE_NODES,
            'quadrature_order': settings.WIGNER_QUADRATURE_ORDER,
        },
        'files': [Path(f).name for f in files],
        'warnings': caught.as_dict() if caught is not None else WarningLog().as_dict(),
    }
    data.update(extra or {})
    return data


# ========================================
# Warnings
# ========================================

TRACKED_WARNINGS = ('RemovableSingularity', 'OutOfDomain', 'NodeOnAxis')


class WarningLog:
    """Collects the warnings raised while a command runs and counts them by category.

    Used as a context manager around the evaluation; counts that a field
    already carries (such as PhaseVectorField.wall_nodes) are added with `add`.
    """

    def __init__(self):
        self.counts = Counter({name: 0 for name in TRACKED_WARNINGS})
        self._catcher = None
        self._caught = []

    def __enter__(self):
        self._catcher = warnings.catch_warnings(record=True)
        self._caught = self._catcher.__enter__()
        warnings.simplefilter('always')
        return self

    def __exit__(self, *exc_info):
        self._catcher.__exit__(*exc_info)
        for entry in self._caught:
            logger.warning("%s: %s", entry.category.__name__, entry.message)
        return False

    def add(self, category, count):
        self.counts[category] += int(count)

    def as_dict(self):
        counts = Counter(self.counts)
        counts.update(entry.category.__name__ for entry in self._caught)
        return dict(sorted(counts.items()))
