"""Turn a run file into the shape, state, grid and times a command evaluates.

States live on the reference box [-1, 1]^n. A cube of half-side s centred at c
is handled by rescaling: x_ref = (x - c) / s, p_ref = s p, t_ref = t / s^2, with
W unchanged, j_x divided by s and j_p by s^3.
"""
import copy
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from django.conf import settings

from geometry import BilliardShape
from geometry.exceptions import InvalidShape
from spectral import StateExpansion, project_gaussian
from spectral.exceptions import SpectralError
from wigner import PhaseSpaceGrid
from .exceptions import ConfigError
from .forms import validate_run_config

logger = logging.getLogger(__name__)


# ========================================
# Run files
# ========================================

def parse_override(text):
    """'a.b=value' -> (['a', 'b'], value); the value is JSON when it parses, text otherwise"""
    key, sep, value = text.partition('=')
    if not sep or not key.strip():
        raise ConfigError(f"override {text!r} is not key=value")
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        parsed = value
    return key.strip().split('.'), parsed


def apply_overrides(raw, overrides):
    raw = copy.deepcopy(raw)
    for text in overrides or ():
        path, value = parse_override(text)
        node = raw
        for part in path[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"override {text!r}: {part} is not a section")
            node = child
        if isinstance(node.get(path[-1]), dict):
            raise ConfigError(f"override {text!r} would replace the section {path[-1]}")
        node[path[-1]] = value
    return raw


def load_raw_config(path, overrides=()):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read run file {path}: {exc.strerror}")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return apply_overrides(raw, overrides)


# ========================================
# Builders
# ========================================

@dataclass(frozen=True)
class Scaling:
    """Affine map from a cube billiard to the reference box"""
    center: np.ndarray
    factor: float

    def reference_grid(self, grid):
        return PhaseSpaceGrid(
            tuple((axis - c) / self.factor for axis, c in zip(grid.x_axes, self.center)),
            tuple(axis * self.factor for axis in grid.p_axes),
        )

    def reference_time(self, t):
        return t / self.factor ** 2

    def energy(self, reference_energy):
        return reference_energy / self.factor ** 2


def build_shape(cleaned):
    try:
        if cleaned['kind'] == 'polygon':
            return BilliardShape.polygon(cleaned['vertices'])
        if cleaned['kind'] == 'interval':
            return BilliardShape.interval(cleaned['lo'][0], cleaned['hi'][0])
        return BilliardShape.box(cleaned['lo'], cleaned['hi'])
    except InvalidShape as exc:
        raise ConfigError(f"shape: {exc}")


def build_scaling(shape):
    if shape.kind == 'polygon':
        raise ConfigError("shape: polygon billiards have no shipped eigenbasis; "
                          "evaluate them through the Python API with a FunctionState")
    half = 0.5 * (shape.hi - shape.lo)
    if not np.allclose(half, half[0], rtol=1e-12, atol=0.0):
        raise ConfigError("shape: a box must be a cube so one rescaling serves every axis")
    return Scaling(shape.center, float(half[0]))


def build_state(cleaned, mass, dim, scaling):
    modes = cleaned['modes']
    if len(modes[0]) != dim:
        raise ConfigError(f"state.modes: {len(modes[0])} indices per mode for a {dim}D billiard")
    try:
        if cleaned['kind'] == 'gaussian':
            p0 = cleaned['p0'] * dim if len(cleaned['p0']) == 1 else cleaned['p0']
            if len(p0) != dim:
                raise ConfigError(f"state.p0: {len(p0)} components for a {dim}D billiard")
            return project_gaussian(
                cleaned['a'] / scaling.factor,
                np.asarray(p0) * scaling.factor,
                modes,
                mass,
                order=settings.WIGNER_QUADRATURE_ORDER,
            )
        coeffs = np.array([complex(re, im) for re, im in cleaned['coeffs']])
        if cleaned.get('normalize'):
            return StateExpansion.normalized(modes, coeffs, mass)
        return StateExpansion(modes, coeffs, mass)
    except SpectralError as exc:
        raise ConfigError(f"state: {exc}")


def build_grid(cleaned, shape):
    x_ranges = cleaned['x_range']
    if x_ranges == [None]:
        x_ranges = [[lo, hi] for lo, hi in zip(shape.lo, shape.hi)]
    if len(x_ranges) == 1:
        x_ranges = x_ranges * shape.dim
    p_ranges = cleaned['p_range'] * shape.dim if len(cleaned['p_range']) == 1 else cleaned['p_range']
    if len(x_ranges) != shape.dim or len(p_ranges) != shape.dim:
        raise ConfigError(f"grid: ranges must come once or once per axis of the {shape.dim}D billiard")
    return PhaseSpaceGrid(
        tuple(np.linspace(lo, hi, cleaned['nx']) for lo, hi in x_ranges),
        tuple(np.linspace(lo, hi, cleaned['np']) for lo, hi in p_ranges),
    )


# ========================================
# Runs
# ========================================

@dataclass(frozen=True, eq=False)
class Run:
    raw: dict
    config: dict
    shape: BilliardShape
    scaling: Scaling
    state: StateExpansion
    grid: PhaseSpaceGrid
    out_dir: Path

    @property
    def reference_shape(self):
        return BilliardShape.reference(self.shape.dim)

    @property
    def reference_grid(self):
        return self.scaling.reference_grid(self.grid)

    @property
    def times(self):
        return self.config['times']

    def reference_time(self, t):
        return self.scaling.reference_time(t)

    def describe_state(self):
        return {
            'modes': self.state.modes.tolist(),
            'coeffs': [[c.real, c.imag] for c in self.state.coeffs.tolist()],
            'energies': [self.scaling.energy(e) for e in self.state.energies.tolist()],
            'mass': self.state.mass,
        }


def prepare_run(raw, out=None):
    """Validate a raw run configuration and build everything a command needs"""
    config = validate_run_config(raw)
    shape = build_shape(config['shape'])
    scaling = build_scaling(shape)
    state = build_state(config['state'], config['mass'], shape.dim, scaling)
    grid = build_grid(config['grid'], shape)
    out_dir = Path(out or config.get('out') or settings.WIGNER_OUTPUT_DIR)
    logger.debug("prepared %s with %s on %s", shape, state, grid)
    return Run(raw, config, shape, scaling, state, grid, out_dir)
