from dataclasses import dataclass

import numpy as np

from wigner import ScalarField


@dataclass(frozen=True)
class CurrentSample:
    """Wigner current j = (jx, jp) at one phase-space point and time"""
    x: np.ndarray
    p: np.ndarray
    t: float
    w: float
    jx: np.ndarray
    jp: np.ndarray

    def __post_init__(self):
        for label in ('jx', 'jp'):
            value = np.atleast_1d(np.asarray(getattr(self, label), dtype=float))
            if value.shape != np.shape(np.atleast_1d(self.p)):
                raise ValueError(f"{label} needs one component per momentum axis")
            if not np.all(np.isfinite(value)):
                raise ValueError(f"{label} is not finite at x={self.x}, p={self.p}")
            object.__setattr__(self, label, value)


@dataclass(frozen=True, eq=False)
class ContinuityReport:
    """dW/dt + div j on a grid with the norms used to judge it"""
    residual: ScalarField
    max_abs: float
    scale: float

    @property
    def max_rel(self):
        return self.max_abs / self.scale if self.scale > 0 else self.max_abs

    def as_dict(self):
        return {'max_abs': self.max_abs, 'max_rel': self.max_rel, 'scale': self.scale}
