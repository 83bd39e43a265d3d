"""Verification suites driven by the `check` command.

Each suite measures one maximum and compares it to a tolerance; suites run on
the reference box, with the configured state, grid and times.
"""
import logging
from dataclasses import asdict, dataclass, field

import numpy as np
from django.conf import settings

from current import continuity_residual, current_p_box, current_p_surface, delta_prime_equivalence, eom_rhs
from geometry import BilliardShape
from spectral import product_state
from wigner import (
    PhaseSpaceGrid,
    marginals,
    momentum_density,
    position_density,
    total_probability,
    wigner_box_analytic,
    wigner_box_dt,
    wigner_box_field,
    wigner_direct,
)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES = {
    'oracle': 1e-6,
    'marginals': 1e-4,
    'normalization': 1e-4,
    'continuity': 1e-3,
    'stationary': 1e-6,
    'deltaprime': 1e-8,
    'deltaprime2d': 1e-4,
    'separability2d': 1e-8,
    'separability_current': 1e-4,
}
SAMPLES = 20
SAMPLES_2D = 5
SEPARABILITY_NODES = 21
SEPARABILITY_RESOLUTION = 1024


@dataclass
class CheckResult:
    name: str
    measured: float
    tolerance: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(np.isfinite(self.measured) and self.measured <= self.tolerance)

    def as_dict(self):
        data = asdict(self)
        data['measured'] = float(self.measured) if np.isfinite(self.measured) else None
        data['passed'] = self.passed
        return data


class CheckSuite:
    """Runs named checks for one prepared run"""

    def __init__(self, run):
        self.run = run
        self.shape = run.reference_shape
        self.state = run.state
        self.grid = run.reference_grid
        self.times = [run.reference_time(t) for t in run.times]
        self.tolerances = {**DEFAULT_TOLERANCES, **run.config.get('tolerances', {})}
        self.resolution = run.config.get('resolution') or 64
        self.rng = np.random.default_rng(run.config.get('seed') or 0)

    def run_checks(self, names):
        results = []
        for name in names:
            logger.info("running check %s", name)
            results.extend(getattr(self, f"check_{name}")())
        return results

    def _sample_positions(self, count):
        return self.rng.uniform(-1.0, 1.0, size=(count, self.shape.dim))

    def _sample_momenta(self, count):
        lows = [axis[0] for axis in self.grid.p_axes]
        highs = [axis[-1] for axis in self.grid.p_axes]
        return self.rng.uniform(lows, highs, size=(count, self.shape.dim))

    def _squeeze(self, point):
        return point[0] if self.shape.dim == 1 else point

    # ========================================
    # Suites
    # ========================================

    def check_oracle(self):
        worst = 0.0
        momenta = self.grid.p_values()
        positions = self.grid.x_values()
        for t in self.times:
            for index in np.ndindex(*self.grid.x_shape):
                x = positions[index]
                analytic = wigner_box_analytic(self.state, x, momenta, t)
                direct = wigner_direct(
                    self.state, self.shape, x, momenta, t,
                    tol=settings.WIGNER_ORACLE_TOLERANCE,
                    max_nodes=settings.WIGNER_MAX_QUADRATURE_NODES,
                )
                worst = max(worst, float(np.max(np.abs(analytic - direct))))
        return [CheckResult('oracle', worst, self.tolerances['oracle'])]

    def check_marginals(self):
        worst_x = worst_p = worst_norm = 0.0
        for t in self.times:
            w = wigner_box_field(self.state, self.grid, t)
            density_x, density_p = marginals(w)
            exact_x = position_density(self.state, self.grid, t)
            exact_p = momentum_density(self.state, self.grid, t)
            worst_x = max(worst_x, float(np.max(np.abs(density_x - exact_x)) / np.max(exact_x)))
            worst_p = max(worst_p, float(np.max(np.abs(density_p - exact_p)) / np.max(exact_p)))
            worst_norm = max(worst_norm, abs(total_probability(w) - 1.0))
        return [
            CheckResult('marginals.position', worst_x, self.tolerances['marginals']),
            CheckResult('marginals.momentum', worst_p, self.tolerances['marginals']),
            CheckResult('normalization', worst_norm, self.tolerances['normalization']),
        ]

    def check_continuity(self):
        if self.state.is_stationary():
            return [CheckResult('continuity', self._stationary_rhs(), self.tolerances['stationary'],
                                {'stationary': True})]
        worst = 0.0
        for t in self.times:
            report = continuity_residual(self.state, self.shape, self.grid, t, self.resolution)
            worst = max(worst, report.max_rel)
        return [CheckResult('continuity', worst, self.tolerances['continuity'], {'stationary': False})]

    def _stationary_rhs(self):
        worst = 0.0
        momenta = self.grid.p_values()
        positions = self.grid.x_values()
        for t in self.times:
            for index in np.ndindex(*self.grid.x_shape):
                rhs = eom_rhs(self.state, self.shape, positions[index], momenta, t, self.resolution)
                worst = max(worst, float(np.max(np.abs(rhs))))
        return worst

    def check_stationary(self):
        """eom_rhs equals the analytic dW/dt; for eigenstates W also stays put"""
        worst = 0.0
        momenta = self.grid.p_values()
        positions = self.grid.x_values()
        for t in self.times:
            for index in np.ndindex(*self.grid.x_shape):
                x = positions[index]
                rhs = eom_rhs(self.state, self.shape, x, momenta, t, self.resolution)
                worst = max(worst, float(np.max(np.abs(rhs - wigner_box_dt(self.state, x, momenta, t)))))
        results = [CheckResult('stationary.eom', worst, self.tolerances['stationary'])]
        if self.state.is_stationary():
            drift = np.max(np.abs(
                wigner_box_field(self.state, self.grid, 0.0).values
                - wigner_box_field(self.state, self.grid, 1.0).values
            ))
            results.append(CheckResult('stationary.drift', float(drift), 1e-12))
        return results

    def check_deltaprime(self):
        two_d = self.shape.dim == 2
        count = SAMPLES_2D if two_d else SAMPLES
        worst = 0.0
        for x, p, t in zip(self._sample_positions(count), self._sample_momenta(count),
                           self.rng.choice(self.times, size=count)):
            lhs, rhs = delta_prime_equivalence(
                self.state, self.shape, self._squeeze(x), self._squeeze(p), t, self.resolution,
            )
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        tolerance = self.tolerances['deltaprime2d' if two_d else 'deltaprime']
        return [CheckResult('deltaprime', worst, tolerance, {'samples': count})]

    def check_separability2d(self):
        """W of the product state on the square factorises into the 1D Wigner functions"""
        if self.state.dim != 1:
            return [CheckResult('separability2d', np.inf, self.tolerances['separability2d'],
                                {'error': 'needs a one-dimensional state to build the product from'})]
        square = product_state(self.state, self.state)
        p_low, p_high = self.grid.p_axes[0][0], self.grid.p_axes[0][-1]
        axis_x = np.linspace(-1.0, 1.0, SEPARABILITY_NODES)
        axis_p = np.linspace(p_low, p_high, SEPARABILITY_NODES)
        spot_grid = PhaseSpaceGrid((axis_x, axis_x), (axis_p, axis_p))
        t = self.times[0]
        factor = np.array([wigner_box_analytic(self.state, x, axis_p, t) for x in axis_x])
        expected = np.einsum('ac,bd->abcd', factor, factor)
        worst = float(np.max(np.abs(wigner_box_field(square, spot_grid, t).values - expected)))

        current_gap = 0.0
        shape = BilliardShape.reference(2)
        for x, p in zip(self.rng.uniform(-0.9, 0.9, size=(3, 2)), self.rng.uniform(p_low, p_high, size=(3, 2))):
            jp = current_p_surface(square, shape, x, p, t, resolution=SEPARABILITY_RESOLUTION)[0]
            separated = current_p_box(self.state, x[0], p[0], t) * wigner_box_analytic(self.state, x[1], p[1], t)
            current_gap = max(current_gap, abs(float(jp - separated)))
        return [
            CheckResult('separability2d', worst, self.tolerances['separability2d']),
            CheckResult('separability2d.current', current_gap, self.tolerances['separability_current']),
        ]
