from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .basis import basis_gradients, basis_values, mode_array
from .exceptions import InvalidState

NORM_TOLERANCE = 1e-12


class Wavefunction:
    """Free-particle wavefunction phi(x, t) that vanishes on the billiard surface.

    Subclasses provide `dim`, `mass`, `psi` and `grad_psi`; points are arrays
    shaped (..., dim).
    """
    dim: int
    mass: float

    def psi(self, points, t=0.0):
        raise NotImplementedError

    def grad_psi(self, points, t=0.0):
        raise NotImplementedError

    def f(self, x, y, t=0.0):
        """f(x, y, t) = phi*(x - y/2, t) phi(x + y/2, t)"""
        return np.conj(self.psi(x - 0.5 * y, t)) * self.psi(x + 0.5 * y, t)

    def grad_x_f(self, x, y, t=0.0):
        """Gradient of f in x at fixed y -> (..., dim)"""
        left, right = x - 0.5 * y, x + 0.5 * y
        return (
            np.conj(self.grad_psi(left, t)) * self.psi(right, t)[..., np.newaxis]
            + np.conj(self.psi(left, t))[..., np.newaxis] * self.grad_psi(right, t)
        )


@dataclass(frozen=True, eq=False)
class StateExpansion(Wavefunction):
    """phi(x, t) = sum_n c_n exp(-i E_n t) chi_n(x) on the reference box [-1, 1]^n"""
    modes: np.ndarray
    coeffs: np.ndarray
    mass: float = 1.0
    energies: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        modes = mode_array(self.modes)
        coeffs = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if len(modes) == 0:
            raise InvalidState("a state needs at least one mode")
        if len(modes) != len(coeffs):
            raise InvalidState(f"{len(modes)} modes but {len(coeffs)} coefficients")
        if np.any(modes < 1):
            raise InvalidState("mode indices start at 1 on every axis")
        if len({tuple(m) for m in modes}) != len(modes):
            raise InvalidState("mode indices must be distinct")
        if not self.mass > 0:
            raise InvalidState(f"mass must be positive, got {self.mass}")
        norm = float(np.sum(np.abs(coeffs) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidState(f"sum |c_n|^2 = {norm!r}, expected 1")
        object.__setattr__(self, 'modes', modes)
        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'mass', float(self.mass))
        object.__setattr__(
            self, 'energies', np.pi ** 2 * np.sum(modes.astype(float) ** 2, axis=1) / (8.0 * self.mass),
        )

    @classmethod
    def normalized(cls, modes, coeffs, mass=1.0):
        coeffs = np.asarray(coeffs, dtype=complex)
        return cls(modes, coeffs / np.linalg.norm(coeffs), mass)

    def __str__(self):
        terms = ', '.join(f"{tuple(m)}: {c:.4g}" for m, c in zip(self.modes.tolist(), self.coeffs))
        return f"StateExpansion({{{terms}}}, m={self.mass})"

    @property
    def dim(self):
        return self.modes.shape[1]

    def is_stationary(self):
        return np.ptp(self.energies) == 0.0

    def amplitudes(self, t=0.0):
        """c_n exp(-i E_n t)"""
        return self.coeffs * np.exp(-1j * self.energies * t)

    def psi(self, points, t=0.0):
        return basis_values(self.modes, points) @ self.amplitudes(t)

    def grad_psi(self, points, t=0.0):
        return np.einsum('...kd,k->...d', basis_gradients(self.modes, points), self.amplitudes(t))

    def dpsi_dt(self, points, t=0.0):
        return basis_values(self.modes, points) @ (-1j * self.energies * self.amplitudes(t))


@dataclass(frozen=True, eq=False)
class FunctionState(Wavefunction):
    """User-supplied evaluators for billiards without a shipped eigenbasis"""
    psi_fn: Callable
    grad_fn: Callable
    dim: int
    mass: float = 1.0

    def psi(self, points, t=0.0):
        return np.asarray(self.psi_fn(points, t), dtype=complex)

    def grad_psi(self, points, t=0.0):
        return np.asarray(self.grad_fn(points, t), dtype=complex)


def product_state(first, second):
    """Tensor product of two one-dimensional box states on the square"""
    if first.dim != 1 or second.dim != 1:
        raise InvalidState("product_state combines one-dimensional states")
    if first.mass != second.mass:
        raise InvalidState("factors of a product state must share the mass")
    modes = [(a, b) for a in first.modes[:, 0] for b in second.modes[:, 0]]
    coeffs = np.outer(first.coeffs, second.coeffs).reshape(-1)
    return StateExpansion(modes, coeffs / np.linalg.norm(coeffs), first.mass)
