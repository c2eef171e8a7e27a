"""Two-qudit input states on the diagonal families, and the phase-averaging map.

The two-use Hilbert space is ordered |j>|k| -> index j*d + k. Every state
built here lives on one diagonal family

    |psi> = sum_j alphas[j] * exp(i phis[j]) |j>|j + offset mod d>

with nonnegative moduli ``alphas`` (squares summing to one) and free phases.
``interpolating_state`` walks a one-parameter slice of that family from the
bare product state |00> (angle 0) through the maximally entangled state,
reached where cos(angle)^2 = 1/d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .displacement import _check_dimension
from .matrices import validate_density

NORM_TOL = 1e-14


@dataclass(frozen=True)
class AnsatzParams:
    """Moduli, phases and diagonal offset of a single-family pure state."""

    alphas: np.ndarray
    phis: np.ndarray
    offset: int = 0

    def __post_init__(self) -> None:
        alphas = np.asarray(self.alphas, dtype=float)
        phis = np.asarray(self.phis, dtype=float)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "phis", phis)
        if alphas.ndim != 1 or alphas.size < 2:
            raise ValueError("alphas must be a 1-d sequence of length >= 2")
        if phis.shape != alphas.shape:
            raise ValueError(
                f"phis must match alphas in length, got {phis.shape} vs {alphas.shape}"
            )
        if alphas.min() < 0.0:
            raise ValueError(f"alphas must be nonnegative, got minimum {alphas.min()}")
        norm = float(np.sum(alphas**2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"sum of alphas^2 must be 1 within {NORM_TOL:.0e}, got {norm!r}")
        if not 0 <= self.offset < alphas.size:
            raise ValueError(f"offset={self.offset} out of range for d={alphas.size}")

    @property
    def d(self) -> int:
        return self.alphas.size


@dataclass(frozen=True)
class PureState:
    """Normalized pure state on the d^2-dimensional two-use space."""

    d: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if amp.shape != (self.d * self.d,):
            raise ValueError(f"amplitudes must have length d^2 = {self.d**2}, got {amp.shape}")
        norm = float(np.sum(np.abs(amp) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 must be 1 within {NORM_TOL:.0e}, got {norm!r}")


def product_params(d: int) -> AnsatzParams:
    """|00>: all weight on the first level."""
    _check_dimension(d)
    alphas = np.zeros(d)
    alphas[0] = 1.0
    return AnsatzParams(alphas, np.zeros(d))


def max_entangled_params(d: int) -> AnsatzParams:
    """Uniform moduli 1/sqrt(d) with zero phases."""
    _check_dimension(d)
    return AnsatzParams(np.full(d, 1.0 / math.sqrt(d)), np.zeros(d))


def interpolating_params(d: int, angle: float) -> AnsatzParams:
    """cos(angle) on level 0 and sin(angle)/sqrt(d - 1) on each other level.

    ``angle`` is in radians over [0, pi/2]; angle = 0 is the product state and
    cos(angle)^2 = 1/d the maximally entangled one.
    """
    _check_dimension(d)
    if not 0.0 <= angle <= math.pi / 2:
        raise ValueError(f"angle={angle} out of range: valid range is [0, pi/2]")
    alphas = np.full(d, math.sin(angle) / math.sqrt(d - 1))
    alphas[0] = math.cos(angle)
    return AnsatzParams(alphas, np.zeros(d))


def ansatz_state(d: int, params: AnsatzParams) -> PureState:
    """Amplitudes of the diagonal-family state on the product basis."""
    _check_dimension(d)
    if params.d != d:
        raise ValueError(f"params are for d={params.d}, expected d={d}")
    amp = np.zeros(d * d, dtype=complex)
    j = np.arange(d)
    amp[j * d + (j + params.offset) % d] = params.alphas * np.exp(1j * params.phis)
    return PureState(d, amp)


def interpolating_state(d: int, angle: float) -> PureState:
    return ansatz_state(d, interpolating_params(d, angle))


def density_from_pure(state: PureState) -> np.ndarray:
    return np.outer(state.amplitudes, state.amplitudes.conj())


def averaging_map(d: int, rho: np.ndarray) -> np.ndarray:
    """Phase twirl that projects onto the diagonal families.

    Averages conjugation by U(0, n) on the first factor paired with its
    conjugate U(0, (d - n) % d) on the second. Matrix elements between
    different coordinate-difference sectors average to zero, every
    single-family state picks up only a global phase per term, and the map
    is idempotent.
    """
    _check_dimension(d)
    rho = validate_density(rho, dim=d * d)
    j = np.arange(d)
    out = np.zeros_like(rho)
    for n in range(d):
        first = np.exp(2j * np.pi * j * n / d)
        diag = (first[:, None] * first.conj()[None, :]).ravel()
        out += (diag[:, None] * diag.conj()[None, :]) * rho
    return out / d
