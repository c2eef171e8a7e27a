"""Von Neumann entropy and the two-use mutual-information figure of merit.

For a channel spec and an input state the figure of merit is

    I = 2 log2(d) - S(output)        [bits]

the gap between the output entropy and its maximum on the d^2-dimensional
two-use space. Eigenvalues within EIGENVALUE_FLOOR of zero are clamped to
zero and the spectrum renormalized before taking logs; anything further
below zero signals an invalid density matrix upstream and raises.

For inputs supported on a single diagonal family the channel output is
block-diagonal in the coordinate-difference index (k - j) mod d, one d x d
block per sector. ``output_spectrum`` assembles those blocks directly from
the ansatz parameters and the single-use marginal, never forming the
d^2 x d^2 matrix, which keeps crossover searches cheap as d grows. The
dense route stays available through ``mutual_information``; the test suite
pins the two against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .channels import ChannelSpec, apply_channel, channel_marginal
from .matrices import EIGENVALUE_FLOOR, HERMITIAN_TOL
from .states import AnsatzParams

TRACE_TOL = 1e-10


@dataclass(frozen=True)
class EntropyResult:
    """Entropy in bits plus the clamped, renormalized spectrum (descending)."""

    entropy_bits: float
    eigenvalues: np.ndarray
    clamped_mass: float


def entropy_from_eigenvalues(eigenvalues: np.ndarray) -> EntropyResult:
    """Clamp small negatives, renormalize, and take -sum(lam * log2 lam)."""
    lam = np.asarray(eigenvalues, dtype=float).ravel()
    lowest = float(lam.min())
    if lowest < EIGENVALUE_FLOOR:
        raise ValueError(
            f"eigenvalue {lowest:.3e} below the floor {EIGENVALUE_FLOOR:.0e}: "
            "not a valid density-matrix spectrum"
        )
    total = float(lam.sum())
    if abs(total - 1.0) > TRACE_TOL:
        raise ValueError(f"spectrum sums to {total!r}, expected 1")
    clamped_mass = float(-lam[lam < 0.0].sum())
    lam = np.where(lam < 0.0, 0.0, lam)
    lam = lam / lam.sum()
    positive = lam[lam > 0.0]
    bits = float(-(positive * np.log2(positive)).sum())
    return EntropyResult(bits, np.sort(lam)[::-1], clamped_mass)


def von_neumann_entropy(rho: np.ndarray) -> EntropyResult:
    """Entropy of a Hermitian trace-one matrix, in bits."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"entropy input must be square, got shape {rho.shape}")
    defect = np.abs(rho - rho.conj().T).max()
    if defect > HERMITIAN_TOL:
        raise ValueError(f"entropy input is not Hermitian (defect {defect:.3e})")
    return entropy_from_eigenvalues(np.linalg.eigvalsh(rho))


def output_spectrum(spec: ChannelSpec, params: AnsatzParams) -> np.ndarray:
    """All d^2 output eigenvalues for a diagonal-family input, block by block.

    Block delta holds the output weight on the difference sector
    (k - j) mod d = delta. Each Kraus pair (m1, n1, m2, n2) moves the input
    family to the sector offset + m2 - m1 and contributes a rank-one update
    whose phase depends only on (n1 + n2) mod d, so the phase indices enter
    through the DFT of the marginal rows and the per-block work is O(d^2).
    """
    d = spec.d
    if params.d != d:
        raise ValueError(f"params are for d={params.d}, expected d={d}")
    q = channel_marginal(spec).q
    idx = np.arange(d)
    dft = np.exp(2j * np.pi * np.outer(idx, idx) / d)
    qhat = q @ dft
    row_weight = q.sum(axis=1)
    coeff = params.alphas * np.exp(1j * params.phis)
    tmat = (idx[:, None] - idx[None, :]) % d
    doubled = (2 * idx) % d
    spectrum = np.empty(d * d)
    for delta in range(d):
        block = np.zeros((d, d), dtype=complex)
        for m1 in range(d):
            m2 = (delta - params.offset + m1) % d
            gains = (1.0 - spec.mu) * qhat[m1] * qhat[m2]
            if m1 == m2:
                gains = gains + spec.mu * (
                    (1.0 - spec.nu) * qhat[m1, doubled] + spec.nu * row_weight[m1]
                )
            shifted = np.roll(coeff, m1)
            block += gains[tmat] * (shifted[:, None] * shifted.conj()[None, :])
        spectrum[delta * d : (delta + 1) * d] = np.linalg.eigvalsh(block)
    return spectrum


def mutual_information(spec: ChannelSpec, rho_in: np.ndarray) -> float:
    """Figure of merit via the dense channel application."""
    rho_out = apply_channel(spec, rho_in)
    return 2.0 * math.log2(spec.d) - von_neumann_entropy(rho_out).entropy_bits


def mutual_information_ansatz(spec: ChannelSpec, params: AnsatzParams) -> float:
    """Figure of merit via the blockwise spectrum; same value, no dense matrices."""
    result = entropy_from_eigenvalues(output_spectrum(spec, params))
    return 2.0 * math.log2(spec.d) - result.entropy_bits


@dataclass(frozen=True)
class MutualInfoPoint:
    mu: float
    bits: float
    state_label: str


def mutual_information_curve(
    spec_base: ChannelSpec,
    state: AnsatzParams | np.ndarray,
    mu_grid: np.ndarray,
    label: str | None = None,
) -> list[MutualInfoPoint]:
    """Evaluate the figure of merit over a memory grid for one input state.

    ``state`` is either ansatz parameters (blockwise route) or a dense
    density matrix. The grid must be nonempty, inside [0, 1] and strictly
    increasing.
    """
    grid = np.asarray(mu_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("mu grid must be a nonempty 1-d sequence")
    if grid.min() < 0.0 or grid.max() > 1.0:
        raise ValueError(f"mu grid must lie in [0, 1], got [{grid.min()}, {grid.max()}]")
    if grid.size > 1 and (np.diff(grid) <= 0.0).any():
        raise ValueError("mu grid must be strictly increasing")
    if label is None:
        label = "custom" if isinstance(state, AnsatzParams) else "density"
    points = []
    for mu in grid:
        spec = replace(spec_base, mu=float(mu))
        if isinstance(state, AnsatzParams):
            bits = mutual_information_ansatz(spec, state)
        else:
            bits = mutual_information(spec, state)
        points.append(MutualInfoPoint(float(mu), bits, label))
    return points
