"""Weyl-Heisenberg displacement operators on a d-dimensional space.

``displacement(d, m, n)`` is the unitary that shifts the computational basis
cyclically by ``m`` and applies a phase gradient with winding number ``n``:

    U(m, n) |k>  =  exp(2 pi i k n / d) |(k + m) mod d>

so the matrix has exactly one nonzero per column: entry (row, col) equals
exp(2 pi i col n / d) when row == (col + m) mod d and is zero otherwise.
The d^2 operators form a projective group: a product closes onto another
displacement up to a unit-modulus phase, and swapping two factors costs the
phase returned by ``commutation_phase``.

Because every U(m, n) is monomial, conjugating a matrix by one (or by a
tensor product of two) never needs a dense matrix product: it is a
permutation plus an entrywise phase, implemented by ``conjugate_monomial``.
The channel code leans on that fast path throughout.

Index arithmetic is reduced to nonnegative representatives mod d; in
particular ``-n`` always means ``(d - n) % d``.
"""

from __future__ import annotations

import numpy as np

IndexPair = tuple[int, int]


def _check_dimension(d: int) -> None:
    if not isinstance(d, (int, np.integer)):
        raise ValueError(f"dimension must be an integer, got {type(d).__name__}")
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")


def _check_index(d: int, m: int, n: int) -> None:
    _check_dimension(d)
    if not (0 <= m < d and 0 <= n < d):
        raise ValueError(f"displacement index ({m}, {n}) out of range for dimension {d}")


def displacement_perm_phase(d: int, m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Monomial form of U(m, n): column k maps to row perm[k] with factor phase[k]."""
    _check_index(d, m, n)
    k = np.arange(d)
    perm = (k + m) % d
    phase = np.exp(2j * np.pi * k * n / d)
    return perm, phase


def displacement(d: int, m: int, n: int) -> np.ndarray:
    """Dense d x d matrix of U(m, n)."""
    perm, phase = displacement_perm_phase(d, m, n)
    mat = np.zeros((d, d), dtype=complex)
    mat[perm, np.arange(d)] = phase
    return mat


def commutation_phase(d: int, a: IndexPair, b: IndexPair) -> complex:
    """Scalar c with U_a U_b = c * U_b U_a for index pairs a = (m, n), b = (m', n')."""
    m1, n1 = a
    m2, n2 = b
    _check_index(d, m1, n1)
    _check_index(d, m2, n2)
    return complex(np.exp(2j * np.pi * ((m2 * n1 - m1 * n2) % d) / d))


def two_qudit_perm_phase(d: int, left: IndexPair, right: IndexPair) -> tuple[np.ndarray, np.ndarray]:
    """Monomial form of U(left) (x) U(right) on the product basis |j>|k> -> j*d + k."""
    perm_l, phase_l = displacement_perm_phase(d, *left)
    perm_r, phase_r = displacement_perm_phase(d, *right)
    perm = (perm_l[:, None] * d + perm_r[None, :]).ravel()
    phase = (phase_l[:, None] * phase_r[None, :]).ravel()
    return perm, phase


def conjugate_monomial(rho: np.ndarray, perm: np.ndarray, phase: np.ndarray) -> np.ndarray:
    """Return M rho M^dag where M sends basis column c to phase[c] * e_perm[c].

    Entry (perm[a], perm[b]) of the result is phase[a] * conj(phase[b]) *
    rho[a, b]; nothing else moves, so the cost is one entrywise scatter.
    """
    weights = phase[:, None] * phase.conj()[None, :]
    out = np.zeros_like(rho)
    out[np.ix_(perm, perm)] = weights * rho
    return out
