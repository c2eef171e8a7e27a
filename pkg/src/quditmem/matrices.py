"""Shared dense complex-matrix helpers: validation and random sampling."""

from __future__ import annotations

import numpy as np

# A matrix counts as unitary / Hermitian / trace-one only up to these
# entrywise bounds; eigenvalues may dip this far below zero before a matrix
# is rejected as not positive semidefinite.
UNITARY_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


def is_unitary(mat: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        return False
    gram = mat.conj().T @ mat
    return bool(np.abs(gram - np.eye(mat.shape[0])).max() <= tol)


def validate_density(rho: np.ndarray, dim: int | None = None) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the matrix as complex.

    Raises ValueError naming the violated property. ``dim`` pins the expected
    side length when the caller knows it.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise ValueError(f"density matrix has side {rho.shape[0]}, expected {dim}")
    herm_defect = np.abs(rho - rho.conj().T).max()
    if herm_defect > HERMITIAN_TOL:
        raise ValueError(f"density matrix is not Hermitian (defect {herm_defect:.3e})")
    trace = rho.trace()
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix has trace {trace}, expected 1")
    lowest = float(np.linalg.eigvalsh(rho).min())
    if lowest < EIGENVALUE_FLOOR:
        raise ValueError(
            f"density matrix has eigenvalue {lowest:.3e} below the floor {EIGENVALUE_FLOOR:.0e}"
        )
    return rho


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random density matrix from a Ginibre factor of the given rank."""
    rank = dim if rank is None else rank
    factor = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = factor @ factor.conj().T
    return rho / rho.trace().real


def random_pure_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR of a Ginibre matrix with phase fixing."""
    factor = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(factor)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
