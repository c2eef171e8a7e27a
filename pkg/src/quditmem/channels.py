"""Correlated two-use noise channels built from displacement errors.

Two single-use noise families share one strength knob eta:

* ``qd`` (depolarizing): the no-error outcome (0, 0) has probability p and
  the remaining d^2 - 1 displacements share the rest uniformly, q each,
  with eta = p - q in [-1/(d^2 - 1), 1].
* ``qcd`` (quasi-classical depolarizing): the outcome probability depends
  only on the shift index m, never on the phase index n; the m = 0 row has
  p per entry and the others q, with eta = d * (p - q) in [-1/(d - 1), 1].

Two consecutive uses draw their error indices from a Markov-type joint
distribution with memory weight mu:

    p[m, n, m', n'] = (1 - mu) q[m, n] q[m', n']
                      + mu q[m, n] delta(m, m')
                        ((1 - nu) delta(n, n') + nu delta(n, (d - n') % d))

so with probability mu the second use repeats the first shift exactly and
repeats the phase index either equal (weight 1 - nu) or negated mod d
(weight nu). For d = 2 negation is the identity, so nu drops out.

``apply_channel`` never materializes the d^4-term Kraus sum: the
uncorrelated part factorizes into one single-use pass per tensor factor and
each correlated part is a d^2-term sum, every term a monomial conjugation.
``apply_channel_naive`` is the literal d^4-term sum, kept as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .displacement import (
    _check_dimension,
    conjugate_monomial,
    displacement,
    two_qudit_perm_phase,
)
from .matrices import validate_density

# Structural identities (probability normalization, trace preservation,
# hermiticity) are held to STRUCTURAL_TOL; output eigenvalues may sit this
# far below zero before a matrix is rejected.
STRUCTURAL_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


class Model(str, Enum):
    QD = "qd"
    QCD = "qcd"


def eta_range(model: Model, d: int) -> tuple[float, float]:
    """Valid closed eta interval for the given noise family and dimension."""
    _check_dimension(d)
    if Model(model) is Model.QD:
        return (-1.0 / (d * d - 1), 1.0)
    return (-1.0 / (d - 1), 1.0)


def _check_unit_interval(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name}={value} out of range: valid range is [0, 1]")


@dataclass(frozen=True)
class ChannelSpec:
    """Full parameter set of a two-use channel: family, dimension, eta, mu, nu."""

    model: Model
    d: int
    eta: float
    mu: float
    nu: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "model", Model(self.model))
        _check_dimension(self.d)
        lo, hi = eta_range(self.model, self.d)
        if not lo <= self.eta <= hi:
            raise ValueError(
                f"eta={self.eta} out of range for model={self.model.value}, d={self.d}: "
                f"valid range is [{lo:.6g}, {hi:.6g}]"
            )
        _check_unit_interval("mu", self.mu)
        _check_unit_interval("nu", self.nu)


@dataclass(frozen=True)
class MarginalTable:
    """Single-use error distribution q[m, n] over the d^2 displacement indices."""

    d: int
    q: np.ndarray

    def __post_init__(self) -> None:
        q = np.asarray(self.q, dtype=float)
        object.__setattr__(self, "q", q)
        if q.shape != (self.d, self.d):
            raise ValueError(f"marginal table must have shape ({self.d}, {self.d}), got {q.shape}")
        if q.min() < 0.0:
            raise ValueError(f"marginal table has negative entry {q.min()}")
        if abs(q.sum() - 1.0) > STRUCTURAL_TOL:
            raise ValueError(f"marginal table sums to {q.sum()}, expected 1")


def qd_marginal(d: int, eta: float) -> MarginalTable:
    """Depolarizing-family marginal: p at (0, 0), uniform q elsewhere."""
    lo, hi = eta_range(Model.QD, d)
    if not lo <= eta <= hi:
        raise ValueError(f"eta={eta} out of range for model=qd, d={d}: valid range is [{lo:.6g}, {hi:.6g}]")
    p = (eta * (d * d - 1) + 1.0) / (d * d)
    q = (1.0 - p) / (d * d - 1)
    table = np.full((d, d), q)
    table[0, 0] = p
    # eta at a boundary can land a hair below zero in floats
    table[table < 0.0] = 0.0
    return MarginalTable(d, table)


def qcd_marginal(d: int, eta: float) -> MarginalTable:
    """Quasi-classical-family marginal: the m = 0 row carries p per entry, others q."""
    lo, hi = eta_range(Model.QCD, d)
    if not lo <= eta <= hi:
        raise ValueError(f"eta={eta} out of range for model=qcd, d={d}: valid range is [{lo:.6g}, {hi:.6g}]")
    p = (1.0 + eta * (d - 1)) / (d * d)
    q = (1.0 - eta) / (d * d)
    table = np.full((d, d), q)
    table[0, :] = p
    table[table < 0.0] = 0.0
    return MarginalTable(d, table)


def channel_marginal(spec: ChannelSpec) -> MarginalTable:
    if spec.model is Model.QD:
        return qd_marginal(spec.d, spec.eta)
    return qcd_marginal(spec.d, spec.eta)


@dataclass(frozen=True)
class JointProbTable:
    """Two-use error distribution p[m, n, m', n'] as a dense (d, d, d, d) array."""

    d: int
    p: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=float)
        object.__setattr__(self, "p", p)
        if p.shape != (self.d,) * 4:
            raise ValueError(f"joint table must have shape {(self.d,) * 4}, got {p.shape}")
        if p.min() < 0.0:
            raise ValueError(f"joint table has negative entry {p.min()}")
        if abs(p.sum() - 1.0) > STRUCTURAL_TOL:
            raise ValueError(f"joint table sums to {p.sum()}, expected 1")


def joint_probability(marginal: MarginalTable, mu: float, nu: float) -> JointProbTable:
    """Markov-correlated two-use distribution over pairs of displacement indices."""
    _check_unit_interval("mu", mu)
    _check_unit_interval("nu", nu)
    d, q = marginal.d, marginal.q
    p = (1.0 - mu) * (q.reshape(d, d, 1, 1) * q.reshape(1, 1, d, d))
    m_idx, n_idx = np.indices((d, d))
    p[m_idx, n_idx, m_idx, n_idx] += mu * (1.0 - nu) * q
    p[m_idx, n_idx, m_idx, (-n_idx) % d] += mu * nu * q
    return JointProbTable(d, p)


def _apply_single_use(d: int, q: np.ndarray, rho: np.ndarray, side: int) -> np.ndarray:
    """One single-use pass of the q-weighted displacement noise on one tensor factor."""
    out = np.zeros_like(rho)
    for m in range(d):
        for n in range(d):
            weight = q[m, n]
            if weight == 0.0:
                continue
            pair = ((m, n), (0, 0)) if side == 0 else ((0, 0), (m, n))
            perm, phase = two_qudit_perm_phase(d, *pair)
            out += weight * conjugate_monomial(rho, perm, phase)
    return out


def apply_channel(spec: ChannelSpec, rho: np.ndarray) -> np.ndarray:
    """Two-use channel output for a d^2 x d^2 input density matrix.

    Decomposed as (1 - mu) x (independent single-use noise on each factor)
    plus the mu-weighted matched-pair sums, so the term count is O(d^2).
    """
    rho = validate_density(rho, dim=spec.d**2)
    d, mu, nu = spec.d, spec.mu, spec.nu
    q = channel_marginal(spec).q
    out = np.zeros((d * d, d * d), dtype=complex)
    if mu < 1.0:
        both_sides = _apply_single_use(d, q, _apply_single_use(d, q, rho, side=0), side=1)
        out += (1.0 - mu) * both_sides
    if mu > 0.0:
        for m in range(d):
            for n in range(d):
                weight = q[m, n]
                if weight == 0.0:
                    continue
                if nu < 1.0:
                    perm, phase = two_qudit_perm_phase(d, (m, n), (m, n))
                    out += (mu * (1.0 - nu) * weight) * conjugate_monomial(rho, perm, phase)
                if nu > 0.0:
                    perm, phase = two_qudit_perm_phase(d, (m, n), (m, (d - n) % d))
                    out += (mu * nu * weight) * conjugate_monomial(rho, perm, phase)
    return out


def apply_channel_naive(spec: ChannelSpec, rho: np.ndarray) -> np.ndarray:
    """Literal d^4-term Kraus sum. Oracle for apply_channel; practical for d <= 4."""
    rho = validate_density(rho, dim=spec.d**2)
    d = spec.d
    joint = joint_probability(channel_marginal(spec), spec.mu, spec.nu)
    out = np.zeros((d * d, d * d), dtype=complex)
    for m1, n1, m2, n2 in np.ndindex(d, d, d, d):
        weight = joint.p[m1, n1, m2, n2]
        kraus = np.kron(displacement(d, m1, n1), displacement(d, m2, n2))
        out += weight * (kraus @ rho @ kraus.conj().T)
    return out
