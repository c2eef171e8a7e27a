"""Locate the memory value where entangled inputs overtake product inputs.

``delta_I(spec, mu)`` is I(maximally entangled) - I(product) at memory mu.
``find_crossover`` samples it on a uniform grid over [0, 1] and sharpens a
bracketed sign change by bisection. A curve that never goes positive
reports no crossover (mu_c = None) rather than mu_c = 1: touching the line
at mu = 1 and crossing it are different facts and the sentinel keeps them
apart. More than one sign change raises with all brackets attached.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .channels import ChannelSpec, Model
from .entropy import mutual_information, mutual_information_ansatz
from .states import ansatz_state, density_from_pure, max_entangled_params, product_params

# Grid values within ZERO_TOL of zero carry no sign information.
ZERO_TOL = 1e-12

MIN_GRID_N = 16


class Bracket(NamedTuple):
    lo: float
    hi: float
    val_lo: float
    val_hi: float


class MultipleCrossingsError(RuntimeError):
    """The difference curve changes sign more than once on the scan grid."""

    def __init__(self, brackets: list[Bracket]):
        intervals = ", ".join(f"({b.lo:.6g}, {b.hi:.6g})" for b in brackets)
        super().__init__(f"expected a single sign change, found {len(brackets)}: {intervals}")
        self.brackets = brackets


def delta_I(spec_base: ChannelSpec, mu: float, method: str = "block") -> float:
    """I(max entangled) - I(product) at the given memory, in bits."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu={mu} out of range: valid range is [0, 1]")
    spec = replace(spec_base, mu=float(mu))
    d = spec.d
    if method == "block":
        entangled = mutual_information_ansatz(spec, max_entangled_params(d))
        product = mutual_information_ansatz(spec, product_params(d))
    elif method == "dense":
        entangled = mutual_information(spec, density_from_pure(ansatz_state(d, max_entangled_params(d))))
        product = mutual_information(spec, density_from_pure(ansatz_state(d, product_params(d))))
    else:
        raise ValueError(f"method={method!r} unknown: valid methods are 'block' and 'dense'")
    return entangled - product


def _sign_change_brackets(mus: np.ndarray, vals: np.ndarray, zero_tol: float) -> list[Bracket]:
    """Consecutive strictly-signed samples with opposite signs, zeros skipped."""
    signed = [(float(mu), float(v)) for mu, v in zip(mus, vals) if abs(v) > zero_tol]
    brackets = []
    for (mu_a, val_a), (mu_b, val_b) in zip(signed, signed[1:]):
        if (val_a > 0.0) != (val_b > 0.0):
            brackets.append(Bracket(mu_a, mu_b, val_a, val_b))
    return brackets


@dataclass(frozen=True)
class CrossoverResult:
    """mu_c is None when the difference curve has uniform sign on the grid."""

    mu_c: float | None
    delta_at_0: float
    delta_at_1: float
    iterations: int
    bracket_width: float


def find_crossover(
    spec_base: ChannelSpec,
    grid_n: int = 64,
    tol: float = 1e-8,
    method: str = "block",
) -> CrossoverResult:
    """Scan grid_n + 1 memory values, then bisect the single sign change.

    Returns mu_c = None when delta_I keeps one sign everywhere on the grid
    (within ZERO_TOL); raises MultipleCrossingsError when the sign flips
    more than once.
    """
    if grid_n < MIN_GRID_N:
        raise ValueError(f"grid_n={grid_n} too coarse: minimum is {MIN_GRID_N}")
    if tol <= 0.0:
        raise ValueError(f"tol={tol} out of range: must be positive")
    mus = np.linspace(0.0, 1.0, grid_n + 1)
    vals = np.array([delta_I(spec_base, mu, method=method) for mu in mus])
    delta_at_0, delta_at_1 = float(vals[0]), float(vals[-1])
    brackets = _sign_change_brackets(mus, vals, ZERO_TOL)
    if not brackets:
        return CrossoverResult(None, delta_at_0, delta_at_1, 0, 0.0)
    if len(brackets) > 1:
        raise MultipleCrossingsError(brackets)
    lo, hi, val_lo, _ = brackets[0]
    lo_positive = val_lo > 0.0
    iterations = 0
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        val_mid = delta_I(spec_base, mid, method=method)
        iterations += 1
        if (val_mid > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return CrossoverResult(0.5 * (lo + hi), delta_at_0, delta_at_1, iterations, hi - lo)


@dataclass(frozen=True)
class SweepRow:
    model: Model
    d: int
    eta: float
    nu: float
    mu_c: float | None
    parity: str
    error: str | None = None


def sweep_point(
    model: Model,
    d: int,
    eta: float,
    nu: float,
    grid_n: int = 64,
    tol: float = 1e-8,
    method: str = "block",
) -> SweepRow:
    """One sweep cell. Failures land on the row instead of propagating."""
    model = Model(model)
    parity = "even" if d % 2 == 0 else "odd"
    try:
        spec = ChannelSpec(model=model, d=d, eta=eta, mu=0.0, nu=nu)
        result = find_crossover(spec, grid_n=grid_n, tol=tol, method=method)
        return SweepRow(model, d, eta, nu, result.mu_c, parity)
    except Exception as exc:
        return SweepRow(model, d, eta, nu, None, parity, error=str(exc))


def sweep_crossover(
    model: Model,
    dims: list[int],
    etas: list[float],
    nus: list[float],
    grid_n: int = 64,
    tol: float = 1e-8,
    method: str = "block",
) -> list[SweepRow]:
    """Crossover search over the cartesian product dims x etas x nus.

    Rows come back in input order. A failure for one combination (for
    example eta outside the valid range at that d, or multiple sign
    changes) is recorded on its row and the sweep continues.
    """
    if not dims or not etas or not nus:
        raise ValueError("dims, etas and nus must all be nonempty")
    return [
        sweep_point(model, d, eta, nu, grid_n=grid_n, tol=tol, method=method)
        for d in dims
        for eta in etas
        for nu in nus
    ]
