"""Built-in oracle and invariant suite.

Backs the ``validate`` CLI subcommand. Every check is deterministic (fixed
seed), runs at small dimension, and compares the optimized code paths against
slow literal constructions or exact algebraic facts. A failure here means the
installation is broken or a numerical assumption does not hold on this
platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelSpec, Model, apply_channel, apply_channel_naive, channel_marginal, eta_range, joint_probability
from .displacement import commutation_phase, displacement
from .entropy import mutual_information, mutual_information_ansatz, output_spectrum, von_neumann_entropy
from .matrices import random_density, random_unitary
from .states import (
    AnsatzParams,
    ansatz_state,
    averaging_map,
    density_from_pure,
    interpolating_params,
    max_entangled_params,
    product_params,
)

DEFAULT_SEED = 20250816


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named validation check."""

    name: str
    passed: bool
    detail: str


def _result(name: str, err: float, tol: float) -> CheckResult:
    return CheckResult(name, bool(err <= tol), f"max error {err:.3e} (tolerance {tol:.0e})")


def _check_displacement_algebra(d_max: int) -> list[CheckResult]:
    unit_err = 0.0
    comm_err = 0.0
    closure_err = 0.0
    for d in range(2, d_max + 1):
        eye = np.eye(d)
        omega = np.exp(2j * np.pi / d)
        mats = {(m, n): displacement(d, m, n) for m in range(d) for n in range(d)}
        for (m1, n1), u1 in mats.items():
            unit_err = max(unit_err, float(np.max(np.abs(u1 @ u1.conj().T - eye))))
            for (m2, n2), u2 in mats.items():
                lhs = u1 @ u2
                comm_err = max(
                    comm_err,
                    float(np.max(np.abs(lhs - commutation_phase(d, (m1, n1), (m2, n2)) * (u2 @ u1)))),
                )
                prod = omega ** (m2 * n1) * mats[((m1 + m2) % d, (n1 + n2) % d)]
                closure_err = max(closure_err, float(np.max(np.abs(lhs - prod))))
    return [
        _result("displacement-unitarity", unit_err, 1e-12),
        _result("displacement-commutation", comm_err, 1e-12),
        _result("displacement-group-closure", closure_err, 1e-12),
    ]


def _check_twirl_completeness(d_max: int, rng: np.random.Generator) -> CheckResult:
    # (1/d^2) sum_a U_a M U_a^dag = tr(M)/d * I for every M.
    err = 0.0
    for d in range(2, d_max + 1):
        mat = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        acc = np.zeros((d, d), dtype=complex)
        for m in range(d):
            for n in range(d):
                u = displacement(d, m, n)
                acc += u @ mat @ u.conj().T
        acc /= d * d
        err = max(err, float(np.max(np.abs(acc - np.trace(mat) / d * np.eye(d)))))
    return _result("displacement-twirl-completeness", err, 1e-12)


def _check_marginals(d_max: int) -> CheckResult:
    err = 0.0
    for model in (Model.QD, Model.QCD):
        for d in range(2, d_max + 1):
            lo, hi = eta_range(model, d)
            for eta in (lo, lo / 2, 0.0, 0.37, hi):
                table = channel_marginal(ChannelSpec(model, d, eta, 0.0, 0.0))
                err = max(err, abs(float(table.q.sum()) - 1.0))
                err = max(err, float(-table.q.min()) if table.q.min() < 0 else 0.0)
                # recover eta from the table entries
                if model is Model.QD:
                    recovered = float(table.q[0, 0] - table.q[0, 1])
                else:
                    recovered = float(d * (table.q[0, 0] - table.q[1, 0]))
                err = max(err, abs(recovered - eta))
    return _result("marginal-tables", err, 1e-12)


def _check_joint_marginalization(d_max: int) -> CheckResult:
    err = 0.0
    for model in (Model.QD, Model.QCD):
        for d in range(2, d_max + 1):
            marginal = channel_marginal(ChannelSpec(model, d, 0.41, 0.0, 0.0))
            for mu, nu in ((0.0, 0.0), (0.3, 0.0), (0.7, 0.5), (1.0, 1.0)):
                joint = joint_probability(marginal, mu, nu)
                err = max(err, abs(float(joint.p.sum()) - 1.0))
                err = max(err, float(np.max(np.abs(joint.p.sum(axis=(2, 3)) - marginal.q))))
                err = max(err, float(np.max(np.abs(joint.p.sum(axis=(0, 1)) - marginal.q))))
    return _result("joint-marginalization", err, 1e-12)


def _check_channel_against_naive(d_max: int, rng: np.random.Generator) -> CheckResult:
    err = 0.0
    for model in (Model.QD, Model.QCD):
        for d in range(2, min(d_max, 3) + 1):  # naive path is O(d^4) kron products
            rho = random_density(d * d, rng)
            for mu, nu in ((0.0, 0.0), (0.5, 0.0), (0.5, 1.0), (1.0, 0.3)):
                spec = ChannelSpec(model, d, 0.6, mu, nu)
                err = max(err, float(np.max(np.abs(apply_channel(spec, rho) - apply_channel_naive(spec, rho)))))
    return _result("channel-vs-naive", err, 1e-12)


def _check_channel_sanity(d_max: int, rng: np.random.Generator) -> CheckResult:
    err = 0.0
    for model in (Model.QD, Model.QCD):
        for d in range(2, d_max + 1):
            rho = random_density(d * d, rng)
            out = apply_channel(ChannelSpec(model, d, 0.52, 0.6, 0.4), rho)
            err = max(err, abs(float(np.trace(out).real) - 1.0))
            err = max(err, abs(float(np.trace(out).imag)))
            err = max(err, float(np.max(np.abs(out - out.conj().T))))
            eigs = np.linalg.eigvalsh(out)
            err = max(err, float(max(0.0, -eigs.min())))
    # eta = 1 QD is the identity channel
    d = 2
    rho = random_density(d * d, rng)
    out = apply_channel(ChannelSpec(Model.QD, d, 1.0, 0.5, 0.5), rho)
    err = max(err, float(np.max(np.abs(out - rho))))
    return _result("channel-sanity", err, 1e-10)


def _check_nu_degenerate_for_qubits(rng: np.random.Generator) -> CheckResult:
    err = 0.0
    rho = random_density(4, rng)
    for model in (Model.QD, Model.QCD):
        a = apply_channel(ChannelSpec(model, 2, 0.7, 0.6, 0.0), rho)
        b = apply_channel(ChannelSpec(model, 2, 0.7, 0.6, 1.0), rho)
        err = max(err, float(np.max(np.abs(a - b))))
    return _result("nu-degenerate-at-d2", err, 1e-12)


def _check_blockwise_spectrum(d_max: int) -> CheckResult:
    err = 0.0
    for model in (Model.QD, Model.QCD):
        for d in range(2, d_max + 1):
            for params in (product_params(d), max_entangled_params(d), interpolating_params(d, 0.7)):
                for mu, nu in ((0.0, 0.0), (0.45, 0.0), (0.45, 1.0), (1.0, 0.5)):
                    spec = ChannelSpec(model, d, 0.58, mu, nu)
                    fast = np.sort(output_spectrum(spec, params))
                    rho_out = apply_channel(spec, density_from_pure(ansatz_state(d, params)))
                    dense = np.sort(np.linalg.eigvalsh(rho_out))
                    err = max(err, float(np.max(np.abs(fast - dense))))
    return _result("blockwise-vs-dense-spectrum", err, 1e-10)


def _check_averaging_map(d_max: int, rng: np.random.Generator) -> list[CheckResult]:
    fix_err = 0.0
    for d in range(2, d_max + 1):
        for m in range(d):
            # every ansatz density is fixed pointwise, whatever the offset/phases
            phis = rng.uniform(0.0, 2.0 * np.pi, size=d)
            alphas = rng.uniform(0.2, 1.0, size=d)
            alphas /= np.linalg.norm(alphas)
            rho = density_from_pure(ansatz_state(d, AnsatzParams(alphas, phis, offset=m)))
            fix_err = max(fix_err, float(np.max(np.abs(averaging_map(d, rho) - rho))))

    # invariance of the correlated-dephasing channel entropy where it is a theorem
    inv_err = 0.0
    for d in range(2, d_max + 1):
        rho = random_density(d * d, rng)
        sigma = averaging_map(d, rho)
        for mu, nu in ((0.0, 0.73), (0.8, 1.0)):
            spec = ChannelSpec(Model.QCD, d, 0.4, mu, nu)
            s_direct = von_neumann_entropy(apply_channel(spec, rho)).entropy_bits
            s_avg = von_neumann_entropy(apply_channel(spec, sigma)).entropy_bits
            inv_err = max(inv_err, abs(s_direct - s_avg))

    # the same identity must visibly fail for the depolarizing-type model
    rho = random_density(9, rng)
    spec = ChannelSpec(Model.QD, 3, 0.8, 0.5, 1.0)
    gap = abs(
        von_neumann_entropy(apply_channel(spec, rho)).entropy_bits
        - von_neumann_entropy(apply_channel(spec, averaging_map(3, rho))).entropy_bits
    )
    witness = CheckResult(
        "averaging-witness-depolarizing",
        bool(gap > 1e-4),
        f"entropy gap {gap:.3e} (must exceed 1e-04: averaging is not entropy-neutral here)",
    )
    return [
        _result("averaging-fixes-ansatz-family", fix_err, 1e-12),
        _result("averaging-entropy-invariance", inv_err, 1e-10),
        witness,
    ]


def _check_entropy_basics(d_max: int, rng: np.random.Generator) -> CheckResult:
    err = 0.0
    for dim in range(2, d_max * d_max + 1):
        # pure states carry zero entropy; the maximally mixed state carries log2(dim)
        vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        vec /= np.linalg.norm(vec)
        err = max(err, abs(von_neumann_entropy(np.outer(vec, vec.conj())).entropy_bits))
        err = max(err, abs(von_neumann_entropy(np.eye(dim) / dim).entropy_bits - np.log2(dim)))
        # basis invariance
        rho = random_density(dim, rng)
        u = random_unitary(dim, rng)
        err = max(
            err,
            abs(von_neumann_entropy(u @ rho @ u.conj().T).entropy_bits - von_neumann_entropy(rho).entropy_bits),
        )
    return _result("entropy-basics", err, 1e-10)


def _check_memoryless_factorization(rng: np.random.Generator) -> CheckResult:
    # at mu = 0 the two uses are independent: MI of a product input is twice
    # the single-use relative piece, equivalently the dense output factorizes
    err = 0.0
    for model in (Model.QD, Model.QCD):
        for d in (2, 3):
            spec = ChannelSpec(model, d, 0.63, 0.0, 0.0)
            rho_a = random_density(d, rng)
            rho_b = random_density(d, rng)
            out = apply_channel(spec, np.kron(rho_a, rho_b))
            single = ChannelSpec(model, d, 0.63, 0.0, 0.0)
            out_a = _single_use(single, rho_a)
            out_b = _single_use(single, rho_b)
            err = max(err, float(np.max(np.abs(out - np.kron(out_a, out_b)))))
    return _result("memoryless-factorization", err, 1e-12)


def _single_use(spec: ChannelSpec, rho: np.ndarray) -> np.ndarray:
    table = channel_marginal(spec)
    out = np.zeros_like(rho, dtype=complex)
    for m in range(spec.d):
        for n in range(spec.d):
            u = displacement(spec.d, m, n)
            out += table.q[m, n] * (u @ rho @ u.conj().T)
    return out


def _check_mutual_information_consistency(rng: np.random.Generator) -> CheckResult:
    err = 0.0
    for model in (Model.QD, Model.QCD):
        for d in (2, 3):
            spec = ChannelSpec(model, d, 0.55, 0.35, 1.0)
            for params in (product_params(d), max_entangled_params(d)):
                dense = mutual_information(spec, density_from_pure(ansatz_state(d, params)))
                fast = mutual_information_ansatz(spec, params)
                err = max(err, abs(dense - fast))
    return _result("mutual-information-consistency", err, 1e-10)


def run_validation(d_max: int = 4, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run every check at dimensions 2..d_max and return the results."""
    if not isinstance(d_max, (int, np.integer)) or isinstance(d_max, bool) or d_max < 2:
        raise ValueError(f"d_max must be an integer >= 2, got {d_max!r}")
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []
    results.extend(_check_displacement_algebra(d_max))
    results.append(_check_twirl_completeness(d_max, rng))
    results.append(_check_marginals(d_max))
    results.append(_check_joint_marginalization(d_max))
    results.append(_check_channel_against_naive(d_max, rng))
    results.append(_check_channel_sanity(d_max, rng))
    results.append(_check_nu_degenerate_for_qubits(rng))
    results.append(_check_blockwise_spectrum(d_max))
    results.extend(_check_averaging_map(d_max, rng))
    results.append(_check_entropy_basics(d_max, rng))
    results.append(_check_memoryless_factorization(rng))
    results.append(_check_mutual_information_consistency(rng))
    return results
